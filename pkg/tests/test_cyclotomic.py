import itertools
import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from circspec.cyclotomic import (
    CyclotomicValue,
    GroupRingElement,
    ImageClass,
    KernelDecomposition,
    Subgroup,
    classify_equal_image,
    cyclotomic_polynomial,
    decompose_kernel,
    epsilon,
    epsilon0,
    in_restricted_span,
    is_coset_constant_multiple,
    is_in_kernel,
    multiply,
    reduce,
    sigma,
    support,
)
from circspec.errors import DomainError, PreconditionError, UnsupportedModulusError, UsageError

X = sympy.Symbol("x")


def sympy_remainder(a: GroupRingElement):
    """Independent oracle: remainder of sum C_i x^i modulo Phi_n via sympy."""
    poly = sympy.Poly(sum(c * X**i for i, c in enumerate(a.coeffs)), X)
    rem = poly.rem(sympy.Poly(sympy.cyclotomic_poly(a.modulus, X), X))
    d = sympy.totient(a.modulus)
    coeffs = [int(c) for c in reversed(rem.all_coeffs())] if not rem.is_zero else []
    return tuple(coeffs + [0] * (d - len(coeffs)))


def elements(max_n=60, max_coeff=5):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        coeffs = draw(st.lists(st.integers(-max_coeff, max_coeff), min_size=n, max_size=n))
        return GroupRingElement(n, tuple(coeffs))

    return build()


@st.composite
def element_pairs(draw, max_n=60):
    n = draw(st.integers(1, max_n))
    cs = st.lists(st.integers(-5, 5), min_size=n, max_size=n)
    return GroupRingElement(n, tuple(draw(cs))), GroupRingElement(n, tuple(draw(cs)))


# ---------------------------------------------------------------- Phi_n


def test_phi_1():
    assert cyclotomic_polynomial(1) == (-1, 1)


def test_phi_prime():
    assert cyclotomic_polynomial(5) == (1, 1, 1, 1, 1)


def test_phi_12():
    # frozen from the long-division oracle below
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_phi_12_long_division_oracle():
    num = sympy.Poly(X**12 - 1, X)
    for d in (1, 2, 3, 4, 6):
        num, r = sympy.div(num, sympy.Poly(sympy.cyclotomic_poly(d, X), X))
        assert r.is_zero
    assert tuple(int(c) for c in reversed(num.all_coeffs())) == (1, 0, -1, 0, 1)


def test_phi_rejects_zero():
    with pytest.raises(UsageError):
        cyclotomic_polynomial(0)


def test_phi_degree_is_totient():
    for n in range(1, 201):
        assert len(cyclotomic_polynomial(n)) - 1 == sympy.totient(n)


@pytest.mark.parametrize("n", [1, 2, 7, 12, 30, 105, 128, 210])
def test_phi_matches_sympy(n):
    ref = sympy.Poly(sympy.cyclotomic_poly(n, X), X).all_coeffs()
    assert cyclotomic_polynomial(n) == tuple(int(c) for c in reversed(ref))


# ---------------------------------------------------------------- reduce


def test_reduce_z1_z5_z9_vanishes():
    assert reduce(GroupRingElement.from_exponents(12, [1, 5, 9])).is_zero()


def test_reduce_three_z6():
    val = reduce(GroupRingElement.unit(12, 6) * 3)
    assert val == CyclotomicValue(12, (-3, 0, 0, 0))
    assert val.coeffs == sympy_remainder(GroupRingElement.unit(12, 6) * 3)


@pytest.mark.parametrize("n", [1, 2, 9, 30])
def test_reduce_zero(n):
    assert reduce(GroupRingElement.zero(n)) == CyclotomicValue.zero(n)


@settings(max_examples=60, deadline=None)
@given(elements(max_n=40))
def test_reduce_matches_sympy_remainder(a):
    assert reduce(a).coeffs == sympy_remainder(a)


@settings(max_examples=200, deadline=None)
@given(element_pairs())
def test_reduce_is_ring_homomorphism(pair):
    a, b = pair
    assert reduce(a + b) == reduce(a) + reduce(b)
    assert reduce(a * b) == reduce(a) * reduce(b)


@settings(max_examples=50, deadline=None)
@given(elements(max_n=30))
def test_reduce_numeric_embedding(a):
    n = a.modulus
    direct = sum(c * np.exp(2j * np.pi * i / n) for i, c in enumerate(a.coeffs))
    assert abs(reduce(a).evaluate() - direct) < 1e-8


def test_value_constructors():
    assert CyclotomicValue.constant(12, 3) == reduce(GroupRingElement.unit(12) * 3)
    assert CyclotomicValue.root_power(12, 13) == reduce(GroupRingElement.unit(12, 1))
    with pytest.raises(UsageError):
        CyclotomicValue(12, (1, 2))
    with pytest.raises(UsageError):
        CyclotomicValue.zero(12) + CyclotomicValue.zero(5)


# ---------------------------------------------------------------- kernel, sigma


def test_kernel_examples():
    assert is_in_kernel(GroupRingElement.from_exponents(12, [0, 6]))
    assert is_in_kernel(GroupRingElement.from_exponents(12, [1, 5, 9]))
    assert not is_in_kernel(GroupRingElement.unit(12, 1))


def test_sigma_examples():
    assert support(sigma(Subgroup(12, 2))) == {0: 1, 6: 1}
    assert support(sigma(Subgroup(12, 3))) == {0: 1, 4: 1, 8: 1}
    assert support(sigma(Subgroup(12, 1))) == {0: 1}


def test_subgroup_order_must_divide():
    with pytest.raises(UsageError):
        Subgroup(12, 5)


def test_subgroup_sums_vanish():
    for n in range(1, 61):
        for d in sympy.divisors(n):
            h = Subgroup(n, d)
            s = sigma(h)
            assert epsilon(s) == epsilon0(s) == d
            assert is_in_kernel(s) == (d > 1)


def test_absorption():
    for n in range(1, 61):
        for d in sympy.divisors(n):
            h = Subgroup(n, d)
            for e in h.elements:
                assert sigma(h) * GroupRingElement.unit(n, e) == sigma(h)


# ---------------------------------------------------------------- epsilon / support


def test_epsilon_support_sigma():
    s = sigma(Subgroup(12, 3))
    assert (epsilon(s), epsilon0(s), support(s)) == (3, 3, {0: 1, 4: 1, 8: 1})


def test_epsilon_support_single_term():
    a = GroupRingElement.unit(12, 3) * 2
    assert (epsilon(a), epsilon0(a), support(a)) == (2, 1, {3: 2})


def test_epsilon_support_zero():
    a = GroupRingElement.unit(12, 1) - GroupRingElement.unit(12, 1)
    assert (epsilon(a), epsilon0(a), support(a)) == (0, 0, {})


def test_support_rejects_negative():
    with pytest.raises(DomainError):
        support(-GroupRingElement.unit(5, 1))


def test_normal_form_index_wraps():
    a = GroupRingElement.from_exponents(12, [1, 13, 25])
    assert a.coeff(1) == a.coeff(13) == 3


# ---------------------------------------------------------------- multiply


def test_multiply_shift_of_sigma():
    assert multiply(GroupRingElement.unit(12, 1), sigma(Subgroup(12, 3))) == GroupRingElement.from_exponents(12, [1, 5, 9])


@settings(max_examples=50, deadline=None)
@given(elements())
def test_multiply_identity(a):
    assert multiply(a, GroupRingElement.unit(a.modulus, 0)) == a


def test_multiply_small_convolution():
    one_plus_z = GroupRingElement(4, (1, 1, 0, 0))
    assert multiply(one_plus_z, one_plus_z) == GroupRingElement(4, (1, 2, 1, 0))


def test_multiply_modulus_mismatch():
    with pytest.raises(UsageError):
        multiply(GroupRingElement.unit(4), GroupRingElement.unit(5))


def test_multiply_big_coefficients_do_not_wrap():
    big = GroupRingElement(3, (2**70, 0, 1))
    assert multiply(big, big).coeffs == (2**140, 1, 2**71)  # z^4 = z
    assert reduce(big * 2**40).coeffs == sympy_remainder(big * 2**40)


# ---------------------------------------------------------------- coset constancy


def test_coset_constant_sigma():
    assert is_coset_constant_multiple(sigma(Subgroup(12, 2)), Subgroup(12, 2))


def test_coset_constant_rejects_p2_translate():
    a = GroupRingElement.from_exponents(12, [1, 5, 9])
    # direct inspection: coset {1, 7} carries 1 and 0
    assert a.coeff(1) != a.coeff(7)
    assert not is_coset_constant_multiple(a, Subgroup(12, 2))


def test_coset_constant_single_coset():
    check = is_coset_constant_multiple(GroupRingElement.from_exponents(12, [1, 7]), Subgroup(12, 2))
    assert check and check.in_natural_ideal


def test_coset_constant_negative_flag():
    check = is_coset_constant_multiple(-sigma(Subgroup(12, 3)), Subgroup(12, 3))
    assert check.constant and not check.nonnegative and not check.in_natural_ideal


def _solvable_as_multiple(a: GroupRingElement, h: Subgroup) -> bool:
    """Oracle: least-squares solve c * sigma(h) = a over the reals."""
    n = a.modulus
    s = sigma(h)
    mat = np.array([[s.coeff(k - j) for j in range(n)] for k in range(n)], dtype=float)
    c, *_ = np.linalg.lstsq(mat, np.array(a.coeffs, dtype=float), rcond=None)
    return bool(np.allclose(mat @ c, a.coeffs, atol=1e-8))


@st.composite
def element_and_subgroup(draw):
    n = draw(st.integers(1, 24))
    d = draw(st.sampled_from(sympy.divisors(n)))
    h = Subgroup(n, d)
    if draw(st.booleans()):
        c = draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
        a = GroupRingElement(n, tuple(c)) * sigma(h)
    else:
        a = GroupRingElement(n, tuple(draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))))
    return a, h


@settings(max_examples=150, deadline=None)
@given(element_and_subgroup())
def test_coset_constancy_iff_multiple(pair):
    a, h = pair
    assert bool(is_coset_constant_multiple(a, h)) == _solvable_as_multiple(a, h)


# ---------------------------------------------------------------- kernel decomposition


def test_decompose_z1_z5_z9():
    dec = decompose_kernel(GroupRingElement.from_exponents(12, [1, 5, 9]))
    assert dec == KernelDecomposition(12, {}, {1: 1})


def test_decompose_not_in_kernel():
    assert decompose_kernel(GroupRingElement.unit(12, 1)) is None


def test_decompose_generators_n15():
    a = sigma(Subgroup(15, 3)) + sigma(Subgroup(15, 5))
    assert decompose_kernel(a) == KernelDecomposition(15, {0: 1}, {0: 1})


def test_decompose_rejects_three_primes():
    with pytest.raises(UnsupportedModulusError):
        decompose_kernel(sigma(Subgroup(30, 2)))


def test_decompose_rejects_negative():
    with pytest.raises(DomainError):
        decompose_kernel(-sigma(Subgroup(12, 2)))


def test_decompose_trivial_group():
    assert decompose_kernel(GroupRingElement.zero(1)) == KernelDecomposition(1)
    assert decompose_kernel(GroupRingElement.unit(1)) is None


def _kernel_corpus(n: int, rng: random.Random, count: int):
    """Random nonnegative elements with epsilon <= 12, half built from subgroup-coset sums."""
    primes = [p for p in sympy.primefactors(n)]
    for _ in range(count):
        if rng.random() < 0.5:
            c = [0] * n
            for _ in range(rng.randint(1, 12)):
                c[rng.randrange(n)] += 1
            yield GroupRingElement(n, tuple(c))
        else:
            a = GroupRingElement.zero(n)
            budget = 12
            while True:
                p = rng.choice(primes)
                if p > budget:
                    break
                a = a + GroupRingElement.unit(n, rng.randrange(n)) * sigma(Subgroup(n, p))
                budget -= p
                if rng.random() < 0.3:
                    break
            yield a


@pytest.mark.parametrize("n", [4, 6, 9, 10, 12, 15, 18, 20])
def test_decomposition_completeness(n):
    rng = random.Random(n)
    hits = 0
    for a in _kernel_corpus(n, rng, 300):
        dec = decompose_kernel(a)
        assert is_in_kernel(a) == (dec is not None)
        if dec is not None:
            hits += 1
            assert dec.reconstruct() == a
            assert all(v >= 1 for v in list(dec.part1.values()) + list(dec.part2.values()))
    assert hits > 50


@pytest.mark.parametrize("n", [6, 12])
def test_decomposition_exhaustive_small_epsilon(n):
    for eps in range(1, 7):
        for combo in itertools.combinations_with_replacement(range(n), eps):
            a = GroupRingElement.from_exponents(n, combo)
            assert is_in_kernel(a) == (decompose_kernel(a) is not None)


# ---------------------------------------------------------------- original (restricted) form


def _restricted_form_oracle(a: GroupRingElement) -> bool:
    """Enumerate every N-combination of P1-translates of sigma(P2) and P2-translates of sigma(P1)."""
    n = a.modulus
    p1, p2 = sympy.primefactors(n)[:2]
    h1, h2 = Subgroup(n, p1), Subgroup(n, p2)
    gens = [GroupRingElement.unit(n, h) * sigma(h2) for h in h1.elements]
    gens += [GroupRingElement.unit(n, h) * sigma(h1) for h in h2.elements]
    eps = epsilon(a)
    for k in range(eps + 1):
        for combo in itertools.combinations_with_replacement(gens, k):
            total = GroupRingElement.zero(n)
            for g in combo:
                total = total + g
            if total == a:
                return True
    return False


def test_z1_z5_z9_not_in_restricted_form():
    a = GroupRingElement.from_exponents(12, [1, 5, 9])
    assert is_in_kernel(a)
    assert decompose_kernel(a) is not None
    assert not in_restricted_span(a)
    assert not _restricted_form_oracle(a)


def test_restricted_form_agrees_with_oracle():
    rng = random.Random(3)
    for a in _kernel_corpus(12, rng, 60):
        if epsilon(a) <= 7:
            assert in_restricted_span(a) == _restricted_form_oracle(a)


# ---------------------------------------------------------------- equal-image classification


def test_classify_identical():
    a = GroupRingElement.from_exponents(25, [1, 2])
    assert classify_equal_image(a, a) is ImageClass.EQUAL


def test_classify_hypothesis_violation_n15_m3():
    a = GroupRingElement.from_exponents(15, [1, 2, 4])
    with pytest.raises(PreconditionError, match="p_2 > p_1"):
        classify_equal_image(a, a)


def test_classify_coset_sums_n25():
    a = sigma(Subgroup(25, 5))
    b = GroupRingElement.unit(25, 1) * a
    assert reduce(a).is_zero() and reduce(b).is_zero()
    assert classify_equal_image(a, b) is ImageClass.BOTH_COSET_SUMS


def test_classify_precondition_messages():
    a = GroupRingElement.from_exponents(7, [1, 2])
    with pytest.raises(PreconditionError, match="augmentations"):
        classify_equal_image(a, GroupRingElement.unit(7, 1))
    with pytest.raises(PreconditionError, match="images"):
        classify_equal_image(a, GroupRingElement.from_exponents(7, [1, 3]))
    b = GroupRingElement.from_exponents(4, [1, 2, 3])
    with pytest.raises(PreconditionError, match="p_1 >= m"):
        classify_equal_image(b, b)


@pytest.mark.parametrize(
    "n,max_m", [(5, 5), (7, 7), (9, 3), (15, 2), (25, 5), (35, 2), (49, 3)]
)
def test_classify_never_neither_exhaustive(n, max_m):
    """All nonnegative pairs of equal augmentation and image, grouped by exact image."""
    for m in range(1, max_m + 1):
        groups: dict = {}
        for combo in itertools.combinations_with_replacement(range(n), m):
            a = GroupRingElement.from_exponents(n, combo)
            groups.setdefault(reduce(a), []).append(a)
        for members in groups.values():
            for a, b in itertools.combinations(members, 2):
                assert classify_equal_image(a, b) is not ImageClass.NEITHER, (a, b)
