"""Exact spectra and isomorphism of circulant graphs Cay(Z_n, S)."""

__version__ = "0.1.0"

from .cyclotomic import (
    CyclotomicValue,
    GroupRingElement,
    KernelDecomposition,
    Subgroup,
    classify_equal_image,
    cyclotomic_polynomial,
    decompose_kernel,
    epsilon,
    epsilon0,
    is_coset_constant_multiple,
    is_in_kernel,
    multiply,
    reduce,
    sigma,
    support,
)
from .graph import (
    CirculantGraph,
    ConnectionMultiset,
    Spectrum,
    adjacency_matrix,
    has_repeated_eigenvalues,
    isospectral,
    numeric_spectrum_crosscheck,
    parse_graph,
    spectrum,
)
from .isomorphism import (
    IsomorphismVerdict,
    adam_equivalent,
    brute_force_isomorphic,
    decide_isomorphism,
    elspas_turner_applies,
    muzychuk_applies,
)
from .characterization import criterion_holds, enumerate_connection_sets, factorize, verify_characterization
from .construction import ConstructionParams, build_pair, extend_pair, full_report
