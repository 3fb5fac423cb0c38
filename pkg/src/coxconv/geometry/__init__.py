"""Type-A flag geometry over small prime fields."""

from .cartan import (
    TorusElement,
    cartan_equivariance_check,
    cartan_equivariance_summary,
    intersection_elements,
    torus_transport,
    transport_factors_through_unipotent,
)
from .field import MatrixGF, PrimeField, null_space, rref, row_space
from .flags import (
    Flag,
    Permutation,
    all_permutations,
    element_to_perm,
    enumerate_flags,
    geometric_convolution_table,
    geometric_convolve,
    perm_to_element,
    permutation_flag,
    relpos,
    schubert_count,
    standard_flag,
)
