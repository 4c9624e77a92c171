"""Universality of integral quadratic lattices over unramified 2-adic fields.

Exact classification of universal, k-universal and classic k-universal
quadratic lattices, with an independent representability oracle so that
the closed-form classifiers and the criterion-based sweep can verify each
other.
"""

from .field import (
    FieldCfg,
    FieldElt,
    FieldError,
    IdealExp,
    SquareClass,
    ZERO_IDEAL,
    hilbert,
    is_square,
    make_field,
    parse_elt,
    quadratic_defect,
    square_class,
    square_class_reps,
    valuation,
)
from .spaces import (
    SpaceInv,
    SpaceError,
    complement,
    diagonal_realization,
    is_isotropic,
    orthogonal_sum,
    represents_element,
    represents_ideal,
    represents_space,
    scale_space,
    signed_disc,
    space_from_diagonal,
    witt_decompose,
)
from .lattices import (
    A_lattice,
    JordanComponent,
    JordanLattice,
    LatticeError,
    delta_ideal,
    fd_ideal,
    gram_from_components,
    gram_from_jordan,
    improper_component,
    is_classic,
    is_integral,
    jordan_split,
    lattice_from_jordan,
    lattice_from_json,
    lattice_to_json,
    norm_ideal,
    proper_component,
    scale_ideal,
    space_of,
    sublattice,
)
from .represent import (
    RepVerdict,
    brute_force_represents,
    lower_type,
    represents_lattice,
)
from .universal import (
    ClassifyVerdict,
    classify_classic_k_universal,
    classify_classic_universal,
    classify_k_universal,
    classify_universal,
    crosscheck,
    enumerate_classic_basic,
    enumerate_dominant,
    oracle_k_universal,
)

__version__ = "0.1.0"
