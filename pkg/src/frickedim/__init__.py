"""Exact dimensions of cusp forms, modular forms and Eisenstein series for
Gamma0(N), the Fricke group Gamma0+(N) and Gamma0*(N), with quadratic characters."""

from .arith import InvalidInput, factorize, kronecker
from .characters import (
    GAMMA0,
    GAMMA0_PLUS,
    GAMMA0_STAR,
    ExtChar,
    NotExtendable,
    QuadChar,
    extensions,
    list_chars,
    make_char,
)
from .dims import (
    ConsistencyError,
    DimReport,
    UnsupportedWeight,
    dim_cusp,
    dim_eisenstein,
    dim_modular,
    dim_report,
    genus_plus,
    verify_power_relations,
)
from .qforms import QForm, class_number, genus_partition, reduce

__version__ = "0.1.0"
