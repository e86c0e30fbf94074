"""Computable ultrapowers of ordered sets over eventually periodic sequences."""

from .epset import EPSet, period_cap
from .errors import UltrapowerError
from .hyper import (
    Certificate,
    EPSeq,
    OpaqueSeq,
    compare_with_certificate,
    embed_constant,
    hyper_cmp,
    hyper_equal,
    index_set_eq,
    index_set_leq,
    index_set_lt,
    standard_part,
)
from .orders import Dual, FiniteOrder, Integers, LexProduct, Ordering, Rationals
from .ultrafilter import (
    MinusOneSelector,
    ProfiniteSelector,
    TableSelector,
    UltrafilterTrace,
    ZeroSelector,
    cover_select,
    decide,
    frechet_contains,
    frechet_extension_contains,
)
from .witnesses import (
    ChainDescriptor,
    WitnessTrace,
    cantor_witness,
    density_counterexample,
    finite_collapse,
    inf_refuter,
    open_cantor_witness,
    sup_refuter,
)

__all__ = [
    "cantor_witness",
    "Certificate",
    "ChainDescriptor",
    "compare_with_certificate",
    "cover_select",
    "decide",
    "density_counterexample",
    "Dual",
    "embed_constant",
    "EPSeq",
    "EPSet",
    "finite_collapse",
    "FiniteOrder",
    "frechet_contains",
    "frechet_extension_contains",
    "hyper_cmp",
    "hyper_equal",
    "index_set_eq",
    "index_set_leq",
    "index_set_lt",
    "inf_refuter",
    "Integers",
    "LexProduct",
    "MinusOneSelector",
    "OpaqueSeq",
    "open_cantor_witness",
    "Ordering",
    "period_cap",
    "ProfiniteSelector",
    "Rationals",
    "standard_part",
    "sup_refuter",
    "TableSelector",
    "UltrafilterTrace",
    "UltrapowerError",
    "WitnessTrace",
    "ZeroSelector",
]

__version__ = "0.1.0"
