"""Combinatorics of multisegments: irreducibility of <m> x <D> via matchings,
the sets M_pi, the Zelevinsky order and derivative rewrites."""

from .core import (
    DEFAULT_LINE,
    EMPTY,
    CuspidalLine,
    CuspidalPoint,
    Multisegment,
    MultisegmentError,
    Relation,
    Segment,
    canonical_labeling,
    dual,
    juxtaposed,
    linked,
    precedes,
    segment_relation,
    union_intersection,
)
from .matching import Side, decide, is_irreducible_product, lc, rc
from .mpi import closure_check, in_M
from .notation import parse_multisegment, parse_segment, print_multisegment
from .zposet import leq_z, lower_set

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_LINE", "EMPTY", "CuspidalLine", "CuspidalPoint", "Multisegment", "MultisegmentError",
    "Relation", "Segment", "canonical_labeling", "dual", "juxtaposed", "linked", "precedes",
    "segment_relation", "union_intersection", "Side", "decide", "is_irreducible_product", "lc", "rc",
    "closure_check", "in_M", "parse_multisegment", "parse_segment", "print_multisegment",
    "leq_z", "lower_set",
]
