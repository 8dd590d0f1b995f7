"""Canonical-module generators and classification of Hibi rings.

Input: a finite poset with a unique minimal element.  The package computes
the minimal generating system of the canonical module of the associated
Hibi ring at the semigroup level, the maximal generator degree via zigzag
sequences, and classifies the ring as Gorenstein / level / type k, with
every result cross-validated along an independent route.
"""

from .classify import (
    AnalysisReport,
    CrossCheck,
    classify,
    cm_type,
    degree_histogram,
    floating_family,
    floating_set,
    is_gorenstein,
    is_level,
    level_type2_witness,
    nonlevel_type2_witness,
)
from .errors import *  # noqa: F401,F403
from .poset import (
    TOP,
    ExtendedPoset,
    Poset,
    RankTable,
    ThreeSumResult,
    dual,
    extend,
    global_rank,
    interval,
    is_pure,
    load_poset,
    parse_poset,
    poset_ideals,
    rank_interval,
    subposet_rank,
    three_sum_check,
)
from .randgen import random_poset
from .valuations import (
    UDClosure,
    Valuation,
    box_volume,
    brute_force_minimal,
    enumerate_minimal,
    excess_set,
    ideal_reduce,
    is_interior,
    is_minimal,
    is_order_reversing,
    leq,
    lower_valuation,
    rank_valuation,
    truncate,
    ud_closure,
    upper_valuation,
    valuation_from_dict,
    valuation_to_dict,
)
from .zigzag import (
    ZigzagSequence,
    enumerate_zigzags,
    is_zigzag,
    max_zigzag_score,
    sequence_to_dict,
    zigzag_score,
)

__version__ = "0.1.0"
