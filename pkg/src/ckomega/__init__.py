"""Workbench for the clopen algebra of the Stone-Cech remainder.

Eventually periodic subsets of the naturals model clopen subsets of the
remainder; piecewise-affine self-maps model the representable continuous
self-maps; compact-open boxes, tree schemes, the Choquet game engine and
the counterexample apparatus are built on top of those two.
"""

from .errors import (
    CertificateError,
    DomainError,
    EmptySetError,
    IllegalMoveError,
    NotNormalFormError,
    ParseError,
    PartitionError,
    PreconditionError,
    RefinementEmptyError,
    SchemeError,
    SearchError,
    StraddlingSeedError,
    WorkbenchError,
)
from .periodic import EMPTY, OMEGA, PeriodicSet
from .maps import (
    LazyInjection,
    MapFlags,
    Piece,
    ProgressionMap,
    classify,
    combine_piecewise,
    compose,
    doubling,
    identity,
    order_embedding,
    shift,
)
from .parsing import parse_map, parse_set, parse_subboxes
from .boxes import (
    OUTSIDE,
    BasicBox,
    RefinementCert,
    SubbasicBox,
    conjunction_is_empty,
    eval_image,
    fix_intersect_empty,
    identity_nbhd,
    is_empty,
    member,
    normalize,
    refine,
    validate_cert,
)
from .schemes import (
    SchemeNode,
    SchemeTree,
    build_injection,
    chain_to_tree,
    repair,
    validate,
    verify_star,
)
from .game import GameSession, new_game
from .counterexamples import (
    LocallyFiniteFamily,
    ParityApparatus,
    approach_identity_witness,
    fix_box,
    fspace_demo,
    gdelta_family,
    locally_finite_family,
    parity_box,
    parity_disjoint_upto,
    parity_member,
    separating_nbhd,
)
from . import jsonio

__all__ = [name for name in dir() if not name.startswith("_")]
