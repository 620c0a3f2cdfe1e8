"""Repeat-degree calculus for coverings of finite universes."""

from .core import (
    Block,
    Covering,
    SetFamily,
    Universe,
    build_covering,
    canonical_equal,
    infer_universe,
)
from .degree import (
    GammaMap,
    cov_from_pair_degrees,
    gamma,
    gamma_map,
    p_set,
    repeat_degree,
    same_p,
)
from .errors import *  # noqa: F401,F403
from .inversion import (
    degree_table,
    indicator_table,
    mobius_transform,
    parity_pair,
    reconstruct_covering,
    tables_equal,
    zeta_transform,
)
from .neighborhood import (
    NeighborhoodMap,
    RelationEdges,
    cov,
    neighborhood,
    neighborhoods,
    relation,
    same_relation,
    successor_neighborhood,
)
from .reduct import (
    ReductReport,
    cov_is_reduct,
    in_union_closure,
    is_reduct_of,
    reducible_elements,
    reduct,
)
from .tables import DegreeTable, IndicatorTable, RealSubsetFunction

__version__ = "0.1.0"
