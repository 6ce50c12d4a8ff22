"""Verifier-first toolkit for exchange markets with additively separable
piecewise-linear concave utilities, the price-regulating market family, and
the reduction from sparse bimatrix games to 2-linear markets."""

from .clearing import (
    APPROXIMATE,
    EXACT,
    QUASI,
    Certificate,
    GoodBalance,
    clearing_feasibility,
    imbalance_profile,
    verify,
)
from .demand import Bundle, DemandSet, SegmentOffer, budget, canonical_bundle, in_opt, optimal_demand
from .games import (
    BimatrixGame,
    MixedStrategy,
    WsneResult,
    check_wsne,
    mixed,
    solve_game_support_enum,
    validate_game,
)
from .model import (
    Market,
    MarketClassReport,
    PriceVector,
    TraderSpec,
    classify_market,
    economy_graph,
    is_strongly_connected,
    make_market,
    normalize_prices,
    prices,
)
from .plc import PLCFunction, ZERO_PLC, linear_plc, utility_eval, validate_plc
from .rational import format_rational, parse_rational
from .reduction import (
    Extraction,
    GadgetVectors,
    ReducedMarketMeta,
    build_reduced_market,
    extract_strategies,
    gadget_vectors_col,
    gadget_vectors_row,
)
from .regulating import build_mn, check_regulation_box, regulation_forward_witness
from .search import SearchConfig, SearchReport, search_equilibrium, unit_box

__all__ = [
    "APPROXIMATE",
    "EXACT",
    "QUASI",
    "BimatrixGame",
    "Bundle",
    "Certificate",
    "DemandSet",
    "Extraction",
    "GadgetVectors",
    "GoodBalance",
    "Market",
    "MarketClassReport",
    "MixedStrategy",
    "PLCFunction",
    "PriceVector",
    "ReducedMarketMeta",
    "SearchConfig",
    "SearchReport",
    "SegmentOffer",
    "TraderSpec",
    "WsneResult",
    "ZERO_PLC",
    "budget",
    "build_mn",
    "build_reduced_market",
    "canonical_bundle",
    "check_regulation_box",
    "check_wsne",
    "classify_market",
    "clearing_feasibility",
    "economy_graph",
    "extract_strategies",
    "format_rational",
    "gadget_vectors_col",
    "gadget_vectors_row",
    "imbalance_profile",
    "in_opt",
    "is_strongly_connected",
    "linear_plc",
    "make_market",
    "mixed",
    "normalize_prices",
    "optimal_demand",
    "parse_rational",
    "prices",
    "regulation_forward_witness",
    "search_equilibrium",
    "solve_game_support_enum",
    "unit_box",
    "utility_eval",
    "validate_game",
    "validate_plc",
    "verify",
]
