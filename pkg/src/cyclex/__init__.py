"""Cycle convexity on graphs: hulls, E-/C-independence, the exchange number,
closed formulas for structured classes and products, and a 3-SAT reduction."""
from .convexity import HullTrace, hull, interval, is_convex, is_hull_set, redundant_vertices
from .formulas import (
    ChainStructure,
    FormulaOutcome,
    NotApplicable,
    ProductValue,
    block_property_report,
    chain_structure,
    edge_vertex_property,
    exchange_formula,
    is_exchange_n_minus_1,
    product_exchange,
    vertex_separation_property,
)
from .gadget import CnfFormula, ReductionOutput, Verdict, build_reduction, verify_reduction
from .graph import (
    BlockDecomposition,
    DisconnectedGraphError,
    Graph,
    GraphError,
    ProductKind,
    block_decomposition,
    is_chordal,
    parse_edge_list,
    format_edge_list,
    product,
)
from .independence import (
    ExchangeCertificate,
    ExchangeResult,
    exchange_number_brute,
    exchange_number_exact,
    is_C_independent,
    is_E_independent,
)
from .search import exchange_set_at_least

__version__ = "0.1.0"


__all__ = [
    "BlockDecomposition",
    "ChainStructure",
    "CnfFormula",
    "DisconnectedGraphError",
    "ExchangeCertificate",
    "ExchangeResult",
    "FormulaOutcome",
    "Graph",
    "GraphError",
    "HullTrace",
    "NotApplicable",
    "ProductKind",
    "ProductValue",
    "ReductionOutput",
    "Verdict",
    "block_decomposition",
    "block_property_report",
    "build_reduction",
    "chain_structure",
    "edge_vertex_property",
    "exchange_formula",
    "exchange_number_brute",
    "exchange_number_exact",
    "exchange_set_at_least",
    "format_edge_list",
    "hull",
    "interval",
    "is_C_independent",
    "is_E_independent",
    "is_chordal",
    "is_convex",
    "is_exchange_n_minus_1",
    "is_hull_set",
    "parse_edge_list",
    "product",
    "product_exchange",
    "redundant_vertices",
    "verify_reduction",
    "vertex_separation_property",
]
