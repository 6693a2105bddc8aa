from app.graph.cliques import maximal_cliques
from app.graph.generators import FragilePair, InstanceKind, generate_instance
from app.graph.io import format_dense, format_edge_list, parse_udg, read_udg
from app.graph.udg import Clique, UndirectedDependencyGraph, connected_components, from_edge_list, is_clique

__all__ = [
    "Clique",
    "FragilePair",
    "InstanceKind",
    "UndirectedDependencyGraph",
    "connected_components",
    "format_dense",
    "format_edge_list",
    "from_edge_list",
    "generate_instance",
    "is_clique",
    "maximal_cliques",
    "parse_udg",
    "read_udg",
]
