"""Online coloring of graphs with high girth and high oddgirth."""

from .engine import OnlineInstance, PrefixView, Trace, replay, validate
from .generators import GenSpec, OrderSpec, generate, order
from .graph import Graph, bfs_distances, bipartition, girth, is_proper, n_d, oddgirth
from .verify import Report, check_trace

__all__ = [
    "Graph", "GenSpec", "OnlineInstance", "OrderSpec", "PrefixView", "Report", "Trace",
    "bfs_distances", "bipartition", "check_trace", "generate", "girth", "is_proper", "n_d",
    "oddgirth", "order", "replay", "validate",
]
