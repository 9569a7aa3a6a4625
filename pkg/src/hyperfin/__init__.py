"""Finite-graph toolkit for local statistics, hyperfinite partitions,
component matching, local rules and Schreier-graph encodings."""

__version__ = "0.1.0"

from .graph import Graph, GraphError, load_edge_list, serialize  # noqa: E402
from .partition import Infeasible, iso_peel  # noqa: E402
from .stats import d_stat  # noqa: E402

__all__ = ["Graph", "GraphError", "Infeasible", "d_stat", "iso_peel", "load_edge_list", "serialize", "__version__"]
