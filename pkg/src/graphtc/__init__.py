"""Topological complexity of ordered configuration spaces of graphs.

Submodules:

- ``graph_core``: graphs, subdivision, planarity, exact PL embeddings
- ``discrete_config``: cube-complex models of Conf_k(G)
- ``algebra``: F2 and integral homology, Smith normal form
- ``euclid_cohomology``: zero-divisor algebra of Conf_k(R^2) over F2
- ``star_gauss``: the star S3, its hexagonal loop, Gauss-map degree
- ``tc_certificate``: witness diagrams and TC bounds with JSON certificates
- ``nonplanar_h1``: star classes and the non-planarity obstruction
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import EmbeddingError, MotionError, PreconditionError, ResourceLimitError
from .graph_core import Graph, GraphDocument, PLEmbedding, RotationSystem, essential_vertices, is_planar, m_count
from .named import named_graph

__all__ = [
    "EmbeddingError",
    "Graph",
    "GraphDocument",
    "MotionError",
    "PLEmbedding",
    "PreconditionError",
    "ResourceLimitError",
    "RotationSystem",
    "__version__",
    "essential_vertices",
    "is_planar",
    "m_count",
    "named_graph",
]
