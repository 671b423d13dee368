"""
Graphs, essential vertices and planarity
========================================

Build a few graphs, count essential vertices, and ask for either a planar
rotation system or a Kuratowski witness.
"""

from graphtc.graph_core import Graph, PLEmbedding, essential_vertices, euler_face_check, is_planar, validate_embedding
from graphtc.named import named_graph

# named graphs ship with exact PL embeddings when they are planar
for name in ["star", "lollipop", "theta", "tree3", "k5", "k33"]:
    doc = named_graph(name)
    res = is_planar(doc.graph)
    ess = " ".join(sorted(essential_vertices(doc.graph))) or "-"
    verdict = "planar" if res.planar else f"non-planar ({res.kind})"
    print(f"{name:8} m={len(essential_vertices(doc.graph))}  essential: {ess:12} {verdict}")

# a planar rotation system passes the Euler face count; face tracing sees 3 faces in theta
theta = named_graph("theta")
print("theta rotation passes the face check:", euler_face_check(theta.graph, theta.rotation))

# embeddings are checked with exact rational predicates
g = Graph.from_edges([("e", "a", "b"), ("f", "c", "d")])
crossing = PLEmbedding.build(g, {"a": (0, 0), "b": (2, 2), "c": (0, 2), "d": (2, 0)})
print("crossing drawing:", validate_embedding(g, crossing).reason)
