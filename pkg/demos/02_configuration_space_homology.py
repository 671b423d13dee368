"""
Homology of discrete configuration spaces
=========================================

Subdivide a graph, build the cube complex of k particles, and compute Betti
numbers and torsion over F2 and Z.
"""

from graphtc.algebra import F2, Z, homology
from graphtc.discrete_config import discretize
from graphtc.named import named_graph

# two particles on the star: 12 vertices and 12 edges before subdivision, a circle up to homotopy
c, cert = discretize(named_graph("star").graph, 2, parts=1)
print("Conf_2(S3), unsubdivided cells:", c.counts(), "conservative:", cert.conservative)

c, cert = discretize(named_graph("star").graph, 2)
print("Conf_2(S3), parts=3 cells:", c.counts(), "betti:", homology(c, Z).betti)

# Betti numbers do not move under one more subdivision
for parts in (4, 5):
    c, _ = discretize(named_graph("theta").graph, 3, parts)
    h = homology(c, Z)
    print(f"Conf_3(theta), parts={parts}: betti {h.betti}, torsion {h.torsion}")

# Conf_2 of K5 and K3,3 are closed orientable surfaces of genus 6 and 4
for name in ("k5", "k33"):
    c, _ = discretize(named_graph(name).graph, 2)
    hz, hf = homology(c, Z), homology(c, F2)
    print(f"Conf_2({name}): {sum(c.counts())} cells, Z betti {hz.betti}, F2 betti {hf.betti}")
