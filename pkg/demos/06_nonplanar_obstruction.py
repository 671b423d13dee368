"""
Why the planar argument stops at planar graphs
==============================================

In Conf_2 of the lollipop and theta graphs star classes satisfy linear
relations with cycle classes.  In K5 and K3,3 every star class bounds, which
rules out any cohomology class detecting stars the way the planar Gauss class
does.
"""

from graphtc.named import named_graph
from graphtc.nonplanar_h1 import cohomological_planarity, star_vanishing_suite, verify_2Q, verify_2Theta

print("lollipop relation holds:", verify_2Q())
print("theta relation holds:", verify_2Theta())

for name in ("theta", "k5", "k33"):
    rep = star_vanishing_suite(named_graph(name))
    print(f"{name}: H1 rank {rep['h1_rank']}, torsion {rep['h1_torsion']}, "
          f"{rep['num_bounding']}/{rep['num_stars']} star classes bound")

# planar graphs get a Gauss class witness, non-planar graphs a refutation on every spanning tree
theta = cohomological_planarity(named_graph("theta"))
print("theta witness valid:", theta["valid"], " star pairing:", theta["star_pairing"])
k33 = cohomological_planarity(named_graph("k33"))
print(f"K3,3 refuted on {sum(t['refuted'] for t in k33['trees'])}/{k33['num_trees']} spanning trees")
