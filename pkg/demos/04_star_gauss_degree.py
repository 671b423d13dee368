"""
The hexagonal loop and the Gauss map of a star
==============================================

Two particles circle each other through the center of a star.  For any planar
star embedding the direction between them winds once, with sign fixed by the
orientation of the embedding.
"""

import random
from fractions import Fraction

from graphtc.star_gauss import (
    STANDARD,
    eps_eval,
    exact_gauss_winding,
    gauss_winding,
    orientation_class,
    random_star_embedding,
)

# six constant-speed pieces; the particles never share an edge
def where(p):
    return "center" if p.is_center else f"edge {p.edge} at {p.t}"


for i in range(13):
    t = Fraction(i, 12)
    p1, p2 = eps_eval(t)
    print(f"t={str(t):5}  particle 1: {where(p1):14} particle 2: {where(p2)}")

print("standard star:", orientation_class(STANDARD), gauss_winding(STANDARD))
print("mirror image:", orientation_class(STANDARD.mirror()), gauss_winding(STANDARD.mirror()))

# bent arms do not change the degree; the float and exact methods agree
rng = random.Random(4)
for _ in range(3):
    emb = random_star_embedding(rng)
    print("bent star with", [len(a) - 1 for a in emb.arms], "segments per arm:", gauss_winding(emb), exact_gauss_winding(emb))
