"""
Certified topological complexity of planar graphs
=================================================

Compute lower bounds and exact values of TC_r(Conf_k(G)) together with a
witness diagram, serialize the certificate, and replay it from JSON.
"""

from graphtc.named import named_graph
from graphtc.tc_certificate import TCQuery, exact_tc, lower_bound, replay

theta = named_graph("theta")
for r in (2, 3, 4):
    value, cert = exact_tc(TCQuery(theta.graph, 4, r), theta.embedding)
    print(f"TC_{r}(Conf_4(theta)) = {value}  (valid: {cert.valid})")

# below k = 2m only bounds are certified
tree = named_graph("tree3")
low, cert = lower_bound(TCQuery(tree.graph, 5, 2), tree.embedding)
print(f"tree3, k=5, r=2: {low} <= TC <= {cert.upper}, exact: {cert.exact}")

# what the witness diagram chose
data = cert.data
print("W:", data["W"], " lambdas:", data["lambdas"])
print("disk radii:", [d["radius"] for d in data["disks"]])
print("stationary particles at:", data["arc_points"])
print("checks:", ", ".join(c["name"] for c in data["checks"]))

# replay re-runs every check from the JSON alone
text = cert.to_json()
again = replay(text)
print("replay valid:", again.valid, " byte-identical:", again.to_json() == text)
