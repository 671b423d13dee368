"""
Zero-divisors, tori and the orthogonal pairing
==============================================

Work in the monomial fragment of H*(Conf_k(R^2); F2) tensored r times.
Multiply zero-divisors, pair the product with a product of tori, and compare
the algebraic Kronecker delta with winding numbers of orbiting particles.
"""

from graphtc.euclid_cohomology import (
    PairSet,
    TorusTuple,
    geometric_kronecker,
    kronecker,
    monomial,
    orthogonal_pair,
    orthogonal_product,
    pair_with_torus,
    verify_orthogonal_lemma,
    zeta_lambda,
)

# a zero-divisor product for the partition {12, 34} in two factors
lam = PairSet.of(4, [(1, 2), (3, 4)])
print("zeta_lambda =", zeta_lambda(lam, 1, 2, 2))

# the algebraic delta and the torus winding determinant agree
mu = [(1, 2), (3, 4)]
print("delta:", kronecker(monomial(mu), lam), " geometric:", geometric_kronecker(mu, lam))
mu = [(1, 3), (2, 4)]
print("delta:", kronecker(monomial(mu), lam), " geometric:", geometric_kronecker(mu, lam))

# orthogonal partitions pair to 1 whatever the remaining factors are
l1, l2 = orthogonal_pair(3)
print("lambda_1:", l1.sorted_pairs(), " lambda_2:", l2.sorted_pairs())
rest = [PairSet.of(6, [(1, 4), (2, 6), (3, 5)])]
print("pairing with (l1, l2, l3):", verify_orthogonal_lemma([l1, l2] + rest))

# forcing lambda_1 = lambda_2 kills the pairing
w = orthogonal_product([l1, l1])
print("forced l1 = l2:", pair_with_torus(w, TorusTuple((l1, l1))))
