"""Monomial fragment of H*(Conf_k(R^2); F2)^(tensor r).

Gauss classes ``alpha_ij`` are indexed by 2-element subsets ``(i, j)`` of
``{1..k}`` (1-based, ``i < j``).  A monomial is a set of such pairs; a
:class:`TensorWord` is an F2-sum of r-tuples of monomials.  Products of
monomials annihilate when a pair repeats (``alpha_ij**2 = 0``).

Torus classes ``tau_lambda`` pair with monomials by the projection-or-null
rule: ``<alpha_mu, tau_lambda> = 1`` iff ``mu == lambda``.
``torus_winding_matrix`` provides an independent geometric realization of the
torus used to cross-check that rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import geometry as geo
from .errors import PreconditionError

Pair = tuple[int, int]
Monomial = frozenset  # frozenset[Pair]

ONE: Monomial = frozenset()


def make_pair(i: int, j: int) -> Pair:
    if i == j:
        raise ValueError("a pair needs two distinct indices")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class PairSet:
    """A partial binary cover of {1..k}."""

    k: int
    pairs: frozenset

    def __post_init__(self):
        pairs = frozenset(make_pair(*p) for p in self.pairs)
        for i, j in pairs:
            if not (1 <= i <= self.k and 1 <= j <= self.k):
                raise ValueError(f"pair {(i, j)} outside the ground set 1..{self.k}")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def of(cls, k: int, pairs: Iterable[Sequence[int]]) -> "PairSet":
        return cls(k, frozenset(tuple(p) for p in pairs))

    @property
    def is_partition(self) -> bool:
        """Members pairwise disjoint (a partial binary partition)."""
        seen: set[int] = set()
        for p in self.pairs:
            if seen.intersection(p):
                return False
            seen.update(p)
        return True

    @property
    def is_cover(self) -> bool:
        return {x for p in self.pairs for x in p} == set(range(1, self.k + 1))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))

    def orthogonal_to(self, other: "PairSet") -> bool:
        return not (self.pairs & other.pairs)

    def sorted_pairs(self) -> list[list[int]]:
        return [list(p) for p in sorted(self.pairs)]


def monomial(pairs: Iterable[Sequence[int]]) -> Monomial:
    return frozenset(make_pair(*p) for p in pairs)


def monomial_str(m: Monomial) -> str:
    if not m:
        return "1"
    return "".join(f"a{i}{j}" if max(i, j) < 10 else f"a{{{i},{j}}}" for i, j in sorted(m))


@dataclass(frozen=True)
class TensorWord:
    """F2-linear combination of r-fold tensors of monomials on a k-point ground set."""

    k: int
    r: int
    terms: frozenset  # frozenset[tuple[Monomial, ...]]

    @classmethod
    def one(cls, k: int, r: int) -> "TensorWord":
        return cls(k, r, frozenset([(ONE,) * r]))

    @classmethod
    def zero(cls, k: int, r: int) -> "TensorWord":
        return cls(k, r, frozenset())

    @classmethod
    def from_terms(cls, k: int, r: int, terms: Iterable[Sequence[Monomial]]) -> "TensorWord":
        acc: set = set()
        for t in terms:
            t = tuple(frozenset(m) for m in t)
            if len(t) != r:
                raise ValueError("term arity does not match r")
            acc ^= {t}
        return cls(k, r, frozenset(acc))

    def _check(self, other: "TensorWord") -> None:
        if (self.k, self.r) != (other.k, other.r):
            raise ValueError("tensor words differ in ground-set size or arity")

    def __add__(self, other: "TensorWord") -> "TensorWord":
        self._check(other)
        return TensorWord(self.k, self.r, self.terms ^ other.terms)

    def __mul__(self, other: "TensorWord") -> "TensorWord":
        return multiply(self, other)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def diagonal(self) -> frozenset:
        """Restriction along the diagonal: slotwise product of each term, summed over F2."""
        acc: set = set()
        for t in self.terms:
            prod = ONE
            dead = False
            for m in t:
                if prod & m:
                    dead = True
                    break
                prod = prod | m
            if not dead:
                acc ^= {prod}
        return frozenset(acc)

    def sorted_terms(self) -> list[tuple[Monomial, ...]]:
        return sorted(self.terms, key=lambda t: [sorted(m) for m in t])

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join("(x)".join(monomial_str(m) for m in t) for t in self.sorted_terms())


def multiply(x: TensorWord, y: TensorWord) -> TensorWord:
    """Slotwise product; a term dies when some slot repeats a pair."""
    x._check(y)
    acc: set = set()
    for s in x.terms:
        for t in y.terms:
            out = []
            for a, b in zip(s, t):
                if a & b:
                    break
                out.append(a | b)
            else:
                acc ^= {tuple(out)}
    return TensorWord(x.k, x.r, frozenset(acc))


def _check_slots(a: int, b: int, r: int) -> None:
    if not (1 <= a < b <= r):
        raise ValueError(f"need 1 <= a < b <= r, got a={a}, b={b}, r={r}")


def zeta(a: int, b: int, pair: Sequence[int], r: int, k: int | None = None) -> TensorWord:
    """alpha_ij in slot a plus alpha_ij in slot b (other slots 1)."""
    _check_slots(a, b, r)
    p = make_pair(*pair)
    k = max(p) if k is None else k
    left = [ONE] * r
    right = [ONE] * r
    left[a - 1] = frozenset([p])
    right[b - 1] = frozenset([p])
    return TensorWord.from_terms(k, r, [left, right])


def zeta_lambda(lam: PairSet, a: int, b: int, r: int) -> TensorWord:
    """Product of zeta(a, b, pair) over the pairs of a partial binary partition."""
    _check_slots(a, b, r)
    if not lam.is_partition:
        raise PreconditionError("zeta_lambda needs a partial binary partition", "lambda is a partial binary partition")
    w = TensorWord.one(lam.k, r)
    for p in lam:
        w = multiply(w, zeta(a, b, p, r, lam.k))
    return w


def zeta_lambda_expansion(lam: PairSet, a: int, b: int, r: int) -> TensorWord:
    """Subset-sum form: sum over mu in lambda of alpha_mu in slot a and alpha_(lambda - mu) in slot b."""
    _check_slots(a, b, r)
    pairs = sorted(lam.pairs)
    terms = []
    for size in range(len(pairs) + 1):
        for mu in combinations(pairs, size):
            t = [ONE] * r
            t[a - 1] = frozenset(mu)
            t[b - 1] = frozenset(pairs) - frozenset(mu)
            terms.append(t)
    return TensorWord.from_terms(lam.k, r, terms)


@dataclass(frozen=True)
class TorusTuple:
    """tau_{lambda_1} (x) ... (x) tau_{lambda_r} for partial binary partitions."""

    parts: tuple[PairSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        for lam in self.parts:
            if not lam.is_partition:
                raise PreconditionError("torus classes need partial binary partitions", "each lambda_j is a partial binary partition")
        if len({lam.k for lam in self.parts}) > 1:
            raise ValueError("torus factors live on different ground sets")

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def k(self) -> int:
        return self.parts[0].k


def kronecker(mu: Monomial, lam: PairSet) -> int:
    """<alpha_mu, tau_lambda> over F2 (lambda a partial binary partition)."""
    return int(frozenset(mu) == lam.pairs)


def pair_with_torus(w: TensorWord, t: TorusTuple) -> int:
    if (w.k, w.r) != (t.k, t.r):
        raise ValueError("word and torus tuple differ in k or r")
    total = 0
    for term in w.terms:
        if all(m == lam.pairs for m, lam in zip(term, t.parts)):
            total ^= 1
    return total


def pairing_transcript(w: TensorWord, t: TorusTuple) -> list[dict]:
    """Every term of ``w`` with its slotwise pairing values, in a fixed order."""
    rows = []
    for term in w.sorted_terms():
        slots = [kronecker(m, lam) for m, lam in zip(term, t.parts)]
        value = int(all(slots))
        rows.append({"term": [monomial_str(m) for m in term], "slots": slots, "value": value})
    return rows


def orthogonal_product(lambdas: Sequence[PairSet]) -> TensorWord:
    """zeta^{12}_{l1} zeta^{12}_{l2} prod_{j>=3} zeta^{(j-1)j}_{l_j} with r = len(lambdas)."""
    r = len(lambdas)
    if r < 2:
        raise ValueError("need r >= 2 partitions")
    w = multiply(zeta_lambda(lambdas[0], 1, 2, r), zeta_lambda(lambdas[1], 1, 2, r))
    for j in range(3, r + 1):
        w = multiply(w, zeta_lambda(lambdas[j - 1], j - 1, j, r))
    return w


def verify_orthogonal_lemma(lambdas: Sequence[PairSet], force: bool = False) -> int:
    """Pair the orthogonal product with tau_{l1} (x) ... (x) tau_{lr}; 1 when l1 and l2 are orthogonal."""
    lambdas = list(lambdas)
    if not force and not lambdas[0].orthogonal_to(lambdas[1]):
        raise PreconditionError("lambda_1 and lambda_2 share a pair", "lambda_1 orthogonal to lambda_2")
    return pair_with_torus(orthogonal_product(lambdas), TorusTuple(tuple(lambdas)))


def orthogonal_pair(d: int) -> tuple[PairSet, PairSet]:
    """Consecutive pairs {1,2},{3,4},... and the shifted pairs {2,3},...,{2d,1} on {1..2d}."""
    if d <= 1:
        raise PreconditionError("orthogonal binary partitions need d > 1", "d > 1")
    k = 2 * d
    first = PairSet.of(k, [(2 * i + 1, 2 * i + 2) for i in range(d)])
    second = PairSet.of(k, [(2 * i + 2, (2 * i + 2) % k + 1) for i in range(d)])
    return first, second


def binary_partitions(k: int, size: int) -> list[PairSet]:
    """All partial binary partitions of {1..k} with ``size`` pairs."""
    out = []

    def rec(start: int, used: frozenset, chosen: list):
        if len(chosen) == size:
            out.append(PairSet.of(k, chosen))
            return
        for i in range(start, k + 1):
            if i in used:
                continue
            for j in range(i + 1, k + 1):
                if j not in used:
                    chosen.append((i, j))
                    rec(i + 1, used | {i, j}, chosen)
                    chosen.pop()

    rec(1, frozenset(), [])
    return out


def all_pairs(k: int) -> list[Pair]:
    return list(combinations(range(1, k + 1), 2))


# ---------------------------------------------------------------------------
# geometric realization of the torus
# ---------------------------------------------------------------------------

# integer coordinates keep the exact winding computation cheap
_PL_CIRCLE = [(1, 0), (0, 1), (-1, 0), (0, -1)]


def torus_configuration(lam: PairSet, angles: Sequence[geo.Point]) -> dict[int, geo.Point]:
    """Positions of particles 1..k on the torus: pair number q orbits antipodally around (4q, 0)."""
    pos: dict[int, geo.Point] = {}
    pairs = sorted(lam.pairs)
    for q, ((i, j), u) in enumerate(zip(pairs, angles)):
        c = (4 * q, 0)
        pos[i] = geo.sub(c, u)
        pos[j] = geo.add(c, u)
    free = [x for x in range(1, lam.k + 1) if x not in pos]
    for s, x in enumerate(free):
        pos[x] = (4 * (len(pairs) + s), 0)
    return pos


def torus_winding_matrix(lam: PairSet, mu: Iterable[Sequence[int]]) -> list[list[int]]:
    """Winding of the Gauss map of each pair of ``mu`` around each circle factor of the torus."""
    pairs = sorted(lam.pairs)
    base = [_PL_CIRCLE[0]] * len(pairs)
    loops = []
    for q in range(len(pairs)):
        samples = []
        for u in _PL_CIRCLE:
            angles = list(base)
            angles[q] = u
            samples.append(torus_configuration(lam, angles))
        loops.append(samples)
    rows = []
    for i, j in (make_pair(*p) for p in mu):
        rows.append([geo.winding_number([geo.sub(pos[j], pos[i]) for pos in samples]) for samples in loops])
    return rows


def geometric_kronecker(mu: Iterable[Sequence[int]], lam: PairSet) -> int:
    """<alpha_mu, tau_lambda> read off as the mod-2 degree of the torus map to (S^1)^mu."""
    mu = list(mu)
    if len(mu) != len(lam):
        return 0
    m = torus_winding_matrix(lam, mu)
    return _det_mod2(m)


def _det_mod2(m: list[list[int]]) -> int:
    rows = [sum((x & 1) << j for j, x in enumerate(row)) for row in m]
    n = len(rows)
    for col in range(n):
        piv = next((i for i in range(col, n) if (rows[i] >> col) & 1), None)
        if piv is None:
            return 0
        rows[col], rows[piv] = rows[piv], rows[col]
        for i in range(n):
            if i != col and (rows[i] >> col) & 1:
                rows[i] ^= rows[col]
    return 1


def _det_mod2_batch(m: np.ndarray) -> np.ndarray:
    """Determinants mod 2 of a stack of s x s integer matrices (s <= 3 closed form)."""
    m = np.asarray(m, dtype=np.int64) & 1
    s = m.shape[-1]
    if s == 1:
        return m[:, 0, 0]
    if s == 2:
        return (m[:, 0, 0] * m[:, 1, 1] + m[:, 0, 1] * m[:, 1, 0]) & 1
    if s == 3:
        a = m[:, 0, 0] * (m[:, 1, 1] * m[:, 2, 2] + m[:, 1, 2] * m[:, 2, 1])
        b = m[:, 0, 1] * (m[:, 1, 0] * m[:, 2, 2] + m[:, 1, 2] * m[:, 2, 0])
        c = m[:, 0, 2] * (m[:, 1, 0] * m[:, 2, 1] + m[:, 1, 1] * m[:, 2, 0])
        return (a + b + c) & 1
    return np.array([_det_mod2(x.tolist()) for x in m], dtype=np.int64)


@dataclass
class KroneckerReport:
    checked: int
    failures: list[tuple[int, list[list[int]], list[list[int]]]]

    @property
    def ok(self) -> bool:
        return not self.failures


def kronecker_suite(max_k: int = 8, max_size: int = 3) -> KroneckerReport:
    """Compare <alpha_mu, tau_lambda> from the realized torus with delta(lambda, mu).

    Runs over every partial binary partition lambda and every set mu of pairs
    with |mu| = |lambda| <= max_size, for 2 <= k <= max_k.  The geometric side
    is the mod-2 determinant of winding numbers; the algebraic side is
    ``kronecker``.
    """
    checked = 0
    failures = []
    for k in range(2, max_k + 1):
        pairs = all_pairs(k)
        for s in range(1, max_size + 1):
            if 2 * s > k:
                break
            combos = np.array(list(combinations(range(len(pairs)), s)), dtype=np.int64)
            for lam in binary_partitions(k, s):
                table = np.array(torus_winding_matrix(lam, pairs), dtype=np.int64)
                dets = _det_mod2_batch(table[combos])
                expected = np.array(
                    [kronecker(frozenset(pairs[i] for i in c), lam) for c in combos.tolist()], dtype=np.int64
                )
                checked += len(combos)
                for idx in np.nonzero(dets != expected)[0]:
                    mu = [list(pairs[i]) for i in combos[idx]]
                    failures.append((k, lam.sorted_pairs(), mu))
    return KroneckerReport(checked, failures)


def random_partition(rng, d: int) -> PairSet:
    """Uniformly random perfect binary partition of {1..2d}."""
    xs = list(range(1, 2 * d + 1))
    rng.shuffle(xs)
    return PairSet.of(2 * d, [(xs[2 * i], xs[2 * i + 1]) for i in range(d)])


@dataclass
class OrthogonalReport:
    checked: int
    failures: list[dict]
    negative_controls: list[int]

    @property
    def ok(self) -> bool:
        return not self.failures and all(v == 0 for v in self.negative_controls)


def orthogonal_suite(rng, r_values=range(2, 5), d_values=range(2, 4), trials: int = 100) -> OrthogonalReport:
    """Pairing value of the orthogonal product for random lambda_3..lambda_r, plus lambda_1 = lambda_2 controls."""
    checked = 0
    failures = []
    controls = []
    for r in r_values:
        for d in d_values:
            l1, l2 = orthogonal_pair(d)
            for _ in range(trials):
                rest = [random_partition(rng, d) for _ in range(r - 2)]
                value = verify_orthogonal_lemma([l1, l2] + rest)
                checked += 1
                if value != 1:
                    failures.append({"r": r, "d": d, "lambdas": [lam.sorted_pairs() for lam in [l1, l2] + rest]})
            controls.append(verify_orthogonal_lemma([l1, l1] + [l1] * (r - 2), force=True))
    return OrthogonalReport(checked, failures, controls)
