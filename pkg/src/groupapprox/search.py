"""Worst-case approximability search.

For a finite group G and a family F of self-maps (here: all endomorphisms,
or all affine maps x -> c*phi(x)), the approximability of f: G -> G is the
largest number of arguments on which f agrees with some member of F.  The
worst-case value of G is the minimum of that quantity over all |G|^|G|
functions f.

The search runs iterative deepening on the threshold k, starting from a
certified lower bound: "is there an f agreeing with every family member on
at most k points?"  Positions are assigned in order of decreasing
discrimination (number of distinct family values at the argument), one
agreement counter per family member, with a per-map bucket prune.  For the
affine family the first position is pinned to f(1) = 1, which is harmless
because the affine worst case is invariant under translation; the endo
metric has no such invariance (a forced f(1) = 1 would give every
endomorphism a free agreement) and is searched unnormalized.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .bounds import worst_case_upper_bounds
from .errors import CapacityError, ParameterError
from .groups import GroupCarrier
from .morphisms import (
    ENDO_LIMIT,
    AffineMap,
    Morphism,
    affine_tables,
    automorphism_orbits,
    endomorphism_tables,
    enumerate_endomorphisms,
)

__all__ = [
    "DEFAULT_BUDGET",
    "METRICS",
    "ApproxCertificate",
    "GroupFunction",
    "LowerBound",
    "SearchStats",
    "approximability",
    "difference_criterion",
    "enapp_zero_witness",
    "family_tables",
    "find_universal_tuple",
    "lower_bound_certificates",
    "universal_elements",
    "worst_case_value",
]

METRICS = ("endo", "affine")
DEFAULT_BUDGET = 10**9


@dataclass(frozen=True)
class GroupFunction:
    """An arbitrary self-map of a group, by image table."""

    group: GroupCarrier = field(compare=False, repr=False)
    images: tuple[int, ...]

    def __post_init__(self):
        n = self.group.order
        if len(self.images) != n:
            raise ParameterError(
                f"function table has {len(self.images)} entries for order {n}"
            )
        if any(not 0 <= v < n for v in self.images):
            raise ParameterError("function values must be element indices")

    def __call__(self, x: int) -> int:
        return self.images[x]


@dataclass(frozen=True)
class LowerBound:
    metric: str
    value: int
    kind: str
    evidence: tuple | None = None


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    elapsed: float
    thresholds: tuple[int, ...]


@dataclass(frozen=True)
class ApproxCertificate:
    group: GroupCarrier = field(compare=False, repr=False)
    metric: str
    exact: bool
    lower: int
    upper: int
    witness: GroupFunction | None
    lower_bound: LowerBound
    stats: SearchStats

    @property
    def value(self) -> int | None:
        return self.lower if self.exact else None


def _check_metric(metric: str) -> None:
    if metric not in METRICS:
        raise ParameterError(f"metric must be one of {METRICS}, got {metric!r}")


def family_tables(g: GroupCarrier, metric: str, limit: int = ENDO_LIMIT) -> np.ndarray:
    _check_metric(metric)
    if metric == "endo":
        return endomorphism_tables(g, limit)
    return affine_tables(g, limit)


def _family_member(g: GroupCarrier, metric: str, index: int):
    endos = enumerate_endomorphisms(g)
    if metric == "endo":
        return endos[index]
    return AffineMap(g, index // len(endos), endos[index % len(endos)])


def approximability(f: GroupFunction, metric: str):
    """Best agreement count of f with the family, plus a map achieving it
    (the first such map in canonical family order)."""
    g = f.group
    tables = family_tables(g, metric)
    agree = (tables == np.array(f.images, dtype=tables.dtype)[None, :]).sum(axis=1)
    j = int(np.argmax(agree))
    return int(agree[j]), _family_member(g, metric, j)


# --------------------------------------------------------------------------
# lower-bound certificates
# --------------------------------------------------------------------------

def universal_elements(g: GroupCarrier, limit: int = ENDO_LIMIT) -> tuple[int, ...]:
    """Elements u whose endomorphism images {phi(u)} cover the whole group."""
    tables = endomorphism_tables(g, limit)
    n = g.order
    return tuple(u for u in range(n) if len(np.unique(tables[:, u])) == n)


def find_universal_tuple(
    g: GroupCarrier, l: int, limit: int = ENDO_LIMIT
) -> tuple[int, ...] | None:
    """A tuple (u1..ul) such that phi -> (phi(u1)..phi(ul)) maps End(G) onto
    G^l, or None.  Every coordinate of such a tuple must itself be universal,
    and the first coordinate may be normalized to an automorphism-orbit
    representative (composing with an automorphism permutes End(G)), so the
    search space is small; within it the lexicographically first hit wins."""
    if l < 1:
        raise ParameterError(f"tuple length must be >= 1, got {l}")
    tables = endomorphism_tables(g, limit)
    m, n = tables.shape
    if n**l > m:
        return None
    univ = universal_elements(g, limit)
    if not univ:
        return None
    if n == 1:
        return (0,) * l
    reps = {orb[0] for orb in automorphism_orbits(g, limit)}
    weights = n ** np.arange(l, dtype=np.int64)
    for u1 in (u for u in univ if u in reps):
        for rest in itertools.product(univ, repeat=l - 1):
            tup = (u1,) + rest
            codes = tables[:, tup].astype(np.int64) @ weights
            if len(np.unique(codes)) == n**l:
                return tup
    return None


_KIND_RANK = {"universal-tuple": 0, "dominating-orbit": 1, "abelian": 2, "constants": 3}


def lower_bound_certificates(
    g: GroupCarrier, limit: int = ENDO_LIMIT
) -> dict[str, LowerBound]:
    """Best cheap lower bounds for both metrics, with evidence.

    Uses, in order of strength: a universal l-tuple (endo >= l, and for
    nontrivial groups affine >= l+1), a dominating automorphism orbit
    (affine >= 2), abelianness (endo >= 1, affine >= 2), and the constants
    contained in the affine family (affine >= 1).  When enumeration exceeds
    capacity only the structural bounds remain.
    """
    n = g.order
    if n == 1:
        return {
            "endo": LowerBound("endo", 1, "trivial-group"),
            "affine": LowerBound("affine", 1, "trivial-group"),
        }
    try:
        m = endomorphism_tables(g, limit).shape[0]
        best_l, best_tup = 0, None
        l = 1
        while l <= n and n**l <= m:
            tup = find_universal_tuple(g, l, limit)
            if tup is None:
                break
            best_l, best_tup = l, tup
            l += 1
        if best_l:
            endo_lb = LowerBound("endo", best_l, "universal-tuple", best_tup)
        else:
            endo_lb = LowerBound("endo", 0, "none")
        candidates = [LowerBound("affine", 1, "constants")]
        if best_l:
            candidates.append(
                LowerBound("affine", best_l + 1, "universal-tuple", best_tup)
            )
        dominating = [
            orb
            for orb in automorphism_orbits(g, limit)
            if orb != (0,) and 2 * len(orb) > n - 1
        ]
        if dominating:
            dominating.sort(key=lambda o: (-len(o), o[0]))
            candidates.append(
                LowerBound("affine", 2, "dominating-orbit", dominating[0])
            )
        if g.is_abelian():
            candidates.append(LowerBound("affine", 2, "abelian"))
        affine_lb = max(candidates, key=lambda c: (c.value, -_KIND_RANK[c.kind]))
        return {"endo": endo_lb, "affine": affine_lb}
    except CapacityError:
        if g.is_abelian():
            return {
                "endo": LowerBound("endo", 1, "abelian"),
                "affine": LowerBound("affine", 2, "abelian"),
            }
        return {
            "endo": LowerBound("endo", 0, "none"),
            "affine": LowerBound("affine", 1, "constants"),
        }


# --------------------------------------------------------------------------
# the min-max search
# --------------------------------------------------------------------------

class _Budget(Exception):
    pass


def _decide(n, positions, buckets, counts, k, budget, assignment):
    """Is there an assignment keeping every family counter <= k?

    counts is mutated in place (and restored on backtrack); raises _Budget
    when the node allowance runs out.
    """
    nodes = 0

    def rec(i: int) -> bool:
        nonlocal nodes
        if i == len(positions):
            return True
        for v in range(n):
            nodes += 1
            if nodes > budget:
                raise _Budget
            bucket = buckets[positions[i]][v]
            if bucket.size:
                if counts[bucket].max() >= k:
                    continue
                counts[bucket] += 1
                assignment[i] = v
                if rec(i + 1):
                    return True
                counts[bucket] -= 1
            else:
                assignment[i] = v
                if rec(i + 1):
                    return True
        return False

    try:
        sat = rec(0)
    finally:
        _decide.last_nodes = nodes
    return sat


def worst_case_value(
    g: GroupCarrier,
    metric: str,
    *,
    budget: int = DEFAULT_BUDGET,
    limit: int = ENDO_LIMIT,
) -> ApproxCertificate:
    """Exact worst-case approximability by iterative deepening, or a
    lower/upper bracket when the node budget runs out."""
    _check_metric(metric)
    t0 = time.perf_counter()
    tables = family_tables(g, metric, limit)
    n = g.order
    lb = lower_bound_certificates(g, limit)[metric]

    formula_upper = n
    if n >= 2:
        endo_bound, affine_bound = worst_case_upper_bounds(n)
        bound = endo_bound if metric == "endo" else affine_bound
        formula_upper = min(n, math.floor(bound + 1e-9))

    fix_first = metric == "affine" and n > 1
    m = tables.shape[0]
    discrimination = [len(np.unique(tables[:, x])) for x in range(n)]
    positions = [x for x in range(n) if not (fix_first and x == 0)]
    positions.sort(key=lambda x: (-discrimination[x], x))
    buckets = {
        x: [np.flatnonzero(tables[:, x] == v) for v in range(n)] for x in positions
    }
    base_counts = np.zeros(m, dtype=np.int32)
    if fix_first:
        base_counts[tables[:, 0] == 0] += 1

    nodes_total = 0
    thresholds: list[int] = []
    k = lb.value
    witness = None
    exact = False
    while True:
        thresholds.append(k)
        assignment = [0] * len(positions)
        counts = base_counts.copy()
        try:
            sat = _decide(n, positions, buckets, counts, k, budget - nodes_total, assignment)
        except _Budget:
            nodes_total += _decide.last_nodes
            break
        nodes_total += _decide.last_nodes
        if sat:
            images = [0] * n
            for pos, val in zip(positions, assignment):
                images[pos] = val
            witness = GroupFunction(g, tuple(images))
            exact = True
            break
        k += 1

    stats = SearchStats(
        nodes=nodes_total,
        elapsed=time.perf_counter() - t0,
        thresholds=tuple(thresholds),
    )
    if exact:
        return ApproxCertificate(g, metric, True, k, k, witness, lb, stats)
    return ApproxCertificate(
        g, metric, False, k, max(k, formula_upper), None, lb, stats
    )


# --------------------------------------------------------------------------
# agreement with affine maps on a subset, and zero-approximability witnesses
# --------------------------------------------------------------------------

def difference_criterion(f: GroupFunction, x_set) -> AffineMap | None:
    """An affine map agreeing with f on all of x_set, if one exists.

    f agrees with some affine map on X iff some endomorphism phi satisfies
    phi(y^-1 x) = f(y)^-1 f(x) for all y in X, with x in X fixed; the
    witness is then x -> (f(x) phi(x)^-1) * phi(.).  x is pinned to min(X)
    and the first qualifying endomorphism (lex order) is returned.
    """
    g = f.group
    xs = sorted({int(x) for x in x_set})
    if not xs:
        raise ParameterError("x_set must be nonempty")
    if xs[0] < 0 or xs[-1] >= g.order:
        raise ParameterError("x_set entries must be element indices")
    x0 = xs[0]
    fx0 = f.images[x0]
    for endo in enumerate_endomorphisms(g):
        im = endo.images
        if all(
            im[g.mul(g.inv(y), x0)] == g.mul(g.inv(f.images[y]), fx0) for y in xs
        ):
            constant = g.mul(fx0, g.inv(im[x0]))
            return AffineMap(g, constant, endo)
    return None


def enapp_zero_witness(g: GroupCarrier, limit: int = ENDO_LIMIT) -> GroupFunction | None:
    """A function agreeing with no endomorphism anywhere, which exists iff
    the group has no universal element; each argument x is sent to the
    smallest element outside {phi(x) : phi in End(G)}."""
    tables = endomorphism_tables(g, limit)
    n = g.order
    images = []
    for x in range(n):
        reach = {int(v) for v in np.unique(tables[:, x])}
        if len(reach) == n:
            return None
        images.append(min(set(range(n)) - reach))
    return GroupFunction(g, tuple(images))
