"""Explicit witness functions with small approximability, and avoiding
permutations for partitioned ground sets.

The witnesses realize hand-proved upper bounds: a function on Z/n agreeing
with no endomorphism more than once (so the cyclic worst case for the endo
family is exactly 1), the squaring map on Z/p meeting no affine map more
than twice, a remainder+quotient mix on Z/p^k staying within p affine
agreements, and three small-group tables of measured value 2 (affine for
the Z/6 swap and the Sym(3) fold, endomorphic for the Klein table).

The avoiding-permutation construction solves the combinatorial core of the
orbit-avoidance argument: given a partition of a finite set, find a
permutation mapping every point into a different class, which is possible
iff no class holds more than half the points.
"""

from __future__ import annotations

import itertools
import math

from .errors import ParameterError
from .groups import GroupCarrier, cyclic, dihedral, direct_product, elemabelian
from .morphisms import automorphism_orbits
from .search import GroupFunction

__all__ = [
    "build_avoiding_permutation",
    "cyclic_enapp_witness",
    "find_aoa_permutation",
    "prime_square_witness",
    "rem_quot_witness",
    "small_group_witnesses",
]


def cyclic_enapp_witness(n: int) -> GroupFunction:
    """A function on Z/n whose best endomorphism agreement is 1.

    Non-generators (including 0) are sent to 1; a generator x is sent to
    its ring square x*x mod n.  Any endomorphism is x -> a*x; agreeing with
    f at a generator x forces a = x, and a second agreement y (generator or
    not) forces a contradiction, so no endomorphism agrees twice.  (For
    n = 1 the only self-map has agreement exactly 1 as well.)
    """
    if n < 1:
        raise ParameterError(f"needs a cyclic group, got order {n}")
    g = cyclic(n)
    images = tuple(
        (x * x) % n if math.gcd(x, n) == 1 else 1 for x in range(n)
    )
    return GroupFunction(g, images)


def prime_square_witness(p: int) -> GroupFunction:
    """x -> x^2 on Z/p (p prime): affine agreement at most 2, since
    x^2 = ax + b has at most two roots in the field."""
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ParameterError(f"needs a prime, got {p}")
    g = cyclic(p)
    return GroupFunction(g, tuple((x * x) % p for x in range(p)))


def rem_quot_witness(p: int, k: int) -> GroupFunction:
    """x -> (x mod p) + (x div p) on Z/p^k: affine agreement at most p."""
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ParameterError(f"needs a prime, got {p}")
    if k < 1:
        raise ParameterError(f"needs an exponent >= 1, got {k}")
    n = p**k
    g = cyclic(n)
    return GroupFunction(g, tuple((x % p + x // p) % n for x in range(n)))


def small_group_witnesses() -> dict[str, GroupFunction]:
    """The three hand-built tables of measured value 2.

    z6-swap lives on Z/2 x Z/3 (pair (x, y) encoded as 3x + y) and maps
    (x, y) to (y mod 2, x); its affine value is 2.  klein lives on (Z/2)^2
    and collapses onto the two basis vectors; the table is itself affine,
    so the value 2 it realizes is endomorphic.  sym3 lives on the dihedral
    realization of Sym(3) (indices 1, r, r^2, s, sr, sr^2), fixes 1 and r
    and folds the rest; its affine value is 2.
    """
    z6 = direct_product(cyclic(2), cyclic(3))
    z6_images = tuple(3 * ((i % 3) % 2) + i // 3 for i in range(6))
    klein = elemabelian(2, 2)
    sym3 = dihedral(6)
    return {
        "z6-swap": GroupFunction(z6, z6_images),
        "klein": GroupFunction(klein, (1, 1, 2, 2)),
        "sym3": GroupFunction(sym3, (0, 1, 1, 0, 2, 2)),
    }


# --------------------------------------------------------------------------
# avoiding permutations
# --------------------------------------------------------------------------

def _validate_partition(classes) -> tuple[list[list[int]], int]:
    cleaned = []
    seen: set[int] = set()
    for ci, cls in enumerate(classes):
        cls = sorted({int(x) for x in cls})
        if not cls:
            raise ParameterError(f"class {ci} is empty")
        overlap = seen.intersection(cls)
        if overlap:
            raise ParameterError(f"classes overlap at {sorted(overlap)}")
        seen.update(cls)
        cleaned.append(cls)
    m = len(seen)
    if seen != set(range(m)):
        raise ParameterError("classes must partition 0..m-1")
    return cleaned, m


def _solve_small(classes: list[list[int]]) -> dict[int, int]:
    points = sorted(p for cls in classes for p in cls)
    cls_of = {p: i for i, cls in enumerate(classes) for p in cls}
    for perm in itertools.permutations(points):
        if all(cls_of[points[i]] != cls_of[perm[i]] for i in range(len(points))):
            return {points[i]: perm[i] for i in range(len(points))}
    raise AssertionError("feasible instance had no avoiding permutation")


def _solve(classes: list[list[int]]) -> dict[int, int]:
    m = sum(len(c) for c in classes)
    if m <= 5:
        return _solve_small(classes)
    # take the two largest classes (ties by class index), remove their
    # smallest points, swap those two points, and recurse on the rest
    order = sorted(range(len(classes)), key=lambda i: (-len(classes[i]), i))
    i1, i2 = order[0], order[1]
    p1, p2 = classes[i1][0], classes[i2][0]
    rest = []
    for i, cls in enumerate(classes):
        trimmed = [x for x in cls if x not in (p1, p2)]
        if trimmed:
            rest.append(trimmed)
    mapping = _solve(rest)
    mapping[p1] = p2
    mapping[p2] = p1
    return mapping


def build_avoiding_permutation(classes) -> tuple[int, ...] | None:
    """A permutation of the partitioned ground set mapping every point into
    a different class, or None when some class exceeds half the points.

    Ground sets of at most 5 points are solved exhaustively (first valid
    permutation in lexicographic order); larger instances peel two points
    off the two largest classes, transpose them, and recurse — removing
    points from the largest classes keeps every class at no more than half
    of the remaining points, so the recursion stays feasible.
    """
    cleaned, m = _validate_partition(classes)
    if m == 0:
        return ()
    if max(len(c) for c in cleaned) * 2 > m:
        return None
    mapping = _solve(cleaned)
    return tuple(mapping[x] for x in range(m))


def find_aoa_permutation(g: GroupCarrier) -> GroupFunction | None:
    """A bijection fixing the identity and moving every other element off
    its automorphism orbit, or None.  Such a function exists iff no orbit
    holds more than half of the non-identity elements."""
    n = g.order
    if n == 1:
        return GroupFunction(g, (0,))
    orbits = [orb for orb in automorphism_orbits(g) if orb != (0,)]
    classes = [[x - 1 for x in orb] for orb in orbits]
    perm = build_avoiding_permutation(classes)
    if perm is None:
        return None
    images = (0,) + tuple(perm[x - 1] + 1 for x in range(1, n))
    return GroupFunction(g, images)
