"""Endomorphism, automorphism and affine-map enumeration.

Enumeration assigns images to a greedy minimal generating sequence one
generator at a time and propagates closure: whenever the image map is
known on x and y it is forced on x*y and y*x, and any clash prunes the
branch.  Surviving leaves are total homomorphisms by construction, so no
post-hoc filtering is needed.  Image candidates are pruned by the order
criterion ord(phi(x)) | ord(x).

Results are cached on the carrier and returned in lexicographic order of
the image tuple, which downstream code relies on for determinism.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError
from .groups import GroupCarrier

__all__ = [
    "ENDO_LIMIT",
    "AffineMap",
    "Morphism",
    "affine_tables",
    "automorphism_orbits",
    "endomorphism_tables",
    "enumerate_affine_maps",
    "enumerate_automorphisms",
    "enumerate_endomorphisms",
    "minimal_generating_sequence",
]

ENDO_LIMIT = 64


@dataclass(frozen=True)
class Morphism:
    """A (total) endomorphism given by its image table."""

    group: GroupCarrier = field(compare=False, repr=False)
    images: tuple[int, ...]
    is_automorphism: bool

    def __call__(self, x: int) -> int:
        return self.images[x]


@dataclass(frozen=True)
class AffineMap:
    """The map x -> constant * endo(x)."""

    group: GroupCarrier = field(compare=False, repr=False)
    constant: int
    endo: Morphism

    def __call__(self, x: int) -> int:
        return self.group.mul(self.constant, self.endo.images[x])

    def table(self) -> tuple[int, ...]:
        g = self.group
        c = self.constant
        return tuple(g.mul(c, v) for v in self.endo.images)


def _pair_closure(g: GroupCarrier, base, extra) -> set[int]:
    """The subgroup generated by base (already closed) plus one element."""
    known = sorted(base) + [extra]
    seen = set(known)
    i = 0
    while i < len(known):
        a = known[i]
        j = 0
        while j < len(known):
            b = known[j]
            for prod in (g.mul(a, b), g.mul(b, a)):
                if prod not in seen:
                    seen.add(prod)
                    known.append(prod)
            j += 1
        i += 1
    return seen


def minimal_generating_sequence(g: GroupCarrier) -> tuple[int, ...]:
    """Greedy minimal generating sequence: repeatedly add the element that
    grows the generated subgroup the most (ties broken by smallest index)."""
    cached = getattr(g, "_gen_seq", None)
    if cached is not None:
        return cached
    n = g.order
    seq: list[int] = []
    closure: set[int] = {0}
    while len(closure) < n:
        best_size = 0
        best_x = -1
        for x in range(n):
            if x in closure:
                continue
            size = len(_pair_closure(g, closure, x))
            if size > best_size:
                best_size, best_x = size, x
        seq.append(best_x)
        closure = _pair_closure(g, closure, best_x)
    result = tuple(seq)
    g._gen_seq = result
    return result


def _propagate(rows, img, known, start) -> bool:
    """Force images on products of known elements; False on clash."""
    i = start
    while i < len(known):
        x = known[i]
        fx = img[x]
        j = 0
        while j < len(known):
            y = known[j]
            fy = img[y]
            xy = rows[x][y]
            v = rows[fx][fy]
            if img[xy] < 0:
                img[xy] = v
                known.append(xy)
            elif img[xy] != v:
                return False
            yx = rows[y][x]
            w = rows[fy][fx]
            if img[yx] < 0:
                img[yx] = w
                known.append(yx)
            elif img[yx] != w:
                return False
            j += 1
        i += 1
    return True


def enumerate_endomorphisms(
    g: GroupCarrier, limit: int = ENDO_LIMIT
) -> tuple[Morphism, ...]:
    """All endomorphisms of g, lexicographic by image tuple."""
    if g.order > limit:
        raise CapacityError(
            f"endomorphism enumeration is limited to order {limit}, "
            f"{g.name} has order {g.order}"
        )
    cached = getattr(g, "_endo_cache", None)
    if cached is not None:
        return cached

    n = g.order
    rows = [[g.mul(a, b) for b in range(n)] for a in range(n)]
    orders = g.element_orders()
    gens = minimal_generating_sequence(g)
    found: list[tuple[int, ...]] = []

    def dfs(gi: int, img: list[int], known: list[int]) -> None:
        if gi == len(gens):
            found.append(tuple(img))
            return
        x = gens[gi]
        ox = orders[x]
        for v in range(n):
            if ox % orders[v]:
                continue
            img2 = img.copy()
            known2 = known.copy()
            img2[x] = v
            known2.append(x)
            if _propagate(rows, img2, known2, len(known2) - 1):
                dfs(gi + 1, img2, known2)

    start = [-1] * n
    start[0] = 0
    dfs(0, start, [0])
    found.sort()
    result = tuple(
        Morphism(g, images, is_automorphism=len(set(images)) == n)
        for images in found
    )
    g._endo_cache = result
    return result


def enumerate_automorphisms(
    g: GroupCarrier, limit: int = ENDO_LIMIT
) -> tuple[Morphism, ...]:
    return tuple(m for m in enumerate_endomorphisms(g, limit) if m.is_automorphism)


def enumerate_affine_maps(
    g: GroupCarrier, limit: int = ENDO_LIMIT
) -> tuple[AffineMap, ...]:
    """All maps x -> c * phi(x), constant-major then endomorphism order.

    Distinct (c, phi) give distinct maps since phi(1) = 1 forces A(1) = c.
    """
    cached = getattr(g, "_affine_cache", None)
    if cached is not None:
        return cached
    endos = enumerate_endomorphisms(g, limit)
    result = tuple(
        AffineMap(g, c, e) for c in range(g.order) for e in endos
    )
    g._affine_cache = result
    return result


def automorphism_orbits(
    g: GroupCarrier, limit: int = ENDO_LIMIT
) -> tuple[tuple[int, ...], ...]:
    """Orbit partition of the automorphism action, ordered by least element
    (so the first orbit is always the fixed identity)."""
    auts = enumerate_automorphisms(g, limit)
    n = g.order
    seen = [False] * n
    orbits: list[tuple[int, ...]] = []
    for x in range(n):
        if seen[x]:
            continue
        orb = sorted({a.images[x] for a in auts})
        for y in orb:
            seen[y] = True
        orbits.append(tuple(orb))
    return tuple(orbits)


def endomorphism_tables(g: GroupCarrier, limit: int = ENDO_LIMIT) -> np.ndarray:
    """Image tables of all endomorphisms, one row per map (read-only)."""
    cached = getattr(g, "_endo_tables", None)
    if cached is not None:
        return cached
    endos = enumerate_endomorphisms(g, limit)
    tables = np.array([m.images for m in endos], dtype=np.int32)
    tables.setflags(write=False)
    g._endo_tables = tables
    return tables


def affine_tables(g: GroupCarrier, limit: int = ENDO_LIMIT) -> np.ndarray:
    """Image tables of all affine maps, constant-major (read-only)."""
    cached = getattr(g, "_affine_table_cache", None)
    if cached is not None:
        return cached
    endo = endomorphism_tables(g, limit)
    blocks = [g.mul_many(np.full(endo.shape, c), endo) for c in range(g.order)]
    tables = np.concatenate(blocks, axis=0).astype(np.int32)
    tables.setflags(write=False)
    g._affine_table_cache = tables
    return tables
