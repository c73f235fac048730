"""Counting bounds for approximation by map families on finite sets.

For functions M1 -> M2 and a family F of such maps, app_F(g) is the best
agreement count of g with a member of F, and app_F(M1, M2) the minimum
over all g.  Counting the Hamming balls around family members yields a
general upper bound whenever |F| <= m2^fval, and families containing all
constants admit a pigeonhole lower bound.  Specializing both to the
endomorphism/affine families of a group of order n gives closed-form
bounds in the order alone, since |End(G)| <= |G|^(log2 |G|).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapacityError, ParameterError

__all__ = [
    "BRUTE_FORCE_LIMIT",
    "BoundReport",
    "agreement_bounds",
    "ball_size",
    "brute_force_app",
    "circle_and_ball_sizes",
    "circle_size",
    "endo_count_bound",
    "worst_case_upper_bounds",
]

BRUTE_FORCE_LIMIT = 10**6
E_SQUARED = math.e**2
_SLACK = 1e-9


def circle_size(m1: int, m2: int, k: int) -> int:
    """Number of functions M1 -> M2 at Hamming distance exactly k from a
    fixed one: C(m1, k) * (m2 - 1)^k, in exact integers."""
    if m1 < 1 or m2 < 1:
        raise ParameterError("m1 and m2 must be positive")
    if not 0 <= k <= m1:
        raise ParameterError(f"k must lie in 0..{m1}, got {k}")
    return math.comb(m1, k) * (m2 - 1) ** k


def ball_size(m1: int, m2: int, k: int) -> int:
    """Number of functions at Hamming distance at most k."""
    if not 0 <= k <= m1:
        raise ParameterError(f"k must lie in 0..{m1}, got {k}")
    return sum(circle_size(m1, m2, i) for i in range(k + 1))


def circle_and_ball_sizes(m1: int, m2: int, k: int) -> tuple[int, int]:
    return circle_size(m1, m2, k), ball_size(m1, m2, k)


@dataclass(frozen=True)
class BoundReport:
    m1: int
    m2: int
    fval: float
    log_ratio: float            # log base m2 of m1
    gamma: tuple[int, ...]      # circle sizes, k = 0..m1
    nu: tuple[int, ...]         # ball sizes, k = 0..m1
    lower: Fraction             # families containing all constants
    upper: float                # families with |F| <= m2^fval
    upper_branch: str           # which max-branch is active


def agreement_bounds(m1: int, m2: int, fval: float) -> BoundReport:
    """General bounds on the worst-case agreement with a family on M1 -> M2.

    lower = max(1, m1/m2) holds for every family containing all constants;
    upper = max(e^2 * m1/m2, fval*ln(m2) + ln(m1)) holds for every family of
    size at most m2^fval.
    """
    if m1 < 2 or m2 < 2:
        raise ParameterError("m1 and m2 must both be at least 2")
    if not fval > 0:
        raise ParameterError(f"fval must be positive, got {fval}")
    gamma = tuple(circle_size(m1, m2, k) for k in range(m1 + 1))
    nu_list = []
    acc = 0
    for gk in gamma:
        acc += gk
        nu_list.append(acc)
    lower = max(Fraction(1), Fraction(m1, m2))
    fiber_branch = E_SQUARED * m1 / m2
    entropy_branch = fval * math.log(m2) + math.log(m1)
    if fiber_branch >= entropy_branch:
        upper, branch = fiber_branch, "e2-fiber"
    else:
        upper, branch = entropy_branch, "entropy"
    return BoundReport(
        m1=m1,
        m2=m2,
        fval=float(fval),
        log_ratio=math.log(m1) / math.log(m2),
        gamma=gamma,
        nu=tuple(nu_list),
        lower=lower,
        upper=upper,
        upper_branch=branch,
    )


def endo_count_bound(n: int) -> float:
    """|End(G)| <= n^(log2 n) for any group of order n (generators suffice)."""
    if n < 1:
        raise ParameterError(f"order must be positive, got {n}")
    return float(n) ** math.log2(n)


def worst_case_upper_bounds(n: int) -> tuple[float, float]:
    """Closed-form upper bounds on the worst-case endomorphic and affine
    approximability of any group of order n >= 2:

        endo:   (1/ln 2 + 1/ln n) * ln^2 n
        affine: (1/ln 2 + 2/ln n) * ln^2 n

    These follow from the counting bound with fval = log2 n (resp.
    log2 n + 1, since |Aff(G)| = n * |End(G)|).  For n >= 8 the endo bound
    is at least e^2, a side condition the derivation leans on; it is
    asserted here rather than assumed.
    """
    if n < 2:
        raise ParameterError(f"bounds need order >= 2, got {n}")
    ln = math.log(n)
    endo = (1 / math.log(2) + 1 / ln) * ln * ln
    affine = (1 / math.log(2) + 2 / ln) * ln * ln
    if n >= 8:
        assert endo >= E_SQUARED - _SLACK
    return endo, affine


def brute_force_app(m1: int, m2: int, family) -> int:
    """Exact min over all m2^m1 functions of the max agreement with the
    family; the tiny-instance oracle (m2^m1 <= 10^6)."""
    if m1 < 1 or m2 < 1:
        raise ParameterError("m1 and m2 must be positive")
    if m2**m1 > BRUTE_FORCE_LIMIT:
        raise CapacityError(
            f"brute force limited to m2^m1 <= {BRUTE_FORCE_LIMIT}, "
            f"got {m2}^{m1}"
        )
    fam = np.asarray(list(family), dtype=np.int64)
    if fam.ndim != 2 or fam.shape[0] == 0 or fam.shape[1] != m1:
        raise ParameterError("family must be a nonempty list of length-m1 maps")
    if fam.min() < 0 or fam.max() >= m2:
        raise ParameterError("family values must lie in 0..m2-1")
    fam = fam.astype(np.int8 if m2 < 128 else np.int16)
    nmaps = fam.shape[0]
    counts = np.zeros((1, nmaps), dtype=np.int8)
    values = np.arange(m2, dtype=fam.dtype)
    for x in range(m1):
        eq = (values[:, None] == fam[None, :, x]).astype(np.int8)
        counts = (counts[:, None, :] + eq[None, :, :]).reshape(-1, nmaps)
    return int(counts.max(axis=1).min())
