"""Partition combinatorics on boxes.

Partitions are plain tuples of non-negative integers, weakly decreasing, and
carry an explicit slot count whenever box membership matters (trailing zeros
are kept).  A box ``(m, ell)`` means at most ``m`` parts, each at most ``ell``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import accumulate
from math import comb
from typing import Sequence

from .errors import BoxViolation, NotRegular, OutOfRange, RangeViolation, WeightMismatch

Partition = tuple


class Dominance(enum.Enum):
    DOMINATES = "Dominates"
    DOMINATED_BY = "DominatedBy"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"


def staircase(m: int) -> tuple:
    """``(m-1, m-2, ..., 0)``."""
    return tuple(range(m - 1, -1, -1))


def pad(lam: Sequence[int], slots: int) -> tuple:
    lam = tuple(lam)
    if len(lam) > slots:
        if any(lam[slots:]):
            raise BoxViolation(f"{lam} has more than {slots} nonzero parts")
        return lam[:slots]
    return lam + (0,) * (slots - len(lam))


def strip(lam: Sequence[int]) -> tuple:
    """Drop trailing zeros."""
    lam = list(lam)
    while lam and lam[-1] == 0:
        lam.pop()
    return tuple(lam)


def is_partition(lam: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(lam, lam[1:])) and (not lam or lam[-1] >= 0)


def in_box(lam: Sequence[int], m: int, ell: int) -> bool:
    return is_partition(lam) and len(strip(lam)) <= m and (not lam or lam[0] <= ell)


def is_regular(lam: Sequence[int]) -> bool:
    return len(set(lam)) == len(lam)


# -- enumeration ----------------------------------------------------------------

def _box_partitions(k: int, m: int, ell: int) -> list:
    """All weight-``k`` partitions with ``m`` slots and parts ``<= ell``, lex-descending."""
    out = []

    def rec(prefix, remaining, slots, cap):
        if slots == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        if remaining > slots * cap:
            return
        for v in range(min(cap, remaining), -1, -1):
            prefix.append(v)
            rec(prefix, remaining - v, slots - 1, v)
            prefix.pop()

    rec([], k, m, ell)
    return out


def dominates_or_equal(lam: Sequence[int], mu: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(accumulate(lam), accumulate(mu)))


def linear_extension(parts: Sequence[tuple]) -> list:
    """Order same-weight partitions so that every strict dominator precedes what it dominates.

    Kahn's algorithm with lexicographically largest tie-breaking.  Because
    dominance implies lexicographic order, the result coincides with the
    lex-descending sort; the topological pass keeps that fact checked.
    """
    parts = list(parts)
    n = len(parts)
    width = max((len(p) for p in parts), default=0)
    padded = [pad(p, width) for p in parts]
    indeg = [0] * n
    succ = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and padded[i] != padded[j] and dominates_or_equal(padded[i], padded[j]):
                succ[i].append(j)
                indeg[j] += 1
    ready = [i for i in range(n) if indeg[i] == 0]
    order = []
    while ready:
        ready.sort(key=lambda i: padded[i])
        i = ready.pop()
        order.append(parts[i])
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    return order


@dataclass(frozen=True)
class BoxedPartitionSet:
    k: int
    m: int
    ell: int
    regular: bool
    members: tuple = field(default=())

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, lam):
        return tuple(lam) in self.members


@lru_cache(maxsize=None)
def enumerate_box(k: int, m: int, ell: int, regular: bool = False) -> BoxedPartitionSet:
    """Partitions of ``k`` in the ``m x ell`` box, padded to ``m`` slots.

    With ``regular=True`` only tuples whose ``m`` slot values are pairwise
    distinct survive (at most one zero slot).  Members follow the canonical
    linear extension of dominance.
    """
    if k < 0:
        raise ValueError("weight must be non-negative")
    members = _box_partitions(k, m, ell)
    if regular:
        members = [lam for lam in members if is_regular(lam)]
    # lex-descending is already a linear extension of dominance
    return BoxedPartitionSet(k, m, ell, regular, tuple(members))


@lru_cache(maxsize=None)
def box_basis(m: int, ell: int, regular: bool = False) -> tuple:
    """All members of the box graded by weight (ascending), canonical order within a weight."""
    out = []
    for k in range(m * ell + 1):
        out.extend(enumerate_box(k, m, ell, regular).members)
    return tuple(out)


# -- coefficient counts ---------------------------------------------------------

@lru_cache(maxsize=None)
def gaussian_binomial(ell: int, m: int) -> tuple:
    """Coefficients ``[p_0, ..., p_{ell*m}]`` of the q-binomial ``[m+ell choose m]_q``.

    Uses ``[n choose k]_q = [n-1 choose k-1]_q + q^k [n-1 choose k]_q``.
    """
    if ell < 0 or m < 0:
        raise ValueError("box sides must be non-negative")
    if ell == 0 or m == 0:
        return (1,)
    left = gaussian_binomial(ell, m - 1)  # [m+ell-1 choose m-1]
    right = gaussian_binomial(ell - 1, m)  # [m+ell-1 choose m]
    out = [0] * (ell * m + 1)
    for i, c in enumerate(left):
        out[i] += c
    for i, c in enumerate(right):
        out[i + m] += c
    return tuple(out)


def p_coefficient(k: int, ell: int, m: int) -> int:
    coeffs = gaussian_binomial(ell, m)
    return coeffs[k] if 0 <= k < len(coeffs) else 0


def b_coefficient(k: int, ell: int, m: int) -> int:
    """``p_k - p_{k-1}``: the two-row rectangular Kronecker and plethysm multiplicity."""
    if k < 0 or k > ell * m:
        raise OutOfRange(f"k={k} outside [0, {ell * m}]")
    return p_coefficient(k, ell, m) - p_coefficient(k - 1, ell, m)


# -- order and shape operations ---------------------------------------------------

def transpose(lam: Sequence[int]) -> tuple:
    lam = strip(lam)
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part > j) for j in range(lam[0]))


def dominance(lam: Sequence[int], mu: Sequence[int]) -> Dominance:
    if sum(lam) != sum(mu):
        raise WeightMismatch(f"|{tuple(lam)}| != |{tuple(mu)}|")
    n = max(len(lam), len(mu))
    a = list(accumulate(pad(lam, n)))
    b = list(accumulate(pad(mu, n)))
    ge = all(x >= y for x, y in zip(a, b))
    le = all(x <= y for x, y in zip(a, b))
    if ge and le:
        return Dominance.EQUAL
    if ge:
        return Dominance.DOMINATES
    if le:
        return Dominance.DOMINATED_BY
    return Dominance.INCOMPARABLE


def tilde_W(lam: Sequence[int], m: int, ell: int) -> tuple:
    """``lam + d_m``: box ``(m, ell)`` into regular partitions of box ``(m, ell+m-1)``."""
    lam = pad(lam, m)
    if not in_box(lam, m, ell):
        raise BoxViolation(f"{lam} not in the {m}x{ell} box")
    return tuple(v + m - 1 - i for i, v in enumerate(lam))


def tilde_D(lam: Sequence[int], m: int, ell: int) -> tuple:
    """Hodge relabeling: reflect the complement of the slot set inside ``{0..ell+m-1}``."""
    top = ell + m - 1
    lam = tuple(lam)
    if len(lam) != m:
        lam = pad(lam, m)
    slot_set = set(lam)
    if len(slot_set) != m:
        raise NotRegular(f"{lam} has repeated slot values")
    if any(v < 0 or v > top for v in lam):
        raise RangeViolation(f"{lam} has entries outside [0, {top}]")
    return tuple(top - s for s in range(top + 1) if s not in slot_set)


def tilde_W_star(lam: Sequence[int], ell: int, m: int) -> tuple:
    """``lam - d_ell`` landing in the ``(ell, m)`` box."""
    lam = pad(lam, ell)
    out = tuple(v - (ell - 1 - i) for i, v in enumerate(lam))
    if any(v < 0 or v > m for v in out):
        raise RangeViolation(f"{lam} - d_{ell} = {out} leaves [0, {m}]")
    return out


def box_dimension(m: int, ell: int) -> int:
    return comb(m + ell, ell)
