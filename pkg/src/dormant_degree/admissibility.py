"""Membership of integer triples in the admissible set at level (p, N).

A triple (s1, s2, s3) is admissible when its sum is at most p^N - 2, it
satisfies the triangle inequalities, and for each lower level N' < N some
reflection s'_i in {[s_i], p^N' - 1 - [s_i]} of the residues mod p^N' passes
the same test with bound p^N' - 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

DEFAULT_GUARD = 10**4


class ZeroModulus(ValueError):
    pass


class GuardExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class LevelParams:
    p: int
    N: int

    def __post_init__(self):
        if self.p < 0:
            raise ValueError(f"p must be nonnegative, got {self.p}")
        if self.N < 1:
            raise ValueError(f"N must be positive, got {self.N}")

    @property
    def modulus(self) -> int:
        return self.p**self.N

    @property
    def bound(self) -> int:
        """Largest admissible triple sum, p^N - 2 (negative means nothing is admissible)."""
        return self.p**self.N - 2

    @property
    def labels(self) -> int:
        """Size of the label alphabet 0..p^N-2."""
        return max(self.p**self.N - 1, 0)

    def lower_moduli(self) -> list[int]:
        return [self.p**k for k in range(1, self.N)]


def remainder(a: int, m: int) -> int:
    if m < 1:
        raise ZeroModulus(f"modulus must be positive, got {m}")
    return a % m


def hat(a: int, m: int) -> int:
    """Folded residue min([a]_m, m - 1 - [a]_m)."""
    r = remainder(a, m)
    return min(r, m - 1 - r)


def base_admissible(t, M: int) -> bool:
    s1, s2, s3 = t
    return s1 + s2 + s3 <= M and abs(s2 - s3) <= s1 <= s2 + s3


def is_admissible(t, lp: LevelParams) -> bool:
    if lp.p <= 1:
        return False
    if min(t) < 0 or not base_admissible(t, lp.bound):
        return False
    for m in lp.lower_moduli():
        choices = [(r, m - 1 - r) for r in (s % m for s in t)]
        if not any(base_admissible(c, m - 2) for c in itertools.product(*choices)):
            return False
    return True


def is_admissible_hat(t, lp: LevelParams) -> bool:
    if lp.p <= 1:
        return False
    if min(t) < 0 or not base_admissible(t, lp.bound):
        return False
    return all(base_admissible(tuple(hat(s, m) for s in t), m - 2) for m in lp.lower_moduli())


def enumerate_admissible(lp: LevelParams, guard: int = DEFAULT_GUARD) -> Iterator[tuple[int, int, int]]:
    """Admissible triples in lexicographic order.

    The sum bound keeps every component at most p^N - 2, so scanning the
    cube [0, p^N - 2]^3 is exhaustive.
    """
    if lp.modulus > guard:
        raise GuardExceeded(f"p^N = {lp.modulus} exceeds guard {guard}")
    if lp.p <= 1:
        return
    M = lp.bound
    for s1 in range(M + 1):
        for s2 in range(M + 1 - s1):
            for s3 in range(M + 1 - s1 - s2):
                if is_admissible((s1, s2, s3), lp):
                    yield (s1, s2, s3)


def count_admissible(lp: LevelParams, guard: int = DEFAULT_GUARD) -> int:
    return sum(1 for _ in enumerate_admissible(lp, guard))


class AdmissibilityKernel:
    """Vectorised admissibility for one (p, N), evaluated slice by slice.

    Label arrays index 0..p^N-2.  For each lower modulus the folded residues
    are precomputed once; membership of a triple then needs only a few
    integer comparisons, so slices over two free labels are cheap to build on
    demand and no L^3 table is ever stored.
    """

    def __init__(self, lp: LevelParams):
        self.lp = lp
        self.L = lp.labels
        self.M = lp.bound
        # narrowest dtype that holds a triple sum; the slab comparisons are bandwidth bound
        self.dtype = np.int16 if 3 * lp.modulus < np.iinfo(np.int16).max else np.int64
        self.labels = np.arange(self.L, dtype=self.dtype)
        self._hats = []
        for m in lp.lower_moduli():
            r = self.labels % m
            self._hats.append((np.minimum(r, m - 1 - r).astype(self.dtype), m - 2))

    @staticmethod
    def _base(a, b, c, M):
        return (a + b + c <= M) & (a <= b + c) & (b <= a + c) & (c <= a + b)

    def evaluate(self, a, b, c):
        """Indicator over broadcast label arrays (or scalars) ``a``, ``b``, ``c``."""
        ok = self._base(a, b, c, self.M)
        for h, Mk in self._hats:
            ok = ok & self._base(h[a], h[b], h[c], Mk)
        return ok
