"""Exact quasi-polynomials over the rationals.

Everything here runs on :class:`fractions.Fraction`; no floating point is
involved, so fitted coefficients and evaluations compare exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

BERNOULLI_BOUND = 64
PERIODS = (1, 2, 4)


class BoundExceeded(ValueError):
    pass


class InsufficientSamples(ValueError):
    def __init__(self, residue: int, have: int, need: int):
        super().__init__(f"residue {residue}: {have} samples, need {need}")
        self.residue = residue


class SingularSystem(ValueError):
    pass


class InconsistentSamples(ValueError):
    """The samples of one residue class do not lie on a single polynomial of the degree asked for."""


class NoPeriodValidates(ValueError):
    pass


class UndefinedConstituent(ValueError):
    pass


def bernoulli(n: int, bound: int = BERNOULLI_BOUND) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > bound:
        raise BoundExceeded(f"n={n} > {bound}")
    return _bernoulli_table(n)[n]


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return tuple(B)


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve a square system by Gaussian elimination over the rationals."""
    n = len(matrix)
    A = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        # largest |num * den| keeps growth of intermediate entries down
        pivot = max(range(col, n), key=lambda r: abs(A[r][col].numerator * A[r][col].denominator))
        if A[pivot][col] == 0:
            raise SingularSystem(f"no pivot in column {col}")
        A[col], A[pivot] = A[pivot], A[col]
        piv = A[col][col]
        for r in range(col + 1, n):
            f = A[r][col] / piv
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = A[r][n] - sum(A[r][c] * x[c] for c in range(r + 1, n))
        x[r] = s / A[r][r]
    return x


def _horner(coeffs: Sequence[Fraction], t: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


@dataclass
class QuasiPolynomial:
    """``constituents[r]`` holds ascending coefficients for arguments t = r mod period.

    A constituent of ``None`` marks a residue class that had no data.
    """

    period: int
    degree: int
    constituents: list[list[Fraction] | None]

    def evaluate(self, t: int) -> Fraction:
        c = self.constituents[t % self.period]
        if c is None:
            raise UndefinedConstituent(f"no constituent for residue {t % self.period} mod {self.period}")
        return _horner(c, t)

    __call__ = evaluate

    def leading(self, residue: int) -> Fraction:
        c = self.constituents[residue % self.period]
        if c is None:
            raise UndefinedConstituent(f"residue {residue}")
        return c[self.degree]

    def defined_residues(self) -> list[int]:
        return [r for r, c in enumerate(self.constituents) if c is not None]

    def to_json(self) -> str:
        return json.dumps({
            "period": self.period,
            "degree": self.degree,
            "constituents": [None if c is None else [f"{x.numerator}/{x.denominator}" for x in c]
                             for c in self.constituents],
        })

    @classmethod
    def from_json(cls, text: str) -> "QuasiPolynomial":
        doc = json.loads(text)
        cons = [None if c is None else [Fraction(x) for x in c] for c in doc["constituents"]]
        return cls(doc["period"], doc["degree"], cons)


def _normalise(samples: Iterable[tuple[int, object]]) -> list[tuple[int, Fraction]]:
    pts = [(int(t), Fraction(v)) for t, v in samples]
    seen = set()
    for t, _ in pts:
        if t in seen:
            raise SingularSystem(f"duplicate argument {t}")
        seen.add(t)
    return pts


def _fit_class(pts: list[tuple[int, Fraction]], powers: list[int], degree: int, residue: int) -> list[Fraction]:
    need = len(powers)
    if len(pts) < need:
        raise InsufficientSamples(residue, len(pts), need)
    basis, check = pts[:need], pts[need:]
    sol = solve([[Fraction(t) ** k for k in powers] for t, _ in basis], [v for _, v in basis])
    coeffs = [Fraction(0)] * (degree + 1)
    for k, c in zip(powers, sol):
        coeffs[k] = c
    for t, v in check:
        if _horner(coeffs, t) != v:
            raise InconsistentSamples(f"residue {residue}: sample at t={t} is off the fitted constituent")
    return coeffs


def fit(samples, degree: int, period: int = 1, parity_restricted: bool = False) -> QuasiPolynomial:
    """Fit one polynomial per residue class mod ``period``.

    Every residue class that occurs must carry at least ``degree + 1``
    samples (or one per basis monomial when ``parity_restricted`` keeps only
    t^degree, t^(degree-2), ...).  Extra samples are checked exactly against
    the result; a mismatch raises :class:`InconsistentSamples`.
    """
    if period < 1:
        raise ValueError("period must be positive")
    pts = _normalise(samples)
    powers = list(range(degree % 2, degree + 1, 2)) if parity_restricted else list(range(degree + 1))
    classes: dict[int, list[tuple[int, Fraction]]] = {}
    for t, v in pts:
        classes.setdefault(t % period, []).append((t, v))
    cons: list[list[Fraction] | None] = [None] * period
    for r, cls_pts in sorted(classes.items()):
        cons[r] = _fit_class(cls_pts, powers, degree, r)
    return QuasiPolynomial(period, degree, cons)


@dataclass
class AutoFit:
    quasi: QuasiPolynomial
    period: int
    rejected: dict[int, str]


def fit_auto(samples, degree: int, parity_restricted: bool = False) -> AutoFit:
    """Smallest period in {1, 2, 4} whose fit reproduces held-out samples.

    Each candidate period needs one sample beyond the basis size in every
    residue class that occurs; those extras act as the validation set.
    """
    pts = _normalise(samples)
    need = (degree // 2 + 1 if parity_restricted else degree + 1) + 1
    rejected: dict[int, str] = {}
    enough_for_any = False
    for m in PERIODS:
        counts: dict[int, int] = {}
        for t, _ in pts:
            counts[t % m] = counts.get(t % m, 0) + 1
        short = [r for r, c in counts.items() if c < need]
        if short:
            rejected[m] = f"residue {short[0]} has {counts[short[0]]} samples, need {need}"
            continue
        enough_for_any = True
        try:
            q = fit(pts, degree, m, parity_restricted)
        except InconsistentSamples as exc:
            rejected[m] = str(exc)
            continue
        return AutoFit(q, m, rejected)
    if not enough_for_any:
        r = pts[0][0] % PERIODS[0] if pts else 0
        raise InsufficientSamples(r, len(pts), need)
    raise NoPeriodValidates("; ".join(f"m={m}: {why}" for m, why in rejected.items()))


def predicted_leading(kind: str, g: int) -> Fraction:
    """Leading coefficients of H1, H2 and Q at genus ``g`` in terms of B_{2g-2}."""
    if g < 2:
        raise ValueError("genus must be at least 2")
    B = bernoulli(2 * g - 2)
    f = factorial(2 * g - 2)
    sign = -1 if g % 2 else 1
    if kind == "H1":
        return sign * B / (2 * f)
    if kind == "H2":
        return Fraction(2 ** (3 * g - 5)) * B * B / (f * f)
    if kind == "Q":
        return sign * Fraction(2 ** (3 * g - 4)) * B / f
    raise ValueError(f"unknown kind {kind!r}")
