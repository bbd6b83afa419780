"""Degree formulas: the cosecant-power sum, count ratios and closed forms."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .admissibility import LevelParams
from .enumeration import count_dp
from .graph import TrivalentGraph, catalog, genus

INTEGRALITY_TOL = mpmath.mpf("1e-6")


class NotNearInteger(ArithmeticError):
    pass


class ZeroDenominator(ZeroDivisionError):
    pass


class NonIntegerRatio(ArithmeticError):
    pass


class UnsupportedGenus(ValueError):
    pass


@dataclass
class DegreeResult:
    g: int
    p: int
    quantity: str
    value: int
    method: str

    def to_dict(self) -> dict:
        return {"genus": self.g, "p": self.p, "quantity": self.quantity,
                "value": str(self.value), "method": self.method}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def csc_power_sum(g: int, p: int, precision_bits: int = 128) -> mpmath.mpf:
    """sum_{k=1}^{p-1} sin(pi k / p)^-(2g-2) at ``precision_bits`` of mantissa."""
    with mpmath.workprec(precision_bits):
        e = 2 * g - 2
        return mpmath.fsum(mpmath.sin(mpmath.pi * k / p) ** -e for k in range(1, p))


def deg_pi1_sine(g: int, p: int, precision_bits: int = 128) -> int:
    if g < 2:
        raise ValueError("genus must be at least 2")
    if p < 3 or p % 2 == 0:
        raise NotNearInteger(f"p={p} must be odd and at least 3")
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    with mpmath.workprec(precision_bits):
        s = csc_power_sum(g, p, precision_bits)
        value = mpmath.mpf(p) ** (g - 1) / mpmath.mpf(2) ** (2 * g - 1) * s
        nearest = mpmath.nint(value)
        if nearest == 0 or abs(value - nearest) > INTEGRALITY_TOL * abs(nearest):
            raise NotNearInteger(f"g={g}, p={p}: {mpmath.nstr(value, 20)} is not within 1e-6 of an integer")
        return int(nearest)


def csc_power_sum_closed(g: int, p: int) -> Fraction:
    """Exact values of the cosecant-power sum for g = 2, 3.

    Derived independently from the standard identities
    sum csc^2 = (p^2 - 1)/3 and sum csc^4 = (p^2 - 1)(p^2 + 11)/45; used only as
    a cross-check for the floating-point route.
    """
    if g == 2:
        num, den = p * p - 1, 3
    elif g == 3:
        num, den = (p * p - 1) * (p * p + 11), 45
    else:
        raise UnsupportedGenus(g)
    return Fraction(num, den)


def deg_ver_ratio(graph: TrivalentGraph, p: int, **kw) -> int:
    """Degree of the Verschiebung as the ratio of level-2 and level-1 counts."""
    lower = count_dp(graph, LevelParams(p, 1), **kw).count
    if lower == 0:
        raise ZeroDenominator(f"no balanced level-1 numberings on {graph.name} at p={p}")
    upper = count_dp(graph, LevelParams(p, 2), **kw).count
    q, r = divmod(upper, lower)
    if r:
        raise NonIntegerRatio(f"{upper}/{lower} on {graph.name} at p={p}")
    return q


def deg_ver_closed(g: int, p: int) -> int:
    if g == 2:
        num, den = p**3 + 2 * p, 3
    elif g == 3:
        num, den = 2 * p**6 + 5 * p**4 + 38 * p**2, 45
    else:
        raise UnsupportedGenus(f"no closed form for genus {g}")
    q, r = divmod(num, den)
    if r:
        raise NonIntegerRatio(f"closed form not integral at g={g}, p={p}")
    return q


def deg_ver(g: int, p: int, **kw) -> int:
    if g in (2, 3):
        return deg_ver_closed(g, p)
    return deg_ver_ratio(catalog(f"chain:{g}"), p, **kw)


def deg_pi_n(g: int, p: int, N: int, precision_bits: int = 128, **kw) -> int:
    if N < 1:
        raise ValueError("N must be positive")
    base = deg_pi1_sine(g, p, precision_bits)
    if N == 1:
        return base
    return base * deg_ver(g, p, **kw) ** (N - 1)


def degree(quantity: str, g: int, p: int, N: int = 1, precision_bits: int = 128,
           graph: TrivalentGraph | None = None, **kw) -> DegreeResult:
    """Front door used by the CLI."""
    if quantity == "pi1":
        return DegreeResult(g, p, "pi1", deg_pi1_sine(g, p, precision_bits), "sine_sum")
    if quantity == "pi_N":
        return DegreeResult(g, p, "pi_N", deg_pi_n(g, p, N, precision_bits, **kw), "product")
    if quantity == "ver":
        if graph is not None:
            if genus(graph) != g:
                raise ValueError(f"graph {graph.name} has genus {genus(graph)}, not {g}")
            return DegreeResult(g, p, "ver", deg_ver_ratio(graph, p, **kw), "count_ratio")
        if g in (2, 3):
            return DegreeResult(g, p, "ver", deg_ver_closed(g, p), "closed_form")
        return DegreeResult(g, p, "ver", deg_ver_ratio(catalog(f"chain:{g}"), p, **kw), "count_ratio")
    raise ValueError(f"unknown quantity {quantity!r}")
