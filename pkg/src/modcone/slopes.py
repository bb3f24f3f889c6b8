"""Slope function, named divisor classes on the moduli space of genus-g
curves, pairings against the standard one-parameter test families, and
general-type certificates.

Slope convention: for D = a*lambda - sum b_i delta_i the function returns
a / min_i b_i, the minimum running over every index 0..[g/2] with absent
coefficients counting as 0.  The value is finite exactly when a >= 0 and
every b_i is strictly positive; everything else is Infinite.  (For g <= 2,
boundary coefficients can be shifted by Picard relations, so the formula
value computed here is an upper bound for the infimum over representations.)
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linprog
from .exact import format_fraction
from .picard import (
    DivisorClass,
    ModuliSignature,
    lincomb,
    same_coefficients,
    divisor_class,
    sep,
)


class _Infinite:
    """Singleton slope value for classes with no finite slope representation."""

    def __repr__(self) -> str:
        return "Infinite"

    def __eq__(self, other) -> bool:
        return isinstance(other, _Infinite)

    def __hash__(self) -> int:
        return hash("modcone-infinite-slope")


INFINITE = _Infinite()

# Strict inequalities are handed to the LP as closed constraints with this
# explicit gap; certificates are re-verified symbolically afterwards.
POSITIVITY_GAP = Fraction(1, 10**6)


def rho(g: int, r: int, d: int) -> int:
    """Brill-Noether number g - (r+1)(g-d+r)."""
    if g < 0 or r < 0 or d < 0:
        raise ValueError("rho wants nonnegative arguments")
    return g - (r + 1) * (g - d + r)


def slope(cls: DivisorClass):
    """a / min b_i, or INFINITE when no admissible representation exists."""
    if cls.signature.n != 0:
        raise ValueError("slope is defined for n = 0 classes")
    a = cls.lam
    b = cls.b_values()
    if a < 0 or any(v < 0 for v in b):
        return INFINITE
    m = min(b)
    if m <= 0:
        return INFINITE
    return a / m


def brill_noether_class(g: int, r: int, d: int) -> DivisorClass:
    """(g+3)*lambda - (g+1)/6*delta_0 - sum i(g-i)*delta_i, normalized to
    leading constant 1; requires rho(g, r, d) = -1."""
    value = rho(g, r, d)
    if value != -1:
        raise ValueError(
            f"Brill-Noether divisor undefined: rho({g},{r},{d}) = {value}, need -1"
        )
    sig = ModuliSignature(g)
    deltas = {sep(i): Fraction(-i * (g - i)) for i in range(1, g // 2 + 1)}
    return divisor_class(sig, g + 3, (), Fraction(-(g + 1), 6), deltas)


def canonical_class_mg(g: int) -> DivisorClass:
    """13*lambda - 2*delta_0 - 3*delta_1 - 2*delta_2 - ... (coarse space)."""
    if g < 2:
        raise ValueError("need g >= 2")
    deltas = {sep(i): Fraction(-2) for i in range(2, g // 2 + 1)}
    if g // 2 >= 1:
        deltas[sep(1)] = Fraction(-3)
    return divisor_class(ModuliSignature(g), 13, (), -2, deltas)


def named_class(name: str) -> DivisorClass:
    """Built-in fixture classes.

    k10             class of the locus of genus-10 curves lying on a K3 surface
    hyperelliptic3  hyperelliptic locus on genus 3
    nef3a, nef3b    generators 12*lambda-delta_0 and 10*lambda-delta_0-2*delta_1
                    of the genus-3 nef cone (besides lambda)
    d22             quadric-section divisor on genus 22; delta_2..delta_11
                    coefficients are stored at their known bound 1 and flagged
                    as lower bounds on the true b_i
    """
    if name == "k10":
        sig = ModuliSignature(10)
        return divisor_class(
            sig, 7, (), -1,
            {sep(1): -5, sep(2): -9, sep(3): -12, sep(4): -14, sep(5): -15},
        )
    if name == "hyperelliptic3":
        return divisor_class(ModuliSignature(3), 9, (), -1, {sep(1): -3})
    if name == "nef3a":
        return divisor_class(ModuliSignature(3), 12, (), -1)
    if name == "nef3b":
        return divisor_class(ModuliSignature(3), 10, (), -1, {sep(1): -2})
    if name == "d22":
        sig = ModuliSignature(22)
        deltas = {sep(1): Fraction(-14511, 2636)}
        bounded = [sep(i) for i in range(2, 12)]
        for idx in bounded:
            deltas[idx] = Fraction(-1)
        return divisor_class(
            sig, Fraction(17121, 2636), (), -1, deltas, lower_bounds=bounded
        )
    raise ValueError(f"unknown named class {name!r}")


@dataclass(frozen=True)
class CurveProfile:
    """Intersection numbers of a one-parameter family with the generators."""

    name: str
    g: int
    lam: Fraction
    delta0: Fraction
    deltas: tuple[Fraction, ...]  # pairings with delta_1, delta_2, ...


def curve_profile(name: str, g: int) -> CurveProfile:
    """The built-in test families.

    B   Lefschetz pencil of genus-g curves on a general polarized K3 surface
    R   pencil of plane cubics attached to a fixed genus g-1 curve
    C0  genus g-1 curve with a moving point glued to a fixed one
    C1  fixed genus g-1 curve with an elliptic tail at a moving point
    """
    if name == "B":
        return CurveProfile("B", g, Fraction(g + 1), Fraction(6 * g + 18), ())
    if name == "R":
        return CurveProfile("R", g, Fraction(1), Fraction(12), (Fraction(-1),))
    if name == "C0":
        return CurveProfile("C0", g, Fraction(0), Fraction(-(2 * g - 2)), (Fraction(1),))
    if name == "C1":
        return CurveProfile("C1", g, Fraction(0), Fraction(0), (Fraction(-(2 * g - 4)),))
    raise ValueError(f"unknown curve profile {name!r}")


def pair(cls: DivisorClass, profile: CurveProfile) -> Fraction:
    """Exact dot product of the class coefficients with the curve pairings."""
    if cls.signature.n != 0 or cls.signature.g != profile.g:
        raise ValueError(
            f"profile {profile.name} has genus {profile.g}, class is on "
            f"(g={cls.signature.g}, n={cls.signature.n})"
        )
    total = cls.lam * profile.lam + cls.delta0 * profile.delta0
    for i, p in enumerate(profile.deltas, start=1):
        total += cls.coefficient(sep(i)) * p
    return total


@dataclass(frozen=True)
class K3SlopeReport:
    g: int
    slope: object
    threshold: Fraction  # 6 + 12/(g+1)
    slope_below_threshold: bool
    b_pairing: Fraction
    b_pairing_negative: bool


def k3_slope_test(cls: DivisorClass) -> K3SlopeReport:
    """Compare s(D) against 6 + 12/(g+1) and report the K3-pencil pairing.

    A strict slope deficit forces D to contain the locus of curves on K3
    surfaces; for classes with b_i >= b_0 > 0 the two reported tests agree.
    """
    g = cls.signature.g
    s = slope(cls)
    threshold = 6 + Fraction(12, g + 1)
    below = s is not INFINITE and s < threshold
    b = pair(cls, curve_profile("B", g))
    return K3SlopeReport(g, s, threshold, below, b, b < 0)


@dataclass(frozen=True)
class GeneralTypeCertificateMg:
    """Exact multipliers with K = alpha*D + beta*lambda + sum c_i delta_i."""

    alpha: Fraction
    beta: Fraction
    boundary: tuple[Fraction, ...]  # multipliers of delta_0, delta_1, ...

    def describe(self) -> str:
        bnd = ", ".join(format_fraction(c) for c in self.boundary)
        return (
            f"alpha={format_fraction(self.alpha)} beta={format_fraction(self.beta)} "
            f"boundary=({bnd})"
        )


def general_type_certificate_mg(cls: DivisorClass):
    """Search for K = alpha*D + beta*lambda + sum c_i delta_i with
    alpha, beta > 0 and c_i >= 0; returns the lexmin certificate or None.

    Lower-bound-flagged coefficients of D enter at their stored bound value;
    the boundary multiplier c_i = alpha*b_i - k_i grows with the true b_i, so
    feasibility at the bound implies feasibility at the true class.
    """
    g = cls.signature.g
    if cls.signature.n != 0:
        raise ValueError("this certificate lives on n = 0 moduli")
    if cls.incomplete:
        raise ValueError("candidate has unknown coefficients; certificate refused")
    k = canonical_class_mg(g)
    half = g // 2
    # coordinates: lambda, delta_0, delta_1..delta_half
    target = [k.lam, k.delta0] + [k.coefficient(sep(i)) for i in range(1, half + 1)]
    d_col = [cls.lam, cls.delta0] + [cls.coefficient(sep(i)) for i in range(1, half + 1)]
    nvars = 2 + (half + 1)  # alpha, beta, c_0..c_half
    A = []
    for row_idx in range(len(target)):
        row = [Fraction(0)] * nvars
        row[0] = d_col[row_idx]
        if row_idx == 0:
            row[1] = Fraction(1)
        else:
            row[2 + (row_idx - 1)] = Fraction(1)
        A.append(row)
    lower = [POSITIVITY_GAP, POSITIVITY_GAP] + [Fraction(0)] * (half + 1)
    x = linprog.lexmin_solution(A, target, lower)
    if x is None:
        return None
    alpha, beta, boundary = x[0], x[1], tuple(x[2:])
    assert alpha > 0 and beta > 0 and all(c >= 0 for c in boundary)
    pieces = [(alpha, cls), (beta, divisor_class(cls.signature, 1))]
    pieces.append((boundary[0], divisor_class(cls.signature, 0, (), 1)))
    for i in range(1, half + 1):
        pieces.append((boundary[i], divisor_class(cls.signature, 0, (), 0, {sep(i): 1})))
    assert same_coefficients(lincomb(pieces), k)
    return GeneralTypeCertificateMg(alpha, beta, boundary)
