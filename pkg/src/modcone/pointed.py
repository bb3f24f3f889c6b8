"""Divisor classes and general-type certificates on moduli of pointed curves.

Certificate strategy: write the canonical class as

    K = sum alpha_k D_k  +  P  +  (nonnegative boundary)

with each D_k a known effective symmetric class and P an ample class of the
shape sum(a psi_i) + b lambda - t delta_0 - t sum delta_{i:S} with b/t > 11
and a > 0.  The ample family is a cone, so its overall scale t is a variable;
the LP is linear in (alpha_k, a, b, t, slacks) and every strict inequality is
encoded with an explicit rational gap, then re-verified exactly.

Candidate coefficients flagged as lower bounds are used at their stored
values: in each boundary equation k_j = sum alpha_k c_k,j - t + e_j the slack
e_j grows when a candidate coefficient c_k,j drops (true b larger), so
feasibility at the bound implies feasibility at the true class.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linprog
from .exact import binomial, format_fraction
from .picard import (
    DivisorClass,
    ModuliSignature,
    SymmetricDivisorClass,
    divisor_class,
    sep,
    symmetric_class,
    symmetric_keys,
    symmetrize,
)
from .slopes import POSITIVITY_GAP, canonical_class_mg


def canonical_class_gn(g: int, n: int) -> DivisorClass:
    """13 lambda - 2 delta_0 + sum psi_i - 2 sum delta_{i:S} - sum delta_{1:S}.

    Every canonical separating class gets -2, with an extra -1 when its
    canonical genus part is 1 (for g >= 3 that means one side is an elliptic
    tail; the sum is read over all S including the empty set).
    """
    sig = ModuliSignature(g, n)
    if g == 0:
        raise ValueError("the displayed canonical class needs g >= 1")
    deltas = {}
    for (j, s) in symmetric_keys(sig):
        extra = 1 if (j == 1 or g - j == 1) else 0
        for idx in _orbit(j, s, sig):
            deltas[idx] = Fraction(-2 - extra)
    return divisor_class(sig, 13, (Fraction(1),) * n, -2, deltas)


def _orbit(j, s, sig):
    from .picard import orbit_indices

    return orbit_indices(j, s, sig)


def logan_class(g: int, weights: Sequence[int]) -> DivisorClass:
    """Pointed Brill-Noether class for nonnegative weights summing to g.

    Only the displayed coefficients are filled in: lambda = -1, psi_i =
    C(a_i+1, 2), delta_0 = 0 and delta_{0:{i,j}} = -C(a_i+a_j+1, 2); every
    other boundary coefficient is unknown, so the class is flagged
    incomplete.  The n = 1 case is the Weierstrass-point divisor and is
    returned complete: -lambda + C(g+1,2) psi - sum C(g-i+1,2) delta_{i:{1}}.
    """
    weights = list(weights)
    n = len(weights)
    if any(a < 0 for a in weights):
        raise ValueError("weights must be nonnegative")
    if sum(weights) != g:
        raise ValueError(f"weights sum to {sum(weights)}, need g = {g}")
    sig = ModuliSignature(g, n)
    psi = tuple(Fraction(binomial(a + 1, 2)) for a in weights)
    if n == 1:
        deltas = {
            sep(i, (1,)): Fraction(-binomial(g - i + 1, 2)) for i in range(1, g)
        }
        return divisor_class(sig, -1, psi, 0, deltas, incomplete=False)
    deltas = {}
    for i in range(n):
        for j in range(i + 1, n):
            deltas[sep(0, (i + 1, j + 1))] = Fraction(
                -binomial(weights[i] + weights[j] + 1, 2)
            )
    return divisor_class(sig, -1, psi, 0, deltas, incomplete=True)


@dataclass(frozen=True)
class MrcParams:
    g: int
    r: int
    i: int
    n: int


def mrc_params(g: int, r: int, i: int) -> MrcParams:
    if g < 3:
        raise ValueError("need g >= 3 (the coefficient formulas divide by g-2)")
    if r < 1 or not 0 <= i <= g:
        raise ValueError("need r >= 1 and 0 <= i <= g")
    n = (2 * r + 1) * (g - 1) - 2 * i
    if n < 1:
        raise ValueError(f"derived n = {n} < 1")
    assert n % 2 == (g - 1) % 2
    return MrcParams(g, r, i, n)


def mrc_class(g: int, r: int, i: int) -> SymmetricDivisorClass:
    """Class of the compactified theta-divisor locus of marked points,
    with prefactor C(g-1, i)/(g-1); genus part >= 1 boundary coefficients are
    stored at the genus-0 bound value and flagged as lower bounds.

    The lambda and delta_0 coefficient formulas evaluate negative for small
    i (matching the -lambda of the Weierstrass class); they are implemented
    verbatim.
    """
    p = mrc_params(g, r, i)
    n = p.n
    sig = ModuliSignature(g, n)
    pre = Fraction(binomial(g - 1, i), g - 1)
    c = Fraction(r * g + g - i - r - 1)
    b0 = -Fraction(
        binomial(r + 1, 2) * (g - 1) * (g - 2) + i * (i + 1 + 2 * r - r * g - g), g - 2
    )
    a = -Fraction(
        (g - 1) * (g - 2) * (6 * r**2 + 6 * r + 1)
        + i * (24 * r + 10 * i + 10 - 10 * g - 12 * r * g),
        g - 2,
    )

    def b0s(s: int) -> Fraction:
        return Fraction(binomial(s + 1, 2) * (g - 1) + s * (r * g - r) - s * i)

    delta_sym = {}
    bounds = []
    for (j, s) in symmetric_keys(sig):
        delta_sym[(j, s)] = -pre * b0s(s)
        if j >= 1:
            bounds.append((j, s))
    return symmetric_class(
        sig,
        lam=pre * a,
        psi_sum=pre * c,
        delta0=-pre * b0,
        delta_sym=delta_sym,
        lower_bounds=bounds,
    )


@dataclass(frozen=True)
class GnCertificate:
    """Exact decomposition K = sum alpha_k D_k + ample + boundary."""

    alphas: tuple[Fraction, ...]
    ample_scale: Fraction      # t: common -delta coefficient of the ample part
    ample_lambda: Fraction     # b~ = t * b with b > 11
    ample_psi: Fraction        # a~ per marked point (zero when n = 0)
    boundary_delta0: Fraction
    boundary: tuple[tuple[tuple[int, int], Fraction], ...]

    def describe(self) -> str:
        al = ", ".join(format_fraction(a) for a in self.alphas)
        return (
            f"alphas=({al}) ample(lambda={format_fraction(self.ample_lambda)}, "
            f"psi={format_fraction(self.ample_psi)}, scale={format_fraction(self.ample_scale)})"
        )


def general_type_certificate_gn(g: int, n: int, candidates: Sequence) -> GnCertificate | None:
    """Exact LP for the canonical-class decomposition; None means inconclusive.

    Candidates may be SymmetricDivisorClass or S_n-invariant DivisorClass
    values; incomplete candidates (unknown coefficients) are rejected.
    """
    sig = ModuliSignature(g, n)
    syms: list[SymmetricDivisorClass] = []
    for cand in candidates:
        sym = cand if isinstance(cand, SymmetricDivisorClass) else symmetrize(cand)
        if sym.signature != sig:
            raise ValueError(f"candidate signature {sym.signature} != (g={g}, n={n})")
        if sym.incomplete:
            raise ValueError("candidate has unknown coefficients; certificate refused")
        syms.append(sym)
    k_sym = symmetrize(canonical_class_gn(g, n))
    keys = symmetric_keys(sig)
    m = len(syms)
    has_psi = n >= 1
    # variables: alpha_0..alpha_{m-1}, t, [a~], b~, u (slack of b~ - 11 t >= gap), e_0, e_keys...
    nvars = m + 2 + (1 if has_psi else 0) + 1 + 1 + len(keys)
    i_t = m
    i_a = m + 1 if has_psi else None
    i_b = m + (2 if has_psi else 1)
    i_u = i_b + 1
    i_e0 = i_u + 1

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    def new_row():
        return [Fraction(0)] * nvars

    row = new_row()  # lambda
    for k, sym in enumerate(syms):
        row[k] = sym.lam
    row[i_b] = Fraction(1)
    rows.append(row)
    rhs.append(k_sym.lam)
    if has_psi:
        row = new_row()
        for k, sym in enumerate(syms):
            row[k] = sym.psi_sum
        row[i_a] = Fraction(1)
        rows.append(row)
        rhs.append(k_sym.psi_sum)
    row = new_row()  # delta_0
    for k, sym in enumerate(syms):
        row[k] = sym.delta0
    row[i_t] = Fraction(-1)
    row[i_e0] = Fraction(1)
    rows.append(row)
    rhs.append(k_sym.delta0)
    for pos, key in enumerate(keys):
        row = new_row()
        for k, sym in enumerate(syms):
            row[k] = sym.delta_sym.get(key, Fraction(0))
        row[i_t] = Fraction(-1)
        row[i_e0 + 1 + pos] = Fraction(1)
        rows.append(row)
        rhs.append(k_sym.delta_sym.get(key, Fraction(0)))
    row = new_row()  # b~ - 11 t - u = gap  (encodes b/t > 11)
    row[i_b] = Fraction(1)
    row[i_t] = Fraction(-11)
    row[i_u] = Fraction(-1)
    rows.append(row)
    rhs.append(POSITIVITY_GAP)

    lower = [Fraction(0)] * nvars
    lower[i_t] = POSITIVITY_GAP
    if has_psi:
        lower[i_a] = POSITIVITY_GAP
    x = linprog.lexmin_solution(rows, rhs, lower)
    if x is None:
        return None
    alphas = tuple(x[:m])
    t, b = x[i_t], x[i_b]
    a = x[i_a] if has_psi else Fraction(0)
    e0 = x[i_e0]
    boundary = tuple((key, x[i_e0 + 1 + pos]) for pos, key in enumerate(keys))
    # exact re-verification of the decomposition and the strict inequalities
    assert t > 0 and b > 11 * t and (not has_psi or a > 0)
    assert k_sym.lam == sum(al * s_.lam for al, s_ in zip(alphas, syms)) + b
    if has_psi:
        assert k_sym.psi_sum == sum(al * s_.psi_sum for al, s_ in zip(alphas, syms)) + a
    assert k_sym.delta0 == sum(al * s_.delta0 for al, s_ in zip(alphas, syms)) - t + e0
    for key, e in boundary:
        lhs = sum(al * s_.delta_sym.get(key, Fraction(0)) for al, s_ in zip(alphas, syms))
        assert k_sym.delta_sym.get(key, Fraction(0)) == lhs - t + e
        assert e >= 0
    return GnCertificate(alphas, t, b, a, e0, boundary)


# Genus range 4..21: smallest marked-point count for which the moduli space
# of pointed curves is reported to be of general type.  Literature-reported
# fixture; re-deriving it needs pullback machinery that is out of scope here.
MGN_GENERAL_TYPE_TABLE: dict[int, int] = {
    4: 16, 5: 15, 6: 16, 7: 15, 8: 14, 9: 13, 10: 11, 11: 12, 12: 13,
    13: 11, 14: 10, 15: 10, 16: 9, 17: 9, 18: 9, 19: 7, 20: 6, 21: 4,
}


def mgn_table() -> dict[int, int]:
    return dict(MGN_GENERAL_TYPE_TABLE)


def canonical_reduction_check(g: int) -> bool:
    """canonical_class_gn(g, 0) must equal the n = 0 canonical class."""
    from .picard import same_coefficients

    return same_coefficients(canonical_class_gn(g, 0), canonical_class_mg(g))
