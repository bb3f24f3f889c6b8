"""F-curve functionals, F-nefness and F-ampleness tests, and exact cone
membership certificates.

On the moduli space of genus-g curves without marked points, a class
a*lambda - sum b_i delta_i meets the one-dimensional boundary strata in four
families of numbers, with the convention b_i = b_{g-i}:

    elliptic tail            a - 12 b_0 + b_1
    middle(i)                2 b_0 - b_i                    (i >= 1)
    pair(i, j)               b_i + b_j - b_{i+j}            (i, j >= 1, i+j <= g-1)
    quadruple(i, j, k, l)    b_i+b_j+b_k+b_l - b_{i+j} - b_{i+k} - b_{i+l}
                             (i, j, k, l >= 1, i+j+k+l = g)

The quadruple expression is written with a distinguished first index; all
orderings are generated and the resulting functionals deduplicated by exact
coefficient equality, so no reading of intent is baked in.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linprog
from .exact import format_fraction
from .picard import DivisorClass, lincomb, same_coefficients, zero_class

PROVED_NEF = "ProvedNef"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class FCurveFunctional:
    """A linear functional on (a, b_0, .., b_[g/2])."""

    g: int
    family: str
    indices: tuple[int, ...]
    a_coeff: int
    b_coeffs: tuple[int, ...]

    def evaluate(self, cls: DivisorClass) -> Fraction:
        if cls.signature.n != 0:
            raise ValueError("F-curve functionals act on n = 0 classes")
        if cls.signature.g != self.g:
            raise ValueError(f"genus mismatch: functional g={self.g}, class g={cls.signature.g}")
        b = cls.b_values()
        return self.a_coeff * cls.lam + sum(c * v for c, v in zip(self.b_coeffs, b))

    def describe(self) -> str:
        parts = []
        if self.a_coeff:
            parts.append(_term(self.a_coeff, "a", first=not parts))
        for i, c in enumerate(self.b_coeffs):
            if c:
                parts.append(_term(c, f"b{i}", first=not parts))
        return " ".join(parts) if parts else "0"


def _term(coeff: int, name: str, first: bool) -> str:
    mag = abs(coeff)
    body = name if mag == 1 else f"{mag}*{name}"
    if first:
        return body if coeff > 0 else f"-{body}"
    return f"+ {body}" if coeff > 0 else f"- {body}"


def _b_vector(g: int, contributions: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    vec = [0] * (g // 2 + 1)
    for m, c in contributions:
        vec[min(m, g - m)] += c
    return tuple(vec)


def enumerate_fcurve_functionals(g: int) -> list[FCurveFunctional]:
    """Duplicate-free functional list for the four families on genus g."""
    if g < 2:
        raise ValueError("need g >= 2")
    out: list[FCurveFunctional] = []
    seen: set[tuple] = set()

    def push(family, indices, a_coeff, contributions):
        vec = _b_vector(g, contributions)
        key = (a_coeff, vec)
        if key not in seen:
            seen.add(key)
            out.append(FCurveFunctional(g, family, tuple(indices), a_coeff, vec))

    push("elliptic_tail", (), 1, [(0, -12), (1, 1)])
    for i in range(1, g // 2 + 1):
        push("middle", (i,), 0, [(0, 2), (i, -1)])
    for i in range(1, g):
        for j in range(i, g - i):
            push("pair", (i, j), 0, [(i, 1), (j, 1), (i + j, -1)])
    for i in range(1, g - 2):
        for j in range(1, g - 2):
            for k in range(1, g - 2):
                l = g - i - j - k
                if l >= 1:
                    push(
                        "quadruple",
                        (i, j, k, l),
                        0,
                        [(i, 1), (j, 1), (k, 1), (l, 1), (i + j, -1), (i + k, -1), (i + l, -1)],
                    )
    return out


def quadruple_vector(g: int, i: int, j: int, k: int, l: int) -> tuple[int, ...]:
    """Coefficient vector of one ordered quadruple instance (for dedup audits)."""
    return _b_vector(g, [(i, 1), (j, 1), (k, 1), (l, 1), (i + j, -1), (i + k, -1), (i + l, -1)])


def enumerate_fcurves_0n(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """All partitions of {1..n} into exactly 4 nonempty blocks, each block a
    sorted tuple, blocks ordered by least element."""
    if n < 4:
        raise ValueError("need n >= 4")
    results: list[tuple[tuple[int, ...], ...]] = []

    def place(item: int, blocks: list[list[int]]) -> None:
        if item > n:
            if len(blocks) == 4:
                results.append(tuple(tuple(b) for b in blocks))
            return
        left_after = n - item
        for b in blocks:
            if len(blocks) + left_after >= 4:
                b.append(item)
                place(item + 1, blocks)
                b.pop()
        if len(blocks) < 4:
            blocks.append([item])
            place(item + 1, blocks)
            blocks.pop()

    place(1, [])
    return results


@dataclass(frozen=True)
class FCheckResult:
    passed: bool
    violations: tuple[tuple[FCurveFunctional, Fraction], ...]

    def __bool__(self) -> bool:
        return self.passed


def f_nef_check(cls: DivisorClass) -> FCheckResult:
    """Pass iff every F-functional is >= 0 on the class; lists all violations."""
    bad = []
    for f in enumerate_fcurve_functionals(cls.signature.g):
        v = f.evaluate(cls)
        if v < 0:
            bad.append((f, v))
    return FCheckResult(not bad, tuple(bad))


def f_ample_check(cls: DivisorClass) -> FCheckResult:
    """Strict variant: every functional must be > 0."""
    bad = []
    for f in enumerate_fcurve_functionals(cls.signature.g):
        v = f.evaluate(cls)
        if v <= 0:
            bad.append((f, v))
    return FCheckResult(not bad, tuple(bad))


def nef_sufficient(cls: DivisorClass) -> str:
    """PROVED_NEF when b_i >= b_0 for 1 <= i <= [g/2] and the F-check passes.

    The criterion is sufficient only, so the negative answer is
    INCONCLUSIVE, never "not nef".
    """
    b = cls.b_values()
    if all(bi >= b[0] for bi in b[1:]) and f_nef_check(cls).passed:
        return PROVED_NEF
    return INCONCLUSIVE


@dataclass(frozen=True)
class Certificate:
    """Nonnegative multipliers recombining generators into the target."""

    multipliers: tuple[Fraction, ...]
    residual: DivisorClass

    def describe(self) -> str:
        return "(" + ", ".join(format_fraction(m) for m in self.multipliers) + ")"


def _coordinate_rows(classes: Sequence[DivisorClass]):
    sig = classes[0].signature
    keys = sorted({k for cls in classes for k in cls.deltas})

    def coords(cls: DivisorClass) -> list[Fraction]:
        return (
            [cls.lam]
            + list(cls.psi)
            + [cls.delta0]
            + [cls.deltas.get(k, Fraction(0)) for k in keys]
        )

    return sig, coords


def cone_member(target: DivisorClass, generators: Sequence[DivisorClass]):
    """Exact membership test for the cone spanned by the generators.

    Returns the lexicographically minimal Certificate, or None when the
    target is not in the cone.
    """
    if not generators:
        if target.is_zero():
            return Certificate((), zero_class(target.signature))
        raise ValueError("empty generator list cannot express a nonzero target")
    sig, coords = _coordinate_rows([target, *generators])
    for gen in generators:
        if gen.signature != sig:
            raise ValueError("generators must share the target's signature")
    cols = [coords(gen) for gen in generators]
    rhs = coords(target)
    A = [[col[r] for col in cols] for r in range(len(rhs))]
    x = linprog.lexmin_solution(A, rhs)
    if x is None:
        return None
    recombined = lincomb(list(zip(x, generators)))
    residual = lincomb([(1, target), (-1, recombined)])
    assert same_coefficients(residual, zero_class(sig))
    return Certificate(tuple(x), residual)
