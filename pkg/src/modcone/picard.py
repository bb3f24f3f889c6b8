"""Exact linear algebra over the standard basis of Pic of the moduli space
of stable n-pointed genus-g curves.

A divisor class is a coefficient vector over (lambda, psi_1..psi_n, delta_0,
delta_{i:S}).  Separating boundary indices are stored in the canonical form
induced by the identification delta_{i:S} = delta_{g-i:S^c}: the smaller
genus wins, and on a tie the side whose label set contains 1 wins.

For g <= 2 these symbols satisfy relations in Pic, so equality of coefficient
vectors is finer than equality of classes there; the package works with the
formal vectors throughout and leaves that caveat to the caller.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exact import format_fraction, parse_fraction

IRREDUCIBLE = "irreducible"
SEPARATING = "separating"


@dataclass(frozen=True, order=True)
class ModuliSignature:
    g: int
    n: int = 0

    def __post_init__(self):
        if self.g < 0 or self.n < 0:
            raise ValueError("genus and marked-point count must be nonnegative")
        if 2 * self.g - 2 + self.n <= 0:
            raise ValueError(f"unstable signature (g={self.g}, n={self.n})")


@dataclass(frozen=True, order=True)
class BoundaryIndex:
    """One boundary divisor symbol: delta_0 (irreducible) or delta_{i:S}."""

    kind: str
    i: int = 0
    labels: tuple[int, ...] = ()

    def key_str(self) -> str:
        if self.kind == IRREDUCIBLE:
            return "0"
        if not self.labels:
            return str(self.i)
        return f"{self.i}:{{{','.join(str(l) for l in self.labels)}}}"


DELTA0 = BoundaryIndex(IRREDUCIBLE)


def sep(i: int, labels: Iterable[int] = ()) -> BoundaryIndex:
    return BoundaryIndex(SEPARATING, i, tuple(sorted(labels)))


def canonicalize(idx: BoundaryIndex, sig: ModuliSignature) -> BoundaryIndex:
    """Canonical representative of a boundary index; idempotent.

    Rejects indices that do not name a boundary divisor: genus part out of
    range, repeated or out-of-range labels, or a genus-0 side with fewer
    than 2 special labels.
    """
    if idx.kind == IRREDUCIBLE:
        if idx.i != 0 or idx.labels:
            raise ValueError("irreducible index carries no genus part or labels")
        return DELTA0
    if idx.kind != SEPARATING:
        raise ValueError(f"unknown boundary kind {idx.kind!r}")
    g, n = sig.g, sig.n
    if not 0 <= idx.i <= g:
        raise ValueError(f"genus part {idx.i} out of range for g={g}")
    labels = tuple(sorted(idx.labels))
    if len(set(labels)) != len(labels):
        raise ValueError(f"repeated labels in {idx.key_str()}")
    if labels and (labels[0] < 1 or labels[-1] > n):
        raise ValueError(f"labels out of range in {idx.key_str()}")
    comp = tuple(l for l in range(1, n + 1) if l not in set(labels))
    if idx.i == 0 and len(labels) < 2:
        raise ValueError(f"delta_{idx.key_str()}: genus-0 side needs at least 2 marked points")
    if g - idx.i == 0 and len(comp) < 2:
        raise ValueError(f"delta_{idx.key_str()}: genus-0 complement needs at least 2 marked points")
    if idx.i < g - idx.i:
        return BoundaryIndex(SEPARATING, idx.i, labels)
    if idx.i > g - idx.i:
        return BoundaryIndex(SEPARATING, g - idx.i, comp)
    # tie i = g - i: keep the side containing label 1 (empty set for n = 0)
    if n == 0 or 1 in labels:
        return BoundaryIndex(SEPARATING, idx.i, labels)
    return BoundaryIndex(SEPARATING, idx.i, comp)


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not welcome in exact divisor classes")
    return Fraction(x)


@dataclass(frozen=True)
class DivisorClass:
    """Sparse coefficient vector; use :func:`divisor_class` to build one.

    `lower_bound_keys` marks boundary keys whose stored coefficient -b is
    only known to satisfy (true b) >= (stored b); `incomplete` marks classes
    whose unlisted boundary coefficients are unknown rather than zero.
    """

    signature: ModuliSignature
    lam: Fraction = Fraction(0)
    psi: tuple[Fraction, ...] = ()
    delta0: Fraction = Fraction(0)
    deltas: Mapping[BoundaryIndex, Fraction] = field(default_factory=dict)
    lower_bound_keys: frozenset[BoundaryIndex] = frozenset()
    incomplete: bool = False

    def coefficient(self, idx: BoundaryIndex) -> Fraction:
        idx = canonicalize(idx, self.signature)
        if idx.kind == IRREDUCIBLE:
            return self.delta0
        return self.deltas.get(idx, Fraction(0))

    def b_values(self) -> list[Fraction]:
        """For n = 0 classes a*lambda - sum b_i delta_i: the list (b_0..b_[g/2])."""
        if self.signature.n != 0:
            raise ValueError("b-vector extraction needs an n = 0 signature")
        out = [-self.delta0]
        for i in range(1, self.signature.g // 2 + 1):
            out.append(-self.deltas.get(sep(i), Fraction(0)))
        return out

    def is_zero(self) -> bool:
        return (
            self.lam == 0
            and all(p == 0 for p in self.psi)
            and self.delta0 == 0
            and not self.deltas
        )

    def scaled(self, k) -> "DivisorClass":
        return lincomb([(k, self)])

    def __repr__(self) -> str:
        parts = []
        if self.lam:
            parts.append(f"{format_fraction(self.lam)}*lambda")
        for j, p in enumerate(self.psi, start=1):
            if p:
                parts.append(f"{format_fraction(p)}*psi{j}")
        if self.delta0:
            parts.append(f"{format_fraction(self.delta0)}*delta_0")
        for idx in sorted(self.deltas):
            parts.append(f"{format_fraction(self.deltas[idx])}*delta_{{{idx.key_str()}}}")
        body = " + ".join(parts) if parts else "0"
        return f"<{body} on M({self.signature.g},{self.signature.n})>"


def divisor_class(
    sig: ModuliSignature,
    lam=0,
    psi: Sequence = (),
    delta0=0,
    deltas: Mapping | None = None,
    lower_bounds: Iterable[BoundaryIndex] = (),
    incomplete: bool = False,
) -> DivisorClass:
    """Normalizing constructor: canonicalizes keys and drops zero coefficients."""
    psi_t = tuple(_as_fraction(p) for p in psi)
    if len(psi_t) < sig.n:
        psi_t = psi_t + (Fraction(0),) * (sig.n - len(psi_t))
    if len(psi_t) != sig.n:
        raise ValueError(f"psi vector has length {len(psi_t)}, expected n={sig.n}")
    d0 = _as_fraction(delta0)
    acc: dict[BoundaryIndex, Fraction] = {}
    for raw, value in (deltas or {}).items():
        idx = canonicalize(raw, sig)
        value = _as_fraction(value)
        if idx.kind == IRREDUCIBLE:
            d0 += value
            continue
        acc[idx] = acc.get(idx, Fraction(0)) + value
    cleaned = {k: v for k, v in sorted(acc.items()) if v != 0}
    bounds = frozenset(canonicalize(k, sig) for k in lower_bounds)
    return DivisorClass(sig, _as_fraction(lam), psi_t, d0, cleaned, bounds, incomplete)


def zero_class(sig: ModuliSignature) -> DivisorClass:
    return divisor_class(sig)


def lincomb(terms: Sequence[tuple]) -> DivisorClass:
    """Exact linear combination sum(coeff * class); all terms share a signature."""
    if not terms:
        raise ValueError("lincomb of an empty term list has no signature")
    sig = terms[0][1].signature
    lam = Fraction(0)
    psi = [Fraction(0)] * sig.n
    d0 = Fraction(0)
    deltas: dict[BoundaryIndex, Fraction] = {}
    bounds: set[BoundaryIndex] = set()
    incomplete = False
    for coeff, cls in terms:
        if cls.signature != sig:
            raise ValueError(f"signature mismatch: {cls.signature} vs {sig}")
        c = _as_fraction(coeff)
        lam += c * cls.lam
        for j in range(sig.n):
            psi[j] += c * cls.psi[j]
        d0 += c * cls.delta0
        for idx, v in cls.deltas.items():
            deltas[idx] = deltas.get(idx, Fraction(0)) + c * v
        if c != 0:
            bounds |= cls.lower_bound_keys
            incomplete = incomplete or cls.incomplete
    return divisor_class(sig, lam, psi, d0, deltas, bounds, incomplete)


def same_coefficients(a: DivisorClass, b: DivisorClass) -> bool:
    """Coefficient-wise equality, ignoring bound/completeness metadata."""
    return (
        a.signature == b.signature
        and a.lam == b.lam
        and a.psi == b.psi
        and a.delta0 == b.delta0
        and a.deltas == b.deltas
    )


# ---------------------------------------------------------------------------
# JSON interchange


def _parse_boundary_key(key: str, sig: ModuliSignature) -> BoundaryIndex:
    body = key.strip()
    if ":" in body:
        head, _, rest = body.partition(":")
        rest = rest.strip()
        if not (rest.startswith("{") and rest.endswith("}")):
            raise ValueError(f"malformed boundary key {key!r}")
        inner = rest[1:-1].strip()
        labels = tuple(int(x) for x in inner.split(",")) if inner else ()
        return BoundaryIndex(SEPARATING, int(head), labels)
    i = int(body)
    if i == 0:
        return DELTA0
    return BoundaryIndex(SEPARATING, i, ())


def serialize(cls: DivisorClass) -> str:
    """JSON text; rationals as "p/q" strings, boundary keys as "i:{labels}"."""
    doc: dict = {
        "g": cls.signature.g,
        "n": cls.signature.n,
        "lambda": format_fraction(cls.lam),
        "psi": [format_fraction(p) for p in cls.psi],
        "delta": {},
    }
    if cls.delta0 != 0:
        doc["delta"]["0"] = format_fraction(cls.delta0)
    for idx in sorted(cls.deltas):
        doc["delta"][idx.key_str()] = format_fraction(cls.deltas[idx])
    if cls.lower_bound_keys:
        doc["lower_bounds"] = [k.key_str() for k in sorted(cls.lower_bound_keys)]
    if cls.incomplete:
        doc["incomplete"] = True
    return json.dumps(doc, indent=2)


def deserialize(text: str) -> DivisorClass:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError("divisor-class document must be a JSON object")
    if doc.get("symmetric"):
        raise ValueError("symmetric document passed to full-class deserializer")
    sig = ModuliSignature(int(doc["g"]), int(doc.get("n", 0)))
    lam = parse_fraction(doc.get("lambda", "0"))
    psi_raw = doc.get("psi", [])
    if len(psi_raw) != sig.n:
        raise ValueError(f"psi list has length {len(psi_raw)}, expected {sig.n}")
    psi = tuple(parse_fraction(p) for p in psi_raw)
    d0 = Fraction(0)
    deltas: dict[BoundaryIndex, Fraction] = {}
    for key, raw in doc.get("delta", {}).items():
        idx = _parse_boundary_key(key, sig)
        value = parse_fraction(raw)
        if idx.kind == IRREDUCIBLE:
            d0 = value
            continue
        if canonicalize(idx, sig) != idx:
            raise ValueError(f"non-canonical boundary key {key!r}")
        deltas[idx] = value
    bounds = []
    for key in doc.get("lower_bounds", []):
        idx = _parse_boundary_key(key, sig)
        if idx.kind == SEPARATING and canonicalize(idx, sig) != idx:
            raise ValueError(f"non-canonical boundary key {key!r}")
        bounds.append(idx)
    return divisor_class(
        sig, lam, psi, d0, deltas, bounds, incomplete=bool(doc.get("incomplete", False))
    )


# ---------------------------------------------------------------------------
# Symmetric (S_n-invariant) classes, keyed by (genus part, |S|)


def canonical_pair(j: int, s: int, sig: ModuliSignature) -> tuple[int, int]:
    """Canonical (genus part, label count) under (j, s) ~ (g-j, n-s)."""
    g, n = sig.g, sig.n
    if not 0 <= j <= g or not 0 <= s <= n:
        raise ValueError(f"pair ({j},{s}) out of range for (g,n)=({g},{n})")
    if j == 0 and s < 2:
        raise ValueError(f"pair ({j},{s}): genus-0 side needs at least 2 marked points")
    if j == g and n - s < 2:
        raise ValueError(f"pair ({j},{s}): genus-0 complement needs at least 2 marked points")
    if j < g - j or (j == g - j and s <= n - s):
        return (j, s)
    return (g - j, n - s)


def symmetric_keys(sig: ModuliSignature) -> list[tuple[int, int]]:
    """All canonical (j, s) pairs naming a separating boundary orbit."""
    out = []
    for j in range(0, sig.g // 2 + 1):
        for s in range(0, sig.n + 1):
            if j == 0 and s < 2:
                continue
            if 2 * j == sig.g and 2 * s > sig.n:
                continue
            out.append((j, s))
    return out


def orbit_indices(j: int, s: int, sig: ModuliSignature) -> list[BoundaryIndex]:
    """The distinct canonical boundary indices in the S_n-orbit of (j, s)."""
    j, s = canonical_pair(j, s, sig)
    seen = []
    known = set()
    for labels in combinations(range(1, sig.n + 1), s):
        idx = canonicalize(BoundaryIndex(SEPARATING, j, labels), sig)
        if idx not in known:
            known.add(idx)
            seen.append(idx)
    return sorted(seen)


@dataclass(frozen=True)
class SymmetricDivisorClass:
    signature: ModuliSignature
    lam: Fraction = Fraction(0)
    psi_sum: Fraction = Fraction(0)
    delta0: Fraction = Fraction(0)
    delta_sym: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)
    lower_bound_keys: frozenset[tuple[int, int]] = frozenset()
    incomplete: bool = False

    def coefficient(self, j: int, s: int) -> Fraction:
        return self.delta_sym.get(canonical_pair(j, s, self.signature), Fraction(0))


def symmetric_class(
    sig, lam=0, psi_sum=0, delta0=0, delta_sym=None, lower_bounds=(), incomplete=False
) -> SymmetricDivisorClass:
    acc: dict[tuple[int, int], Fraction] = {}
    for (j, s), v in (delta_sym or {}).items():
        key = canonical_pair(j, s, sig)
        acc[key] = acc.get(key, Fraction(0)) + _as_fraction(v)
    cleaned = {k: v for k, v in sorted(acc.items()) if v != 0}
    bounds = frozenset(canonical_pair(j, s, sig) for (j, s) in lower_bounds)
    return SymmetricDivisorClass(
        sig, _as_fraction(lam), _as_fraction(psi_sum), _as_fraction(delta0),
        cleaned, bounds, incomplete,
    )


def expand(sym: SymmetricDivisorClass) -> DivisorClass:
    """Spell a symmetric class out over the full boundary basis."""
    sig = sym.signature
    deltas: dict[BoundaryIndex, Fraction] = {}
    bounds: list[BoundaryIndex] = []
    for (j, s) in sorted(set(sym.delta_sym) | sym.lower_bound_keys):
        orbit = orbit_indices(j, s, sig)
        v = sym.delta_sym.get((j, s), Fraction(0))
        if v != 0:
            for idx in orbit:
                deltas[idx] = v
        if (j, s) in sym.lower_bound_keys:
            bounds.extend(orbit)
    return divisor_class(
        sig, sym.lam, (sym.psi_sum,) * sig.n, sym.delta0, deltas, bounds, sym.incomplete
    )


def symmetrize(cls: DivisorClass) -> SymmetricDivisorClass:
    """Inverse of :func:`expand` on S_n-invariant classes; raises otherwise."""
    sig = cls.signature
    psi_sum = cls.psi[0] if sig.n else Fraction(0)
    if any(p != psi_sum for p in cls.psi):
        raise ValueError("psi coefficients are not constant: class is not symmetric")
    delta_sym: dict[tuple[int, int], Fraction] = {}
    bounds = []
    support = dict(cls.deltas)
    for (j, s) in symmetric_keys(sig):
        orbit = orbit_indices(j, s, sig)
        values = {support.pop(idx, Fraction(0)) for idx in orbit}
        flags = {idx in cls.lower_bound_keys for idx in orbit}
        if len(values) > 1 or len(flags) > 1:
            raise ValueError(f"coefficients not constant on orbit ({j},{s})")
        v = values.pop()
        if v != 0:
            delta_sym[(j, s)] = v
        if flags.pop():
            bounds.append((j, s))
    if support:
        raise ValueError("class has support outside the symmetric orbits")
    return symmetric_class(
        sig, cls.lam, psi_sum, cls.delta0, delta_sym, bounds, cls.incomplete
    )


def serialize_symmetric(sym: SymmetricDivisorClass) -> str:
    doc: dict = {
        "g": sym.signature.g,
        "n": sym.signature.n,
        "symmetric": True,
        "lambda": format_fraction(sym.lam),
        "psi_sum": format_fraction(sym.psi_sum),
        "delta0": format_fraction(sym.delta0),
        "delta_sym": {f"{j}:{s}": format_fraction(v) for (j, s), v in sorted(sym.delta_sym.items())},
    }
    if sym.lower_bound_keys:
        doc["lower_bounds"] = [f"{j}:{s}" for (j, s) in sorted(sym.lower_bound_keys)]
    if sym.incomplete:
        doc["incomplete"] = True
    return json.dumps(doc, indent=2)


def deserialize_symmetric(text: str) -> SymmetricDivisorClass:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON: {exc}") from exc
    if not doc.get("symmetric"):
        raise ValueError("not a symmetric divisor-class document")
    sig = ModuliSignature(int(doc["g"]), int(doc.get("n", 0)))

    def pair(key: str) -> tuple[int, int]:
        j, _, s = key.partition(":")
        got = (int(j), int(s))
        if canonical_pair(*got, sig) != got:
            raise ValueError(f"non-canonical symmetric key {key!r}")
        return got

    return symmetric_class(
        sig,
        parse_fraction(doc.get("lambda", "0")),
        parse_fraction(doc.get("psi_sum", "0")),
        parse_fraction(doc.get("delta0", "0")),
        {pair(k): parse_fraction(v) for k, v in doc.get("delta_sym", {}).items()},
        [pair(k) for k in doc.get("lower_bounds", [])],
        incomplete=bool(doc.get("incomplete", False)),
    )
