from __future__ import annotations

from fractions import Fraction

import hypothesis.strategies as st

from modcone.picard import (
    SEPARATING,
    BoundaryIndex,
    ModuliSignature,
    canonicalize,
    divisor_class,
)


def stable_signatures(max_g=8, max_n=5):
    return st.tuples(st.integers(0, max_g), st.integers(0, max_n)).filter(
        lambda gn: 2 * gn[0] - 2 + gn[1] > 0
    ).map(lambda gn: ModuliSignature(*gn))


def valid_separating_indices(sig: ModuliSignature) -> list[BoundaryIndex]:
    """Every well-formed separating index (canonical or not) for a signature."""
    out = []
    labels_pool = list(range(1, sig.n + 1))
    for i in range(0, sig.g + 1):
        for mask in range(1 << sig.n):
            labels = tuple(l for b, l in enumerate(labels_pool) if mask >> b & 1)
            if i == 0 and len(labels) < 2:
                continue
            if sig.g - i == 0 and sig.n - len(labels) < 2:
                continue
            out.append(BoundaryIndex(SEPARATING, i, labels))
    return out


small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def divisor_classes(draw, sig=None):
    if sig is None:
        sig = draw(stable_signatures(max_g=6, max_n=3))
    indices = valid_separating_indices(sig)
    chosen = draw(st.lists(st.sampled_from(indices), max_size=4)) if indices else []
    deltas = {idx: draw(small_fractions) for idx in chosen}
    return divisor_class(
        sig,
        lam=draw(small_fractions),
        psi=[draw(small_fractions) for _ in range(sig.n)],
        delta0=draw(small_fractions),
        deltas=deltas,
    )


@st.composite
def mg_classes(draw, g=None, positive=False):
    """n = 0 classes a*lambda - sum b_i delta_i with controllable positivity."""
    if g is None:
        g = draw(st.integers(3, 12))
    sig = ModuliSignature(g)
    if positive:
        a = draw(st.fractions(min_value=Fraction(1, 4), max_value=30, max_denominator=8))
        bs = [
            draw(st.fractions(min_value=Fraction(1, 6), max_value=8, max_denominator=8))
            for _ in range(g // 2 + 1)
        ]
    else:
        a = draw(small_fractions)
        bs = [draw(small_fractions) for _ in range(g // 2 + 1)]
    deltas = {BoundaryIndex(SEPARATING, i, ()): -bs[i] for i in range(1, g // 2 + 1)}
    return divisor_class(sig, a, (), -bs[0], deltas)
