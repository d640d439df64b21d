"""Star-shaped plumbing bounding Sigma(a1, ..., an) and its mu-bar invariant.

The plumbing is negative definite with Euler number -1/A; for Sigma(2,3,5)
it is the E8 graph with all framings -2.
"""
from __future__ import annotations

import json
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, NamedTuple, Optional

from .exceptions import ConsistencyError, InputError
from .seifert import CoefficientVector, SeifertData, solve_coefficients

__all__ = [
    "IntersectionForm",
    "PlumbingAnalysis",
    "PlumbingGraph",
    "WuClass",
    "analyze",
    "aps_index",
    "bareiss_determinant",
    "build_plumbing",
    "evaluate_continued_fraction",
    "index_from_parts",
    "intersection_form",
    "mubar_oracle",
    "negative_continued_fraction",
    "signature",
    "symmetric_pivots",
    "wu_class",
]


def negative_continued_fraction(a: int, b: int) -> list[int]:
    """Coefficients c_j >= 2 with a/b = c_1 - 1/(c_2 - 1/(... - 1/c_k))."""
    if not 0 < b < a or math.gcd(a, b) != 1:
        raise InputError(f"need coprime 0 < b < a, got a={a}, b={b}")
    out = []
    while b:
        c = -(-a // b)
        out.append(c)
        a, b = b, c * b - a
    return out


def evaluate_continued_fraction(coeffs: Sequence[int]) -> Fraction:
    value = Fraction(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        value = c - 1 / value
    return value


@dataclass(frozen=True)
class PlumbingGraph:
    """Weighted star-shaped tree. Vertex 0 is the center; arm vertices follow."""

    framings: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    center: int
    arms: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.framings)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "center": self.center,
            "arms": [list(arm) for arm in self.arms],
            "framings": {str(v): f for v, f in enumerate(self.framings)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def to_dot(self) -> str:
        lines = ["graph plumbing {"]
        for v, f in enumerate(self.framings):
            lines.append(f'  {v} [label="{f}"];')
        for u, v in self.edges:
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_plumbing(Y: SeifertData, b: Optional[CoefficientVector] = None) -> PlumbingGraph:
    """Negative definite star-shaped plumbing with boundary Y.

    With b' = (-b_i) mod a_i the central framing is -1/A - sum(b'_i / a_i),
    and arm i carries the negated continued fraction of a_i / b'_i.
    """
    if b is None:
        b = solve_coefficients(Y)
    normalized = [(-bi) % ai for ai, bi in zip(Y.a, b)]
    central = Fraction(-1, Y.product) - sum(Fraction(bp, ai) for ai, bp in zip(Y.a, normalized))
    if central.denominator != 1:
        raise ConsistencyError(f"{Y}: central framing {central} is not an integer")
    framings = [central.numerator]
    edges = []
    arms = []
    for ai, bp in zip(Y.a, normalized):
        arm = []
        prev = 0
        for c in negative_continued_fraction(ai, bp):
            v = len(framings)
            framings.append(-c)
            edges.append((prev, v))
            arm.append(v)
            prev = v
        arms.append(tuple(arm))
    return PlumbingGraph(tuple(framings), tuple(edges), 0, tuple(arms))


@dataclass(frozen=True)
class IntersectionForm:
    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntersectionForm:
        m = len(rows)
        mat = tuple(tuple(int(x) for x in row) for row in rows)
        if any(len(row) != m for row in mat):
            raise InputError("intersection matrix must be square")
        for i in range(m):
            for j in range(i):
                if mat[i][j] != mat[j][i]:
                    raise InputError(f"intersection matrix not symmetric at ({i}, {j})")
        return cls(mat)

    @classmethod
    def from_graph(cls, G: PlumbingGraph) -> IntersectionForm:
        m = G.size
        rows = [[0] * m for _ in range(m)]
        for v, f in enumerate(G.framings):
            rows[v][v] = f
        for u, v in G.edges:
            rows[u][v] = rows[v][u] = 1
        return cls.from_rows(rows)

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(
            xi * q * yj
            for i, xi in enumerate(x) if xi
            for j, (q, yj) in enumerate(zip(self.matrix[i], y)) if q and yj
        )


class _Pivots(NamedTuple):
    singles: list[Fraction]
    blocks: list[Fraction]  # determinants of 2x2 pivot blocks, all negative


def symmetric_pivots(Q: IntersectionForm) -> _Pivots:
    """Exact symmetric (LDL^T style) elimination of Q.

    Vertices of least current degree are eliminated first, which for a tree
    means leaves inward and no fill-in. When every remaining diagonal entry
    is zero a 2x2 block [[0, b], [b, 0]] is used instead.
    """
    m = Q.dimension
    rows: dict[int, dict[int, Fraction]] = {
        i: {j: Fraction(x) for j, x in enumerate(Q.matrix[i]) if x} for i in range(m)
    }
    singles: list[Fraction] = []
    blocks: list[Fraction] = []

    def eliminate(ks: tuple[int, ...]) -> None:
        # Schur complement with respect to the pivot rows ks.
        others = sorted({j for k in ks for j in rows[k]} - set(ks))
        if len(ks) == 1:
            (k,) = ks
            d = rows[k].get(k, Fraction(0))
            coupling = {i: rows[k][i] / d for i in others}
            for i in others:
                for j in others:
                    _add(rows, i, j, -coupling[i] * rows[k][j])
        else:
            k, l = ks
            a, bb, c = rows[k].get(k, 0), rows[k].get(l, 0), rows[l].get(l, 0)
            det = a * c - bb * bb
            for i in others:
                xi, yi = rows[i].get(k, 0), rows[i].get(l, 0)
                # (xi, yi) B^{-1} with B = [[a, bb], [bb, c]]
                ui, vi = (xi * c - yi * bb) / det, (yi * a - xi * bb) / det
                for j in others:
                    xj, yj = rows[j].get(k, 0), rows[j].get(l, 0)
                    _add(rows, i, j, -(ui * xj + vi * yj))
        for k in ks:
            for j in list(rows[k]):
                if j not in ks:
                    del rows[j][k]
        for k in ks:
            del rows[k]

    while rows:
        candidates = [k for k in rows if rows[k].get(k)]
        if candidates:
            k = min(candidates, key=lambda v: (len(rows[v]), v))
            singles.append(rows[k][k])
            eliminate((k,))
            continue
        k = min(rows)
        partners = sorted(j for j in rows[k] if j != k)
        if not partners:
            raise ConsistencyError("intersection form is singular")
        l = partners[0]
        bb = rows[k][l]
        blocks.append(-bb * bb)
        eliminate((k, l))
    return _Pivots(singles, blocks)


def _add(rows: dict[int, dict[int, Fraction]], i: int, j: int, delta: Fraction) -> None:
    if not delta:
        return
    value = rows[i].get(j, Fraction(0)) + delta
    if value:
        rows[i][j] = value
    else:
        rows[i].pop(j, None)


def _pivot_determinant(p: _Pivots) -> int:
    det = Fraction(1)
    for x in p.singles:
        det *= x
    for x in p.blocks:
        det *= x
    if det.denominator != 1:
        raise ConsistencyError(f"determinant {det} of an integer matrix is not an integer")
    return det.numerator


def _pivot_signature(p: _Pivots) -> int:
    # each 2x2 block has negative determinant: one positive, one negative eigenvalue
    return sum(1 if x > 0 else -1 for x in p.singles)


def bareiss_determinant(Q: IntersectionForm) -> int:
    """Fraction-free determinant by Bareiss elimination."""
    a = [list(row) for row in Q.matrix]
    m = len(a)
    sign, prev = 1, 1
    for k in range(m - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, m) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[m - 1][m - 1] if m else 1


def intersection_form(G: PlumbingGraph) -> IntersectionForm:
    """Intersection matrix of the plumbing, checked unimodular and negative definite."""
    Q = IntersectionForm.from_graph(G)
    piv = symmetric_pivots(Q)
    det = _pivot_determinant(piv)
    if abs(det) != 1:
        raise ConsistencyError(f"not a homology sphere: det = {det}")
    if piv.blocks or any(x >= 0 for x in piv.singles):
        raise ConsistencyError("plumbing is not negative definite")
    return Q


def signature(Q: IntersectionForm) -> int:
    """Exact signature from the signs of the elimination pivots."""
    return _pivot_signature(symmetric_pivots(Q))


@dataclass(frozen=True)
class WuClass:
    coords: tuple[int, ...]

    def square(self, Q: IntersectionForm) -> int:
        return Q.pair(self.coords, self.coords)

    def is_characteristic(self, Q: IntersectionForm) -> bool:
        m = Q.dimension
        return all(
            (sum(w * q for w, q in zip(self.coords, Q.matrix[i])) - Q.matrix[i][i]) % 2 == 0
            for i in range(m)
        )

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)


def _solve_mod2(Q: IntersectionForm) -> tuple[Optional[tuple[int, ...]], int]:
    """Solve Q w = diag(Q) over GF(2); return (solution or None, rank)."""
    m = Q.dimension
    # bit j of a row holds column j; bit m holds the right-hand side
    rows = []
    for i, row in enumerate(Q.matrix):
        bits = sum(1 << j for j, q in enumerate(row) if q % 2)
        if row[i] % 2:
            bits |= 1 << m
        rows.append(bits)
    rank = 0
    pivot_cols = []
    for col in range(m):
        pivot = next((r for r in range(rank, m) if rows[r] >> col & 1), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(m):
            if r != rank and rows[r] >> col & 1:
                rows[r] ^= rows[rank]
        pivot_cols.append(col)
        rank += 1
    if rank < m:
        return None, rank
    return tuple(rows[r] >> m & 1 for r in range(m)), rank


def wu_class(Q: IntersectionForm) -> WuClass:
    """The characteristic class with 0/1 coordinates (unique when det Q is odd)."""
    coords, rank = _solve_mod2(Q)
    if coords is None:
        raise ConsistencyError(f"intersection form is singular mod 2 (rank {rank} < {Q.dimension})")
    return WuClass(coords)


class PlumbingAnalysis(NamedTuple):
    graph: PlumbingGraph
    form: IntersectionForm
    determinant: int
    signature: int
    negative_definite: bool
    wu: Optional[WuClass]
    wu_unique: bool
    wu_square: int


def analyze(Y: SeifertData, b: Optional[CoefficientVector] = None) -> PlumbingAnalysis:
    """Build the plumbing for Y and compute every quantity the oracle needs.

    Unlike :func:`intersection_form` this does not raise on failed gates; the
    caller inspects the fields.
    """
    G = build_plumbing(Y, b)
    Q = IntersectionForm.from_graph(G)
    piv = symmetric_pivots(Q)
    coords, rank = _solve_mod2(Q)
    wu = WuClass(coords) if coords is not None else None
    return PlumbingAnalysis(
        graph=G,
        form=Q,
        determinant=_pivot_determinant(piv),
        signature=_pivot_signature(piv),
        negative_definite=not piv.blocks and all(x < 0 for x in piv.singles),
        wu=wu,
        wu_unique=wu is not None and wu.is_characteristic(Q),
        wu_square=wu.square(Q) if wu is not None else 0,
    )


def mubar_oracle(Y: SeifertData) -> int:
    """mu-bar as (signature - w.w) / 8 on the plumbing."""
    Q = intersection_form(build_plumbing(Y))
    numerator = signature(Q) - wu_class(Q).square(Q)
    if numerator % 8:
        raise ConsistencyError(f"{Y}: signature - w.w = {numerator} is not divisible by 8")
    return numerator // 8


def index_from_parts(eta: Fraction, sig: int, wu_square: int) -> Fraction:
    """Index of the spin^c Dirac operator with c_1(L) dual to w, from the APS relation."""
    return -Fraction(eta) - Fraction(sig, 8) + Fraction(wu_square, 8)


def aps_index(Y: SeifertData) -> Fraction:
    """APS index of the spin^c Dirac operator on the plumbing (zero in theory)."""
    from .invariants import eta_combination

    Q = intersection_form(build_plumbing(Y))
    return index_from_parts(eta_combination(Y), signature(Q), wu_class(Q).square(Q))
