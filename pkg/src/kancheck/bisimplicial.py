"""Truncated bisimplicial sets: commuting horizontal and vertical structures.

The first index p is horizontal, the second q vertical.  Horizontal tables
act on p, vertical tables on q, and every mixed pair of actions commutes.
Rows, columns and the diagonal are materialised as ordinary truncated
simplicial sets that reuse the bisimplex ids level by level.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import RejectedInput, TruncationError
from .simplicial import (
    Simplex,
    SimplicialMap,
    TruncatedSimplicialSet,
    validate_simplicial_identities,
)


class BiSimplex(NamedTuple):
    p: int
    q: int
    idx: int


def _as_table(entries: Sequence[int], size: int, target: int, what: str) -> tuple[int, ...]:
    table = tuple(int(v) for v in entries)
    if len(table) != size:
        raise RejectedInput(f"{what}: expected {size} entries, got {len(table)}")
    for v in table:
        if not 0 <= v < target:
            raise RejectedInput(f"{what}: entry {v} outside range(0, {target})")
    return table


class TruncatedBisimplicialSet:
    """Doubly indexed simplex tables with horizontal and vertical actions."""

    __slots__ = ("bounds", "counts", "_h_faces", "_h_degens", "_v_faces", "_v_degens", "_labels")

    def __init__(
        self,
        counts: Sequence[Sequence[int]],
        h_faces,
        h_degeneracies,
        v_faces,
        v_degeneracies,
        labels=None,
    ) -> None:
        if not counts or not counts[0]:
            raise RejectedInput("need at least the (0,0) level")
        P = len(counts) - 1
        Q = len(counts[0]) - 1
        if any(len(level) != Q + 1 for level in counts):
            raise RejectedInput("counts must form a full (P+1) x (Q+1) grid")
        self.bounds = (P, Q)
        self.counts = tuple(tuple(int(c) for c in level) for level in counts)

        def build(tables, acting_on, what):
            out = []
            for p in range(P + 1):
                row = []
                for q in range(Q + 1):
                    here = self.counts[p][q]
                    if acting_on == "h-face":
                        need = p + 1 if p >= 1 else 0
                        target = self.counts[p - 1][q] if p >= 1 else 0
                    elif acting_on == "h-degen":
                        need = p + 1 if p < P else 0
                        target = self.counts[p + 1][q] if p < P else 0
                    elif acting_on == "v-face":
                        need = q + 1 if q >= 1 else 0
                        target = self.counts[p][q - 1] if q >= 1 else 0
                    else:
                        need = q + 1 if q < Q else 0
                        target = self.counts[p][q + 1] if q < Q else 0
                    got = tables[p][q]
                    if len(got) != need:
                        raise RejectedInput(f"{what} at ({p},{q}): expected {need} tables")
                    row.append(tuple(
                        _as_table(got[i], here, target, f"{what}[{i}] at ({p},{q})")
                        for i in range(need)
                    ))
                out.append(tuple(row))
            return tuple(out)

        self._h_faces = build(h_faces, "h-face", "horizontal face")
        self._h_degens = build(h_degeneracies, "h-degen", "horizontal degeneracy")
        self._v_faces = build(v_faces, "v-face", "vertical face")
        self._v_degens = build(v_degeneracies, "v-degen", "vertical degeneracy")

        if labels is None:
            self._labels = None
        else:
            self._labels = tuple(
                tuple(tuple(str(s) for s in labels[p][q]) for q in range(Q + 1))
                for p in range(P + 1)
            )
            for p in range(P + 1):
                for q in range(Q + 1):
                    if len(self._labels[p][q]) != self.counts[p][q]:
                        raise RejectedInput(f"labels at ({p},{q}) do not match the count")

    def size(self, p: int, q: int) -> int:
        if not (0 <= p <= self.bounds[0] and 0 <= q <= self.bounds[1]):
            raise TruncationError(f"level ({p},{q}) outside bounds {self.bounds}")
        return self.counts[p][q]

    def simplices(self, p: int, q: int):
        return (BiSimplex(p, q, idx) for idx in range(self.size(p, q)))

    def _check(self, x: BiSimplex) -> None:
        if not (0 <= x.p <= self.bounds[0] and 0 <= x.q <= self.bounds[1]):
            raise TruncationError(f"bisimplex level ({x.p},{x.q}) outside bounds {self.bounds}")
        if not 0 <= x.idx < self.counts[x.p][x.q]:
            raise RejectedInput(f"no bisimplex {x} in this set")

    def h_face(self, i: int, x: BiSimplex) -> BiSimplex:
        self._check(x)
        if x.p < 1:
            raise RejectedInput("horizontal dimension 0 has no horizontal faces")
        if not 0 <= i <= x.p:
            raise RejectedInput(f"horizontal face index {i} invalid at p={x.p}")
        return BiSimplex(x.p - 1, x.q, self._h_faces[x.p][x.q][i][x.idx])

    def v_face(self, i: int, x: BiSimplex) -> BiSimplex:
        self._check(x)
        if x.q < 1:
            raise RejectedInput("vertical dimension 0 has no vertical faces")
        if not 0 <= i <= x.q:
            raise RejectedInput(f"vertical face index {i} invalid at q={x.q}")
        return BiSimplex(x.p, x.q - 1, self._v_faces[x.p][x.q][i][x.idx])

    def h_degeneracy(self, i: int, x: BiSimplex) -> BiSimplex:
        self._check(x)
        if x.p >= self.bounds[0]:
            raise TruncationError(f"horizontal degeneracy leaves the bounds at p={x.p}")
        if not 0 <= i <= x.p:
            raise RejectedInput(f"horizontal degeneracy index {i} invalid at p={x.p}")
        return BiSimplex(x.p + 1, x.q, self._h_degens[x.p][x.q][i][x.idx])

    def v_degeneracy(self, i: int, x: BiSimplex) -> BiSimplex:
        self._check(x)
        if x.q >= self.bounds[1]:
            raise TruncationError(f"vertical degeneracy leaves the bounds at q={x.q}")
        if not 0 <= i <= x.q:
            raise RejectedInput(f"vertical degeneracy index {i} invalid at q={x.q}")
        return BiSimplex(x.p, x.q + 1, self._v_degens[x.p][x.q][i][x.idx])

    def label(self, x: BiSimplex) -> str:
        self._check(x)
        if self._labels is None:
            return f"({x.p},{x.q})#{x.idx}"
        return self._labels[x.p][x.q][x.idx]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedBisimplicialSet):
            return NotImplemented
        return (
            self.counts == other.counts
            and self._h_faces == other._h_faces
            and self._h_degens == other._h_degens
            and self._v_faces == other._v_faces
            and self._v_degens == other._v_degens
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TruncatedBisimplicialSet(bounds={self.bounds})"


def point_bisimplicial(P: int, Q: int) -> TruncatedBisimplicialSet:
    counts = [[1] * (Q + 1) for _ in range(P + 1)]

    def tables(kind: str):
        out = []
        for p in range(P + 1):
            row = []
            for q in range(Q + 1):
                if kind == "hf":
                    need = p + 1 if p >= 1 else 0
                elif kind == "hd":
                    need = p + 1 if p < P else 0
                elif kind == "vf":
                    need = q + 1 if q >= 1 else 0
                else:
                    need = q + 1 if q < Q else 0
                row.append([[0]] * need)
            out.append(row)
        return out

    labels = [[["pt"] for _ in range(Q + 1)] for _ in range(P + 1)]
    return TruncatedBisimplicialSet(
        counts, tables("hf"), tables("hd"), tables("vf"), tables("vd"), labels
    )


def row(X: TruncatedBisimplicialSet, q: int) -> TruncatedSimplicialSet:
    """The simplicial set p -> X_{p,q} carrying the horizontal tables."""
    if not 0 <= q <= X.bounds[1]:
        raise RejectedInput(f"row index {q} outside bounds {X.bounds}")
    P = X.bounds[0]
    counts = [X.counts[p][q] for p in range(P + 1)]
    faces = [[]] + [list(X._h_faces[p][q]) for p in range(1, P + 1)]
    degens = [list(X._h_degens[p][q]) for p in range(P)] + [[]]
    labels = None
    if X._labels is not None:
        labels = [list(X._labels[p][q]) for p in range(P + 1)]
    return TruncatedSimplicialSet(counts, faces, degens, labels)


def column(X: TruncatedBisimplicialSet, p: int) -> TruncatedSimplicialSet:
    """The simplicial set q -> X_{p,q} carrying the vertical tables."""
    if not 0 <= p <= X.bounds[0]:
        raise RejectedInput(f"column index {p} outside bounds {X.bounds}")
    Q = X.bounds[1]
    counts = [X.counts[p][q] for q in range(Q + 1)]
    faces = [[]] + [list(X._v_faces[p][q]) for q in range(1, Q + 1)]
    degens = [list(X._v_degens[p][q]) for q in range(Q)] + [[]]
    labels = None
    if X._labels is not None:
        labels = [list(X._labels[p][q]) for q in range(Q + 1)]
    return TruncatedSimplicialSet(counts, faces, degens, labels)


def diagonal(X: TruncatedBisimplicialSet) -> TruncatedSimplicialSet:
    """The simplicial set n -> X_{n,n} with d_i = d_i^h d_i^v, s_i = s_i^h s_i^v.

    Ids are inherited unchanged from the (n,n) tables, so diagonal simplices
    and bisimplices can be converted back and forth by reindexing alone.
    """
    bound = min(X.bounds)
    counts = [X.counts[n][n] for n in range(bound + 1)]
    faces: list[list[list[int]]] = [[]]
    for n in range(1, bound + 1):
        faces.append(
            [
                [
                    X.h_face(i, X.v_face(i, BiSimplex(n, n, idx))).idx
                    for idx in range(counts[n])
                ]
                for i in range(n + 1)
            ]
        )
    degens: list[list[list[int]]] = []
    for n in range(bound):
        degens.append(
            [
                [
                    X.h_degeneracy(i, X.v_degeneracy(i, BiSimplex(n, n, idx))).idx
                    for idx in range(counts[n])
                ]
                for i in range(n + 1)
            ]
        )
    degens.append([])
    labels = None
    if X._labels is not None:
        labels = [list(X._labels[n][n]) for n in range(bound + 1)]
    return TruncatedSimplicialSet(counts, faces, degens, labels)


def transpose(X: TruncatedBisimplicialSet) -> TruncatedBisimplicialSet:
    """Swap the two gradings, exchanging horizontal and vertical tables."""
    P, Q = X.bounds
    counts = [[X.counts[p][q] for p in range(P + 1)] for q in range(Q + 1)]

    def flip(tables):
        return [[tables[p][q] for p in range(P + 1)] for q in range(Q + 1)]

    labels = None
    if X._labels is not None:
        labels = flip(X._labels)
    return TruncatedBisimplicialSet(
        counts, flip(X._v_faces), flip(X._v_degens), flip(X._h_faces), flip(X._h_degens), labels
    )


def tensor(A: TruncatedSimplicialSet, B: TruncatedSimplicialSet) -> TruncatedBisimplicialSet:
    """The external product: (A (x) B)_{p,q} = A_p x B_q.

    Ids are packed row-major with the B factor minor; horizontal tables act on
    the A coordinate, vertical tables on the B coordinate, so the required
    commutation holds by construction.
    """
    P, Q = A.bound, B.bound
    counts = [[A.counts[p] * B.counts[q] for q in range(Q + 1)] for p in range(P + 1)]

    def h_face_tables(p, q):
        bq = B.counts[q]
        return [
            [
                A._faces[p][i][idx // bq] * bq + idx % bq
                for idx in range(counts[p][q])
            ]
            for i in range(p + 1)
        ]

    def h_degen_tables(p, q):
        bq = B.counts[q]
        return [
            [
                A._degens[p][i][idx // bq] * bq + idx % bq
                for idx in range(counts[p][q])
            ]
            for i in range(p + 1)
        ]

    def v_face_tables(p, q):
        bq = B.counts[q]
        bq1 = B.counts[q - 1]
        return [
            [
                (idx // bq) * bq1 + B._faces[q][i][idx % bq]
                for idx in range(counts[p][q])
            ]
            for i in range(q + 1)
        ]

    def v_degen_tables(p, q):
        bq = B.counts[q]
        bq1 = B.counts[q + 1]
        return [
            [
                (idx // bq) * bq1 + B._degens[q][i][idx % bq]
                for idx in range(counts[p][q])
            ]
            for i in range(q + 1)
        ]

    h_faces = [[h_face_tables(p, q) if p >= 1 else [] for q in range(Q + 1)] for p in range(P + 1)]
    h_degens = [[h_degen_tables(p, q) if p < P else [] for q in range(Q + 1)] for p in range(P + 1)]
    v_faces = [[v_face_tables(p, q) if q >= 1 else [] for q in range(Q + 1)] for p in range(P + 1)]
    v_degens = [[v_degen_tables(p, q) if q < Q else [] for q in range(Q + 1)] for p in range(P + 1)]
    labels = [
        [
            [
                f"({A.label(Simplex(p, idx // B.counts[q]))},{B.label(Simplex(q, idx % B.counts[q]))})"
                for idx in range(counts[p][q])
            ]
            for q in range(Q + 1)
        ]
        for p in range(P + 1)
    ]
    return TruncatedBisimplicialSet(counts, h_faces, h_degens, v_faces, v_degens, labels)


@dataclass(frozen=True)
class CommutationViolation:
    first: str
    second: str
    p: int
    q: int
    i: int
    j: int
    simplex: int


@dataclass(frozen=True)
class BisimplicialReport:
    row_reports: tuple
    column_reports: tuple
    commutation: tuple[CommutationViolation, ...]

    @property
    def ok(self) -> bool:
        return (
            all(r.ok for r in self.row_reports)
            and all(c.ok for c in self.column_reports)
            and not self.commutation
        )


def validate_bisimplicial_identities(X: TruncatedBisimplicialSet) -> BisimplicialReport:
    """Check every row and column simplicially, and all mixed commutations."""
    P, Q = X.bounds
    rows = tuple(validate_simplicial_identities(row(X, q)) for q in range(Q + 1))
    cols = tuple(validate_simplicial_identities(column(X, p)) for p in range(P + 1))
    bad: list[CommutationViolation] = []

    def check(name_a, op_a, range_a, name_b, op_b, range_b, p, q):
        for x in X.simplices(p, q):
            for i in range_a:
                for j in range_b:
                    lhs = op_b(j, op_a(i, x))
                    rhs = op_a(i, op_b(j, x))
                    if lhs != rhs:
                        bad.append(CommutationViolation(name_a, name_b, p, q, i, j, x.idx))

    for p in range(P + 1):
        for q in range(Q + 1):
            if p >= 1 and q >= 1:
                check("h-face", X.h_face, range(p + 1), "v-face", X.v_face, range(q + 1), p, q)
            if p >= 1 and q < Q:
                check("h-face", X.h_face, range(p + 1), "v-degen", X.v_degeneracy, range(q + 1), p, q)
            if p < P and q >= 1:
                check("h-degen", X.h_degeneracy, range(p + 1), "v-face", X.v_face, range(q + 1), p, q)
            if p < P and q < Q:
                check("h-degen", X.h_degeneracy, range(p + 1), "v-degen", X.v_degeneracy, range(q + 1), p, q)
    return BisimplicialReport(rows, cols, tuple(bad))


class BisimplicialMap:
    """A levelwise map commuting with all four table families."""

    __slots__ = ("domain", "codomain", "components")

    def __init__(
        self,
        domain: TruncatedBisimplicialSet,
        codomain: TruncatedBisimplicialSet,
        components,
        validate: bool = True,
    ) -> None:
        if domain.bounds != codomain.bounds:
            raise RejectedInput("domain and codomain must share the same bounds")
        self.domain = domain
        self.codomain = codomain
        P, Q = domain.bounds
        self.components = tuple(
            tuple(
                _as_table(
                    components[p][q], domain.counts[p][q], codomain.counts[p][q],
                    f"component ({p},{q})",
                )
                for q in range(Q + 1)
            )
            for p in range(P + 1)
        )
        if validate:
            self._validate_naturality()

    def _validate_naturality(self) -> None:
        P, Q = self.domain.bounds
        for p in range(P + 1):
            for q in range(Q + 1):
                for x in self.domain.simplices(p, q):
                    fx = self.apply(x)
                    if p >= 1:
                        for i in range(p + 1):
                            if self.apply(self.domain.h_face(i, x)) != self.codomain.h_face(i, fx):
                                raise RejectedInput(f"map does not commute with h-face d_{i} at {x}")
                    if q >= 1:
                        for i in range(q + 1):
                            if self.apply(self.domain.v_face(i, x)) != self.codomain.v_face(i, fx):
                                raise RejectedInput(f"map does not commute with v-face d_{i} at {x}")
                    if p < P:
                        for i in range(p + 1):
                            if self.apply(self.domain.h_degeneracy(i, x)) != self.codomain.h_degeneracy(i, fx):
                                raise RejectedInput(f"map does not commute with h-degeneracy s_{i} at {x}")
                    if q < Q:
                        for i in range(q + 1):
                            if self.apply(self.domain.v_degeneracy(i, x)) != self.codomain.v_degeneracy(i, fx):
                                raise RejectedInput(f"map does not commute with v-degeneracy s_{i} at {x}")

    def apply(self, x: BiSimplex) -> BiSimplex:
        return BiSimplex(x.p, x.q, self.components[x.p][x.q][x.idx])

    def __repr__(self) -> str:
        return f"BisimplicialMap(bounds={self.domain.bounds})"


def to_point_bimap(X: TruncatedBisimplicialSet) -> BisimplicialMap:
    P, Q = X.bounds
    pt = point_bisimplicial(P, Q)
    comps = [[[0] * X.counts[p][q] for q in range(Q + 1)] for p in range(P + 1)]
    return BisimplicialMap(X, pt, comps, validate=False)


def diagonal_map(f: BisimplicialMap) -> SimplicialMap:
    """Restrict a bisimplicial map to the diagonals of both sides."""
    dom = diagonal(f.domain)
    cod = diagonal(f.codomain)
    comps = [f.components[n][n] for n in range(dom.bound + 1)]
    return SimplicialMap(dom, cod, comps, validate=False)


def column_map(f: BisimplicialMap, p: int) -> SimplicialMap:
    """The column component of a bisimplicial map at horizontal level p."""
    dom = column(f.domain, p)
    cod = column(f.codomain, p)
    return SimplicialMap(dom, cod, list(f.components[p]), validate=False)


def row_map(f: BisimplicialMap, q: int) -> SimplicialMap:
    """The row component of a bisimplicial map at vertical level q."""
    dom = row(f.domain, q)
    cod = row(f.codomain, q)
    P = f.domain.bounds[0]
    return SimplicialMap(dom, cod, [f.components[p][q] for p in range(P + 1)], validate=False)


def transpose_map(f: BisimplicialMap) -> BisimplicialMap:
    P, Q = f.domain.bounds
    comps = [[f.components[p][q] for p in range(P + 1)] for q in range(Q + 1)]
    return BisimplicialMap(transpose(f.domain), transpose(f.codomain), comps, validate=False)
