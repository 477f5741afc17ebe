"""Double groupoids, the one-object subgroup-pair example, and double nerves.

Squares are drawn with horizontal arrows pointing left and vertical arrows
pointing up: ``top: b -> c`` across the top, ``right: a -> b`` up the right,
``bottom: a -> d`` across the bottom and ``left: d -> c`` up the left.
Horizontal composition glues a left square's right edge to a right square's
left edge; vertical composition glues an upper square's bottom edge to a
lower square's top edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bisimplicial import TruncatedBisimplicialSet
from .errors import RejectedInput
from .groups import FiniteGroup
from .groupoids import FiniteGroupoid, one_object_groupoid


@dataclass(frozen=True)
class Square:
    top: int
    right: int
    bottom: int
    left: int


class DoubleGroupoid:
    """Objects, two arrow groupoids, and squares with two compositions.

    Construction validates the full axiom set: boundary consistency, closure
    of both compositions, identity and inverse laws, associativity, the
    interchange law, and agreement of the two identity squares on identity
    arrows.  Violations are rejected with a witness in the message.
    """

    __slots__ = ("horizontal", "vertical", "squares", "_square_index",
                 "_h_comp", "_v_comp", "h_identity", "v_identity")

    def __init__(
        self,
        horizontal: FiniteGroupoid,
        vertical: FiniteGroupoid,
        squares: Sequence[Square],
    ) -> None:
        if horizontal.objects != vertical.objects:
            raise RejectedInput("horizontal and vertical groupoids must share objects")
        self.horizontal = horizontal
        self.vertical = vertical
        self.squares = tuple(squares)
        self._square_index = {sq: k for k, sq in enumerate(self.squares)}
        if len(self._square_index) != len(self.squares):
            raise RejectedInput("duplicate squares")
        h, v = horizontal, vertical
        for sq in self.squares:
            if h.arrow_source[sq.top] != v.arrow_target[sq.right]:
                raise RejectedInput(f"{sq}: top and right edges miss each other")
            if h.arrow_target[sq.top] != v.arrow_target[sq.left]:
                raise RejectedInput(f"{sq}: top and left edges miss each other")
            if h.arrow_source[sq.bottom] != v.arrow_source[sq.right]:
                raise RejectedInput(f"{sq}: bottom and right edges miss each other")
            if h.arrow_target[sq.bottom] != v.arrow_source[sq.left]:
                raise RejectedInput(f"{sq}: bottom and left edges miss each other")

        self.v_identity = tuple(
            self._locate(Square(a, v.identity(h.arrow_source[a]), a,
                                v.identity(h.arrow_target[a])),
                         f"vertical identity square of horizontal arrow {a}")
            for a in range(h.n_arrows)
        )
        self.h_identity = tuple(
            self._locate(Square(h.identity(v.arrow_target[b]), b,
                                h.identity(v.arrow_source[b]), b),
                         f"horizontal identity square of vertical arrow {b}")
            for b in range(v.n_arrows)
        )

        self._h_comp: dict[tuple[int, int], int] = {}
        self._v_comp: dict[tuple[int, int], int] = {}
        for s_id, s in enumerate(self.squares):
            for t_id, t in enumerate(self.squares):
                if s.right == t.left:
                    self._h_comp[(s_id, t_id)] = self._locate(
                        Square(h.compose(s.top, t.top), t.right,
                               h.compose(s.bottom, t.bottom), s.left),
                        f"horizontal composite of {s} and {t}",
                    )
                if s.bottom == t.top:
                    self._v_comp[(s_id, t_id)] = self._locate(
                        Square(s.top, v.compose(s.right, t.right),
                               t.bottom, v.compose(s.left, t.left)),
                        f"vertical composite of {s} and {t}",
                    )
        self._validate_groupoid_laws()
        self._validate_interchange()
        for obj in range(len(h.objects)):
            if self.h_identity[v.identity(obj)] != self.v_identity[h.identity(obj)]:
                raise RejectedInput(
                    f"identity squares disagree on the identity arrows at object {obj}"
                )

    def _locate(self, sq: Square, what: str) -> int:
        try:
            return self._square_index[sq]
        except KeyError:
            raise RejectedInput(f"{what} is missing from the square set") from None

    def _validate_groupoid_laws(self) -> None:
        n = len(self.squares)
        for s_id, s in enumerate(self.squares):
            if self.h_compose(s_id, self.h_identity[s.right]) != s_id:
                raise RejectedInput(f"horizontal right identity law fails at {s}")
            if self.h_compose(self.h_identity[s.left], s_id) != s_id:
                raise RejectedInput(f"horizontal left identity law fails at {s}")
            if self.v_compose(s_id, self.v_identity[s.bottom]) != s_id:
                raise RejectedInput(f"vertical lower identity law fails at {s}")
            if self.v_compose(self.v_identity[s.top], s_id) != s_id:
                raise RejectedInput(f"vertical upper identity law fails at {s}")
            if not any(
                self._h_comp[(s_id, t_id)] == self.h_identity[s.left]
                and self._h_comp[(t_id, s_id)] == self.h_identity[s.right]
                for t_id, t in enumerate(self.squares)
                if t.left == s.right and t.right == s.left
            ):
                raise RejectedInput(f"{s} has no horizontal inverse")
            if not any(
                self._v_comp[(s_id, t_id)] == self.v_identity[s.top]
                and self._v_comp[(t_id, s_id)] == self.v_identity[s.bottom]
                for t_id, t in enumerate(self.squares)
                if t.top == s.bottom and t.bottom == s.top
            ):
                raise RejectedInput(f"{s} has no vertical inverse")
        for (a, b), ab in self._h_comp.items():
            for c in range(n):
                if (b, c) in self._h_comp:
                    if self.h_compose(ab, c) != self.h_compose(a, self._h_comp[(b, c)]):
                        raise RejectedInput(f"horizontal associativity fails at ({a},{b},{c})")
        for (a, b), ab in self._v_comp.items():
            for c in range(n):
                if (b, c) in self._v_comp:
                    if self.v_compose(ab, c) != self.v_compose(a, self._v_comp[(b, c)]):
                        raise RejectedInput(f"vertical associativity fails at ({a},{b},{c})")

    def _validate_interchange(self) -> None:
        for (s, t), st in self._h_comp.items():
            for (g, d), gd in self._h_comp.items():
                if (s, g) in self._v_comp and (t, d) in self._v_comp:
                    lhs = self.v_compose(st, gd)
                    rhs = self.h_compose(self._v_comp[(s, g)], self._v_comp[(t, d)])
                    if lhs != rhs:
                        raise RejectedInput(
                            f"interchange law fails at squares ({s},{t},{g},{d})"
                        )

    @property
    def n_squares(self) -> int:
        return len(self.squares)

    def square_id(self, sq: Square) -> int:
        return self._locate(sq, f"square {sq}")

    def has_square(self, sq: Square) -> bool:
        return sq in self._square_index

    def h_compose(self, s: int, t: int) -> int:
        """s to the left of t; requires s.right == t.left."""
        try:
            return self._h_comp[(s, t)]
        except KeyError:
            raise RejectedInput(f"squares {s} and {t} are not horizontally composable") from None

    def v_compose(self, s: int, t: int) -> int:
        """s above t; requires s.bottom == t.top."""
        try:
            return self._v_comp[(s, t)]
        except KeyError:
            raise RejectedInput(f"squares {s} and {t} are not vertically composable") from None

    def square_label(self, s: int) -> str:
        sq = self.squares[s]
        return (
            f"[{self.horizontal.arrow_labels[sq.top]},{self.vertical.arrow_labels[sq.right]},"
            f"{self.horizontal.arrow_labels[sq.bottom]},{self.vertical.arrow_labels[sq.left]}]"
        )

    def __repr__(self) -> str:
        return (
            f"DoubleGroupoid(objects={len(self.horizontal.objects)}, "
            f"h_arrows={self.horizontal.n_arrows}, v_arrows={self.vertical.n_arrows}, "
            f"squares={self.n_squares})"
        )


def trivial_double_groupoid() -> DoubleGroupoid:
    h = one_object_groupoid(FiniteGroup(["e"], [[0]]))
    v = one_object_groupoid(FiniteGroup(["e"], [[0]]))
    return DoubleGroupoid(h, v, [Square(0, 0, 0, 0)])


def group_pair_double_groupoid(
    G: FiniteGroup, A: Sequence[int], B: Sequence[int]
) -> DoubleGroupoid:
    """The one-object double groupoid with horizontal arrows A, vertical
    arrows B, and squares the quadruples (a, b, a', b') with a*b == b'*a'.

    Compositions multiply the glued edges in the group; identity squares are
    (a, e, a, e) and (e, b, e, b).
    """
    from .groups import subgroup_group

    GA = subgroup_group(G, A)
    GB = subgroup_group(G, B)
    A = tuple(sorted(set(A)))
    B = tuple(sorted(set(B)))
    h = one_object_groupoid(GA)
    v = one_object_groupoid(GB)
    squares = [
        Square(ta, rb, ba, lb)
        for ta, a in enumerate(A)
        for rb, b in enumerate(B)
        for ba, a2 in enumerate(A)
        for lb, b2 in enumerate(B)
        if G.mul(a, b) == G.mul(b2, a2)
    ]
    return DoubleGroupoid(h, v, squares)


ColumnKey = tuple[int, ...]          # squares of one column, top row first
MatrixKey = tuple[ColumnKey, ...]    # columns left to right


def _column_chains(D: DoubleGroupoid, q: int) -> list[ColumnKey]:
    chains: list[ColumnKey] = [(s,) for s in range(D.n_squares)]
    for _ in range(q - 1):
        chains = [
            c + (s,)
            for c in chains
            for s in range(D.n_squares)
            if D.squares[c[-1]].bottom == D.squares[s].top
        ]
    return chains


def double_nerve_indexed(
    D: DoubleGroupoid, P: int, Q: int
) -> tuple[TruncatedBisimplicialSet, tuple[tuple[tuple[object, ...], ...], ...]]:
    """The double nerve together with the key behind every bisimplex id.

    Keys: (0,0) levels hold object indices, (p,0) levels horizontal arrow
    strings, (0,q) levels vertical arrow strings, and (p,q) levels p-column
    matrices of vertically chained squares with matching shared edges.
    """
    if P < 0 or Q < 0:
        raise RejectedInput("bounds must be nonnegative")
    h, v = D.horizontal, D.vertical

    def h_strings(p: int) -> list[object]:
        if p == 0:
            return list(range(len(h.objects)))
        strings: list[tuple[int, ...]] = [(g,) for g in range(h.n_arrows)]
        for _ in range(p - 1):
            strings = [
                s + (g,)
                for s in strings
                for g in range(h.n_arrows)
                if h.arrow_target[g] == h.arrow_source[s[-1]]
            ]
        return strings

    def v_strings(q: int) -> list[object]:
        if q == 0:
            return list(range(len(v.objects)))
        strings: list[tuple[int, ...]] = [(g,) for g in range(v.n_arrows)]
        for _ in range(q - 1):
            strings = [
                s + (g,)
                for s in strings
                for g in range(v.n_arrows)
                if v.arrow_target[g] == v.arrow_source[s[-1]]
            ]
        return strings

    def matrices(p: int, q: int) -> list[object]:
        if p == 0:
            return v_strings(q)
        if q == 0:
            return h_strings(p)
        columns = _column_chains(D, q)
        mats: list[MatrixKey] = [(c,) for c in columns]
        for _ in range(p - 1):
            mats = [
                m + (c,)
                for m in mats
                for c in columns
                if all(
                    D.squares[m[-1][j]].right == D.squares[c[j]].left
                    for j in range(q)
                )
            ]
        return mats

    keys = tuple(tuple(tuple(matrices(p, q)) for q in range(Q + 1)) for p in range(P + 1))
    index = [
        [{key: k for k, key in enumerate(keys[p][q])} for q in range(Q + 1)]
        for p in range(P + 1)
    ]

    def line_v_arrows(p: int, q: int, key: object, i: int) -> tuple[int, ...]:
        """Vertical arrows along the i-th vertical line, top row first."""
        if p == 0:
            return tuple(key)  # type: ignore[arg-type]
        mat = key  # type: ignore[assignment]
        if i == 0:
            return tuple(D.squares[s].left for s in mat[0])
        return tuple(D.squares[s].right for s in mat[i - 1])

    def level_h_arrows(p: int, q: int, key: object, j: int) -> tuple[int, ...]:
        """Horizontal arrows along the j-th horizontal level, left column first."""
        if q == 0:
            return tuple(key)  # type: ignore[arg-type]
        mat = key  # type: ignore[assignment]
        if j == 0:
            return tuple(D.squares[c[0]].top for c in mat)
        return tuple(D.squares[c[j - 1]].bottom for c in mat)

    def h_face_key(p: int, q: int, key: object, i: int) -> object:
        if q == 0:
            s = key  # type: ignore[assignment]
            if p == 1:
                return h.arrow_source[s[0]] if i == 0 else h.arrow_target[s[0]]
            if i == 0:
                return s[1:]
            if i == p:
                return s[:-1]
            return s[: i - 1] + (h.compose(s[i - 1], s[i]),) + s[i + 1:]
        mat = key  # type: ignore[assignment]
        if p == 1:
            return line_v_arrows(p, q, key, 1 if i == 0 else 0)
        if i == 0:
            return mat[1:]
        if i == p:
            return mat[:-1]
        merged = tuple(
            D.h_compose(mat[i - 1][j], mat[i][j]) for j in range(q)
        )
        return mat[: i - 1] + (merged,) + mat[i + 1:]

    def v_face_key(p: int, q: int, key: object, j: int) -> object:
        if p == 0:
            s = key  # type: ignore[assignment]
            if q == 1:
                return v.arrow_source[s[0]] if j == 0 else v.arrow_target[s[0]]
            if j == 0:
                return s[1:]
            if j == q:
                return s[:-1]
            return s[: j - 1] + (v.compose(s[j - 1], s[j]),) + s[j + 1:]
        mat = key  # type: ignore[assignment]
        if q == 1:
            return level_h_arrows(p, q, key, 0 if j == 1 else 1)
        if j == 0:
            return tuple(c[1:] for c in mat)
        if j == q:
            return tuple(c[:-1] for c in mat)
        return tuple(
            c[: j - 1] + (D.v_compose(c[j - 1], c[j]),) + c[j + 1:] for c in mat
        )

    def h_degen_key(p: int, q: int, key: object, i: int) -> object:
        if q == 0:
            if p == 0:
                return (h.identity(key),)  # type: ignore[arg-type]
            s = key  # type: ignore[assignment]
            obj = h.arrow_target[s[i]] if i < p else h.arrow_source[s[p - 1]]
            return s[:i] + (h.identity(obj),) + s[i:]
        line = line_v_arrows(p, q, key, i)
        id_col: ColumnKey = tuple(D.h_identity[b] for b in line)
        if p == 0:
            return (id_col,)
        mat = key  # type: ignore[assignment]
        return mat[:i] + (id_col,) + mat[i:]

    def v_degen_key(p: int, q: int, key: object, j: int) -> object:
        if p == 0:
            if q == 0:
                return (v.identity(key),)  # type: ignore[arg-type]
            s = key  # type: ignore[assignment]
            obj = v.arrow_target[s[j]] if j < q else v.arrow_source[s[q - 1]]
            return s[:j] + (v.identity(obj),) + s[j:]
        level = level_h_arrows(p, q, key, j)
        id_row = tuple(D.v_identity[a] for a in level)
        if q == 0:
            return tuple((sq,) for sq in id_row)
        mat = key  # type: ignore[assignment]
        return tuple(c[:j] + (id_row[ci],) + c[j:] for ci, c in enumerate(mat))

    counts = [[len(keys[p][q]) for q in range(Q + 1)] for p in range(P + 1)]
    h_faces = [
        [
            [
                [index[p - 1][q][h_face_key(p, q, key, i)] for key in keys[p][q]]
                for i in range(p + 1)
            ] if p >= 1 else []
            for q in range(Q + 1)
        ]
        for p in range(P + 1)
    ]
    h_degens = [
        [
            [
                [index[p + 1][q][h_degen_key(p, q, key, i)] for key in keys[p][q]]
                for i in range(p + 1)
            ] if p < P else []
            for q in range(Q + 1)
        ]
        for p in range(P + 1)
    ]
    v_faces = [
        [
            [
                [index[p][q - 1][v_face_key(p, q, key, j)] for key in keys[p][q]]
                for j in range(q + 1)
            ] if q >= 1 else []
            for q in range(Q + 1)
        ]
        for p in range(P + 1)
    ]
    v_degens = [
        [
            [
                [index[p][q + 1][v_degen_key(p, q, key, j)] for key in keys[p][q]]
                for j in range(q + 1)
            ] if q < Q else []
            for q in range(Q + 1)
        ]
        for p in range(P + 1)
    ]

    def label(p: int, q: int, key: object) -> str:
        if p == 0 and q == 0:
            return h.objects[key]  # type: ignore[index]
        if q == 0:
            return "|".join(h.arrow_labels[g] for g in key)  # type: ignore[union-attr]
        if p == 0:
            return "|".join(v.arrow_labels[g] for g in key)  # type: ignore[union-attr]
        return ";".join(
            "|".join(D.square_label(s) for s in colu) for colu in key  # type: ignore[union-attr]
        )

    labels = [
        [[label(p, q, key) for key in keys[p][q]] for q in range(Q + 1)]
        for p in range(P + 1)
    ]
    return (
        TruncatedBisimplicialSet(counts, h_faces, h_degens, v_faces, v_degens, labels),
        keys,
    )


def double_nerve(D: DoubleGroupoid, P: int, Q: int) -> TruncatedBisimplicialSet:
    """Matrices of composable squares, with composing faces and identity
    column/row degeneracies."""
    return double_nerve_indexed(D, P, Q)[0]
