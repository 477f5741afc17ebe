"""Finite truncated simplicial sets as dense per-dimension tables.

A simplex is identified by its ``(dim, idx)`` pair; labels are metadata only.
All tables are total maps stored as tuples of integers, so structures are
immutable after construction and safe to share between readers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import RejectedInput, TruncationError
from .ordinal import Degeneracy, Face, SimplicialOperator


class Simplex(NamedTuple):
    dim: int
    idx: int


def _as_table(entries: Sequence[int], size: int, target_size: int, what: str) -> tuple[int, ...]:
    table = tuple(int(v) for v in entries)
    if len(table) != size:
        raise RejectedInput(f"{what}: expected {size} entries, got {len(table)}")
    for v in table:
        if not 0 <= v < target_size:
            raise RejectedInput(f"{what}: entry {v} outside range(0, {target_size})")
    return table


class TruncatedSimplicialSet:
    """Simplex tables with face and degeneracy actions up to a dimension bound.

    ``faces[n][i]`` maps n-simplex ids to (n-1)-simplex ids for 1 <= n <= bound,
    0 <= i <= n; ``degeneracies[n][i]`` maps upward for 0 <= n < bound.
    """

    __slots__ = ("bound", "counts", "_faces", "_degens", "_labels", "_face_fibers")

    def __init__(
        self,
        counts: Sequence[int],
        faces: Sequence[Sequence[Sequence[int]]],
        degeneracies: Sequence[Sequence[Sequence[int]]],
        labels: Sequence[Sequence[str]] | None = None,
    ) -> None:
        if not counts:
            raise RejectedInput("need at least the 0-dimensional level")
        self.counts: tuple[int, ...] = tuple(int(c) for c in counts)
        if any(c < 0 for c in self.counts):
            raise RejectedInput("simplex counts must be nonnegative")
        self.bound: int = len(self.counts) - 1
        if len(faces) != self.bound + 1 or len(degeneracies) != self.bound + 1:
            raise RejectedInput("face/degeneracy tables must cover every dimension")

        built_faces: list[tuple[tuple[int, ...], ...]] = [()]
        for n in range(1, self.bound + 1):
            per_dim = faces[n]
            if len(per_dim) != n + 1:
                raise RejectedInput(f"dimension {n} needs {n + 1} face tables")
            built_faces.append(
                tuple(
                    _as_table(per_dim[i], self.counts[n], self.counts[n - 1], f"d_{i} at {n}")
                    for i in range(n + 1)
                )
            )
        built_degens: list[tuple[tuple[int, ...], ...]] = []
        for n in range(self.bound):
            per_dim = degeneracies[n]
            if len(per_dim) != n + 1:
                raise RejectedInput(f"dimension {n} needs {n + 1} degeneracy tables")
            built_degens.append(
                tuple(
                    _as_table(per_dim[i], self.counts[n], self.counts[n + 1], f"s_{i} at {n}")
                    for i in range(n + 1)
                )
            )
        built_degens.append(())
        self._faces = tuple(built_faces)
        self._degens = tuple(built_degens)

        if labels is None:
            self._labels = None
        else:
            if len(labels) != self.bound + 1 or any(
                len(labels[n]) != self.counts[n] for n in range(self.bound + 1)
            ):
                raise RejectedInput("labels must match the simplex counts")
            self._labels = tuple(tuple(str(s) for s in level) for level in labels)
        self._face_fibers: dict[tuple[int, int], tuple[tuple[int, ...], ...]] = {}

    def size(self, n: int) -> int:
        if not 0 <= n <= self.bound:
            raise TruncationError(f"dimension {n} outside bound {self.bound}")
        return self.counts[n]

    def simplices(self, n: int) -> Iterable[Simplex]:
        return (Simplex(n, idx) for idx in range(self.size(n)))

    def _check(self, x: Simplex) -> None:
        if not 0 <= x.dim <= self.bound:
            raise TruncationError(f"simplex dimension {x.dim} outside bound {self.bound}")
        if not 0 <= x.idx < self.counts[x.dim]:
            raise RejectedInput(f"no simplex {x} in this set")

    def face(self, i: int, x: Simplex) -> Simplex:
        self._check(x)
        if x.dim < 1:
            raise RejectedInput("0-simplices have no faces")
        if not 0 <= i <= x.dim:
            raise RejectedInput(f"face index {i} invalid at dimension {x.dim}")
        return Simplex(x.dim - 1, self._faces[x.dim][i][x.idx])

    def degeneracy(self, i: int, x: Simplex) -> Simplex:
        self._check(x)
        if x.dim >= self.bound:
            raise TruncationError(
                f"degeneracy would leave the bound {self.bound} from dimension {x.dim}"
            )
        if not 0 <= i <= x.dim:
            raise RejectedInput(f"degeneracy index {i} invalid at dimension {x.dim}")
        return Simplex(x.dim + 1, self._degens[x.dim][i][x.idx])

    def label(self, x: Simplex) -> str:
        self._check(x)
        if self._labels is None:
            return f"{x.dim}#{x.idx}"
        return self._labels[x.dim][x.idx]

    def face_fiber(self, n: int, i: int, target_idx: int) -> tuple[int, ...]:
        """Ids of n-simplices whose i-th face has the given id, ascending."""
        key = (n, i)
        if key not in self._face_fibers:
            buckets: list[list[int]] = [[] for _ in range(self.counts[n - 1])]
            for idx, v in enumerate(self._faces[n][i]):
                buckets[v].append(idx)
            self._face_fibers[key] = tuple(tuple(b) for b in buckets)
        return self._face_fibers[key][target_idx]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSimplicialSet):
            return NotImplemented
        return (
            self.counts == other.counts
            and self._faces == other._faces
            and self._degens == other._degens
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TruncatedSimplicialSet(bound={self.bound}, counts={self.counts})"


def point(bound: int) -> TruncatedSimplicialSet:
    """The terminal simplicial set truncated at the given bound."""
    counts = [1] * (bound + 1)
    faces = [[]] + [[[0]] * (n + 1) for n in range(1, bound + 1)]
    degens = [[[0]] * (n + 1) for n in range(bound)] + [[]]
    labels = [["pt"]] * (bound + 1)
    return TruncatedSimplicialSet(counts, faces, degens, labels)


@dataclass(frozen=True)
class IdentityViolation:
    identity: str
    n: int
    i: int
    j: int
    simplex: int
    lhs: Simplex
    rhs: Simplex


@dataclass(frozen=True)
class IdentityReport:
    violations: tuple[IdentityViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_simplicial_identities(X: TruncatedSimplicialSet) -> IdentityReport:
    """Exhaustively check every simplicial identity that stays within bound."""
    bad: list[IdentityViolation] = []

    def record(identity: str, n: int, i: int, j: int, idx: int, lhs: Simplex, rhs: Simplex) -> None:
        if lhs != rhs:
            bad.append(IdentityViolation(identity, n, i, j, idx, lhs, rhs))

    for n in range(X.bound + 1):
        for x in X.simplices(n):
            if n >= 2:
                for j in range(n + 1):
                    for i in range(j):
                        record(
                            "face-face", n, i, j, x.idx,
                            X.face(i, X.face(j, x)), X.face(j - 1, X.face(i, x)),
                        )
            if n + 2 <= X.bound:
                for i in range(n + 1):
                    for j in range(i, n + 1):
                        record(
                            "degen-degen", n, i, j, x.idx,
                            X.degeneracy(i, X.degeneracy(j, x)),
                            X.degeneracy(j + 1, X.degeneracy(i, x)),
                        )
            if n + 1 <= X.bound:
                for j in range(n + 1):
                    sx = X.degeneracy(j, x)
                    for i in range(n + 2):
                        got = X.face(i, sx)
                        if i < j:
                            record("face-degen-under", n, i, j, x.idx, got,
                                   X.degeneracy(j - 1, X.face(i, x)))
                        elif i in (j, j + 1):
                            record("face-degen-cancel", n, i, j, x.idx, got, x)
                        else:
                            record("face-degen-over", n, i, j, x.idx, got,
                                   X.degeneracy(j, X.face(i - 1, x)))
    for n in range(X.bound):
        for i in range(n + 1):
            seen: dict[int, int] = {}
            for idx in range(X.size(n)):
                v = X.degeneracy(i, Simplex(n, idx)).idx
                if v in seen:
                    bad.append(
                        IdentityViolation(
                            "degeneracy-not-injective", n, i, i, idx,
                            Simplex(n + 1, v), Simplex(n, seen[v]),
                        )
                    )
                else:
                    seen[v] = idx
    return IdentityReport(tuple(bad))


def apply_operator(X: TruncatedSimplicialSet, op: SimplicialOperator, x: Simplex) -> Simplex:
    """Apply a word of face/degeneracy actions by sequential table lookups."""
    if x.dim != op.source_dim:
        raise RejectedInput(
            f"operator expects a {op.source_dim}-simplex, got dimension {x.dim}"
        )
    for token in op.word:
        if isinstance(token, Face):
            x = X.face(token.index, x)
        elif isinstance(token, Degeneracy):
            x = X.degeneracy(token.index, x)
    return x


class SimplicialMap:
    """A dimensionwise map commuting with all face and degeneracy tables."""

    __slots__ = ("domain", "codomain", "components", "_fibers")

    def __init__(
        self,
        domain: TruncatedSimplicialSet,
        codomain: TruncatedSimplicialSet,
        components: Sequence[Sequence[int]],
        validate: bool = True,
    ) -> None:
        if domain.bound != codomain.bound:
            raise RejectedInput("domain and codomain must share the same bound")
        self.domain = domain
        self.codomain = codomain
        self.components = tuple(
            _as_table(components[n], domain.counts[n], codomain.counts[n], f"component {n}")
            for n in range(domain.bound + 1)
        )
        self._fibers: dict[int, tuple[tuple[int, ...], ...]] = {}
        if validate:
            self._validate_naturality()

    def _validate_naturality(self) -> None:
        for n in range(1, self.domain.bound + 1):
            for x in self.domain.simplices(n):
                fx = self.apply(x)
                for i in range(n + 1):
                    if self.apply(self.domain.face(i, x)) != self.codomain.face(i, fx):
                        raise RejectedInput(
                            f"map does not commute with d_{i} at {x}"
                        )
        for n in range(self.domain.bound):
            for x in self.domain.simplices(n):
                fx = self.apply(x)
                for i in range(n + 1):
                    if self.apply(self.domain.degeneracy(i, x)) != self.codomain.degeneracy(i, fx):
                        raise RejectedInput(
                            f"map does not commute with s_{i} at {x}"
                        )

    def apply(self, x: Simplex) -> Simplex:
        return Simplex(x.dim, self.components[x.dim][x.idx])

    def fiber(self, n: int, target_idx: int) -> tuple[int, ...]:
        """Ids of domain n-simplices mapping to the given codomain id, ascending."""
        if n not in self._fibers:
            buckets: list[list[int]] = [[] for _ in range(self.codomain.counts[n])]
            for idx, v in enumerate(self.components[n]):
                buckets[v].append(idx)
            self._fibers[n] = tuple(tuple(b) for b in buckets)
        return self._fibers[n][target_idx]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.components == other.components
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"SimplicialMap(bound={self.domain.bound})"


def to_point_map(X: TruncatedSimplicialSet) -> SimplicialMap:
    """The unique map from X to the one-point simplicial set of the same bound."""
    pt = point(X.bound)
    return SimplicialMap(
        X, pt, [[0] * X.counts[n] for n in range(X.bound + 1)], validate=False
    )


class _UnionFind:
    __slots__ = ("parent", "rank")

    def __init__(self, size: int) -> None:
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1


def pi0(X: TruncatedSimplicialSet) -> tuple[tuple[int, ...], ...]:
    """Components of X_0 under d_0 x ~ d_1 x over the 1-simplices.

    Returns the partition as tuples of vertex ids, each sorted, ordered by
    least member.  Requires bound >= 1 so that the edges are visible.
    """
    if X.bound < 1:
        raise TruncationError("pi0 needs the 1-simplices; bound must be at least 1")
    uf = _UnionFind(X.size(0))
    for e in X.simplices(1):
        uf.union(X.face(0, e).idx, X.face(1, e).idx)
    groups: dict[int, list[int]] = {}
    for v in range(X.size(0)):
        groups.setdefault(uf.find(v), []).append(v)
    return tuple(tuple(sorted(g)) for g in sorted(groups.values(), key=min))
