"""Finite groups from explicit multiplication tables, with subgroup utilities.

Permutations compose right to left: ``(f*g)(x) = f(g(x))``.  Every report that
mentions group elements records this convention.
"""

from __future__ import annotations

from itertools import permutations as _permutations
from typing import Iterable, Sequence

from .errors import RejectedInput

COMPOSITION_CONVENTION = "right-to-left (f*g applies g first)"


class FiniteGroup:
    """Element labels plus a fully validated multiplication table on indices."""

    __slots__ = ("labels", "table", "identity", "inverse", "_index")

    def __init__(self, labels: Sequence[str], table: Sequence[Sequence[int]]) -> None:
        self.labels = tuple(str(s) for s in labels)
        n = len(self.labels)
        if n == 0:
            raise RejectedInput("a group needs at least the identity element")
        if len(set(self.labels)) != n:
            raise RejectedInput("element labels must be distinct")
        if len(table) != n or any(len(row) != n for row in table):
            raise RejectedInput(f"multiplication table must be {n}x{n}")
        rows = []
        for row in table:
            r = tuple(int(v) for v in row)
            if any(not 0 <= v < n for v in r):
                raise RejectedInput("table entries must be element indices")
            rows.append(r)
        self.table = tuple(rows)

        identity = None
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                identity = e
                break
        if identity is None:
            raise RejectedInput("table has no two-sided identity element")
        self.identity = identity

        inverse = []
        for a in range(n):
            inv = next(
                (b for b in range(n)
                 if self.table[a][b] == identity and self.table[b][a] == identity),
                None,
            )
            if inv is None:
                raise RejectedInput(f"element {self.labels[a]!r} has no inverse")
            inverse.append(inv)
        self.inverse = tuple(inverse)

        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise RejectedInput(
                            "associativity fails at "
                            f"({self.labels[a]!r}, {self.labels[b]!r}, {self.labels[c]!r})"
                        )
        self._index = {s: k for k, s in enumerate(self.labels)}

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise RejectedInput(f"no element labelled {label!r}") from None

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, labels={self.labels})"


def group_from_table(labels: Sequence[str], table: Sequence[Sequence[int]]) -> FiniteGroup:
    return FiniteGroup(labels, table)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise RejectedInput("cyclic group order must be positive")
    labels = ["e"] + [f"g{k}" if k > 1 else "g" for k in range(1, n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(labels, table)


def _cycle_notation(images: tuple[int, ...]) -> str:
    """Cycle notation for a permutation given by 1-based images."""
    n = len(images)
    seen = [False] * n
    cycles = []
    for start in range(n):
        if seen[start] or images[start] == start + 1:
            seen[start] = True
            continue
        cycle = [start + 1]
        seen[start] = True
        nxt = images[start]
        while nxt != start + 1:
            cycle.append(nxt)
            seen[nxt - 1] = True
            nxt = images[nxt - 1]
        cycles.append(cycle)
    if not cycles:
        return "id"
    return "".join("(" + ",".join(str(v) for v in c) + ")" for c in cycles)


def _compose_perm(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    # right-to-left: apply g first
    return tuple(f[g[x] - 1] for x in range(len(f)))


def group_from_permutations(
    degree: int, generators: Iterable[Sequence[int]]
) -> FiniteGroup:
    """Close a set of permutations (1-based image lists) under composition."""
    if not 1 <= degree <= 6:
        raise RejectedInput("permutation degree must be between 1 and 6")
    identity = tuple(range(1, degree + 1))
    gens = []
    for g in generators:
        perm = tuple(int(v) for v in g)
        if sorted(perm) != list(identity):
            raise RejectedInput(f"{perm} is not a permutation of 1..{degree}")
        gens.append(perm)
    elements = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _compose_perm(g, x)
                if y not in seen:
                    seen.add(y)
                    elements.append(y)
                    nxt.append(y)
        frontier = nxt
    elements.sort(key=lambda p: (sum(1 for k in range(degree) if p[k] != k + 1), p))
    pos = {p: k for k, p in enumerate(elements)}
    table = [[pos[_compose_perm(a, b)] for b in elements] for a in elements]
    return FiniteGroup([_cycle_notation(p) for p in elements], table)


def symmetric_group_preset(n: int) -> FiniteGroup:
    """The full symmetric group on {1..n} with cycle-notation labels, n <= 4."""
    if not 1 <= n <= 4:
        raise RejectedInput("symmetric group preset supports 1 <= n <= 4")
    elements = sorted(
        _permutations(range(1, n + 1)),
        key=lambda p: (sum(1 for k in range(n) if p[k] != k + 1), p),
    )
    pos = {p: k for k, p in enumerate(elements)}
    table = [[pos[_compose_perm(a, b)] for b in elements] for a in elements]
    return FiniteGroup([_cycle_notation(p) for p in elements], table)


def is_subgroup(G: FiniteGroup, elems: Sequence[int]) -> bool:
    subset = set(elems)
    if not subset or G.identity not in subset:
        return False
    return all(
        G.mul(a, b) in subset and G.inv(a) in subset for a in subset for b in subset
    )


def _require_subgroup(G: FiniteGroup, elems: Sequence[int], name: str) -> tuple[int, ...]:
    members = tuple(sorted(set(int(a) for a in elems)))
    if any(not 0 <= a < G.order for a in members):
        raise RejectedInput(f"{name} contains indices outside the group")
    if not is_subgroup(G, members):
        raise RejectedInput(f"{name} is not a subgroup (not closed under product and inverse)")
    return members


def product_set(G: FiniteGroup, A: Sequence[int], B: Sequence[int]) -> frozenset[int]:
    """The set of products {a*b : a in A, b in B}."""
    return frozenset(G.mul(a, b) for a in A for b in B)


def subgroup_products_distinct(G: FiniteGroup, A: Sequence[int], B: Sequence[int]) -> bool:
    """True iff the product sets AB and BA differ; A and B must be subgroups."""
    A = _require_subgroup(G, A, "A")
    B = _require_subgroup(G, B, "B")
    return product_set(G, A, B) != product_set(G, B, A)


def subgroup_group(G: FiniteGroup, elems: Sequence[int]) -> FiniteGroup:
    """A subgroup of G repackaged as a standalone group with inherited labels."""
    members = _require_subgroup(G, elems, "subgroup")
    pos = {a: k for k, a in enumerate(members)}
    table = [[pos[G.mul(a, b)] for b in members] for a in members]
    return FiniteGroup([G.labels[a] for a in members], table)
