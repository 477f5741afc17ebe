"""Pointwise horn fillers obtained from a diagonal partial-horn filler.

Given a bisimplicial map f whose diagonal is a Kan fibration, every vertical
horn problem in a fixed column p can be filled.  The construction degenerates
the given faces up to the diagonal, fills one partial diagonal horn there, and
carves the answer back down with faces.  Every intermediate step the argument
relies on (dimension bookkeeping, compatibility of the built diagonal family,
and the requested face/target relations of the answer) is re-verified at run
time and raises ``InternalInvariantError`` if it ever fails.

Index bookkeeping, for a problem at column p, vertical dimension q >= 1 and
missing index l: the diagonal family lives at dimension n = p + q over the
index set ``I = {i : i < l} u {p + i : l < i <= q}``, which has exactly q
elements, so the partial-horn filler applies whenever q >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .bisimplicial import (
    BiSimplex,
    BisimplicialMap,
    column_map,
    diagonal_map,
    transpose_map,
)
from .errors import InternalInvariantError, RejectedInput, TruncationError
from .kan import (
    CompatibleFamily,
    FillCertificate,
    brute_force_fill,
    check_kan_fibration,
    fill_partial_horn,
    is_compatible,
    iter_compatible_families,
)
from .simplicial import Simplex, SimplicialMap


@dataclass(frozen=True)
class PointwiseHornProblem:
    """A vertical horn in column p: faces x_i in X_{p,q-1} for i != missing,
    and a target y in Y_{p,q}, to be filled against f."""

    f: BisimplicialMap
    p: int
    q: int
    missing: int
    faces: tuple[BiSimplex, ...]
    target: BiSimplex

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 1:
            raise RejectedInput("need p >= 0 and q >= 1")
        if not 0 <= self.missing <= self.q:
            raise RejectedInput(f"missing index {self.missing} outside [0, {self.q}]")
        if len(self.faces) != self.q:
            raise RejectedInput(f"expected {self.q} faces, got {len(self.faces)}")
        for x in self.faces:
            if (x.p, x.q) != (self.p, self.q - 1):
                raise RejectedInput(f"face {x} must sit at level ({self.p},{self.q - 1})")
            if not 0 <= x.idx < self.f.domain.counts[x.p][x.q]:
                raise RejectedInput(f"face {x} not in the domain")
        if (self.target.p, self.target.q) != (self.p, self.q):
            raise RejectedInput(f"target {self.target} must sit at level ({self.p},{self.q})")
        if not 0 <= self.target.idx < self.f.codomain.counts[self.p][self.q]:
            raise RejectedInput(f"target {self.target} not in the codomain")

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.q + 1) if i != self.missing)

    def face(self, i: int) -> BiSimplex:
        return self.faces[self.indices.index(i)]

    def items(self) -> tuple[tuple[int, BiSimplex], ...]:
        return tuple(zip(self.indices, self.faces))


def problem_is_compatible(problem: PointwiseHornProblem) -> bool:
    """Vertical compatibility: d_i^v x_j == d_{j-1}^v x_i and f x_i == d_i^v y."""
    X, Y = problem.f.domain, problem.f.codomain
    for i, x in problem.items():
        if problem.f.apply(x) != Y.v_face(i, problem.target):
            return False
    if problem.q >= 2:
        pairs = problem.items()
        for a, (i, xi) in enumerate(pairs):
            for j, xj in pairs[a + 1:]:
                if X.v_face(i, xj) != X.v_face(j - 1, xi):
                    return False
    return True


def _repeat(op: Callable[[int, BiSimplex], BiSimplex], index: int, times: int, x: BiSimplex) -> BiSimplex:
    for _ in range(times):
        x = op(index, x)
    return x


def _expect_level(x: BiSimplex, p: int, q: int, what: str) -> None:
    if (x.p, x.q) != (p, q):
        raise InternalInvariantError(f"{what} landed at ({x.p},{x.q}), expected ({p},{q})")


def build_diagonal_family(
    problem: PointwiseHornProblem, diag_f: SimplicialMap | None = None
) -> CompatibleFamily:
    """Degenerate a pointwise horn problem into a diagonal compatible family.

    For missing index l, face i maps to
      (s_0^h)^{l-1} (s_p^h)^{q-l}   (s_{l-1}^v)^p x_i   when i < l, kept at index i,
      (s_0^h)^{l}   (s_p^h)^{q-l-1} (s_l^v)^p     x_i   when i > l, placed at index p+i,
    and the target to (s_0^h)^l (s_p^h)^{q-l} (s_l^v)^p y.  Powers apply right
    to left as repeated single-index degeneracies.  The family is verified
    compatible for the diagonal map before it is returned.
    """
    X, Y = problem.f.domain, problem.f.codomain
    p, q, l = problem.p, problem.q, problem.missing
    n = p + q
    if X.bounds[0] < n or X.bounds[1] < n or Y.bounds[0] < n or Y.bounds[1] < n:
        raise TruncationError(
            f"bounds {X.bounds} cannot hold the dimension-({n},{n}) diagonal family"
        )
    if not problem_is_compatible(problem):
        raise RejectedInput("problem faces are not compatible with the target")
    if diag_f is None:
        diag_f = diagonal_map(problem.f)

    faces: dict[int, Simplex] = {}
    for i, x in problem.items():
        if i < l:
            lifted = _repeat(X.v_degeneracy, l - 1, p, x)
            lifted = _repeat(X.h_degeneracy, p, q - l, lifted)
            lifted = _repeat(X.h_degeneracy, 0, l - 1, lifted)
            _expect_level(lifted, n - 1, n - 1, f"degenerated face {i}")
            faces[i] = Simplex(n - 1, lifted.idx)
        else:
            lifted = _repeat(X.v_degeneracy, l, p, x)
            lifted = _repeat(X.h_degeneracy, p, q - l - 1, lifted)
            lifted = _repeat(X.h_degeneracy, 0, l, lifted)
            _expect_level(lifted, n - 1, n - 1, f"degenerated face {i}")
            faces[p + i] = Simplex(n - 1, lifted.idx)

    lifted_target = _repeat(Y.v_degeneracy, l, p, problem.target)
    lifted_target = _repeat(Y.h_degeneracy, p, q - l, lifted_target)
    lifted_target = _repeat(Y.h_degeneracy, 0, l, lifted_target)
    _expect_level(lifted_target, n, n, "degenerated target")

    expected_indices = tuple(sorted(list(range(l)) + [p + i for i in range(l + 1, q + 1)]))
    family = CompatibleFamily.from_mapping(
        diag_f, n, faces, Simplex(n, lifted_target.idx)
    )
    if family.index_set != expected_indices:
        raise InternalInvariantError("diagonal index set does not match the construction")
    if not is_compatible(family):
        raise InternalInvariantError("built diagonal family is not compatible")
    return family


DiagonalPartialFiller = Callable[[CompatibleFamily], FillCertificate]


def _default_partial_filler(family: CompatibleFamily) -> FillCertificate:
    return fill_partial_horn(family, brute_force_fill)


@dataclass(frozen=True)
class DiagonalLift:
    """The full trace of one pointwise fill through the diagonal."""

    problem: PointwiseHornProblem
    diagonal_family: CompatibleFamily
    certificate: FillCertificate
    answer: BiSimplex | None

    @property
    def filled(self) -> bool:
        return self.answer is not None


def diagonal_lift(
    problem: PointwiseHornProblem,
    diag_partial_filler: DiagonalPartialFiller | None = None,
    diag_f: SimplicialMap | None = None,
) -> DiagonalLift:
    """Fill a pointwise horn problem through the diagonal, with verification.

    The filled diagonal simplex w is cut back down by
    ``x = (d_{p+1}^h)^{q-l} (d_0^h)^l (d_l^v)^p w`` and the answer is checked
    to satisfy ``d_i^v x == x_i`` for every i != l (including the outer ones)
    and ``f x == y`` exactly.
    """
    X = problem.f.domain
    p, q, l = problem.p, problem.q, problem.missing
    filler = diag_partial_filler or _default_partial_filler
    family = build_diagonal_family(problem, diag_f)
    cert = filler(family)
    if not cert.filled:
        return DiagonalLift(problem, family, cert, None)

    w = BiSimplex(p + q, p + q, cert.witness.idx)
    x = _repeat(X.v_face, l, p, w)
    x = _repeat(X.h_face, 0, l, x)
    x = _repeat(X.h_face, p + 1, q - l, x)
    _expect_level(x, p, q, "answer")
    for i, xi in problem.items():
        if X.v_face(i, x) != xi:
            raise InternalInvariantError(f"answer violates the requested face at {i}")
    if problem.f.apply(x) != problem.target:
        raise InternalInvariantError("answer does not map to the requested target")
    return DiagonalLift(problem, family, cert, x)


def pointwise_filler_via_diagonal(
    problem: PointwiseHornProblem,
    diag_partial_filler: DiagonalPartialFiller | None = None,
    diag_f: SimplicialMap | None = None,
) -> BiSimplex | None:
    """The filled bisimplex for a pointwise horn problem, or None if the
    supplied diagonal filler fails."""
    return diagonal_lift(problem, diag_partial_filler, diag_f).answer


def iter_pointwise_problems(
    f: BisimplicialMap, p: int, q: int, missing: int,
    col_f: SimplicialMap | None = None,
) -> Iterator[PointwiseHornProblem]:
    """All compatible pointwise horn problems at (p, q, missing).

    Enumeration happens on the column map at level p, whose simplices carry
    the same ids as the bisimplices they come from.
    """
    if col_f is None:
        col_f = column_map(f, p)
    indices = tuple(i for i in range(q + 1) if i != missing)
    for fam in iter_compatible_families(col_f, q, indices):
        yield PointwiseHornProblem(
            f, p, q, missing,
            tuple(BiSimplex(p, q - 1, s.idx) for s in fam.faces),
            BiSimplex(p, q, fam.target.idx),
        )


@dataclass(frozen=True)
class SweepCell:
    p: int
    q: int
    missing: int
    problems: int
    filled: int
    max_search: int


@dataclass(frozen=True)
class SweepFailure:
    transposed: bool
    lift: DiagonalLift


@dataclass(frozen=True)
class PointwiseSweepReport:
    max_total_dim: int
    direct_cells: tuple[SweepCell, ...]
    transposed_cells: tuple[SweepCell, ...]
    failure: SweepFailure | None

    @property
    def passed(self) -> bool:
        return self.failure is None

    @property
    def problems_checked(self) -> int:
        return sum(c.problems for c in self.direct_cells + self.transposed_cells)

    @property
    def families_verified_compatible(self) -> int:
        # every attempted fill builds exactly one compatibility-checked family
        return self.problems_checked


def _sweep(
    f: BisimplicialMap,
    max_total_dim: int,
    filler: DiagonalPartialFiller,
    transposed: bool,
) -> tuple[tuple[SweepCell, ...], SweepFailure | None]:
    diag_f = diagonal_map(f)
    cells: list[SweepCell] = []
    for p in range(max_total_dim):
        col_f = column_map(f, p)
        for q in range(1, max_total_dim - p + 1):
            for missing in range(q + 1):
                problems = filled = max_search = 0
                for problem in iter_pointwise_problems(f, p, q, missing, col_f):
                    problems += 1
                    lift = diagonal_lift(problem, filler, diag_f)
                    max_search = max(max_search, lift.certificate.candidates_examined)
                    if not lift.filled:
                        cells.append(SweepCell(p, q, missing, problems, filled, max_search))
                        return tuple(cells), SweepFailure(transposed, lift)
                    filled += 1
                cells.append(SweepCell(p, q, missing, problems, filled, max_search))
    return tuple(cells), None


def verify_pointwise_fillers(
    f: BisimplicialMap,
    max_total_dim: int,
    diag_partial_filler: DiagonalPartialFiller | None = None,
) -> PointwiseSweepReport:
    """Certify that a diagonal Kan fibration fills every pointwise horn.

    First the diagonal map is required to pass the brute-force Kan check up to
    ``max_total_dim`` (rejected input otherwise, naming the failing horn).
    Then every pointwise horn problem with p + q <= max_total_dim is solved
    through the diagonal, and the whole sweep is repeated on the transpose,
    covering the row direction by the same symmetry.
    """
    if max_total_dim < 1:
        raise RejectedInput("max_total_dim must be at least 1")
    P, Q = f.domain.bounds
    if min(P, Q) < max_total_dim:
        raise TruncationError(
            f"bounds {f.domain.bounds} cannot hold diagonal families up to {max_total_dim}"
        )
    diag_f = diagonal_map(f)
    kan_report = check_kan_fibration(diag_f, max_total_dim)
    if not kan_report.passed:
        fail = kan_report.failure
        raise RejectedInput(
            "the diagonal map is not a Kan fibration up to dimension "
            f"{max_total_dim}: unfillable horn at n={fail.family.n}, "
            f"I={fail.family.index_set}, faces="
            f"{tuple(x.idx for x in fail.family.faces)}"
        )
    filler = diag_partial_filler or _default_partial_filler
    direct, failure = _sweep(f, max_total_dim, filler, transposed=False)
    if failure is not None:
        return PointwiseSweepReport(max_total_dim, direct, (), failure)
    transposed, failure = _sweep(transpose_map(f), max_total_dim, filler, transposed=True)
    return PointwiseSweepReport(max_total_dim, direct, transposed, failure)
