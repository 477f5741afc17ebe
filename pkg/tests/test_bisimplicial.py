import pytest

from kancheck import (
    BiSimplex,
    Simplex,
    column,
    column_map,
    diagonal,
    diagonal_map,
    pi0,
    point,
    point_bisimplicial,
    row,
    row_map,
    tensor,
    transpose,
    transpose_map,
    validate_bisimplicial_identities,
    validate_simplicial_identities,
)
from kancheck.errors import RejectedInput, TruncationError


class TestPointAndTensor:
    def test_point_times_point(self):
        X = tensor(point(2), point(2))
        assert X == point_bisimplicial(2, 2)

    def test_tensor_counts(self, eg_tensor_3):
        assert eg_tensor_3.size(1, 1) == 16
        assert eg_tensor_3.size(3, 3) == 256

    def test_tensor_lawful(self, eg_tensor_3):
        assert validate_bisimplicial_identities(eg_tensor_3).ok

    def test_column_structure_comes_from_second_factor(self, eg_z2, eg_tensor_3):
        # each column is |A_p| disjoint copies of the second factor
        for p in range(3):
            col = column(eg_tensor_3, p)
            assert col.counts == tuple(
                eg_z2.counts[p] * eg_z2.counts[q] for q in range(4)
            )
            for q in range(1, 4):
                for idx in range(col.size(q)):
                    a, b = divmod(idx, eg_z2.counts[q])
                    for i in range(q + 1):
                        got = col.face(i, Simplex(q, idx))
                        expect = a * eg_z2.counts[q - 1] + eg_z2.face(i, Simplex(q, b)).idx
                        assert got.idx == expect

    def test_row_counts(self, eg_z2, eg_tensor_3):
        for q in range(4):
            assert row(eg_tensor_3, q).counts == tuple(
                eg_z2.counts[p] * eg_z2.counts[q] for p in range(4)
            )


class TestRowsColumnsDiagonal:
    def test_row_column_of_point(self):
        X = point_bisimplicial(2, 3)
        assert column(X, 0).counts == (1, 1, 1, 1)
        assert row(X, 0).counts == (1, 1, 1)

    def test_index_bounds(self, eg_tensor_3):
        with pytest.raises(RejectedInput):
            row(eg_tensor_3, 4)
        with pytest.raises(RejectedInput):
            column(eg_tensor_3, -1)

    def test_rows_and_columns_lawful(self, eg_tensor_3, s3_double_nerve):
        for X in (eg_tensor_3, s3_double_nerve):
            for q in range(X.bounds[1] + 1):
                assert validate_simplicial_identities(row(X, q)).ok
            for p in range(X.bounds[0] + 1):
                assert validate_simplicial_identities(column(X, p)).ok

    def test_diagonal_counts_and_laws(self, eg_tensor_3):
        dg = diagonal(eg_tensor_3)
        assert dg.counts == (4, 16, 64, 256)
        assert validate_simplicial_identities(dg).ok

    def test_diagonal_of_point(self):
        assert diagonal(point_bisimplicial(2, 3)) == point(2)

    def test_diagonal_faces_are_double_composites(self, eg_tensor_3):
        dg = diagonal(eg_tensor_3)
        for n in range(1, 4):
            for idx in range(dg.size(n)):
                x = BiSimplex(n, n, idx)
                for i in range(n + 1):
                    via_h_first = eg_tensor_3.v_face(i, eg_tensor_3.h_face(i, x))
                    assert dg.face(i, Simplex(n, idx)).idx == via_h_first.idx

    def test_pi0_of_rows_counts_second_factor(self, eg_tensor_3):
        # rows are (first factor) x (constant on the second factor's level),
        # so the component count is the size of that level: |G|^(q+1)
        assert [len(pi0(row(eg_tensor_3, q))) for q in range(3)] == [2, 4, 8]

    def test_pi0_of_diagonal_is_one(self, eg_tensor_3):
        assert len(pi0(diagonal(eg_tensor_3))) == 1


class TestTranspose:
    def test_involution(self, eg_tensor_3, s3_double_nerve):
        for X in (eg_tensor_3, s3_double_nerve):
            assert transpose(transpose(X)) == X

    def test_preserves_diagonal(self, s3_double_nerve):
        assert diagonal(transpose(s3_double_nerve)) == diagonal(s3_double_nerve)

    def test_swaps_rows_and_columns(self, s3_double_nerve):
        for k in range(3):
            assert column(transpose(s3_double_nerve), k) == row(s3_double_nerve, k)
            assert row(transpose(s3_double_nerve), k) == column(s3_double_nerve, k)

    def test_point_transpose(self):
        assert transpose(point_bisimplicial(2, 2)) == point_bisimplicial(2, 2)


class TestCommutationAudit:
    def test_violation_detected(self, eg_tensor_3):
        from kancheck.bisimplicial import TruncatedBisimplicialSet

        X = eg_tensor_3
        P, Q = X.bounds

        def grids(attr):
            return [
                [[list(t) for t in getattr(X, attr)[p][q]] for q in range(Q + 1)]
                for p in range(P + 1)
            ]

        h_faces = grids("_h_faces")
        # swap two entries of one horizontal face table
        h_faces[1][1][0][0], h_faces[1][1][0][1] = h_faces[1][1][0][1], h_faces[1][1][0][0]
        broken = TruncatedBisimplicialSet(
            X.counts, h_faces, grids("_h_degens"), grids("_v_faces"), grids("_v_degens")
        )
        assert not validate_bisimplicial_identities(broken).ok


class TestMaps:
    def test_to_point_and_diagonal_map(self, eg_tensor_map):
        dmap = diagonal_map(eg_tensor_map)
        assert dmap.domain.counts == (4, 16, 64, 256)
        assert dmap.codomain == point(3)

    def test_diagonal_of_identityish_map_is_identity(self, eg_tensor_3):
        from kancheck.bisimplicial import BisimplicialMap

        P, Q = eg_tensor_3.bounds
        comps = [
            [list(range(eg_tensor_3.counts[p][q])) for q in range(Q + 1)]
            for p in range(P + 1)
        ]
        ident = BisimplicialMap(eg_tensor_3, eg_tensor_3, comps)
        dmap = diagonal_map(ident)
        for n in range(4):
            assert dmap.components[n] == tuple(range(eg_tensor_3.counts[n][n]))

    def test_column_and_row_maps(self, eg_tensor_map):
        for p in range(3):
            cm = column_map(eg_tensor_map, p)
            assert cm.domain == column(eg_tensor_map.domain, p)
        for q in range(3):
            rm = row_map(eg_tensor_map, q)
            assert rm.domain == row(eg_tensor_map.domain, q)

    def test_transpose_map(self, eg_tensor_map):
        t = transpose_map(eg_tensor_map)
        assert t.domain == transpose(eg_tensor_map.domain)

    def test_naturality_enforced(self, eg_tensor_3):
        from kancheck.bisimplicial import BisimplicialMap

        P, Q = eg_tensor_3.bounds
        comps = [
            [list(range(eg_tensor_3.counts[p][q])) for q in range(Q + 1)]
            for p in range(P + 1)
        ]
        comps[1][1][0], comps[1][1][1] = comps[1][1][1], comps[1][1][0]
        with pytest.raises(RejectedInput):
            BisimplicialMap(eg_tensor_3, eg_tensor_3, comps)


class TestAccessErrors:
    def test_face_and_degeneracy_bounds(self, eg_tensor_3):
        with pytest.raises(RejectedInput):
            eg_tensor_3.h_face(0, BiSimplex(0, 1, 0))
        with pytest.raises(TruncationError):
            eg_tensor_3.h_degeneracy(0, BiSimplex(3, 1, 0))
        with pytest.raises(TruncationError):
            eg_tensor_3.size(4, 0)
