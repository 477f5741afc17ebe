import itertools

import hypothesis.strategies as st
import pytest
from hypothesis import given

from kancheck.errors import CompositionError, RejectedInput
from kancheck.ordinal import (
    BASIC_IDENTITIES,
    Degeneracy,
    Face,
    OrdinalMap,
    SimplicialOperator,
    check_basic_identity,
    check_power_identity,
    compose_ordinal,
    factorize,
)


def all_ordinal_maps(max_size):
    for m in range(max_size + 1):
        for n in range(max_size + 1):
            for vals in itertools.combinations_with_replacement(range(n + 1), m + 1):
                yield OrdinalMap(m, n, vals)


@st.composite
def ordinal_maps(draw, max_size=5):
    m = draw(st.integers(0, max_size))
    n = draw(st.integers(0, max_size))
    vals = sorted(draw(st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1)))
    return OrdinalMap(m, n, tuple(vals))


@st.composite
def operator_words(draw, max_dim=7, max_len=6):
    source = draw(st.integers(0, 4))
    length = draw(st.integers(0, max_len))
    dim = source
    word = []
    for _ in range(length):
        kinds = ["s"] if dim == 0 else (["d"] if dim >= max_dim else ["d", "s"])
        kind = draw(st.sampled_from(kinds))
        i = draw(st.integers(0, dim))
        if kind == "d":
            word.append(Face(i))
            dim -= 1
        else:
            word.append(Degeneracy(i))
            dim += 1
    return SimplicialOperator(source, tuple(word))


class TestOrdinalMap:
    def test_monotone_enforced(self):
        with pytest.raises(RejectedInput):
            OrdinalMap(1, 1, (1, 0))

    def test_range_enforced(self):
        with pytest.raises(RejectedInput):
            OrdinalMap(0, 1, (2,))

    def test_identity_compose(self):
        alpha = OrdinalMap(2, 3, (0, 2, 2))
        assert compose_ordinal(OrdinalMap.identity(3), alpha) == alpha
        assert compose_ordinal(alpha, OrdinalMap.identity(2)) == alpha

    def test_coface_after_codegeneracy_is_constant_zero(self):
        # delta_1 . sigma_0 on [1] sends both points to 0
        got = compose_ordinal(OrdinalMap.coface(1, 1), OrdinalMap.codegeneracy(0, 0))
        assert got == OrdinalMap(1, 1, (0, 0))

    def test_codegeneracy_after_coface_is_identity(self):
        # sigma_0 . delta_0 on [0]
        got = compose_ordinal(OrdinalMap.codegeneracy(0, 0), OrdinalMap.coface(0, 1))
        assert got == OrdinalMap.identity(0)

    def test_size_mismatch_rejected(self):
        with pytest.raises(CompositionError):
            compose_ordinal(OrdinalMap.coface(0, 1), OrdinalMap.coface(0, 2))


class TestFactorize:
    def test_identity_gives_empty_word(self):
        assert factorize(OrdinalMap.identity(3)).word == ()

    def test_single_coface(self):
        assert factorize(OrdinalMap.coface(2, 2)).word == (Face(2),)

    def test_constant_zero_example_against_word_search(self):
        # oracle: exhaustively search all dimension-valid words of length <= 2
        alpha = OrdinalMap(1, 1, (0, 0))
        matches = []
        tokens_at = lambda d: (
            [Degeneracy(i) for i in range(d + 1)]
            + ([Face(i) for i in range(d + 1)] if d >= 1 else [])
        )
        for first in tokens_at(1):
            op1 = SimplicialOperator(1, (first,))
            if op1.ordinal() == alpha:
                matches.append(op1.word)
            for second in tokens_at(op1.target_dim):
                op2 = SimplicialOperator(1, (first, second))
                if op2.ordinal() == alpha:
                    matches.append(op2.word)
        assert (Face(1), Degeneracy(0)) in matches
        assert factorize(alpha).word == (Face(1), Degeneracy(0))

    def test_exhaustive_round_trip(self):
        for alpha in all_ordinal_maps(5):
            word = factorize(alpha)
            assert word.ordinal() == alpha
            assert word.is_canonical

    def test_canonical_shape(self):
        # faces strictly decreasing, then degeneracies strictly increasing
        for alpha in all_ordinal_maps(4):
            word = factorize(alpha).word
            faces = [t.index for t in word if isinstance(t, Face)]
            degens = [t.index for t in word if isinstance(t, Degeneracy)]
            assert word[: len(faces)] == tuple(Face(i) for i in faces)
            assert faces == sorted(faces, reverse=True)
            assert degens == sorted(degens)
            assert len(set(faces)) == len(faces) and len(set(degens)) == len(degens)

    @given(ordinal_maps())
    def test_round_trip_property(self, alpha):
        assert factorize(alpha).ordinal() == alpha

    @given(operator_words())
    def test_any_word_matches_its_canonical_form(self, op):
        canon = op.canonical()
        assert canon.ordinal() == op.ordinal()
        assert canon.canonical() == canon

    @given(ordinal_maps(max_size=4), ordinal_maps(max_size=4))
    def test_factorization_respects_equality(self, a, b):
        if a == b:
            assert factorize(a) == factorize(b)
        elif (a.source_size, a.target_size) == (b.source_size, b.target_size):
            assert factorize(a) != factorize(b)


class TestOperatorValidity:
    def test_face_invalid_at_dimension_zero(self):
        with pytest.raises(RejectedInput):
            SimplicialOperator(0, (Face(0),))

    def test_index_out_of_range(self):
        with pytest.raises(RejectedInput):
            SimplicialOperator(2, (Face(3),))
        with pytest.raises(RejectedInput):
            SimplicialOperator(2, (Degeneracy(3),))

    def test_dimension_path(self):
        op = SimplicialOperator(2, (Degeneracy(0), Face(1), Face(1)))
        assert op.dimension_path() == (2, 3, 2, 1)
        assert op.target_dim == 1


class TestPowerIdentities:
    def test_family1_example(self):
        assert check_power_identity(1, 2, 1, 2, 5)

    def test_family4_example(self):
        assert check_power_identity(4, 1, 0, 2, 3)

    def test_family3_example(self):
        assert check_power_identity(3, 5, 1, 2, 6)

    def test_side_condition_rejected(self):
        with pytest.raises(RejectedInput):
            check_power_identity(1, 0, 1, 1, 4)  # needs i >= j
        with pytest.raises(RejectedInput):
            check_power_identity(3, 2, 1, 2, 6)  # needs i > j+m
        with pytest.raises(RejectedInput):
            check_power_identity(4, 5, 1, 2, 6)  # needs i <= j+m

    def test_zero_power_rejected(self):
        with pytest.raises(RejectedInput):
            check_power_identity(1, 1, 0, 0, 4)

    def test_unknown_family_rejected(self):
        with pytest.raises(RejectedInput):
            check_power_identity(5, 1, 0, 1, 3)

    def test_all_families_exhaustive_to_n8(self):
        checked = 0
        for n in range(9):
            for family in (1, 2, 3, 4):
                for i in range(n + 1):
                    for j in range(n + 1):
                        for m in range(1, n + 2):
                            try:
                                ok = check_power_identity(family, i, j, m, n)
                            except RejectedInput:
                                continue
                            assert ok, (family, i, j, m, n)
                            checked += 1
        assert checked > 1000

    def test_deliberately_wrong_variant_detected(self):
        # mutation check: compare d_i d_j^m against d_j^m d_{i+m-1} instead
        from kancheck.ordinal import _power

        found = None
        for n in range(9):
            for i in range(n + 1):
                for j in range(i + 1):
                    for m in range(1, n + 2):
                        try:
                            lhs = SimplicialOperator(n, tuple(_power(Face(j), m) + [Face(i)]))
                            rhs = SimplicialOperator(
                                n, tuple([Face(i + m - 1)] + _power(Face(j), m))
                            )
                        except RejectedInput:
                            continue
                        if lhs.ordinal() != rhs.ordinal():
                            found = (i, j, m, n)
                            break
        assert found is not None


class TestBasicIdentities:
    @pytest.mark.parametrize("name", BASIC_IDENTITIES)
    def test_all_instances_hold(self, name):
        checked = 0
        for n in range(7):
            for i in range(n + 2):
                for j in range(n + 1):
                    try:
                        ok = check_basic_identity(name, i, j, n)
                    except RejectedInput:
                        continue
                    assert ok, (name, i, j, n)
                    checked += 1
        assert checked > 0

    def test_unknown_name_rejected(self):
        with pytest.raises(RejectedInput):
            check_basic_identity("nope", 0, 0, 2)
