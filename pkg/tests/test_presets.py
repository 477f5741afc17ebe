import pytest

from kancheck.errors import RejectedInput
from kancheck.presets import (
    PRESET_NAMES,
    preset_bisimplicial,
    preset_double_groupoid,
    preset_group_pair,
    z2_commuting,
)


def test_names_cover_cli_presets():
    assert set(PRESET_NAMES) == {"s3-counterexample", "z2-commuting", "eg-tensor"}


def test_group_pair_access():
    data = preset_group_pair("s3-counterexample")
    assert data.group.order == 6
    assert len(data.A) == len(data.B) == 2


def test_unknown_preset_rejected():
    with pytest.raises(RejectedInput):
        preset_group_pair("nope")
    with pytest.raises(RejectedInput):
        preset_bisimplicial("eg-tensor", 2, 3)


def test_z2_pair_is_whole_group():
    data = z2_commuting()
    assert data.A == data.B == (0, 1)


def test_double_groupoid_sizes():
    assert preset_double_groupoid("s3-counterexample").n_squares == 3
    assert preset_double_groupoid("z2-commuting").n_squares == 8
