"""The expected-table catalog renders each closed form correctly."""

import pytest

from expk.catalog import KINDS, expected_betti
from expk.errors import ContractViolation


def test_exp3_at_2_matches_literal_numbers():
    assert expected_betti("exp3", 2).dims == (1, 0, 0, 0, 2, 1, 1)


def test_exp2_at_1_degenerates_to_two_degrees():
    table = expected_betti("exp2", 1)
    assert table.dims == (1, 1)
    assert table.note  # the degenerate reading is flagged for reviewers


def test_e_total_space_at_2():
    assert expected_betti("E", 2).dims == (1, 1, 2, 2, 1, 1)


@pytest.mark.parametrize("n", range(1, 8))
def test_exp3_general_pattern(n):
    dims = expected_betti("exp3", n).dims
    assert len(dims) == 3 * n + 1
    assert dims[0] == 1
    for k in range(1, n + 2):
        assert dims[k] == 0, "vanishing through the connectivity range"
    for k in range(n + 2, 2 * n + 1):
        assert dims[k] == 2
    for k in range(2 * n + 1, 3 * n + 1):
        assert dims[k] == 1


@pytest.mark.parametrize("n", range(2, 8))
def test_exp2_general_pattern(n):
    dims = expected_betti("exp2", n).dims
    assert dims[0] == 1 and dims[n] == 1
    assert all(dims[k] == 0 for k in range(1, n))
    assert dims[n + 1] == 0
    assert all(dims[k] == 1 for k in range(n + 2, 2 * n + 1))


@pytest.mark.parametrize("n", range(1, 6))
def test_e0_and_c3_tables(n):
    assert expected_betti("E0", n).dims == (1,) * (2 * n)
    c3 = expected_betti("C3", n)
    assert c3.dims == (1,) * (2 * n)
    assert c3.documentation_only


def test_grassmannian_table_symmetry_and_stable_row():
    t = expected_betti("grassmannian", 8)
    assert t.dims[:7] == (1, 1, 2, 2, 3, 3, 4)
    top = len(t.dims) - 1
    assert all(t.dims[i] == t.dims[top - i] for i in range(top + 1))


def test_unknown_kind_and_bad_parameters():
    with pytest.raises(ContractViolation):
        expected_betti("exp4", 2)
    with pytest.raises(ContractViolation):
        expected_betti("exp2", 0)
    with pytest.raises(ContractViolation):
        expected_betti("grassmannian", 1)


def test_every_kind_serializes():
    for kind in KINDS:
        n = 2
        doc = expected_betti(kind, n).to_json_dict()
        assert doc["kind"] == kind and doc["dims"]
        assert doc["source"].startswith("catalog:")
