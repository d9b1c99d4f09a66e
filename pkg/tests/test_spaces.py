"""Space constructors, quotients, the gluing square, and resource bounds."""

import numpy as np
import pytest

from expk.complexes import MOEBIUS_BAND_FACETS, projective_plane
from expk.errors import ContractViolation, LevelSizeError
from expk.spaces import (
    SpaceSpec,
    build_space,
    compare_pushout_with_subsets,
    compare_sym2_with_subsets,
    diagonal_insertion,
    exp_subsets,
    from_complex,
    identity_map,
    point,
    power,
    product,
    pushout,
    sphere,
    sym_power,
)


def test_sphere_counts_and_tables():
    s1 = sphere(1)
    assert s1.nondeg_count(0) == 3 and s1.nondeg_count(1) == 3
    assert s1.betti_table().dims == (1, 1)
    assert sphere(2).betti_table().dims == (1, 0, 1)


def test_sphere3_nondegenerate_euler_count():
    s3 = sphere(3, 4)
    counts = [s3.nondeg_count(n) for n in range(5)]
    assert counts == [5, 10, 10, 5, 0]
    assert 5 - 10 + 10 - 5 == 0


def test_sphere_preconditions():
    with pytest.raises(ContractViolation):
        sphere(0)
    with pytest.raises(ContractViolation):
        sphere(2, 1)


def test_product_kunneth_tables():
    t = product(sphere(1, 3), sphere(1, 3))
    assert t.betti_table().dims == (1, 2, 1)
    q = product(sphere(2, 5), sphere(2, 5))
    assert q.betti_table().dims == (1, 0, 2, 0, 1)
    mixed = product(sphere(1, 4), sphere(2, 4))
    assert mixed.betti_table().dims == (1, 1, 1, 1)


def test_product_with_point_is_identity():
    s = sphere(2)
    assert product(s, point(s.level_cap)) == s


def test_product_cap_mismatch():
    with pytest.raises(ContractViolation):
        product(sphere(1, 3), sphere(1, 4))


def test_kunneth_dimension_pairing():
    for na, nb in ((1, 1), (1, 2), (2, 2)):
        cap = na + nb + 1
        a, b = sphere(na, cap), sphere(nb, cap)
        pt = product(a, b).betti_table()
        ta, tb = a.betti_table(), b.betti_table()
        for k in range(pt.max_degree + 1):
            assert pt.dim(k) == sum(ta.dim(i) * tb.dim(k - i) for i in range(k + 1))


def test_sym_power_tables():
    m, proj = sym_power(sphere(1, 3), 2)
    assert m.betti_table().dims == (1, 1, 0)
    assert proj.commutes()
    m2, _ = sym_power(sphere(2, 5), 2)
    assert m2.betti_table().dims == (1, 0, 1, 0, 1)
    m3, _ = sym_power(sphere(2, 7), 3)
    assert m3.betti_table().dims == (1, 0, 1, 0, 1, 0, 1)


def test_sym2_circle_against_hand_triangulated_moebius_band():
    # independent oracle: the band triangulated by hand, same pipeline
    band = from_complex(MOEBIUS_BAND_FACETS, 3)
    assert band.betti_table().dims == (1, 1, 0)
    got, _ = sym_power(sphere(1, 3), 2)
    assert got.betti_table().matches(band.betti_table())


def test_exp_subsets_tables():
    assert exp_subsets(sphere(1, 3), 2).betti_table().dims == (1, 1, 0)
    assert exp_subsets(sphere(1, 4), 3).betti_table().dims == (1, 0, 0, 1)


def test_exp_subsets_identity_case():
    s = sphere(2)
    assert exp_subsets(s, 1) == s


def test_exp4_circle_is_classical_odd_sphere():
    # subsets of size <= 2m of the circle deformation retract onto the
    # (2m-1)-sphere, so the k = 4 table matches the k = 3 one
    m = exp_subsets(sphere(1, 5), 4)
    assert m.validate().ok
    assert m.betti_table().matches((1, 0, 0, 1))


def test_exp3_connectivity_range():
    for n in (1, 2):
        table = exp_subsets(sphere(n, 3 * n + 1), 3).betti_table()
        for k in range(1, n + 2):
            assert table.dim(k) == 0


def test_exp3_nondegenerate_vanish_above_3n():
    for n in (1, 2):
        m = exp_subsets(sphere(n, 3 * n + 1), 3)
        assert m.nondeg_count(3 * n + 1) == 0
        assert m.nondeg_count(3 * n) > 0


def test_diagonal_insertion_on_vertices():
    x = sphere(1, 3)
    square = product(x, x)
    sym3, _ = sym_power(x, 3)
    alpha = diagonal_insertion(x, square=square, sym3=sym3)
    assert alpha.commutes()
    keys = sym3.simplex_keys[0]
    for pid, (u, v) in enumerate(square.simplex_keys[0].tolist()):
        assert sorted([u, u, v]) == keys[alpha.level_maps[0][pid]].tolist()


def test_pushout_identity_maps():
    x = sphere(1, 3)
    glued, ia, ib = pushout(identity_map(x), identity_map(x))
    assert glued == x
    assert ia.commutes() and ib.commutes()


def test_pushout_source_mismatch():
    x, y = sphere(1, 3), sphere(2, 3)
    with pytest.raises(ContractViolation):
        pushout(identity_map(x), identity_map(y))


def test_pushout_square_commutes_and_maps_commute():
    x = sphere(1, 4)
    square = product(x, x)
    sym3, _ = sym_power(x, 3)
    _, proj2 = sym_power(x, 2)
    alpha = diagonal_insertion(x, square=square, sym3=sym3)
    glued, ia, ib = pushout(alpha, proj2)
    assert glued.validate().ok
    assert ia.commutes() and ib.commutes()
    for m in range(x.level_cap + 1):
        assert np.array_equal(
            ia.level_maps[m][alpha.level_maps[m]],
            ib.level_maps[m][proj2.level_maps[m]],
        )


@pytest.mark.parametrize("n", [1, 2])
def test_pushout_matches_subsets_levelwise(n):
    ok, detail = compare_pushout_with_subsets(sphere(n, 3 * n + 1))
    assert ok, detail


@pytest.mark.parametrize("n", [1, 2])
def test_sym2_supports_match_exp2_levelwise(n):
    ok, detail = compare_sym2_with_subsets(sphere(n, 2 * n + 1))
    assert ok, detail


def test_from_complex_projective_plane():
    assert projective_plane().betti_table().dims == (1, 1, 1)


def test_from_complex_solid_triangle_contractible():
    solid = from_complex([(0, 1, 2)], 3)
    assert solid.betti_table().dims == (1, 0, 0)


def test_from_complex_boundary_tetrahedron_matches_sphere():
    import itertools

    shell = from_complex(list(itertools.combinations(range(4), 3)), 3)
    assert shell.betti_table().matches(sphere(2).betti_table())


def test_from_complex_rejects_unsorted_facets():
    with pytest.raises(ContractViolation):
        from_complex([(1, 0, 2)], 2)
    with pytest.raises(ContractViolation):
        from_complex([(0, 0, 1)], 2)
    with pytest.raises(ContractViolation):
        from_complex([], 2)


def test_level_size_budget_enforced():
    with pytest.raises(LevelSizeError) as err:
        exp_subsets(sphere(2, 7), 3, max_level_size=1000)
    assert err.value.level >= 0
    assert err.value.size > 1000
    with pytest.raises(LevelSizeError):
        sym_power(sphere(2, 7), 3, max_level_size=1000)
    with pytest.raises(LevelSizeError):
        power(sphere(2, 7), 3, max_level_size=1000)


def test_space_spec_round_trip_and_build():
    spec = SpaceSpec("exp", n=1, k=3)
    text = spec.to_json_text()
    again = SpaceSpec.from_json_text(text)
    assert again.to_json_text() == text
    model = build_space(again)
    assert model.betti_table().dims == (1, 0, 0, 1)
    facets = SpaceSpec("complex", facets=((0, 1), (1, 2), (0, 2)))
    assert build_space(facets).betti_table().dims == (1, 1)


def test_space_spec_validation():
    with pytest.raises(ContractViolation):
        SpaceSpec("nonsense", n=1)
    with pytest.raises(ContractViolation):
        SpaceSpec("sym", n=2)
    with pytest.raises(ContractViolation):
        SpaceSpec("complex")


def test_maps_reject_bad_shapes():
    from expk.spaces import SimplicialMapModel

    x = sphere(1, 3)
    with pytest.raises(ContractViolation):
        SimplicialMapModel(x, x, [np.zeros(2, dtype=np.int32)] * 4)
    bad = [np.arange(s, dtype=np.int32) for s in x.level_sizes]
    bad[0] = bad[0] + x.level_sizes[0]  # out of range
    with pytest.raises(ContractViolation):
        SimplicialMapModel(x, x, bad)
