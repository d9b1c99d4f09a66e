"""Simplicial-set models: identities, boundaries, Betti tables, bases."""

import pytest

from expk.complexes import projective_plane, torus
from expk.errors import CapError, ContractViolation
from expk.simplicial import BettiTable, SimplicialSetModel
from expk.spaces import exp_subsets, point, product, sphere


def circle():
    return sphere(1, 3)


def test_point_model_validates():
    assert point(2).validate().ok


def test_corrupted_face_pointer_reports_identity():
    s = sphere(1, 3)
    faces = [[f.copy() for f in fs] for fs in s.faces]
    # reroute one face of a 2-level simplex to break d_i d_j = d_{j-1} d_i
    faces[2][0][0] = (faces[2][0][0] + 1) % s.level_sizes[1]
    broken = SimplicialSetModel(s.level_cap, s.level_sizes, faces, s.degeneracies)
    report = broken.validate()
    assert not report.ok
    assert report.violation.identity in (
        "face-face",
        "face-degeneracy-low",
        "face-degeneracy-identity",
        "face-degeneracy-high",
    )
    assert "fails at level" in str(report)


def test_every_space_model_validates():
    for model in (
        sphere(1, 3),
        sphere(2),
        torus(),
        projective_plane(),
        exp_subsets(sphere(1, 4), 3),
        product(sphere(1, 3), sphere(1, 3)),
    ):
        assert model.validate().ok, model.description


def test_boundary_of_circle_edges():
    s = circle()
    b1 = s.boundary_matrix(1)
    assert (b1.row_count, b1.col_count) == (3, 3)
    dense = b1.to_dense()
    assert (dense.sum(axis=0) == 2).all()  # each edge has two endpoints
    assert b1.rank() == 2


def test_boundary_out_of_range():
    with pytest.raises(ContractViolation):
        circle().boundary_matrix(0)
    with pytest.raises(ContractViolation):
        circle().boundary_matrix(99)


def test_boundary_squared_zero():
    for model in (sphere(2), torus(), projective_plane(), exp_subsets(sphere(1, 4), 3)):
        top = model.top_nondegenerate_level()
        for n in range(2, top + 1):
            prod = model.boundary_matrix(n - 1).matmul(model.boundary_matrix(n))
            assert prod.is_zero(), (model.description, n)


def test_betti_tables():
    assert sphere(2).betti_table().dims == (1, 0, 1)
    assert exp_subsets(sphere(1, 4), 3).betti_table().dims == (1, 0, 0, 1)


def test_cap_too_small_error():
    # at cap n the sphere still has nondegenerate top simplices
    with pytest.raises(CapError):
        sphere(2, 2).betti_table()


def test_betti_independent_of_cap():
    t1 = exp_subsets(sphere(1, 3), 2).betti_table()
    t2 = exp_subsets(sphere(1, 4), 2).betti_table()
    assert t1.matches(t2)


def test_euler_characteristic_consistency():
    for model in (sphere(2), torus(), projective_plane(), exp_subsets(sphere(1, 4), 3)):
        cells = sum(
            (-1) ** n * model.nondeg_count(n) for n in range(model.level_cap + 1)
        )
        assert cells == model.betti_table().euler_characteristic()


def test_cohomology_basis_counts_and_cocycles():
    for model in (sphere(2), torus(), projective_plane()):
        table = model.betti_table()
        for n in range(table.max_degree + 1):
            basis = model.cohomology_basis(n)
            assert len(basis) == table.dim(n)
            for c in basis:
                assert c.is_cocycle
                assert model.is_cocycle(n, c.support)


def test_h0_of_connected_model_is_constant_class():
    from expk.cochains import cohomologous, unit_class

    for model in (sphere(2), torus()):
        basis = model.cohomology_basis(0)
        assert len(basis) == 1
        assert cohomologous(model, basis[0], unit_class(model))


def test_serialization_round_trip_bit_exact():
    model = exp_subsets(sphere(1, 4), 3)
    text = model.to_json_text()
    loaded = SimplicialSetModel.from_json_text(text)
    assert loaded.to_json_text() == text
    assert loaded == model
    assert loaded.content_hash() == model.content_hash()
    assert loaded.betti_table() == model.betti_table()


def test_betti_table_serialization():
    t = BettiTable((1, 0, 2))
    assert BettiTable.from_json_dict(t.to_json_dict()) == t
    assert t.dim(5) == 0
    assert t.euler_characteristic() == 3
    assert t.matches((1, 0, 2, 0, 0))
    assert not t.matches((1, 0, 1))


def test_construction_shape_checks():
    s = circle()
    with pytest.raises(ContractViolation):
        SimplicialSetModel(3, s.level_sizes[:2], s.faces, s.degeneracies)
    bad_faces = [list(fs) for fs in s.faces]
    bad_faces[1] = bad_faces[1][:1]  # too few face operators
    with pytest.raises(ContractViolation):
        SimplicialSetModel(s.level_cap, s.level_sizes, bad_faces, s.degeneracies)


def test_determinism_of_model_and_table():
    a = exp_subsets(sphere(1, 4), 3)
    b = exp_subsets(sphere(1, 4), 3)
    assert a.to_json_text() == b.to_json_text()
    assert a.content_hash() == b.content_hash()
