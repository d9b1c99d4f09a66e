"""Rank propagation in exact-sequence templates."""

import pytest

from expk.catalog import expected_betti
from expk.errors import ContractViolation
from expk.exact_sequences import (
    Arrow,
    ExactTemplate,
    Term,
    exp2_cover_template,
    exp3_cover_template,
    exp3_gluing_template,
    extract_degree_dims,
    gysin_template,
    solve_template,
)
from expk.grassmannian import alpha2_multiplication_rank, graded_dims
from expk.simplicial import BettiTable


def seq(*spec):
    """Shorthand: seq(("A", 1), "zero", ("B", None), ...) with 0-caps added."""
    terms = [Term("0", 0)]
    arrows = [Arrow()]
    it = iter(spec)
    for item in it:
        name, dim = item
        terms.append(Term(name, dim))
        try:
            ann = next(it)
        except StopIteration:
            break
        arrows.append(Arrow(ann) if isinstance(ann, str) else Arrow("rank", ann))
    arrows.append(Arrow())  # the closing arrow into the final zero
    terms.append(Term("0", 0))
    return ExactTemplate(tuple(terms), tuple(arrows))


def test_two_term_isomorphism_forced():
    t = seq(("A", None), "unconstrained", ("B", 1))
    res = solve_template(t)
    assert res.consistent
    assert res.forced_dims(t)["A"] == 1


def test_alternating_sum_contradiction_certified():
    t = seq(("A", 1), "unconstrained", ("B", 3), "unconstrained", ("C", 1))
    res = solve_template(t)
    assert not res.consistent
    assert res.certificate


def test_annotations_force_values():
    t = seq(("A", None), "isomorphism", ("B", 2), "zero", ("C", None), "surjective", ("D", 3))
    res = solve_template(t)
    dims = res.forced_dims(t)
    assert dims["A"] == 2 and dims["C"] == 3 and dims["D"] == 3


def test_under_constrained_leaves_intervals():
    t = seq(("A", None), "unconstrained", ("B", None), "unconstrained", ("C", 1))
    res = solve_template(t)
    assert res.consistent
    assert not res.all_forced()
    lo, hi = res.dim_bounds(t, "A")
    assert lo == 0 and hi is None


def test_solution_substitution_is_consistent():
    t = exp2_cover_template(3, expected_betti("E0", 3).dims)
    res = solve_template(t)
    assert res.consistent
    dims = res.forced_dims(t)
    terms = tuple(
        Term(x.name, dims.get(x.name, x.dim)) for x in t.terms
    )
    again = solve_template(ExactTemplate(terms, t.arrows))
    assert again.consistent and again.all_forced()


def test_monotone_refinement():
    loose = seq(("A", None), "unconstrained", ("B", None), "unconstrained", ("C", 1))
    tight = seq(("A", None), "zero", ("B", None), "unconstrained", ("C", 1))
    res_loose = solve_template(loose)
    res_tight = solve_template(tight)
    for (llo, lhi), (tlo, thi) in zip(res_loose.dims, res_tight.dims):
        assert tlo >= llo
        assert lhi is None or (thi is not None and thi <= lhi)


def test_alternating_sum_zero_when_fully_solved():
    for n in (2, 4):
        t = exp2_cover_template(n, expected_betti("E0", n).dims)
        res = solve_template(t)
        dims = [lo for lo, hi in res.dims]
        assert res.all_forced()
        assert sum((-1) ** i * d for i, d in enumerate(dims)) == 0


def test_template_well_formedness():
    with pytest.raises(ContractViolation):
        ExactTemplate((Term("A", 1), Term("0", 0)), (Arrow(),))
    with pytest.raises(ContractViolation):
        ExactTemplate((Term("0", 0), Term("A", 1)), (Arrow(),))
    with pytest.raises(ContractViolation):
        Arrow("rank")
    with pytest.raises(ContractViolation):
        Arrow("banana")
    with pytest.raises(ContractViolation):
        Term("A", -1)


def test_template_json_round_trip():
    t = gysin_template(BettiTable((1, 1, 1)), 1, {0: 1})
    text = t.to_json_text()
    assert ExactTemplate.from_json_text(text).to_json_text() == text


@pytest.mark.parametrize("n", range(2, 7))
def test_gysin_reproduces_sphere_bundle_table(n):
    base = BettiTable((1,) * (n + 1))
    t = gysin_template(base, n - 1, {0: 1})
    got = extract_degree_dims(t, solve_template(t), "E^")
    assert got.matches(expected_betti("E0", n).dims)


def test_gysin_zero_base_gives_zero_total():
    t = gysin_template(BettiTable((0,)), 2, {})
    got = extract_degree_dims(t, solve_template(t), "E^")
    assert all(d == 0 for d in got.dims)


def test_gysin_rank_bound_validated():
    with pytest.raises(ContractViolation):
        gysin_template(BettiTable((1, 1, 1)), 1, {0: 2})


@pytest.mark.parametrize("n", range(2, 7))
def test_exp2_cover_reproduces_table(n):
    t = exp2_cover_template(n, expected_betti("E0", n).dims)
    got = extract_degree_dims(t, solve_template(t), "X^")
    assert got.matches(expected_betti("exp2", n).dims)


@pytest.mark.parametrize("n", range(2, 7))
def test_exp3_cover_reproduces_table(n):
    t = exp3_cover_template(
        n,
        expected_betti("C3", n).dims,
        expected_betti("exp2", n).dims,
        expected_betti("E", n).dims,
    )
    got = extract_degree_dims(t, solve_template(t), "X^")
    assert got.matches(expected_betti("exp3", n).dims)


@pytest.mark.parametrize("n", range(3, 9))
def test_circle_bundle_over_grassmannian_matches_triples_table(n):
    gd = graded_dims(n)
    ranks = {j: alpha2_multiplication_rank(n, j + 2) for j in range(0, 2 * n - 3)}
    t = gysin_template(gd, 1, ranks)
    got = extract_degree_dims(t, solve_template(t), "E^")
    assert got.matches(expected_betti("C3", n).dims)


def test_gluing_template_with_observed_tables():
    t = exp3_gluing_template(2, (1, 0, 1, 0, 1), (1, 0, 1, 0, 1, 0, 1), (1, 0, 2, 0, 1))
    got = extract_degree_dims(t, solve_template(t), "X^")
    assert got.matches(expected_betti("exp3", 2).dims)
    t = exp3_gluing_template(1, (1, 1), (1, 1), (1, 2, 1))
    got = extract_degree_dims(t, solve_template(t), "X^")
    assert got.matches(expected_betti("exp3", 1).dims)


def test_extract_requires_forced_terms():
    t = seq(("X^0", None), "unconstrained", ("B", None), "unconstrained", ("C", 1))
    res = solve_template(t)
    with pytest.raises(ContractViolation):
        extract_degree_dims(t, res, "X^")
