"""Cup products, higher cup-i products, and Steenrod squares.

All cochains are normalized: they live on nondegenerate simplices and are
read as zero on degenerate ones.  The cup-i product of u (degree p) and
v (degree q) on an n-simplex, n = p + q - i, is the classical sum over
interval cuts: pick cut positions j_0 < ... < j_i in {0..n}, split
{0..n} into the overlapping intervals

    [0..j_0], [j_0..j_1], ..., [j_i..n],

evaluate u on the union of the even-numbered intervals and v on the
odd-numbered ones, and keep the terms where the dimensions match.  The
i = 0 case is the usual front-face/back-face cup product, and the
chain-level identity

    d(u cup_i v) = u cup_{i-1} v + v cup_{i-1} u + du cup_i v + u cup_i dv

holds mod 2 (checked by the test suite on random cochains).  Steenrod
squares are the diagonal values: Sq^i[u] = [u cup_{p-i} u].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BasisSpanError, ContractViolation
from .gf2 import Gf2Matrix, Gf2Vector
from .simplicial import CochainClass, SimplicialSetModel

RING_TABLE_FORMAT = "ring-table/1"


def full_values(s: SimplicialSetModel, c: CochainClass) -> np.ndarray:
    """Dense 0/1 values over the whole level, zero on degenerate simplices."""
    out = np.zeros(s.level_sizes[c.degree], dtype=np.uint8)
    ids = s.nondeg_ids(c.degree)
    if ids.size:
        out[ids] = c.support.to_bits()
    return out


@lru_cache(maxsize=None)
def _interval_cuts(n: int, i: int, p: int):
    """Even/odd position sets of all admissible cuts, as deletion lists.

    Returns tuples (delete_for_even, delete_for_odd); deleting those
    positions from an n-simplex leaves the p-face evaluated by the first
    factor and the (n - p + i)-face evaluated by the second.
    """
    every = set(range(n + 1))
    out = []
    for cuts in itertools.combinations(range(n + 1), i + 1):
        bounds = (0, *cuts, n)
        even, odd = set(), set()
        for t in range(i + 2):
            lo = bounds[t] if t else 0
            hi = bounds[t + 1]
            block = range(lo, hi + 1)
            (even if t % 2 == 0 else odd).update(block)
        if len(even) != p + 1:
            continue
        out.append(
            (tuple(sorted(every - even)), tuple(sorted(every - odd)))
        )
    return tuple(out)


def cup_i(
    s: SimplicialSetModel, a: CochainClass, b: CochainClass, i: int
) -> CochainClass:
    """Chain-level cup-i product; defined for arbitrary cochains."""
    p, q = a.degree, b.degree
    if not 0 <= i <= min(p, q):
        raise ContractViolation(f"cup index {i} outside 0..min({p},{q})")
    n = p + q - i
    if n > s.level_cap:
        raise ContractViolation(f"product degree {n} exceeds the level cap")
    m = s.nondeg_count(n)
    if m == 0:
        return CochainClass(n, Gf2Vector.zeros(0), True)
    av = full_values(s, a)
    bv = full_values(s, b)
    ids = s.nondeg_ids(n)
    out = np.zeros(m, dtype=np.uint8)
    for delete_even, delete_odd in _interval_cuts(n, i, p):
        e_ids = s.face_word(n, ids, delete_even)
        o_ids = s.face_word(n, ids, delete_odd)
        out ^= av[e_ids] & bv[o_ids]
    support = Gf2Vector.from_bits(out)
    cocycle = n < s.level_cap and s.is_cocycle(n, support)
    return CochainClass(n, support, cocycle)


def cup(s: SimplicialSetModel, a: CochainClass, b: CochainClass) -> CochainClass:
    """Front-face/back-face product of cocycles; the class is well defined."""
    if not (a.is_cocycle and b.is_cocycle):
        raise ContractViolation("cup is defined on cocycle representatives")
    out = cup_i(s, a, b, 0)
    if not out.is_cocycle:
        raise AssertionError("cup of cocycles failed to be a cocycle")
    return out


def coboundary(s: SimplicialSetModel, c: CochainClass) -> CochainClass:
    support = s.coboundary_matrix(c.degree).mul_vec(c.support)
    degree = c.degree + 1
    cocycle = (
        s.nondeg_count(degree) == 0
        or degree < s.level_cap
        and s.is_cocycle(degree, support)
    )
    return CochainClass(degree, support, cocycle)


def steenrod_square(s: SimplicialSetModel, i: int, a: CochainClass) -> CochainClass:
    """Sq^i on a cocycle: the class of a cup_{p-i} a, zero above the degree."""
    if i < 0:
        raise ContractViolation("square index must be nonnegative")
    if not a.is_cocycle:
        raise ContractViolation("squares are defined on cocycle representatives")
    p = a.degree
    if i > p:
        degree = p + i
        if degree > s.level_cap:
            raise ContractViolation(f"degree {degree} exceeds the level cap")
        return CochainClass(degree, Gf2Vector.zeros(s.nondeg_count(degree)), True)
    out = cup_i(s, a, a, p - i)
    if not out.is_cocycle:
        raise AssertionError("square of a cocycle failed to be a cocycle")
    return out


# ---------------------------------------------------------------------------
# expressing classes in a basis


def _columns_matrix(columns, length: int) -> Gf2Matrix:
    if not columns:
        return Gf2Matrix.zeros(length, 0)
    rows = Gf2Matrix.from_rows([c.to_bits() for c in columns], length)
    return rows.transpose()


def _solve_against(s, c: CochainClass, basis):
    n = c.degree
    cols = [b.support for b in basis]
    ncob = 0
    if n >= 1 and s.nondeg_count(n):
        bnd = s.boundary_matrix(n)
        ncob = bnd.row_count
        cols.extend(bnd.row(r) for r in range(ncob))
    mat = _columns_matrix(cols, s.nondeg_count(n))
    x = mat.solve(c.support)
    return x, ncob


def express_in_basis(s: SimplicialSetModel, c: CochainClass, basis) -> Gf2Vector:
    """Coordinates of [c] in the given basis, modulo coboundaries."""
    if not c.is_cocycle:
        raise ContractViolation("only cocycles have well-defined coordinates")
    for b in basis:
        if b.degree != c.degree:
            raise ContractViolation("basis degree mismatch")
    x, _ = _solve_against(s, c, basis)
    if x is None:
        raise BasisSpanError(
            f"basis does not span the class in degree {c.degree}"
        )
    bits = x.to_bits()[: len(basis)]
    return Gf2Vector.from_bits(bits)


def is_coboundary(s: SimplicialSetModel, c: CochainClass) -> bool:
    x, _ = _solve_against(s, c, [])
    return x is not None


def cohomologous(s: SimplicialSetModel, c1: CochainClass, c2: CochainClass) -> bool:
    if c1.degree != c2.degree:
        return False
    diff = CochainClass(c1.degree, c1.support ^ c2.support, True)
    return is_coboundary(s, diff)


def unit_class(s: SimplicialSetModel) -> CochainClass:
    """The all-ones 0-cochain; the multiplicative unit on cohomology."""
    ones = Gf2Vector.from_bits(np.ones(s.nondeg_count(0), dtype=np.uint8))
    if not s.is_cocycle(0, ones):
        raise AssertionError("constant 0-cochain is not closed")
    return CochainClass(0, ones, True)


def random_cochain(s: SimplicialSetModel, degree: int, rng) -> CochainClass:
    bits = rng.integers(0, 2, size=s.nondeg_count(degree), dtype=np.uint8)
    support = Gf2Vector.from_bits(bits)
    cocycle = degree < s.level_cap and s.is_cocycle(degree, support)
    return CochainClass(degree, support, cocycle)


# ---------------------------------------------------------------------------
# ring tables


@dataclass(frozen=True)
class RingTable:
    """Structure constants of the cup product in a fixed cohomology basis."""

    basis_labels: tuple  # tuple of (degree, labels tuple)
    products: tuple  # ((deg_a, idx_a, deg_b, idx_b), coords bits tuple)

    def to_json_dict(self) -> dict:
        return {
            "format": RING_TABLE_FORMAT,
            "basis": [
                {"degree": d, "labels": list(labels)}
                for d, labels in self.basis_labels
            ],
            "products": [
                {
                    "left": [a, i],
                    "right": [b, j],
                    "coords": list(coords),
                }
                for (a, i, b, j), coords in self.products
            ],
        }


def ring_table(s: SimplicialSetModel, max_degree: int | None = None) -> RingTable:
    """Cup products of all basis classes within the computable range.

    Graded commutativity (mod 2 equality of both orders) is verified
    while the table is assembled.
    """
    top = s.top_nondegenerate_level()
    if max_degree is None:
        max_degree = top
    bases = {d: s.cohomology_basis(d) for d in range(max_degree + 1)}
    labels = tuple(
        (d, tuple(f"h{d}[{i}]" for i in range(len(bases[d]))))
        for d in range(max_degree + 1)
        if bases[d]
    )
    entries = {}
    for da, db in itertools.product(range(max_degree + 1), repeat=2):
        dc = da + db
        if dc > max_degree or not bases[da] or not bases[db] or not bases[dc]:
            continue
        for ia, a in enumerate(bases[da]):
            for ib, b in enumerate(bases[db]):
                coords = express_in_basis(s, cup(s, a, b), bases[dc])
                entries[(da, ia, db, ib)] = tuple(coords.to_bits().tolist())
    for (da, ia, db, ib), coords in entries.items():
        if entries[(db, ib, da, ia)] != coords:
            raise AssertionError("cup product failed graded commutativity")
    products = tuple(sorted(entries.items()))
    return RingTable(labels, products)
