"""Dimension bookkeeping for long exact sequences of mod-2 vector spaces.

A template is a finite sequence of terms, each with a known dimension or
left unknown, joined by arrows that may carry annotations (zero map,
injective, surjective, isomorphism, or a pinned rank).  Exactness says
each term's dimension is the sum of the ranks of its incoming and
outgoing arrows; the solver propagates interval bounds for all dimensions
and ranks to a fixed point, reporting forced values, residual intervals,
or an inconsistency certificate naming the violated constraint.

Ranks, not matrices, are the primitives: the geometric facts that feed a
template (which restriction maps vanish, which are isomorphisms) are
recorded as annotations supplied by the caller, never derived here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ContractViolation
from .simplicial import BettiTable, canonical_json

TEMPLATE_FORMAT = "exact-template/1"

ARROW_KINDS = ("unconstrained", "zero", "injective", "surjective", "isomorphism", "rank")


@dataclass(frozen=True)
class Term:
    name: str
    dim: int | None = None  # None marks an unknown

    def __post_init__(self):
        if self.dim is not None and self.dim < 0:
            raise ContractViolation(f"term {self.name!r} has negative dimension")


@dataclass(frozen=True)
class Arrow:
    kind: str = "unconstrained"
    rank: int | None = None

    def __post_init__(self):
        if self.kind not in ARROW_KINDS:
            raise ContractViolation(f"unknown arrow annotation {self.kind!r}")
        if (self.kind == "rank") != (self.rank is not None):
            raise ContractViolation("rank annotations carry exactly one rank")
        if self.rank is not None and self.rank < 0:
            raise ContractViolation("arrow rank must be nonnegative")


@dataclass(frozen=True)
class ExactTemplate:
    terms: tuple
    arrows: tuple

    def __post_init__(self):
        if len(self.terms) < 2:
            raise ContractViolation("template needs at least the two boundary zeros")
        if len(self.arrows) != len(self.terms) - 1:
            raise ContractViolation("need exactly one arrow between consecutive terms")
        if self.terms[0].dim != 0 or self.terms[-1].dim != 0:
            raise ContractViolation("template must start and end with zero terms")

    def to_json_dict(self) -> dict:
        return {
            "format": TEMPLATE_FORMAT,
            "terms": [{"name": t.name, "dim": t.dim} for t in self.terms],
            "arrows": [
                {"kind": a.kind, **({"rank": a.rank} if a.rank is not None else {})}
                for a in self.arrows
            ],
        }

    def to_json_text(self) -> str:
        return canonical_json(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d) -> "ExactTemplate":
        if d.get("format") != TEMPLATE_FORMAT:
            raise ContractViolation("not an exact-template document")
        terms = tuple(Term(t["name"], t.get("dim")) for t in d["terms"])
        arrows = tuple(
            Arrow(a.get("kind", "unconstrained"), a.get("rank")) for a in d["arrows"]
        )
        return cls(terms, arrows)

    @classmethod
    def from_json_text(cls, text: str) -> "ExactTemplate":
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class SolveResult:
    consistent: bool
    dims: tuple = ()  # per term: (lo, hi) with hi None when unbounded
    ranks: tuple = ()
    certificate: str | None = None

    def dim_bounds(self, template: ExactTemplate, name: str):
        for t, b in zip(template.terms, self.dims):
            if t.name == name:
                return b
        raise KeyError(name)

    def forced_dims(self, template: ExactTemplate) -> dict:
        out = {}
        for t, (lo, hi) in zip(template.terms, self.dims):
            if lo == hi:
                out[t.name] = lo
        return out

    def all_forced(self) -> bool:
        return self.consistent and all(lo == hi for lo, hi in self.dims)

    def to_json_dict(self, template: ExactTemplate) -> dict:
        return {
            "consistent": self.consistent,
            "certificate": self.certificate,
            "dims": [
                {"name": t.name, "lo": lo, "hi": hi}
                for t, (lo, hi) in zip(template.terms, self.dims)
            ],
            "ranks": [{"lo": lo, "hi": hi} for lo, hi in self.ranks],
        }


# ---------------------------------------------------------------------------
# interval propagation


def _meet(a, b, what):
    lo = max(a[0], b[0])
    his = [h for h in (a[1], b[1]) if h is not None]
    hi = min(his) if his else None
    if hi is not None and lo > hi:
        raise _Contradiction(what)
    return (lo, hi)


def _add(a, b):
    hi = None if a[1] is None or b[1] is None else a[1] + b[1]
    return (a[0] + b[0], hi)


def _sub(a, b):
    """Interval of x - y for x in a, y in b, clamped at zero below."""
    lo = 0 if b[1] is None else max(0, a[0] - b[1])
    hi = None if a[1] is None else a[1] - b[0]
    return (lo, hi)


class _Contradiction(Exception):
    def __init__(self, what):
        self.what = what


def solve_template(t: ExactTemplate) -> SolveResult:
    """Propagate exactness and annotations to a fixed point.

    Every term satisfies dim = rank(in) + rank(out), with virtual zero
    ranks off both ends.  Returns forced values and interval bounds, or an
    inconsistency certificate.
    """
    nt = len(t.terms)
    dims = [(d.dim, d.dim) if d.dim is not None else (0, None) for d in t.terms]
    # ranks[j] is the arrow terms[j] -> terms[j+1]; two virtual zero ranks
    # bracket the sequence so every term sees an incoming and outgoing arrow.
    ranks = [(0, 0)] + [(0, None) for _ in t.arrows] + [(0, 0)]
    for j, a in enumerate(t.arrows):
        if a.kind == "rank":
            ranks[j + 1] = (a.rank, a.rank)
        elif a.kind == "zero":
            ranks[j + 1] = (0, 0)

    def describe(j):
        return f"arrow {t.terms[j].name} -> {t.terms[j + 1].name}"

    try:
        changed = True
        rounds = 0
        while changed:
            rounds += 1
            if rounds > 50 * (nt + 2) + 1000:
                raise AssertionError("propagation failed to stabilize")
            changed = False
            for j, a in enumerate(t.arrows):
                r = j + 1
                if a.kind in ("injective", "isomorphism"):
                    met = _meet(ranks[r], dims[j], f"injectivity of {describe(j)}")
                    if met != ranks[r] or met != dims[j]:
                        changed = True
                    ranks[r] = dims[j] = met
                if a.kind in ("surjective", "isomorphism"):
                    met = _meet(
                        ranks[r], dims[j + 1], f"surjectivity of {describe(j)}"
                    )
                    if met != ranks[r] or met != dims[j + 1]:
                        changed = True
                    ranks[r] = dims[j + 1] = met
            for i in range(nt):
                rin, rout = ranks[i], ranks[i + 1]
                what = f"exactness at term {t.terms[i].name!r}"
                met = _meet(dims[i], _add(rin, rout), what)
                if met != dims[i]:
                    dims[i] = met
                    changed = True
                met = _meet(rout, _sub(dims[i], rin), what)
                if met != ranks[i + 1]:
                    ranks[i + 1] = met
                    changed = True
                met = _meet(rin, _sub(dims[i], rout), what)
                if met != ranks[i]:
                    ranks[i] = met
                    changed = True
            for j in range(len(t.arrows)):
                r = j + 1
                what = f"rank bound on {describe(j)}"
                met = _meet(
                    ranks[r], (0, _min_hi(dims[j][1], dims[j + 1][1])), what
                )
                if met != ranks[r]:
                    ranks[r] = met
                    changed = True
    except _Contradiction as c:
        return SolveResult(False, certificate=c.what)

    return SolveResult(True, tuple(dims), tuple(ranks[1:-1]))


def _min_hi(a, b):
    his = [h for h in (a, b) if h is not None]
    return min(his) if his else None


def extract_degree_dims(template: ExactTemplate, result: SolveResult, prefix: str):
    """Forced dimensions of terms named ``f"{prefix}{k}"``, as a BettiTable."""
    found = {}
    for term, (lo, hi) in zip(template.terms, result.dims):
        if term.name.startswith(prefix):
            k = int(term.name[len(prefix):])
            if lo != hi:
                raise ContractViolation(
                    f"term {term.name} not forced: bounds ({lo}, {hi})"
                )
            found[k] = lo
    top = max(found) if found else -1
    return BettiTable(tuple(found.get(k, 0) for k in range(top + 1)))


# ---------------------------------------------------------------------------
# template builders


def _dim_of(table, k: int) -> int:
    if hasattr(table, "dim"):
        return table.dim(k) if k >= 0 else 0
    return table[k] if 0 <= k < len(table) else 0


def gysin_template(
    base: BettiTable, fiber_dim: int, euler_cup_ranks
) -> ExactTemplate:
    """Long exact sequence of a sphere-bundle with the given Euler ranks.

    ``fiber_dim`` is the dimension d of the sphere fiber, so the Euler
    class lives in degree d + 1 and ``euler_cup_ranks[j]`` pins the rank
    of the cup map from base degree j to base degree j + d + 1.  Total
    space dimensions appear as unknowns named ``E^k``.
    """
    d = fiber_dim
    if d < 1:
        raise ContractViolation("fiber dimension must be at least 1")
    top = base.max_degree if hasattr(base, "max_degree") else len(base) - 1

    def cup_rank(j: int) -> int:
        if isinstance(euler_cup_ranks, dict):
            r = euler_cup_ranks.get(j, 0)
        else:
            r = euler_cup_ranks[j] if 0 <= j < len(euler_cup_ranks) else 0
        lo_dim = _dim_of(base, j)
        hi_dim = _dim_of(base, j + d + 1)
        if r > min(lo_dim, hi_dim):
            raise ContractViolation(
                f"euler cup rank {r} at degree {j} exceeds the base dimensions"
            )
        return r

    # Repeating block: E^k -> B^{k-d} -(cup e)-> B^{k+1} -> E^{k+1} -> ...
    # The k = -1 block is all zeros except its trailing B^0, which feeds
    # the first genuine unknown E^0 the way the sequence itself does.
    # Each appended arrow leaves the term appended just before it.
    terms = [Term("0", 0)]
    arrows = [Arrow()]
    for k in range(-1, top + d + 2):
        terms.append(Term(f"E^{k}", 0 if k < 0 else None))
        arrows.append(Arrow())
        terms.append(Term(f"B^{k - d}", _dim_of(base, k - d)))
        arrows.append(Arrow("rank", cup_rank(k - d)))
        terms.append(Term(f"B^{k + 1}", _dim_of(base, k + 1)))
        arrows.append(Arrow())
    terms.append(Term("0", 0))
    return ExactTemplate(tuple(terms), tuple(arrows))


def exp2_cover_template(n: int, overlap_dims) -> ExactTemplate:
    """Covering of the two-point subset space by its distance pieces.

    The space of at most two points in the n-sphere is covered by a piece
    that retracts to real projective n-space (pairs far from the diagonal)
    and a piece that retracts to the sphere (pairs near it); the overlap
    is the sphere bundle whose dimensions are supplied.  The combined
    restriction map to the overlap has rank 1 in degrees 0..n and 0 above;
    this encodes the following externally supplied facts: the projective
    piece restricts isomorphically below degree n - 1 and injectively
    there, it restricts to zero in degree n, and the sphere piece
    restricts isomorphically in degree n.  Unknowns are named ``X^k``.
    """
    if n < 2:
        raise ContractViolation("the covering argument needs n >= 2")
    terms = [Term("0", 0)]
    arrows = [Arrow()]
    for k in range(0, 2 * n + 2):
        pieces = (1 if k <= n else 0) + (1 if k in (0, n) else 0)
        overlap = _dim_of(overlap_dims, k)
        combined_rank = 1 if k <= n else 0
        terms.append(Term(f"X^{k}", None))
        arrows.append(Arrow())
        terms.append(Term(f"U^{k}", pieces))
        arrows.append(Arrow("rank", combined_rank))
        terms.append(Term(f"I^{k}", overlap))
        arrows.append(Arrow())
    terms.append(Term("0", 0))
    return ExactTemplate(tuple(terms), tuple(arrows))


def exp3_cover_template(n: int, c3_dims, exp2_dims, total_dims) -> ExactTemplate:
    """Covering of the three-point subset space by its two natural pieces.

    One piece carries the cohomology of the space of three distinct
    points, the other that of the two-point subset space; the overlap has
    the supplied dimensions.  The combined restriction ranks encode the
    externally supplied facts: the distinct-triples piece restricts
    injectively in every degree, the two-point piece restricts
    isomorphically in degree n and to zero in degrees n+2..2n, and the
    combined map is onto in degree n.  Unknowns are named ``X^k``.
    """
    if n < 2:
        raise ContractViolation("the covering argument needs n >= 2")
    top = 3 * n + 1
    terms = [Term("0", 0)]
    arrows = [Arrow()]
    for k in range(0, top + 1):
        u = _dim_of(c3_dims, k) + _dim_of(exp2_dims, k)
        e = _dim_of(total_dims, k)
        if k == 0 or 1 <= k <= n - 1:
            rank = 1
        elif k == n:
            rank = 2
        elif n + 1 <= k <= 2 * n - 1:
            rank = 1  # the distinct-triples piece alone survives
        else:
            rank = 0  # the two-point piece restricts to zero at 2n
        terms.append(Term(f"X^{k}", None))
        arrows.append(Arrow())
        terms.append(Term(f"U^{k}", u))
        arrows.append(Arrow("rank", rank))
        terms.append(Term(f"I^{k}", e))
        arrows.append(Arrow())
    terms.append(Term("0", 0))
    return ExactTemplate(tuple(terms), tuple(arrows))


def exp3_gluing_template(
    n: int, exp2_dims, sym3_dims, product_dims
) -> ExactTemplate:
    """Sequence of the gluing square for the three-point subset space.

    The square glues the triple symmetric power and the two-point subset
    space along the doubled-coordinate insertion of the product; its
    sequence compares the glued space with the pair.  Externally supplied
    inputs: the glued space is n-connected (degrees n and n+1 vanish),
    the restriction in degree 0 has rank 1, and the restriction in degree
    2n vanishes because squares act trivially on the product's middle
    cohomology.  Unknowns are named ``X^k``.
    """
    if n < 1:
        raise ContractViolation("needs n >= 1")
    top = 3 * n + 1
    terms = [Term("0", 0)]
    arrows = [Arrow()]
    for k in range(0, top + 1):
        u = _dim_of(exp2_dims, k) + _dim_of(sym3_dims, k)
        p = _dim_of(product_dims, k)
        if k in (n, n + 1):
            x = Term(f"X^{k}", 0)
        else:
            x = Term(f"X^{k}", None)
        if k == 0:
            arrow = Arrow("rank", 1)
        elif k == 2 * n:
            arrow = Arrow("zero")
        else:
            arrow = Arrow()
        terms.append(x)
        arrows.append(Arrow())
        terms.append(Term(f"U^{k}", u))
        arrows.append(arrow)
        terms.append(Term(f"P^{k}", p))
        arrows.append(Arrow())
    terms.append(Term("0", 0))
    return ExactTemplate(tuple(terms), tuple(arrows))
