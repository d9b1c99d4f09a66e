"""Constructors for the spaces under study and the maps between them.

Everything is built levelwise on dense integer ids:

* ``from_complex`` turns an ordered facet list into the simplicial set of
  weakly monotone vertex tuples supported on a face.
* ``sphere(n)`` is the boundary of the standard (n+1)-simplex.
* ``product`` / ``power`` use mixed-radix ids, so faces and degeneracies
  are plain integer arithmetic.
* ``sym_power`` quotients the k-fold power by coordinate permutation;
  level elements are sorted id tuples (multisets), and the levelwise
  projection from the power is returned alongside the model.
* ``exp_subsets`` keeps nonempty id subsets of size at most k; faces act
  elementwise with duplicates collapsing.
* ``pushout`` glues two maps with a shared source, level by level, via
  union-find.

Each constructed model records its canonical per-level labels in
``simplex_keys`` (id tuples into the input model's levels); these are
construction metadata and are not serialized.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, LevelSizeError
from .simplicial import SimplicialSetModel, canonical_json

DEFAULT_MAX_LEVEL_SIZE = 5_000_000

SPACE_SPEC_FORMAT = "space-spec/1"


class SimplicialMapModel:
    """A levelwise function between models that respects the structure maps."""

    def __init__(self, source, target, level_maps, description=""):
        if source.level_cap != target.level_cap:
            raise ContractViolation("map endpoints must share a level cap")
        if len(level_maps) != source.level_cap + 1:
            raise ContractViolation("need one level map per level")
        self.source = source
        self.target = target
        self.description = description
        maps = []
        for n, m in enumerate(level_maps):
            arr = np.ascontiguousarray(m, dtype=np.int32)
            if arr.shape != (source.level_sizes[n],):
                raise ContractViolation(f"level map {n} has wrong length")
            if arr.size and (arr.min() < 0 or arr.max() >= target.level_sizes[n]):
                raise ContractViolation(f"level map {n} points out of range")
            arr.setflags(write=False)
            maps.append(arr)
        self.level_maps = maps

    def commutes(self) -> bool:
        """Exhaustive levelwise check against all faces and degeneracies."""
        src, tgt, f = self.source, self.target, self.level_maps
        for n in range(1, src.level_cap + 1):
            for i in range(n + 1):
                if not np.array_equal(
                    tgt.faces[n][i][f[n]], f[n - 1][src.faces[n][i]]
                ):
                    return False
        for n in range(src.level_cap):
            for i in range(n + 1):
                if not np.array_equal(
                    tgt.degeneracies[n][i][f[n]], f[n + 1][src.degeneracies[n][i]]
                ):
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, SimplicialMapModel):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and all(
                np.array_equal(a, b)
                for a, b in zip(self.level_maps, other.level_maps)
            )
        )

    def __repr__(self):
        return f"SimplicialMapModel({self.description or 'unnamed'})"


def compose(outer: SimplicialMapModel, inner: SimplicialMapModel) -> SimplicialMapModel:
    if inner.target is not outer.source and inner.target != outer.source:
        raise ContractViolation("composition endpoints do not match")
    maps = [o[i] for o, i in zip(outer.level_maps, inner.level_maps)]
    return SimplicialMapModel(
        inner.source,
        outer.target,
        maps,
        description=f"{outer.description} . {inner.description}",
    )


def identity_map(x: SimplicialSetModel) -> SimplicialMapModel:
    return SimplicialMapModel(
        x,
        x,
        [np.arange(s, dtype=np.int32) for s in x.level_sizes],
        description=f"id[{x.description}]",
    )


# ---------------------------------------------------------------------------
# id-tuple lookup machinery


class _RowCoder:
    """Lookup table from canonical key rows to level ids.

    Rows are encoded positionally in base M into int64 when that fits,
    with a dict fallback otherwise.  Ids follow the construction order of
    the supplied key array.
    """

    def __init__(self, keys: np.ndarray, base: int):
        self.keys = keys
        self.base = max(int(base), 1)
        self.width = keys.shape[1] if keys.ndim == 2 else 1
        self._fast = self.base**self.width < 2**62
        if self._fast:
            codes = self.encode(keys)
            self._order = np.argsort(codes, kind="stable").astype(np.int64)
            self._sorted = codes[self._order]
        else:
            self._table = {tuple(row): i for i, row in enumerate(keys.tolist())}

    def encode(self, rows: np.ndarray) -> np.ndarray:
        rows = np.asarray(rows, dtype=np.int64)
        codes = np.zeros(rows.shape[0], dtype=np.int64)
        for j in range(self.width):
            codes = codes * self.base + rows[:, j]
        return codes

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        if self._fast:
            codes = self.encode(rows)
            pos = np.searchsorted(self._sorted, codes)
            if pos.size and (
                pos.max() >= self._sorted.size
                or not np.array_equal(self._sorted[pos], codes)
            ):
                raise ContractViolation("lookup of a key outside the level")
            return self._order[pos].astype(np.int32)
        out = np.fromiter(
            (self._table[tuple(r)] for r in rows.tolist()),
            dtype=np.int32,
            count=len(rows),
        )
        return out


def _check_level_size(what: str, level: int, size: int, bound: int):
    if size > bound:
        raise LevelSizeError(what, level, size, bound)


# ---------------------------------------------------------------------------
# complexes and spheres


def from_complex(facets, cap: int, description: str = "") -> SimplicialSetModel:
    """Model of an abstract simplicial complex given by ordered facets.

    Level m holds all weakly monotone (m+1)-tuples of vertices whose
    support is a face of the complex; faces delete a position and
    degeneracies repeat one.
    """
    if cap < 1:
        raise ContractViolation("cap must be at least 1")
    facets = [tuple(int(v) for v in f) for f in facets]
    if not facets:
        raise ContractViolation("facet list is empty")
    for f in facets:
        if not f or any(a >= b for a, b in zip(f, f[1:])):
            raise ContractViolation(
                f"facet {f} is not a strictly increasing vertex tuple"
            )
    faces_of = set()
    for f in facets:
        for s in range(1, len(f) + 1):
            faces_of.update(itertools.combinations(f, s))
    vertices = sorted({v for f in facets for v in f})
    face_set = {frozenset(f) for f in faces_of}

    level_keys = []
    key_to_id = []
    for m in range(cap + 1):
        keys = [
            t
            for t in itertools.combinations_with_replacement(vertices, m + 1)
            if frozenset(t) in face_set
        ]
        level_keys.append(keys)
        key_to_id.append({t: i for i, t in enumerate(keys)})

    faces = [[]]
    for m in range(1, cap + 1):
        ops = []
        for i in range(m + 1):
            ops.append(
                np.fromiter(
                    (key_to_id[m - 1][t[:i] + t[i + 1 :]] for t in level_keys[m]),
                    dtype=np.int32,
                    count=len(level_keys[m]),
                )
            )
        faces.append(ops)
    degeneracies = []
    for m in range(cap + 1):
        ops = []
        if m + 1 <= cap:
            for i in range(m + 1):
                ops.append(
                    np.fromiter(
                        (
                            key_to_id[m + 1][t[: i + 1] + t[i:]]
                            for t in level_keys[m]
                        ),
                        dtype=np.int32,
                        count=len(level_keys[m]),
                    )
                )
        degeneracies.append(ops)
    return SimplicialSetModel(
        cap,
        [len(k) for k in level_keys],
        faces,
        degeneracies,
        description=description or "complex",
        simplex_keys=[np.array(k, dtype=np.int32) for k in level_keys],
    )


def sphere(n: int, cap: int | None = None) -> SimplicialSetModel:
    """Boundary of the standard (n+1)-simplex on n+2 ordered vertices."""
    if n < 1:
        raise ContractViolation("sphere dimension must be at least 1")
    if cap is None:
        cap = n + 1
    if cap < n:
        raise ContractViolation("cap must be at least the sphere dimension")
    facets = list(itertools.combinations(range(n + 2), n + 1))
    return from_complex(facets, cap, description=f"sphere({n})")


def point(cap: int) -> SimplicialSetModel:
    return from_complex([(0,)], cap, description="point")


# ---------------------------------------------------------------------------
# products and powers


def multi_product(
    factors, max_level_size: int = DEFAULT_MAX_LEVEL_SIZE, description: str = ""
) -> SimplicialSetModel:
    """Levelwise product with mixed-radix ids (last factor fastest)."""
    if not factors:
        raise ContractViolation("need at least one factor")
    cap = factors[0].level_cap
    if any(f.level_cap != cap for f in factors):
        raise ContractViolation("factors must share a level cap")
    nf = len(factors)
    sizes = [[f.level_sizes[m] for f in factors] for m in range(cap + 1)]
    level_sizes = [math.prod(s) for s in sizes]
    for m, ls in enumerate(level_sizes):
        _check_level_size("product", m, ls, max_level_size)

    coords = []
    for m in range(cap + 1):
        ids = np.arange(level_sizes[m], dtype=np.int64)
        cs = np.empty((level_sizes[m], nf), dtype=np.int32)
        rest = ids
        for j in range(nf - 1, -1, -1):
            rest, cs[:, j] = np.divmod(rest, sizes[m][j])
        coords.append(cs)

    def recombine(mapped_cols, target_sizes):
        out = np.zeros(mapped_cols[0].shape[0], dtype=np.int64)
        for j in range(nf):
            out = out * target_sizes[j] + mapped_cols[j]
        return out.astype(np.int32)

    faces = [[]]
    for m in range(1, cap + 1):
        ops = []
        for i in range(m + 1):
            cols = [factors[j].faces[m][i][coords[m][:, j]] for j in range(nf)]
            ops.append(recombine(cols, sizes[m - 1]))
        faces.append(ops)
    degeneracies = []
    for m in range(cap + 1):
        ops = []
        if m + 1 <= cap:
            for i in range(m + 1):
                cols = [
                    factors[j].degeneracies[m][i][coords[m][:, j]]
                    for j in range(nf)
                ]
                ops.append(recombine(cols, sizes[m + 1]))
        degeneracies.append(ops)
    return SimplicialSetModel(
        cap,
        level_sizes,
        faces,
        degeneracies,
        description=description
        or "(" + " x ".join(f.description for f in factors) + ")",
        simplex_keys=coords,
    )


def product(a, b, max_level_size: int = DEFAULT_MAX_LEVEL_SIZE):
    """Binary product; pairs are nondegenerate unless one index degenerates both."""
    return multi_product([a, b], max_level_size=max_level_size)


def power(x, k: int, max_level_size: int = DEFAULT_MAX_LEVEL_SIZE):
    if k < 1:
        raise ContractViolation("power exponent must be at least 1")
    return multi_product(
        [x] * k,
        max_level_size=max_level_size,
        description=f"{x.description}^{k}",
    )


# ---------------------------------------------------------------------------
# symmetric powers and finite subset spaces


def sym_power(x, k: int, max_level_size: int = DEFAULT_MAX_LEVEL_SIZE):
    """Orbit quotient of the k-fold power by coordinate permutation.

    Level elements are size-k multisets of level ids, canonically sorted
    tuples in lexicographic order.  Returns the quotient model together
    with the levelwise projection from the k-fold power.
    """
    if k < 1:
        raise ContractViolation("multiset size must be at least 1")
    cap = x.level_cap
    for m, lm in enumerate(x.level_sizes):
        _check_level_size("sym-power base", m, lm**k, max_level_size)
    pw = power(x, k, max_level_size=max_level_size)

    level_keys = []
    coders = []
    proj_maps = []
    for m in range(cap + 1):
        sorted_rows = np.sort(pw.simplex_keys[m], axis=1)
        base = max(x.level_sizes[m], 1)
        probe = _RowCoder(np.zeros((0, k), dtype=np.int32), base)
        codes = probe.encode(sorted_rows)
        uniq, inverse = np.unique(codes, return_inverse=True)
        keys = _decode(uniq, base, k)
        level_keys.append(keys)
        coders.append(_RowCoder(keys, base))
        proj_maps.append(inverse.astype(np.int32))

    faces = [[]]
    for m in range(1, cap + 1):
        ops = []
        for i in range(m + 1):
            mapped = x.faces[m][i][level_keys[m]]
            mapped.sort(axis=1)
            ops.append(coders[m - 1].lookup(mapped))
        faces.append(ops)
    degeneracies = []
    for m in range(cap + 1):
        ops = []
        if m + 1 <= cap:
            for i in range(m + 1):
                mapped = x.degeneracies[m][i][level_keys[m]]
                mapped.sort(axis=1)
                ops.append(coders[m + 1].lookup(mapped))
        degeneracies.append(ops)

    model = SimplicialSetModel(
        cap,
        [kk.shape[0] for kk in level_keys],
        faces,
        degeneracies,
        description=f"sym_{k}({x.description})",
        simplex_keys=level_keys,
    )
    projection = SimplicialMapModel(
        pw, model, proj_maps, description=f"quotient {x.description}^{k} -> sym"
    )
    return model, projection


def _decode(codes: np.ndarray, base: int, width: int) -> np.ndarray:
    out = np.empty((codes.size, width), dtype=np.int32)
    rest = codes.astype(np.int64)
    for j in range(width - 1, -1, -1):
        rest, out[:, j] = np.divmod(rest, base)
    return out


def _subset_level_count(level_size: int, k: int) -> int:
    return sum(math.comb(level_size, s) for s in range(1, k + 1))


def exp_subsets(
    x, k: int, max_level_size: int = DEFAULT_MAX_LEVEL_SIZE
) -> SimplicialSetModel:
    """Space of nonempty subsets of size at most k, level by level.

    Level m consists of the nonempty subsets of the level-m ids of x with
    at most k elements; faces and degeneracies act elementwise, collapsing
    duplicates.  Keys are sorted id tuples padded with the level size.
    """
    if k < 1:
        raise ContractViolation("cardinality bound must be at least 1")
    cap = x.level_cap
    for m, lm in enumerate(x.level_sizes):
        _check_level_size("subset space", m, _subset_level_count(lm, k), max_level_size)

    level_keys = []
    coders = []
    for m in range(cap + 1):
        lm = x.level_sizes[m]
        blocks = []
        for s in range(1, min(k, lm) + 1):
            combos = np.fromiter(
                itertools.chain.from_iterable(
                    itertools.combinations(range(lm), s)
                ),
                dtype=np.int32,
                count=s * math.comb(lm, s),
            ).reshape(-1, s)
            padded = np.full((combos.shape[0], k), lm, dtype=np.int32)
            padded[:, :s] = combos
            blocks.append(padded)
        keys = np.concatenate(blocks, axis=0) if blocks else np.zeros((0, k), np.int32)
        level_keys.append(keys)
        coders.append(_RowCoder(keys, lm + 1))

    def canonical_image(keys, op, source_size, target_size):
        cols = np.minimum(keys, source_size - 1) if source_size else keys
        mapped = np.where(keys < source_size, op[cols], target_size)
        mapped.sort(axis=1)
        if k > 1:
            dup = mapped[:, 1:] == mapped[:, :-1]
            dup &= mapped[:, 1:] < target_size
            mapped[:, 1:][dup] = target_size
            mapped.sort(axis=1)
        return mapped

    faces = [[]]
    for m in range(1, cap + 1):
        ops = []
        for i in range(m + 1):
            img = canonical_image(
                level_keys[m],
                x.faces[m][i],
                x.level_sizes[m],
                x.level_sizes[m - 1],
            )
            ops.append(coders[m - 1].lookup(img))
        faces.append(ops)
    degeneracies = []
    for m in range(cap + 1):
        ops = []
        if m + 1 <= cap:
            for i in range(m + 1):
                img = canonical_image(
                    level_keys[m],
                    x.degeneracies[m][i],
                    x.level_sizes[m],
                    x.level_sizes[m + 1],
                )
                ops.append(coders[m + 1].lookup(img))
        degeneracies.append(ops)
    return SimplicialSetModel(
        cap,
        [kk.shape[0] for kk in level_keys],
        faces,
        degeneracies,
        description=f"exp_{k}({x.description})",
        simplex_keys=level_keys,
    )


# ---------------------------------------------------------------------------
# the squaring map and the gluing square


def diagonal_insertion(
    x,
    square: SimplicialSetModel | None = None,
    sym3: SimplicialSetModel | None = None,
    max_level_size: int = DEFAULT_MAX_LEVEL_SIZE,
) -> SimplicialMapModel:
    """The map sending a pair (u, v) to the multiset {u, u, v}.

    Levelwise insertion of the doubled first coordinate into the 3-fold
    symmetric power.  Prebuilt product / symmetric-power models may be
    supplied to avoid reconstruction; they must match structurally.
    """
    if square is None:
        square = product(x, x, max_level_size=max_level_size)
    if sym3 is None:
        sym3, _ = sym_power(x, 3, max_level_size=max_level_size)
    if square.level_cap != x.level_cap or sym3.level_cap != x.level_cap:
        raise ContractViolation("all caps must agree")
    maps = []
    for m in range(x.level_cap + 1):
        pairs = square.simplex_keys[m]
        triples = np.column_stack([pairs[:, 0], pairs[:, 0], pairs[:, 1]])
        triples.sort(axis=1)
        coder = _RowCoder(sym3.simplex_keys[m], max(x.level_sizes[m], 1))
        maps.append(coder.lookup(triples))
    return SimplicialMapModel(
        square, sym3, maps, description=f"(u,v) -> {{u,u,v}} on {x.description}"
    )


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def pushout(f: SimplicialMapModel, g: SimplicialMapModel):
    """Levelwise set pushout of two maps sharing a source.

    Returns the glued model and the two canonical maps from the targets.
    Class ids follow first occurrence, scanning the first target's ids and
    then the second's.
    """
    if f.source != g.source:
        raise ContractViolation("pushout legs must share their source")
    a, b = f.target, g.target
    cap = a.level_cap
    if b.level_cap != cap:
        raise ContractViolation("pushout targets must share the level cap")

    class_of = []
    reps = []
    for m in range(cap + 1):
        la, lb = a.level_sizes[m], b.level_sizes[m]
        uf = _UnionFind(la + lb)
        fm, gm = f.level_maps[m], g.level_maps[m]
        for z in range(f.source.level_sizes[m]):
            uf.union(int(fm[z]), la + int(gm[z]))
        labels = np.empty(la + lb, dtype=np.int32)
        root_to_class = {}
        rep_list = []
        for e in range(la + lb):
            r = uf.find(e)
            c = root_to_class.get(r)
            if c is None:
                c = len(rep_list)
                root_to_class[r] = c
                rep_list.append(e)
            labels[e] = c
        class_of.append(labels)
        reps.append(np.array(rep_list, dtype=np.int64))

    def induced(op_a, op_b, m, target_level):
        la = a.level_sizes[m]
        la_t = a.level_sizes[target_level]
        rep = reps[m]
        out = np.empty(rep.size, dtype=np.int32)
        in_a = rep < la
        if in_a.any():
            out[in_a] = class_of[target_level][op_a[rep[in_a]]]
        if (~in_a).any():
            out[~in_a] = class_of[target_level][la_t + op_b[rep[~in_a] - la]]
        return out

    faces = [[]]
    for m in range(1, cap + 1):
        faces.append(
            [induced(a.faces[m][i], b.faces[m][i], m, m - 1) for i in range(m + 1)]
        )
    degeneracies = []
    for m in range(cap + 1):
        ops = []
        if m + 1 <= cap:
            ops = [
                induced(a.degeneracies[m][i], b.degeneracies[m][i], m, m + 1)
                for i in range(m + 1)
            ]
        degeneracies.append(ops)

    glued = SimplicialSetModel(
        cap,
        [int(r.size) for r in reps],
        faces,
        degeneracies,
        description=f"pushout({a.description} <- {f.source.description} -> {b.description})",
    )
    into_a = SimplicialMapModel(
        a,
        glued,
        [class_of[m][: a.level_sizes[m]] for m in range(cap + 1)],
        description="pushout leg from first target",
    )
    into_b = SimplicialMapModel(
        b,
        glued,
        [class_of[m][a.level_sizes[m] :] for m in range(cap + 1)],
        description="pushout leg from second target",
    )
    return glued, into_a, into_b


# ---------------------------------------------------------------------------
# comparisons pinning the subset-space models to the gluing square


def _support_codes(keys: np.ndarray, level_size: int, width: int) -> np.ndarray:
    """Encode the support set of each key row (sorted, dedup, padded)."""
    supp = np.sort(np.asarray(keys, dtype=np.int32), axis=1)
    if supp.shape[1] < width:
        pad = np.full((supp.shape[0], width - supp.shape[1]), level_size, np.int32)
        supp = np.concatenate([supp, pad], axis=1)
    if width > 1:
        dup = supp[:, 1:] == supp[:, :-1]
        dup &= supp[:, 1:] < level_size
        supp[:, 1:][dup] = level_size
        supp.sort(axis=1)
    codes = np.zeros(supp.shape[0], dtype=np.int64)
    for j in range(width):
        codes = codes * (level_size + 1) + supp[:, j]
    return codes


def compare_pushout_with_subsets(x, max_level_size: int = DEFAULT_MAX_LEVEL_SIZE):
    """Levelwise comparison of the gluing square with the subset space.

    Glues the triple symmetric power and the double symmetric power along
    the square of x (doubled-coordinate insertion on one leg, quotient
    projection on the other) and checks that taking supports is a
    bijection from the glued classes onto the level sets of the space of
    at most three points.  Returns (ok, detail).
    """
    square = product(x, x, max_level_size=max_level_size)
    sym3, _ = sym_power(x, 3, max_level_size=max_level_size)
    sym2, proj2 = sym_power(x, 2, max_level_size=max_level_size)
    alpha = diagonal_insertion(x, square=square, sym3=sym3, max_level_size=max_level_size)
    if proj2.source != square:
        return False, "the two legs fail to share the square as source"
    glued, into_sym3, into_sym2 = pushout(alpha, proj2)
    subsets = exp_subsets(x, 3, max_level_size=max_level_size)
    for m in range(x.level_cap + 1):
        if not np.array_equal(
            into_sym3.level_maps[m][alpha.level_maps[m]],
            into_sym2.level_maps[m][proj2.level_maps[m]],
        ):
            return False, f"gluing square fails to commute at level {m}"
        nclasses = glued.level_sizes[m]
        if nclasses != subsets.level_sizes[m]:
            return False, f"class count differs from subset count at level {m}"
        lm = x.level_sizes[m]
        # support must be constant on classes, and class -> support must
        # enumerate the subset level exactly
        class_support = np.full(nclasses, -1, dtype=np.int64)
        batches = [
            (_support_codes(sym3.simplex_keys[m], lm, 3), into_sym3.level_maps[m]),
            (_support_codes(sym2.simplex_keys[m], lm, 3), into_sym2.level_maps[m]),
        ]
        for codes, cls in batches:
            class_support[cls] = codes
        for codes, cls in batches:
            if not np.array_equal(class_support[cls], codes):
                return False, f"support is not constant on classes at level {m}"
        if (class_support < 0).any():
            return False, f"an empty glued class appeared at level {m}"
        expect = _support_codes(subsets.simplex_keys[m], lm, 3)
        if not np.array_equal(np.sort(class_support), np.sort(expect)):
            return False, f"glued classes and subset level differ at level {m}"
    return True, "supports give a levelwise bijection"


def compare_sym2_with_subsets(x, max_level_size: int = DEFAULT_MAX_LEVEL_SIZE):
    """Supports identify double-multiset levels with two-point subset levels."""
    sym2, _ = sym_power(x, 2, max_level_size=max_level_size)
    subsets = exp_subsets(x, 2, max_level_size=max_level_size)
    for m in range(x.level_cap + 1):
        lm = x.level_sizes[m]
        codes_sym = _support_codes(sym2.simplex_keys[m], lm, 2)
        codes_sub = _support_codes(subsets.simplex_keys[m], lm, 2)
        if np.unique(codes_sym).size != codes_sym.size:
            return False, f"support map fails to be injective at level {m}"
        if not np.array_equal(np.sort(codes_sym), np.sort(codes_sub)):
            return False, f"support map fails to be onto at level {m}"
    return True, "supports give a levelwise bijection"


# ---------------------------------------------------------------------------
# declarative space descriptions (CLI-facing)


SPACE_KINDS = ("sphere", "product", "power", "sym", "exp", "complex")


@dataclass(frozen=True)
class SpaceSpec:
    """Declarative description of a buildable space."""

    kind: str
    n: int | None = None
    k: int | None = None
    cap: int | None = None
    facets: tuple | None = None
    max_level_size: int = DEFAULT_MAX_LEVEL_SIZE

    def __post_init__(self):
        if self.kind not in SPACE_KINDS:
            raise ContractViolation(f"unknown space kind {self.kind!r}")
        if self.kind == "complex":
            if not self.facets:
                raise ContractViolation("complex spec needs facets")
        elif self.n is None or self.n < 1:
            raise ContractViolation("spec needs a sphere dimension n >= 1")
        if self.kind in ("power", "sym", "exp") and (self.k is None or self.k < 1):
            raise ContractViolation(f"{self.kind} spec needs k >= 1")
        if self.cap is not None and self.cap < 1:
            raise ContractViolation("cap must be at least 1")

    def default_cap(self) -> int:
        if self.cap is not None:
            return self.cap
        if self.kind == "sphere":
            return self.n + 1
        if self.kind == "product":
            return 2 * self.n + 1
        if self.kind == "complex":
            return max(len(f) for f in self.facets) + 1
        return self.k * self.n + 1

    def to_json_dict(self) -> dict:
        d = {"format": SPACE_SPEC_FORMAT, "kind": self.kind}
        if self.kind == "complex":
            d["facets"] = [list(f) for f in self.facets]
        else:
            d["n"] = self.n
        if self.kind in ("power", "sym", "exp"):
            d["k"] = self.k
        d["cap"] = self.default_cap()
        d["max_level_size"] = self.max_level_size
        return d

    def to_json_text(self) -> str:
        return canonical_json(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d) -> "SpaceSpec":
        if d.get("format") != SPACE_SPEC_FORMAT:
            raise ContractViolation("not a space-spec document")
        facets = d.get("facets")
        return cls(
            kind=d["kind"],
            n=d.get("n"),
            k=d.get("k"),
            cap=d.get("cap"),
            facets=tuple(tuple(f) for f in facets) if facets else None,
            max_level_size=d.get("max_level_size", DEFAULT_MAX_LEVEL_SIZE),
        )

    @classmethod
    def from_json_text(cls, text: str) -> "SpaceSpec":
        return cls.from_json_dict(json.loads(text))


def build_space(spec: SpaceSpec) -> SimplicialSetModel:
    """Build the model a spec describes (projection maps are discarded)."""
    cap = spec.default_cap()
    bound = spec.max_level_size
    if spec.kind == "complex":
        return from_complex(spec.facets, cap)
    base = sphere(spec.n, cap)
    if spec.kind == "sphere":
        return base
    if spec.kind == "product":
        return product(base, base, max_level_size=bound)
    if spec.kind == "power":
        return power(base, spec.k, max_level_size=bound)
    if spec.kind == "sym":
        # Level sizes of the symmetric power are known in closed form, so
        # oversized requests fail before the k-fold power is materialized.
        for m, lm in enumerate(base.level_sizes):
            _check_level_size(
                "sym-power", m, math.comb(lm + spec.k - 1, spec.k), bound
            )
        model, _ = sym_power(base, spec.k, max_level_size=bound)
        return model
    if spec.kind == "exp":
        return exp_subsets(base, spec.k, max_level_size=bound)
    raise ContractViolation(f"unknown space kind {spec.kind!r}")
