"""Finite levelwise simplicial-set models and their normalized mod-2 chains.

A model stores, for every level 0..cap, the full (possibly degenerate)
simplex set as a dense range of integer ids, together with one integer
array per face and degeneracy operator.  Homology is computed on the
normalized chain complex: only simplices that are not in the image of any
degeneracy operator carry chains, which keeps the boundary matrices small
even when the stored levels are large.

Conventions
-----------
* ``faces[n][i]`` maps level-``n`` ids to level-``n-1`` ids (``1 <= n``,
  ``0 <= i <= n``).
* ``degeneracies[n][i]`` maps level-``n`` ids to level-``n+1`` ids
  (``n + 1 <= cap``, ``0 <= i <= n``).
* A simplex is degenerate exactly when it is hit by some degeneracy
  operator from the level below.
* Mod-2 Betti numbers are ``nullity(boundary_n) - rank(boundary_{n+1})``;
  with field coefficients these are simultaneously the homology and
  cohomology dimensions.

The top stored level must be free of nondegenerate simplices before a
Betti table is trusted; otherwise ``CapError`` is raised.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .errors import CapError, ContractViolation
from .gf2 import Gf2Matrix, Gf2Vector

MODEL_FORMAT = "simplicial-set-model/1"
BETTI_FORMAT = "betti-table/1"


def canonical_json(obj) -> str:
    """Stable textual form used for hashing and bit-exact round-trips."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class BettiTable:
    """Mod-2 graded dimensions, indexed from degree 0."""

    dims: tuple

    @property
    def max_degree(self) -> int:
        return len(self.dims) - 1

    def dim(self, k: int) -> int:
        if 0 <= k <= self.max_degree:
            return self.dims[k]
        return 0

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * d for k, d in enumerate(self.dims))

    def matches(self, other) -> bool:
        """Equality as functions degree -> dimension (trailing zeros ignored)."""
        other_dims = other.dims if hasattr(other, "dims") else tuple(other)
        top = max(len(self.dims), len(other_dims))
        probe = BettiTable(tuple(other_dims))
        return all(self.dim(k) == probe.dim(k) for k in range(top))

    def to_json_dict(self) -> dict:
        return {"format": BETTI_FORMAT, "dims": list(self.dims)}

    @classmethod
    def from_json_dict(cls, d) -> "BettiTable":
        if d.get("format") != BETTI_FORMAT:
            raise ContractViolation("not a betti-table document")
        return cls(tuple(int(x) for x in d["dims"]))

    def __str__(self):
        return "(" + ", ".join(str(d) for d in self.dims) + ")"


@dataclass(frozen=True)
class CochainClass:
    """A degree-tagged cochain supported on nondegenerate simplices."""

    degree: int
    support: Gf2Vector
    is_cocycle: bool


@dataclass(frozen=True)
class Violation:
    identity: str
    level: int
    i: int
    j: int
    simplex: int

    def __str__(self):
        return (
            f"identity '{self.identity}' fails at level {self.level}, "
            f"indices (i={self.i}, j={self.j}), simplex {self.simplex}"
        )


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violation: Violation | None = None

    def __str__(self):
        return "pass" if self.ok else f"fail: {self.violation}"


def _as_id_array(a, size_hint=None):
    arr = np.ascontiguousarray(a, dtype=np.int32)
    arr.setflags(write=False)
    return arr


class SimplicialSetModel:
    """Levelwise simplicial set on dense integer ids; immutable once built."""

    def __init__(
        self,
        level_cap: int,
        level_sizes,
        faces,
        degeneracies,
        description: str = "",
        simplex_keys=None,
    ):
        self.level_cap = int(level_cap)
        self.level_sizes = [int(s) for s in level_sizes]
        if len(self.level_sizes) != self.level_cap + 1:
            raise ContractViolation("level_sizes must cover 0..cap")
        self.faces = [[_as_id_array(f) for f in faces[n]] for n in range(len(faces))]
        self.degeneracies = [
            [_as_id_array(s) for s in degeneracies[n]]
            for n in range(len(degeneracies))
        ]
        self.description = description
        # Construction metadata (canonical labels per level); not serialized.
        self.simplex_keys = simplex_keys
        self._check_shapes()
        self.nondegenerate = self._mark_nondegenerate()
        self._nondeg_ids = [np.nonzero(nd)[0] for nd in self.nondegenerate]
        self._nondeg_pos = []
        for n, nd in enumerate(self.nondegenerate):
            pos = np.full(self.level_sizes[n], -1, dtype=np.int64)
            pos[self._nondeg_ids[n]] = np.arange(self._nondeg_ids[n].size)
            pos.setflags(write=False)
            self._nondeg_pos.append(pos)
        self._boundary_cache = {}

    # -- construction helpers ---------------------------------------------

    def _check_shapes(self):
        cap = self.level_cap
        if len(self.faces) != cap + 1 or len(self.degeneracies) != cap + 1:
            raise ContractViolation("face/degeneracy tables must cover 0..cap")
        if self.faces[0]:
            raise ContractViolation("level 0 has no face operators")
        for n in range(1, cap + 1):
            if len(self.faces[n]) != n + 1:
                raise ContractViolation(f"level {n} needs {n + 1} face operators")
            for i, f in enumerate(self.faces[n]):
                if f.shape != (self.level_sizes[n],):
                    raise ContractViolation(f"face ({n},{i}) has wrong length")
                if f.size and (f.min() < 0 or f.max() >= self.level_sizes[n - 1]):
                    raise ContractViolation(f"face ({n},{i}) points out of range")
        for n in range(cap + 1):
            expect = n + 1 if n + 1 <= cap else 0
            if len(self.degeneracies[n]) != expect:
                raise ContractViolation(f"level {n} needs {expect} degeneracies")
            for i, s in enumerate(self.degeneracies[n]):
                if s.shape != (self.level_sizes[n],):
                    raise ContractViolation(f"degeneracy ({n},{i}) has wrong length")
                if s.size and (s.min() < 0 or s.max() >= self.level_sizes[n + 1]):
                    raise ContractViolation(
                        f"degeneracy ({n},{i}) points out of range"
                    )

    def _mark_nondegenerate(self):
        flags = [np.ones(sz, dtype=bool) for sz in self.level_sizes]
        for n in range(self.level_cap):
            for s in self.degeneracies[n]:
                flags[n + 1][s] = False
        for f in flags:
            f.setflags(write=False)
        return flags

    # -- basic queries -------------------------------------------------------

    def nondeg_ids(self, n: int) -> np.ndarray:
        return self._nondeg_ids[n]

    def nondeg_count(self, n: int) -> int:
        if 0 <= n <= self.level_cap:
            return int(self._nondeg_ids[n].size)
        return 0

    def nondeg_position(self, n: int) -> np.ndarray:
        """Map level-n ids to positions among nondegenerate ids (-1 otherwise)."""
        return self._nondeg_pos[n]

    def top_nondegenerate_level(self) -> int:
        for n in range(self.level_cap, -1, -1):
            if self.nondeg_count(n):
                return n
        return -1

    def face_word(self, level: int, ids, deleted) -> np.ndarray:
        """Apply the face operators deleting the given vertex positions."""
        cur = np.asarray(ids)
        lvl = level
        for t in sorted(deleted, reverse=True):
            cur = self.faces[lvl][t][cur]
            lvl -= 1
        return cur

    def __eq__(self, other):
        if not isinstance(other, SimplicialSetModel):
            return NotImplemented
        if (
            self.level_cap != other.level_cap
            or self.level_sizes != other.level_sizes
        ):
            return False
        for n in range(self.level_cap + 1):
            for a, b in zip(self.faces[n], other.faces[n]):
                if not np.array_equal(a, b):
                    return False
            for a, b in zip(self.degeneracies[n], other.degeneracies[n]):
                if not np.array_equal(a, b):
                    return False
        return True

    def __hash__(self):
        return hash((self.level_cap, tuple(self.level_sizes)))

    def __repr__(self):
        return (
            f"SimplicialSetModel({self.description or 'unnamed'}, cap="
            f"{self.level_cap}, sizes={self.level_sizes})"
        )

    # -- simplicial identity validation -------------------------------------

    def validate(self) -> ValidationReport:
        """Check all five identity families wherever both sides are stored.

        Returns a passing report or the first violation in a fixed scan
        order (family, level, indices), with a witness simplex.
        """
        F, S, cap = self.faces, self.degeneracies, self.level_cap

        def first_bad(lhs, rhs, name, n, i, j):
            bad = np.nonzero(lhs != rhs)[0]
            if bad.size:
                return Violation(name, n, i, j, int(bad[0]))
            return None

        # d_i d_j = d_{j-1} d_i for i < j
        for n in range(2, cap + 1):
            for j in range(1, n + 1):
                for i in range(j):
                    v = first_bad(
                        F[n - 1][i][F[n][j]],
                        F[n - 1][j - 1][F[n][i]],
                        "face-face",
                        n,
                        i,
                        j,
                    )
                    if v:
                        return ValidationReport(False, v)
        # s_i s_j = s_{j+1} s_i for i <= j
        for n in range(cap - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    v = first_bad(
                        S[n + 1][i][S[n][j]],
                        S[n + 1][j + 1][S[n][i]],
                        "degeneracy-degeneracy",
                        n,
                        i,
                        j,
                    )
                    if v:
                        return ValidationReport(False, v)
        # d_i s_j interchange laws
        for n in range(cap):
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = F[n + 1][i][S[n][j]]
                    if i < j:
                        if n == 0:
                            continue  # needs s_{j-1} d_i on level n >= 1
                        rhs = S[n - 1][j - 1][F[n][i]]
                        name = "face-degeneracy-low"
                    elif i in (j, j + 1):
                        rhs = np.arange(self.level_sizes[n], dtype=np.int32)
                        name = "face-degeneracy-identity"
                    else:
                        if n == 0:
                            continue
                        rhs = S[n - 1][j][F[n][i - 1]]
                        name = "face-degeneracy-high"
                    v = first_bad(lhs, rhs, name, n, i, j)
                    if v:
                        return ValidationReport(False, v)
        # levelwise injectivity of each degeneracy operator
        for n in range(cap):
            for i, s in enumerate(S[n]):
                if np.unique(s).size != s.size:
                    # find one collision witness
                    order = np.argsort(s, kind="stable")
                    dup = np.nonzero(np.diff(s[order]) == 0)[0][0]
                    return ValidationReport(
                        False,
                        Violation(
                            "degeneracy-injective", n, i, i, int(order[dup])
                        ),
                    )
        return ValidationReport(True)

    # -- normalized chains -----------------------------------------------------

    def boundary_matrix(self, n: int) -> Gf2Matrix:
        """Normalized boundary: nondegenerate n-simplices to level n-1.

        Column of a simplex is the mod-2 sum of its faces with degenerate
        faces dropped; coinciding face pairs cancel.
        """
        if not 1 <= n <= self.level_cap:
            raise ContractViolation(f"boundary degree {n} outside 1..cap")
        if n not in self._boundary_cache:
            cols_ids = self._nondeg_ids[n]
            rows_pos = self._nondeg_pos[n - 1]
            row_idx = []
            col_idx = []
            ncols = cols_ids.size
            for i in range(n + 1):
                tgt = self.faces[n][i][cols_ids]
                pos = rows_pos[tgt]
                keep = pos >= 0
                row_idx.append(pos[keep])
                col_idx.append(np.nonzero(keep)[0])
            rows = np.concatenate(row_idx) if row_idx else np.zeros(0, np.int64)
            cols = np.concatenate(col_idx) if col_idx else np.zeros(0, np.int64)
            self._boundary_cache[n] = Gf2Matrix.from_triplets(
                self.nondeg_count(n - 1), ncols, rows, cols
            )
        return self._boundary_cache[n]

    def _require_closed_top(self):
        top = self.top_nondegenerate_level()
        if top == self.level_cap and self.level_cap >= 0:
            raise CapError(
                f"level cap {self.level_cap} still carries nondegenerate "
                "simplices; raise the cap by one"
            )
        return top

    def betti_table(self) -> BettiTable:
        top = self._require_closed_top()
        if top < 0:
            return BettiTable(())
        dims = []
        for k in range(top + 1):
            if k == 0:
                nullity = self.nondeg_count(0)
            else:
                bk = self.boundary_matrix(k)
                nullity = bk.col_count - bk.rank()
            rank_above = self.boundary_matrix(k + 1).rank() if k < top else 0
            dims.append(nullity - rank_above)
        return BettiTable(tuple(dims))

    def coboundary_matrix(self, n: int) -> Gf2Matrix:
        """Matrix of the coboundary on normalized cochains in degree n."""
        top = self.top_nondegenerate_level()
        if n >= self.level_cap:
            raise CapError(f"coboundary at degree {n} needs level {n + 1}")
        if n >= top:
            return Gf2Matrix.zeros(self.nondeg_count(n + 1), self.nondeg_count(n))
        return self.boundary_matrix(n + 1).transpose()

    def cohomology_basis(self, n: int) -> list[CochainClass]:
        """Deterministic cocycle representatives of a basis of H^n."""
        self._require_closed_top()
        if not 0 <= n <= self.level_cap:
            raise ContractViolation(f"degree {n} outside 0..cap")
        if self.nondeg_count(n) == 0:
            return []
        cocycles = self.coboundary_matrix(n).kernel_basis()
        span = _Gf2Span()
        if n > 0:
            # Coboundary images in degree n are the rows of the boundary
            # matrix one degree up the chain direction.
            bnd = self.boundary_matrix(n)
            for i in range(bnd.row_count):
                span.add(bnd.row(i))
        reps = []
        for v in cocycles:
            if span.add(v):
                reps.append(CochainClass(n, v, True))
        return reps

    def is_cocycle(self, degree: int, support: Gf2Vector) -> bool:
        return self.coboundary_matrix(degree).mul_vec(support).is_zero()

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "format": MODEL_FORMAT,
            "description": self.description,
            "level_cap": self.level_cap,
            "level_sizes": self.level_sizes,
            "faces": [[f.tolist() for f in fs] for fs in self.faces],
            "degeneracies": [[s.tolist() for s in ss] for ss in self.degeneracies],
        }

    def to_json_text(self) -> str:
        return canonical_json(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d) -> "SimplicialSetModel":
        if d.get("format") != MODEL_FORMAT:
            raise ContractViolation("not a simplicial-set-model document")
        return cls(
            d["level_cap"],
            d["level_sizes"],
            d["faces"],
            d["degeneracies"],
            description=d.get("description", ""),
        )

    @classmethod
    def from_json_text(cls, text: str) -> "SimplicialSetModel":
        return cls.from_json_dict(json.loads(text))

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_json_text().encode()).hexdigest()


class _Gf2Span:
    """Incremental row space over GF(2), vectors held as python ints."""

    def __init__(self):
        self._pivot_rows = {}

    @staticmethod
    def _to_int(v: Gf2Vector) -> int:
        return int.from_bytes(v._words.tobytes(), "little")

    def add(self, v: Gf2Vector) -> bool:
        """Reduce v against the span; returns True when v enlarges it."""
        x = self._to_int(v)
        while x:
            p = x.bit_length() - 1
            row = self._pivot_rows.get(p)
            if row is None:
                self._pivot_rows[p] = x
                return True
            x ^= row
        return False

    def contains(self, v: Gf2Vector) -> bool:
        x = self._to_int(v)
        while x:
            row = self._pivot_rows.get(x.bit_length() - 1)
            if row is None:
                return False
            x ^= row
        return True
