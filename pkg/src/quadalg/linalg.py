"""Exact linear algebra over the rationals and GF(p).

Everything is built on reduced row echelon form, which doubles as the
canonical representative of a row space: two spanning sets are equal as
subspaces iff their RREF matrices are identical.  GF(p) matrices are
numpy int64 arrays with entries in 0..p-1 (products stay below 2^62 for
p up to 2^31 - 1); rational matrices are lists of Fraction rows and are
only used at small ambient dimensions.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .fields import PrimeField, RationalField


# ---------------------------------------------------------------------------
# elimination kernels

def _rref_modp(A: np.ndarray, p: int):
    """Reduced row echelon form mod p.  Returns (nonzero rows, pivot cols)."""
    A = np.array(A, dtype=np.int64) % p
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = A[r, c:] * inv % p
        nzb = np.nonzero(A[r + 1:, c])[0]
        if nzb.size:
            idx = r + 1 + nzb
            A[idx, c:] = (A[idx, c:] - np.outer(A[idx, c], A[r, c:])) % p
        pivots.append(c)
        r += 1
    # back-substitution: clear entries above each pivot
    for k in range(len(pivots) - 1, 0, -1):
        c = pivots[k]
        nza = np.nonzero(A[:k, c])[0]
        if nza.size:
            A[nza, c:] = (A[nza, c:] - np.outer(A[nza, c], A[k, c:])) % p
    return A[: len(pivots)], pivots


def _rank_modp(A: np.ndarray, p: int) -> int:
    """Rank mod p by forward elimination only (no back-substitution)."""
    A = np.array(A, dtype=np.int64) % p
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        row = A[r, c:] * inv % p
        A[r, c:] = row
        nzb = np.nonzero(A[r + 1:, c])[0]
        if nzb.size:
            idx = r + 1 + nzb
            A[idx, c:] = (A[idx, c:] - np.outer(A[idx, c], row)) % p
        r += 1
    return r


def _rank_gf2_bits(rows) -> int:
    """GF(2) rank via python-int bitsets; fast for wide matrices."""
    table: dict[int, int] = {}
    for row in rows:
        v = int(row)
        while v:
            lead = v.bit_length()
            red = table.get(lead)
            if red is None:
                table[lead] = v
                break
            v ^= red
    return len(table)


def _pack_bits(A: np.ndarray) -> list[int]:
    out = []
    for row in A:
        v = 0
        for c in np.nonzero(row)[0]:
            v |= 1 << int(c)
        out.append(v)
    return out


def _rref_fraction(rows):
    """Reduced row echelon form over Q.  Returns (nonzero rows, pivot cols)."""
    A = [[Fraction(x) for x in row] for row in rows]
    if not A:
        return [], []
    n = len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        if r == len(A):
            break
        i = next((k for k in range(r, len(A)) if A[k][c] != 0), None)
        if i is None:
            continue
        A[r], A[i] = A[i], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for k in range(len(A)):
            if k != r and A[k][c] != 0:
                f = A[k][c]
                A[k] = [x - f * y for x, y in zip(A[k], A[r])]
        pivots.append(c)
        r += 1
    return A[: len(pivots)], pivots


def _nullspace_from_rref(R, pivots, n, field):
    """Basis of {x : A x = 0} from the RREF of A.  Rows of the result."""
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    if isinstance(field, PrimeField):
        p = field.p
        N = np.zeros((len(free), n), dtype=np.int64)
        for k, f in enumerate(free):
            N[k, f] = 1
        if pivots and free:
            R = np.asarray(R)
            N[:, pivots] = (-R[:, free].T) % p
        return N
    N = []
    for f in free:
        row = [Fraction(0)] * n
        row[f] = Fraction(1)
        for i, c in enumerate(pivots):
            row[c] = -R[i][f]
        N.append(row)
    return N


def rank(matrix, field) -> int:
    """Row rank of a matrix with entries in the given field."""
    rows = list(matrix)
    if not rows:
        return 0
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged rows")
    if width == 0:
        return 0
    if isinstance(field, PrimeField):
        A = np.array([[int(x) for x in r] for r in rows], dtype=np.int64) % field.p
        if field.p == 2 and A.size > 200_000:
            return _rank_gf2_bits(_pack_bits(A))
        return _rank_modp(A, field.p)
    return len(_rref_fraction(rows)[0])


# ---------------------------------------------------------------------------
# row spaces

class RowSpace:
    """A subspace of field^ambient held as a canonical RREF basis."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field, ambient: int, basis, pivots):
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self.pivots = list(pivots)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_vectors(cls, field, ambient: int, vectors) -> "RowSpace":
        rows = [list(v) for v in vectors]
        for r in rows:
            if len(r) != ambient:
                raise ValueError(f"vector length {len(r)} != ambient {ambient}")
        if isinstance(field, PrimeField):
            if rows:
                A = np.array([[int(x) % field.p for x in r] for r in rows], dtype=np.int64)
            else:
                A = np.zeros((0, ambient), dtype=np.int64)
            R, piv = _rref_modp(A, field.p)
            return cls(field, ambient, R, piv)
        R, piv = _rref_fraction(rows)
        return cls(field, ambient, R, piv)

    @classmethod
    def zero(cls, field, ambient: int) -> "RowSpace":
        return cls.from_vectors(field, ambient, [])

    @classmethod
    def full(cls, field, ambient: int) -> "RowSpace":
        if isinstance(field, PrimeField):
            return cls(field, ambient, np.eye(ambient, dtype=np.int64), list(range(ambient)))
        eye = [[Fraction(int(i == j)) for j in range(ambient)] for i in range(ambient)]
        return cls(field, ambient, eye, list(range(ambient)))

    @classmethod
    def from_units(cls, field, ambient: int, indices) -> "RowSpace":
        rows = []
        for i in indices:
            row = [0] * ambient
            row[i] = 1
            rows.append(row)
        return cls.from_vectors(field, ambient, rows)

    # -- basics ------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def rows(self):
        """Basis rows as lists of field elements."""
        if isinstance(self.field, PrimeField):
            return [[int(x) for x in row] for row in self.basis]
        return [list(row) for row in self.basis]

    def __eq__(self, other):
        if not isinstance(other, RowSpace):
            return NotImplemented
        if self.field != other.field or self.ambient != other.ambient:
            return False
        if self.pivots != other.pivots:
            return False
        if isinstance(self.field, PrimeField):
            return bool(np.array_equal(self.basis, other.basis))
        return self.basis == other.basis

    def __repr__(self):
        return f"RowSpace(dim={self.dim}, ambient={self.ambient}, field={self.field.spec})"

    def contains(self, vector) -> bool:
        v = list(vector)
        if len(v) != self.ambient:
            raise ValueError("vector length mismatch")
        if isinstance(self.field, PrimeField):
            p = self.field.p
            w = np.array([int(x) for x in v], dtype=np.int64) % p
            for i, c in enumerate(self.pivots):
                if w[c]:
                    w = (w - w[c] * self.basis[i]) % p
            return not w.any()
        w = [Fraction(x) for x in v]
        for i, c in enumerate(self.pivots):
            if w[c] != 0:
                f = w[c]
                w = [a - f * b for a, b in zip(w, self.basis[i])]
        return all(x == 0 for x in w)

    def contains_space(self, other: "RowSpace") -> bool:
        return all(self.contains(row) for row in other.rows())

    # -- lattice operations -------------------------------------------------

    def add(self, other: "RowSpace") -> "RowSpace":
        self._check_compatible(other)
        return RowSpace.from_vectors(self.field, self.ambient, self.rows() + other.rows())

    def intersect(self, other: "RowSpace") -> "RowSpace":
        """Canonical basis of the intersection.

        Uses the kernel of the stacked bases when dim A + dim B is small
        relative to the ambient dimension, otherwise the annihilator
        identity (A cap B) = (A^perp + B^perp)^perp.
        """
        self._check_compatible(other)
        a, b = self.dim, other.dim
        if a == 0 or b == 0:
            return RowSpace.zero(self.field, self.ambient)
        if a + b <= self.ambient:
            return self._intersect_stacked(other)
        return self.perp().add(other.perp()).perp()

    def _intersect_stacked(self, other: "RowSpace") -> "RowSpace":
        a = self.dim
        if isinstance(self.field, PrimeField):
            p = self.field.p
            M = np.vstack([self.basis, other.basis])
            R, piv = _rref_modp(M.T, p)
            combos = _nullspace_from_rref(R, piv, M.shape[0], self.field)
            if len(combos) == 0:
                return RowSpace.zero(self.field, self.ambient)
            vecs = combos[:, :a] @ self.basis % p
            return RowSpace.from_vectors(self.field, self.ambient, vecs)
        M = self.rows() + other.rows()
        MT = [[M[i][j] for i in range(len(M))] for j in range(self.ambient)]
        R, piv = _rref_fraction(MT)
        combos = _nullspace_from_rref(R, piv, len(M), self.field)
        vecs = []
        for z in combos:
            vecs.append([
                sum(z[i] * self.basis[i][j] for i in range(a))
                for j in range(self.ambient)
            ])
        return RowSpace.from_vectors(self.field, self.ambient, vecs)

    def perp(self) -> "RowSpace":
        """Annihilator under the coordinate dot product; dims add to ambient."""
        if self.dim == 0:
            return RowSpace.full(self.field, self.ambient)
        N = _nullspace_from_rref(self.basis, self.pivots, self.ambient, self.field)
        return RowSpace.from_vectors(self.field, self.ambient, N)

    def tensor(self, other: "RowSpace") -> "RowSpace":
        """Kronecker-product span; composite coordinates are row-major."""
        if self.field != other.field:
            raise ValueError("field mismatch")
        amb = self.ambient * other.ambient
        if self.dim == 0 or other.dim == 0:
            return RowSpace.zero(self.field, amb)
        if isinstance(self.field, PrimeField):
            K = np.kron(self.basis, other.basis) % self.field.p
            return RowSpace.from_vectors(self.field, amb, K)
        rows = []
        for u in self.basis:
            for v in other.basis:
                rows.append([a * b for a in u for b in v])
        return RowSpace.from_vectors(self.field, amb, rows)

    # -- coordinate sections -------------------------------------------------

    def section(self, indices) -> "RowSpace":
        """Vectors supported on the given coordinates, re-coordinatized.

        Returns the intersection with the coordinate subspace, expressed
        in the small ambient space len(indices) (original index order).
        """
        indices = list(indices)
        outside = sorted(set(range(self.ambient)) - set(indices))
        if self.dim == 0:
            return RowSpace.zero(self.field, len(indices))
        if isinstance(self.field, PrimeField):
            p = self.field.p
            B = np.asarray(self.basis)
            if outside:
                R, piv = _rref_modp(B[:, outside].T, p)
                combos = _nullspace_from_rref(R, piv, self.dim, self.field)
                if len(combos) == 0:
                    return RowSpace.zero(self.field, len(indices))
                vecs = combos @ B[:, indices] % p
            else:
                vecs = B[:, indices]
            return RowSpace.from_vectors(self.field, len(indices), vecs)
        B = self.basis
        if outside:
            cols = [[B[i][j] for i in range(self.dim)] for j in outside]
            R, piv = _rref_fraction(cols)
            combos = _nullspace_from_rref(R, piv, self.dim, self.field)
        else:
            combos = [[Fraction(int(i == k)) for i in range(self.dim)] for k in range(self.dim)]
        vecs = []
        for z in combos:
            vecs.append([sum(z[i] * B[i][j] for i in range(self.dim)) for j in indices])
        return RowSpace.from_vectors(self.field, len(indices), vecs)

    def embed(self, indices, ambient: int) -> "RowSpace":
        """Place this space's coordinates at the given positions in a larger space."""
        indices = list(indices)
        if len(indices) != self.ambient:
            raise ValueError("index list must match ambient dimension")
        if isinstance(self.field, PrimeField):
            big = np.zeros((self.dim, ambient), dtype=np.int64)
            big[:, indices] = self.basis
            return RowSpace.from_vectors(self.field, ambient, big)
        rows = []
        for r in self.basis:
            row = [Fraction(0)] * ambient
            for j, x in zip(indices, r):
                row[j] = x
            rows.append(row)
        return RowSpace.from_vectors(self.field, ambient, rows)

    def truncate_basis(self, k: int) -> "RowSpace":
        """Span of the first k canonical basis rows (deterministic shrink)."""
        if k > self.dim:
            raise ValueError(f"cannot keep {k} rows of a dim-{self.dim} space")
        return RowSpace(self.field, self.ambient, self.basis[:k], self.pivots[:k])

    def _check_compatible(self, other: "RowSpace"):
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.ambient != other.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")


def integer_rows(space: RowSpace) -> list[list[int]]:
    """Primitive integer lifts of a rational basis (row-wise denominators cleared)."""
    if not isinstance(space.field, RationalField):
        return [[int(x) for x in row] for row in space.rows()]
    out = []
    for row in space.basis:
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [int(x * den) for x in row]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


# ---------------------------------------------------------------------------
# file format

def format_rowspace(space: RowSpace, extra_header: dict | None = None) -> str:
    """Serialize: header line(s) then one basis row per line.

    Rows with at most 30% nonzero entries are written sparsely as
    ``index:value`` pairs (0-based indices).
    """
    lines = [f"ambient {space.ambient}; field {space.field.spec}"]
    if extra_header:
        lines.append("; ".join(f"{k} {v}" for k, v in extra_header.items()))
    ser = space.field.serialize
    for row in space.rows():
        nnz = [(i, x) for i, x in enumerate(row) if x != 0]
        if len(nnz) <= 0.3 * space.ambient:
            lines.append(" ".join(f"{i}:{ser(x)}" for i, x in nnz) or "0:0")
        else:
            lines.append(" ".join(ser(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_rowspace(text: str):
    """Inverse of format_rowspace.  Returns (RowSpace, extra header dict)."""
    from .fields import parse_field

    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("ambient"):
        raise ValueError("missing 'ambient <m>; field ...' header")
    head = dict()
    for part in lines[0].split(";"):
        k, _, v = part.strip().partition(" ")
        head[k] = v.strip()
    ambient = int(head["ambient"])
    field = parse_field(head["field"])
    extra = {}
    rows_at = 1
    if len(lines) > 1 and not _looks_like_row(lines[1]):
        for part in lines[1].split(";"):
            k, _, v = part.strip().partition(" ")
            extra[k] = v.strip()
        rows_at = 2
    vectors = []
    for ln in lines[rows_at:]:
        if ":" in ln:
            row = [field.zero] * ambient
            for pair in ln.split():
                i, _, val = pair.partition(":")
                row[int(i)] = field.parse(val)
            vectors.append(row)
        else:
            vals = ln.split()
            if len(vals) != ambient:
                raise ValueError(f"dense row has {len(vals)} entries, expected {ambient}")
            vectors.append([field.parse(v) for v in vals])
    return RowSpace.from_vectors(field, ambient, vectors), extra


def _looks_like_row(line: str) -> bool:
    tok = line.split()[0]
    if ":" in tok:
        tok = tok.split(":")[0]
    tok = tok.lstrip("-")
    return tok.replace("/", "").isdigit()


def write_rowspace(space: RowSpace, path, extra_header: dict | None = None):
    with open(path, "w") as f:
        f.write(format_rowspace(space, extra_header))


def read_rowspace(path):
    with open(path) as f:
        return parse_rowspace(f.read())
