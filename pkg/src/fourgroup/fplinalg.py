"""Exact linear algebra over the prime field F_p, p an odd prime.

Vectors are tuples of residues in [0, p); matrices are immutable tuples of
row tuples.  Everything is pure and deterministic, so values can be shared
between threads without coordination.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Iterable, Iterator, Sequence

from .errors import ValidationError

PRIME_CAP = 1 << 31

Vector = tuple[int, ...]


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    """Return p if it is an odd prime below 2^31, else raise.

    2 must be invertible in the ground field, so characteristic 2 is
    rejected outright.
    """
    if not isinstance(p, int) or isinstance(p, bool) or p > PRIME_CAP or not is_odd_prime(p):
        raise ValidationError(f"modulus must be an odd prime below 2^31, got {p!r}")
    return p


def vec_reduce(v: Sequence[int], p: int) -> Vector:
    return tuple(int(x) % p for x in v)


def vec_add(u: Vector, v: Vector, p: int) -> Vector:
    return tuple((a + b) % p for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector, p: int) -> Vector:
    return tuple((a - b) % p for a, b in zip(u, v))


def vec_scale(c: int, v: Vector, p: int) -> Vector:
    c %= p
    return tuple((c * a) % p for a in v)


def vec_is_zero(v: Vector) -> bool:
    return all(a == 0 for a in v)


def zero_vector(n: int) -> Vector:
    return (0,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(n))


@dataclass(frozen=True)
class FpMatrix:
    """Immutable matrix over F_p with entries stored as least residues."""

    prime: int
    rows: int
    cols: int
    entries: tuple[Vector, ...]

    @classmethod
    def from_rows(cls, p: int, rows: Iterable[Sequence[int]], cols: int | None = None) -> "FpMatrix":
        check_prime(p)
        data = tuple(vec_reduce(r, p) for r in rows)
        if data:
            cols = len(data[0])
            if any(len(r) != cols for r in data):
                raise ValidationError("ragged matrix rows")
        elif cols is None:
            raise ValidationError("empty matrix needs an explicit column count")
        return cls(p, len(data), cols, data)

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls.from_rows(p, [unit_vector(n, i) for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls.from_rows(p, [zero_vector(cols)] * rows, cols=cols)

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def is_zero(self) -> bool:
        return all(vec_is_zero(r) for r in self.entries)

    def transpose(self) -> "FpMatrix":
        return FpMatrix.from_rows(
            self.prime, [tuple(r[j] for r in self.entries) for j in range(self.cols)], cols=self.rows
        )

    def add(self, other: "FpMatrix") -> "FpMatrix":
        self._check_compatible(other, same_shape=True)
        return FpMatrix.from_rows(
            self.prime, [vec_add(a, b, self.prime) for a, b in zip(self.entries, other.entries)], cols=self.cols
        )

    def sub(self, other: "FpMatrix") -> "FpMatrix":
        self._check_compatible(other, same_shape=True)
        return FpMatrix.from_rows(
            self.prime, [vec_sub(a, b, self.prime) for a, b in zip(self.entries, other.entries)], cols=self.cols
        )

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix.from_rows(self.prime, [vec_scale(c, r, self.prime) for r in self.entries], cols=self.cols)

    def mul(self, other: "FpMatrix") -> "FpMatrix":
        self._check_compatible(other)
        if self.cols != other.rows:
            raise ValidationError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        p = self.prime
        out = []
        for r in self.entries:
            acc = [0] * other.cols
            for k, c in enumerate(r):
                if c:
                    orow = other.entries[k]
                    for j in range(other.cols):
                        acc[j] += c * orow[j]
            out.append(tuple(x % p for x in acc))
        return FpMatrix(p, self.rows, other.cols, tuple(out))

    def apply(self, v: Vector) -> Vector:
        """Row vector times matrix: the image of v under the map this matrix represents."""
        if len(v) != self.rows:
            raise ValidationError("vector length does not match matrix rows")
        p = self.prime
        acc = [0] * self.cols
        for k, c in enumerate(v):
            if c:
                row = self.entries[k]
                for j in range(self.cols):
                    acc[j] += c * row[j]
        return tuple(x % p for x in acc)

    def power(self, e: int) -> "FpMatrix":
        if self.rows != self.cols:
            raise ValidationError("matrix power needs a square matrix")
        result = FpMatrix.identity(self.prime, self.rows)
        base = self
        while e > 0:
            if e & 1:
                result = result.mul(base)
            base = base.mul(base)
            e >>= 1
        return result

    def rank(self) -> int:
        return rref(self)[0]

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def _check_compatible(self, other: "FpMatrix", same_shape: bool = False) -> None:
        if self.prime != other.prime:
            raise ValidationError(f"prime mismatch: {self.prime} vs {other.prime}")
        if same_shape and (self.rows, self.cols) != (other.rows, other.cols):
            raise ValidationError("shape mismatch")


def rref(m: FpMatrix) -> tuple[int, FpMatrix]:
    """Reduced row echelon form.  Returns (rank, reduced matrix).

    The reduced matrix keeps the shape of the input; zero rows sink to the
    bottom.  Idempotent: rref of a reduced matrix returns it unchanged.
    """
    p = m.prime
    rows = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    pivot_row = 0
    for col in range(ncols):
        pivot = next((r for r in range(pivot_row, nrows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        inv = pow(rows[pivot_row][col], -1, p)
        rows[pivot_row] = [(x * inv) % p for x in rows[pivot_row]]
        for r in range(nrows):
            if r != pivot_row and rows[r][col]:
                c = rows[r][col]
                rows[r] = [(a - c * b) % p for a, b in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        if pivot_row == nrows:
            break
    return pivot_row, FpMatrix(p, nrows, ncols, tuple(tuple(r) for r in rows))


def nullspace(m: FpMatrix) -> FpMatrix:
    """Basis (as rows) of {x : x . m^T = 0}, i.e. solutions of m x = 0."""
    p = m.prime
    rank, red = rref(m)
    pivots = []
    for r in range(rank):
        row = red.entries[r]
        pivots.append(next(j for j in range(m.cols) if row[j] != 0))
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for j in free:
        v = [0] * m.cols
        v[j] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red.entries[r][j]) % p
        basis.append(tuple(v))
    return FpMatrix.from_rows(p, basis, cols=m.cols)


def solve_row(m: FpMatrix, target: Vector) -> Vector | None:
    """A row vector x with x . m = target, or None when insoluble."""
    if len(target) != m.cols:
        raise ValidationError("target length does not match matrix columns")
    p = m.prime
    aug = FpMatrix.from_rows(
        p,
        [tuple(m.entries[i]) + unit_vector(m.rows, i) for i in range(m.rows)],
        cols=m.cols + m.rows,
    )
    rank, red = rref(aug)
    # Reduce target against rows whose pivot lies in the left block.
    rem = list(vec_reduce(target, p))
    combo = [0] * m.rows
    for r in range(rank):
        row = red.entries[r]
        piv = next(j for j in range(m.cols + m.rows) if row[j] != 0)
        if piv >= m.cols:
            continue
        c = rem[piv]
        if c:
            for j in range(m.cols):
                rem[j] = (rem[j] - c * row[j]) % p
            for j in range(m.rows):
                combo[j] = (combo[j] + c * row[m.cols + j]) % p
    if any(rem):
        return None
    return tuple(combo)


@dataclass(frozen=True)
class FpSubspace:
    """A subspace of F_p^n held as a reduced-row-echelon basis.

    The canonical basis makes equality of subspaces plain tuple equality.
    """

    prime: int
    ambient_dim: int
    basis: FpMatrix

    @classmethod
    def from_vectors(cls, p: int, ambient_dim: int, vectors: Iterable[Sequence[int]]) -> "FpSubspace":
        check_prime(p)
        vecs = [vec_reduce(v, p) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValidationError("vector length does not match ambient dimension")
        if not vecs:
            return cls(p, ambient_dim, FpMatrix.from_rows(p, [], cols=ambient_dim))
        rank, red = rref(FpMatrix.from_rows(p, vecs, cols=ambient_dim))
        return cls(p, ambient_dim, FpMatrix.from_rows(p, red.entries[:rank], cols=ambient_dim))

    @classmethod
    def zero(cls, p: int, ambient_dim: int) -> "FpSubspace":
        return cls.from_vectors(p, ambient_dim, [])

    @classmethod
    def full(cls, p: int, ambient_dim: int) -> "FpSubspace":
        return cls.from_vectors(p, ambient_dim, [unit_vector(ambient_dim, i) for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return self.basis.rows

    def pivots(self) -> list[int]:
        return [next(j for j in range(self.ambient_dim) if row[j]) for row in self.basis.entries]

    def contains_vector(self, v: Sequence[int]) -> bool:
        return self.coordinates_of(v) is not None

    def coordinates_of(self, v: Sequence[int]) -> Vector | None:
        """Coefficients of v over the echelon basis, or None if v is outside."""
        p = self.prime
        rem = list(vec_reduce(v, p))
        if len(rem) != self.ambient_dim:
            raise ValidationError("vector length does not match ambient dimension")
        coords = []
        for row, piv in zip(self.basis.entries, self.pivots()):
            c = rem[piv]
            coords.append(c)
            if c:
                for j in range(self.ambient_dim):
                    rem[j] = (rem[j] - c * row[j]) % p
        if any(rem):
            return None
        return tuple(coords)

    def contains(self, other: "FpSubspace") -> bool:
        self._check_compatible(other)
        return all(self.contains_vector(r) for r in other.basis.entries)

    def sum(self, other: "FpSubspace") -> "FpSubspace":
        self._check_compatible(other)
        return FpSubspace.from_vectors(
            self.prime, self.ambient_dim, list(self.basis.entries) + list(other.basis.entries)
        )

    def intersect(self, other: "FpSubspace") -> "FpSubspace":
        """Zassenhaus: row-reduce [[A|A],[B|0]]; rows with zero left block
        carry an intersection basis in the right block."""
        self._check_compatible(other)
        p, n = self.prime, self.ambient_dim
        block = [tuple(r) + tuple(r) for r in self.basis.entries]
        block += [tuple(r) + zero_vector(n) for r in other.basis.entries]
        if not block:
            return FpSubspace.zero(p, n)
        rank, red = rref(FpMatrix.from_rows(p, block, cols=2 * n))
        inter = [row[n:] for row in red.entries[:rank] if vec_is_zero(row[:n])]
        return FpSubspace.from_vectors(p, n, inter)

    def quotient_basis(self, within: "FpSubspace") -> list[Vector]:
        """Vectors of `within` completing this subspace to a basis of `within`.

        Requires self <= within.
        """
        self._check_compatible(within)
        if not within.contains(self):
            raise ValidationError("quotient_basis requires the first space inside the second")
        cur = self
        out: list[Vector] = []
        for row in within.basis.entries:
            if not cur.contains_vector(row):
                out.append(row)
                cur = cur.sum(FpSubspace.from_vectors(self.prime, self.ambient_dim, [row]))
        return out

    def coordinate_complement(self) -> list[int]:
        """Indices of unit vectors completing this subspace to the full space,
        chosen greedily in coordinate order."""
        cur = self
        out = []
        for i in range(self.ambient_dim):
            v = unit_vector(self.ambient_dim, i)
            if not cur.contains_vector(v):
                out.append(i)
                cur = cur.sum(FpSubspace.from_vectors(self.prime, self.ambient_dim, [v]))
        return out

    def enumerate_vectors(self) -> Iterator[Vector]:
        """All p^dim vectors, zero first, in deterministic order."""
        p = self.prime
        if self.dim == 0:
            yield zero_vector(self.ambient_dim)
            return
        for coeffs in _cartesian(range(p), repeat=self.dim):
            v = zero_vector(self.ambient_dim)
            for c, row in zip(coeffs, self.basis.entries):
                if c:
                    v = vec_add(v, vec_scale(c, row, p), p)
            yield v

    def vector_count(self) -> int:
        return self.prime**self.dim

    def _check_compatible(self, other: "FpSubspace") -> None:
        if self.prime != other.prime or self.ambient_dim != other.ambient_dim:
            raise ValidationError("subspace prime/dimension mismatch")


def subspace_op(a: FpSubspace, b, mode: str):
    """Dispatch the binary subspace operations by name.

    mode 'member' expects b to be a vector; every other mode expects a
    subspace with the same prime and ambient dimension.
    """
    if mode == "member":
        return a.contains_vector(b)
    if not isinstance(b, FpSubspace):
        raise ValidationError(f"mode {mode!r} needs a subspace operand")
    if mode == "sum":
        return a.sum(b)
    if mode == "intersect":
        return a.intersect(b)
    if mode == "contains":
        return a.contains(b)
    if mode == "quotient_basis":
        return a.quotient_basis(b)
    raise ValidationError(f"unknown subspace mode {mode!r}")


def matrix_nilpotency_index(m: FpMatrix) -> int | None:
    """Least k >= 1 with m^k = 0, or None when m is not nilpotent.

    A nilpotent matrix on an n-dimensional space has index at most n, so
    the search stops there.
    """
    if m.rows != m.cols:
        raise ValidationError("nilpotency index needs a square matrix")
    if m.rows == 0:
        return 1
    power = m
    for k in range(1, m.rows + 1):
        if power.is_zero():
            return k
        power = power.mul(m)
    return None
