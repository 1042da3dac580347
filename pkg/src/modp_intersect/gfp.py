"""Exact arithmetic and dense linear algebra over the prime field F_p.

Matrices are stored as int64 numpy arrays with entries reduced to
``[0, p-1]``.  The pivot rule is fixed (first nonzero entry, scanning
columns left to right and candidate rows top to bottom) so ranks,
kernels and pivot columns are reproducible bit for bit.

The modulus is capped below 2**31 so that every intermediate product in
the elimination fits in a signed 64-bit word; no big-integer matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotASubspace, ZeroInverse

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

MAX_MODULUS = 2**31


def is_prime(n: int) -> bool:
    """Deterministic primality test, exact for all n below 2**31."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d = n - 1
    twos = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    # Miller-Rabin with bases 2, 3, 5, 7 is exact below 3_215_031_751.
    for base in (2, 3, 5, 7):
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(twos - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeModulus:
    """A verified prime p with 2 <= p < 2**31."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not 2 <= self.p < MAX_MODULUS:
            raise ValueError(f"modulus must be an integer in [2, 2**31): {self.p!r}")
        if not is_prime(self.p):
            raise ValueError(f"modulus must be prime: {self.p}")

    def reduce(self, value: int) -> int:
        return value % self.p

    def __str__(self) -> str:
        return str(self.p)


@dataclass(frozen=True)
class FieldElement:
    """An element of F_p, always stored fully reduced."""

    value: int
    modulus: PrimeModulus

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % self.modulus.p)

    def _coerce(self, other: "FieldElement | int") -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other.value
        return other % self.modulus.p

    def __add__(self, other: "FieldElement | int") -> "FieldElement":
        return FieldElement(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other: "FieldElement | int") -> "FieldElement":
        return FieldElement(self.value - self._coerce(other), self.modulus)

    def __mul__(self, other: "FieldElement | int") -> "FieldElement":
        return FieldElement(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return FieldElement(-self.value, self.modulus)

    def inverse(self) -> "FieldElement":
        return field_inverse(self)

    def __bool__(self) -> bool:
        return self.value != 0


def field_inverse(a: FieldElement) -> FieldElement:
    """Multiplicative inverse in F_p; raises ZeroInverse on a = 0."""
    if a.value == 0:
        raise ZeroInverse(f"0 has no inverse mod {a.modulus.p}")
    return FieldElement(pow(a.value, -1, a.modulus.p), a.modulus)


def inverse_mod(a: int, p: int) -> int:
    """Inverse of a plain residue; internal fast path for the matrix code."""
    a %= p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


class MatrixFp:
    """Dense matrix over F_p.

    Immutable by convention: no method mutates ``self``; elimination
    results are cached on first use.
    """

    __slots__ = ("modulus", "array", "_rref")

    def __init__(self, entries, modulus: PrimeModulus):
        arr = np.asarray(entries, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"need a 2-d entry grid, got ndim={arr.ndim}")
        self.modulus = modulus
        self.array = arr % modulus.p
        self._rref: tuple[np.ndarray, tuple[int, ...]] | None = None

    @classmethod
    def from_rows(cls, rows, cols: int, modulus: PrimeModulus) -> "MatrixFp":
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), cols)
        return cls(arr, modulus)

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus: PrimeModulus) -> "MatrixFp":
        return cls(np.zeros((rows, cols), dtype=np.int64), modulus)

    @classmethod
    def identity(cls, size: int, modulus: PrimeModulus) -> "MatrixFp":
        return cls(np.eye(size, dtype=np.int64), modulus)

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    def entry(self, i: int, j: int) -> int:
        return int(self.array[i, j])

    def element(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.entry(i, j), self.modulus)

    def transpose(self) -> "MatrixFp":
        return MatrixFp(self.array.T, self.modulus)

    def stack(self, other: "MatrixFp") -> "MatrixFp":
        if other.modulus != self.modulus or other.cols != self.cols:
            raise ValueError("row stacking needs matching modulus and width")
        return MatrixFp(np.vstack([self.array, other.array]), self.modulus)

    def rref(self) -> tuple[np.ndarray, tuple[int, ...]]:
        """Reduced row echelon form and its pivot columns (both cached)."""
        if self._rref is None:
            self._rref = _rref(self.array, self.modulus.p)
        return self._rref

    def rank(self) -> int:
        return len(self.rref()[1])

    def pivot_columns(self) -> tuple[int, ...]:
        return self.rref()[1]

    def kernel_basis(self) -> list[np.ndarray]:
        """Basis of the right null space, in reduced echelon free-variable form.

        One vector per free column, in increasing column order; the empty
        list exactly when the kernel is trivial.
        """
        reduced, pivots = self.rref()
        p = self.modulus.p
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for f in free:
            vec = np.zeros(self.cols, dtype=np.int64)
            vec[f] = 1
            for row, pc in enumerate(pivots):
                vec[pc] = (-reduced[row, f]) % p
            basis.append(vec)
        return basis

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MatrixFp)
            and self.modulus == other.modulus
            and self.array.shape == other.array.shape
            and bool(np.array_equal(self.array, other.array))
        )

    def __repr__(self) -> str:
        return f"MatrixFp({self.rows}x{self.cols} mod {self.modulus.p})"


def _rref(array: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    a = array.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = inverse_mod(int(a[r, c]), p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        hit = col != 0
        if hit.any():
            # factor * pivot_row stays below 2**62, safe in int64
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, tuple(pivots)


def rank(matrix: MatrixFp) -> int:
    """Rank over F_p with the fixed deterministic pivot rule."""
    return matrix.rank()


def kernel_basis(matrix: MatrixFp) -> list[np.ndarray]:
    """Right null-space basis; see :meth:`MatrixFp.kernel_basis`."""
    return matrix.kernel_basis()


def quotient_dimension(a_rows: MatrixFp, b_rows: MatrixFp) -> int:
    """dim(span(a_rows) / span(b_rows)) = rank(A) - rank(B).

    Raises NotASubspace unless every row of B lies in the row space of A.
    """
    if a_rows.modulus != b_rows.modulus or a_rows.cols != b_rows.cols:
        raise ValueError("quotient needs matching modulus and width")
    rank_a = a_rows.rank()
    if a_rows.stack(b_rows).rank() != rank_a:
        raise NotASubspace("rows of B are not all contained in span(A)")
    return rank_a - b_rows.rank()
