"""Exact scalar arithmetic, dense matrices, Pfaffians, and univariate polynomials.

Every quantity in this package is an exact integer, rational, or prime-field
element, so this module deliberately avoids floating point.  Scalars are
represented by `fractions.Fraction` over the rationals and by Python ints in
``[0, p)`` over a prime field; a `FieldSpec` value carries the arithmetic for
whichever field is in play.  Matrices are immutable dense arrays over a single
field, and `rank_kernel` performs exact Gaussian elimination with a fast
integer path modulo p.  The Pfaffian uses recursive first-row expansion with
memoization, which is simple and more than fast enough for the matrix sizes
that arise here (odd skew pencils never exceed 12 rows).  Univariate
polynomials store coefficients lowest-degree first and provide the monic
Euclidean GCD and Lagrange interpolation used to restrict determinantal loci
to lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[Fraction, int]

__all__ = [
    "ConventionError",
    "FieldSpec",
    "Matrix",
    "UniPoly",
    "rank_kernel",
    "pfaffian",
    "poly_gcd",
    "interpolate",
]


class ConventionError(ValueError):
    """A value violates a structural convention (e.g. non-skew Pfaffian input)."""


_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, exact for every modulus below 3.3e24."""
    if p < 2:
        return False
    for small in _MR_WITNESSES:
        if p == small:
            return True
        if p % small == 0:
            return False
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The field scalars live in: the rationals, or integers modulo a prime.

    ``kind`` is ``"rational"`` or ``"prime"``; ``p`` is the modulus and is
    present exactly when ``kind == "prime"``.  All scalar arithmetic is
    routed through this object so callers never branch on the field.
    """

    kind: str
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "rational":
            if self.p is not None:
                raise ValueError("rational field carries no modulus")
        elif self.kind == "prime":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("rational")

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec("prime", p)

    @property
    def char(self) -> int:
        return 0 if self.kind == "rational" else int(self.p)  # type: ignore[arg-type]

    # -- element construction ------------------------------------------------

    def coerce(self, value: Scalar | str) -> Scalar:
        """Canonicalize ints, Fractions, or strings like ``"-2/5"`` into the field."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.kind == "rational":
            return Fraction(value)
        p = self.p  # type: ignore[assignment]
        if isinstance(value, Fraction):
            den = value.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes mod {p}")
            return value.numerator * pow(den, p - 2, p) % p
        return int(value) % p

    def zero(self) -> Scalar:
        return Fraction(0) if self.kind == "rational" else 0

    def one(self) -> Scalar:
        return Fraction(1) if self.kind == "rational" else 1

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b if self.kind == "rational" else (a + b) % self.p  # type: ignore[operator]

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b if self.kind == "rational" else (a - b) % self.p  # type: ignore[operator]

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b if self.kind == "rational" else (a * b) % self.p  # type: ignore[operator]

    def neg(self, a: Scalar) -> Scalar:
        return -a if self.kind == "rational" else (-a) % self.p  # type: ignore[operator]

    def inv(self, a: Scalar) -> Scalar:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "rational":
            return Fraction(1) / a
        return pow(int(a), self.p - 2, self.p)  # type: ignore[operator]

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: Scalar) -> bool:
        return a == 0


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix over one field, entries in row-major order."""

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @staticmethod
    def from_rows(field: FieldSpec, rows: Sequence[Sequence[Scalar | str]]) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat: list[Scalar] = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            flat.extend(field.coerce(v) for v in row)
        return Matrix(field, nrows, ncols, tuple(flat))

    @staticmethod
    def zero(field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return Matrix(field, rows, cols, (field.zero(),) * (rows * cols))

    @staticmethod
    def identity(field: FieldSpec, size: int) -> "Matrix":
        zero, one = field.zero(), field.one()
        flat = [zero] * (size * size)
        for i in range(size):
            flat[i * size + i] = one
        return Matrix(field, size, size, tuple(flat))

    def entry(self, i: int, j: int) -> Scalar:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def row_lists(self) -> list[list[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        flat = tuple(
            self.entries[i * self.cols + j]
            for j in range(self.cols)
            for i in range(self.rows)
        )
        return Matrix(self.field, self.cols, self.rows, flat)

    def add(self, other: "Matrix") -> "Matrix":
        self._check_compatible(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        f = self.field
        return Matrix(
            f,
            self.rows,
            self.cols,
            tuple(f.add(a, b) for a, b in zip(self.entries, other.entries)),
        )

    def scale(self, c: Scalar) -> "Matrix":
        f = self.field
        c = f.coerce(c)
        return Matrix(f, self.rows, self.cols, tuple(f.mul(c, e) for e in self.entries))

    def mul(self, other: "Matrix") -> "Matrix":
        self._check_compatible(other)
        if self.cols != other.rows:
            raise ValueError("inner dimension mismatch")
        f = self.field
        zero = f.zero()
        out: list[Scalar] = []
        other_cols = [other.column(j) for j in range(other.cols)]
        for i in range(self.rows):
            left = self.row(i)
            for col in other_cols:
                acc = zero
                for a, b in zip(left, col):
                    if a != 0 and b != 0:
                        acc = f.add(acc, f.mul(a, b))
                out.append(acc)
        return Matrix(f, self.rows, other.cols, tuple(out))

    def matvec(self, vec: Sequence[Scalar]) -> tuple[Scalar, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        f = self.field
        zero = f.zero()
        out = []
        for i in range(self.rows):
            acc = zero
            for a, b in zip(self.row(i), vec):
                if a != 0 and b != 0:
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return tuple(out)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        flat = tuple(self.entry(i, j) for i in row_idx for j in col_idx)
        return Matrix(self.field, len(row_idx), len(col_idx), flat)

    def is_skew_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        f = self.field
        for i in range(self.rows):
            if not f.is_zero(self.entry(i, i)):
                return False
            for j in range(i + 1, self.cols):
                if self.entry(i, j) != f.neg(self.entry(j, i)):
                    return False
        return True

    def det(self) -> Scalar:
        """Determinant by exact Gaussian elimination (independent of `pfaffian`)."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        f = self.field
        a = self.row_lists()
        size = self.rows
        det = f.one()
        for col in range(size):
            pivot_row = next(
                (r for r in range(col, size) if not f.is_zero(a[r][col])), None
            )
            if pivot_row is None:
                return f.zero()
            if pivot_row != col:
                a[col], a[pivot_row] = a[pivot_row], a[col]
                det = f.neg(det)
            pivot = a[col][col]
            det = f.mul(det, pivot)
            inv_p = f.inv(pivot)
            for r in range(col + 1, size):
                factor = f.mul(a[r][col], inv_p)
                if f.is_zero(factor):
                    continue
                for c in range(col, size):
                    a[r][c] = f.sub(a[r][c], f.mul(factor, a[col][c]))
        return det

    def _check_compatible(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise ValueError("matrices over different fields")


def _rref(field: FieldSpec, a: list[list[Scalar]], cols: int) -> list[int]:
    """In-place reduced row echelon form; returns the pivot column list."""
    pivots: list[int] = []
    pivot_row = 0
    nrows = len(a)
    for col in range(cols):
        src = next(
            (r for r in range(pivot_row, nrows) if not field.is_zero(a[r][col])), None
        )
        if src is None:
            continue
        a[pivot_row], a[src] = a[src], a[pivot_row]
        inv_p = field.inv(a[pivot_row][col])
        row = a[pivot_row]
        for c in range(col, cols):
            row[c] = field.mul(row[c], inv_p)
        for r in range(nrows):
            if r == pivot_row:
                continue
            factor = a[r][col]
            if field.is_zero(factor):
                continue
            target = a[r]
            for c in range(col, cols):
                target[c] = field.sub(target[c], field.mul(factor, row[c]))
        pivots.append(col)
        pivot_row += 1
        if pivot_row == nrows:
            break
    return pivots


def _rref_prime(p: int, a: list[list[int]], cols: int) -> list[int]:
    """Fast integer RREF modulo p (hot path for sampling suites)."""
    pivots: list[int] = []
    pivot_row = 0
    nrows = len(a)
    for col in range(cols):
        src = next((r for r in range(pivot_row, nrows) if a[r][col]), None)
        if src is None:
            continue
        a[pivot_row], a[src] = a[src], a[pivot_row]
        row = a[pivot_row]
        inv_p = pow(row[col], p - 2, p)
        for c in range(col, cols):
            row[c] = row[c] * inv_p % p
        for r in range(nrows):
            if r == pivot_row:
                continue
            factor = a[r][col]
            if not factor:
                continue
            target = a[r]
            for c in range(col, cols):
                target[c] = (target[c] - factor * row[c]) % p
        pivots.append(col)
        pivot_row += 1
        if pivot_row == nrows:
            break
    return pivots


def rank_kernel(m: Matrix) -> tuple[int, Matrix]:
    """Exact rank and a kernel basis; kernel vectors are the columns of the result.

    Satisfies rank + kernel.cols == m.cols; each kernel column v has m·v = 0.
    Free coordinates of kernel vectors are 0/1, so the basis is in reduced form.
    """
    field = m.field
    if field.kind == "prime":
        a = [list(m.row(i)) for i in range(m.rows)]
        pivots = _rref_prime(field.p, a, m.cols)  # type: ignore[arg-type]
    else:
        a = m.row_lists()
        pivots = _rref(field, a, m.cols)
    rank = len(pivots)
    free = [c for c in range(m.cols) if c not in pivots]
    zero, one = field.zero(), field.one()
    kernel_cols: list[list[Scalar]] = []
    for fc in free:
        vec = [zero] * m.cols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = field.neg(a[r][fc])
        kernel_cols.append(vec)
    flat = tuple(kernel_cols[j][i] for i in range(m.cols) for j in range(len(free)))
    return rank, Matrix(field, m.cols, len(free), flat)


def pfaffian(m: Matrix) -> Scalar:
    """Pfaffian of an even-size skew-symmetric matrix.

    Sign convention: pfaffian([[0, 1], [-1, 0]]) == 1, and the Pfaffian of a
    direct sum is the product of the blocks' Pfaffians.  Satisfies
    pfaffian(m)**2 == m.det().  Raises `ConventionError` for non-skew or
    odd-size input.
    """
    if m.rows != m.cols:
        raise ConventionError("pfaffian requires a square matrix")
    if m.rows % 2 != 0:
        raise ConventionError(
            "pfaffian requires even size; pass an even-size principal submatrix"
        )
    if not m.is_skew_symmetric():
        raise ConventionError("pfaffian requires a skew-symmetric matrix")
    field = m.field
    one = field.one()
    memo: dict[tuple[int, ...], Scalar] = {(): one}

    def pf(indices: tuple[int, ...]) -> Scalar:
        cached = memo.get(indices)
        if cached is not None:
            return cached
        i0, rest = indices[0], indices[1:]
        acc = field.zero()
        for pos, j in enumerate(rest):
            a = m.entry(i0, j)
            if field.is_zero(a):
                continue
            term = field.mul(a, pf(rest[:pos] + rest[pos + 1 :]))
            acc = field.add(acc, term) if pos % 2 == 0 else field.sub(acc, term)
        memo[indices] = acc
        return acc

    return pf(tuple(range(m.rows)))


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial; coefficients lowest degree first, trailing zeros stripped."""

    field: FieldSpec
    coeffs: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if self.coeffs and self.field.is_zero(self.coeffs[-1]):
            raise ValueError("leading coefficient must be nonzero (use from_coeffs)")

    @staticmethod
    def from_coeffs(field: FieldSpec, coeffs: Iterable[Scalar | str]) -> "UniPoly":
        vals = [field.coerce(c) for c in coeffs]
        while vals and field.is_zero(vals[-1]):
            vals.pop()
        return UniPoly(field, tuple(vals))

    @staticmethod
    def zero(field: FieldSpec) -> "UniPoly":
        return UniPoly(field, ())

    @staticmethod
    def one(field: FieldSpec) -> "UniPoly":
        return UniPoly(field, (field.one(),))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Scalar:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def add(self, other: "UniPoly") -> "UniPoly":
        self._check_field(other)
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        out = [
            f.add(
                self.coeffs[i] if i < len(self.coeffs) else f.zero(),
                other.coeffs[i] if i < len(other.coeffs) else f.zero(),
            )
            for i in range(n)
        ]
        return UniPoly.from_coeffs(f, out)

    def neg(self) -> "UniPoly":
        f = self.field
        return UniPoly(f, tuple(f.neg(c) for c in self.coeffs))

    def sub(self, other: "UniPoly") -> "UniPoly":
        return self.add(other.neg())

    def mul(self, other: "UniPoly") -> "UniPoly":
        self._check_field(other)
        f = self.field
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(f)
        out = [f.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if f.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = f.add(out[i + j], f.mul(a, b))
        return UniPoly.from_coeffs(f, out)

    def scale(self, c: Scalar) -> "UniPoly":
        f = self.field
        c = f.coerce(c)
        if f.is_zero(c):
            return UniPoly.zero(f)
        return UniPoly(f, tuple(f.mul(c, a) for a in self.coeffs))

    def eval(self, at: Scalar) -> Scalar:
        f = self.field
        at = f.coerce(at)
        acc = f.zero()
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, at), c)
        return acc

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading()))

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        self._check_field(other)
        f = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return UniPoly.zero(f), self
        quot = [f.zero()] * (dq + 1)
        inv_lead = f.inv(other.leading())
        for k in range(dq, -1, -1):
            top = rem[k + other.degree]
            if f.is_zero(top):
                continue
            q = f.mul(top, inv_lead)
            quot[k] = q
            for j, b in enumerate(other.coeffs):
                rem[k + j] = f.sub(rem[k + j], f.mul(q, b))
        return UniPoly.from_coeffs(f, quot), UniPoly.from_coeffs(f, rem)

    def _check_field(self, other: "UniPoly") -> None:
        if self.field != other.field:
            raise ValueError("polynomials over different fields")


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic GCD by the Euclidean algorithm; gcd(0, 0) is the zero polynomial."""
    if f.field != g.field:
        raise ValueError("polynomials over different fields")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def interpolate(
    field: FieldSpec, points: Sequence[tuple[Scalar, Scalar]]
) -> UniPoly:
    """Lagrange interpolation through distinct nodes; exact over any field."""
    xs = [field.coerce(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    result = UniPoly.zero(field)
    for i, (_, yi) in enumerate(points):
        yi = field.coerce(yi)
        if field.is_zero(yi):
            continue
        basis = UniPoly.one(field)
        denom = field.one()
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = basis.mul(UniPoly.from_coeffs(field, [field.neg(xj), field.one()]))
            denom = field.mul(denom, field.sub(xs[i], xj))
        result = result.add(basis.scale(field.div(yi, denom)))
    return result
