"""Integer tables for the line congruence and its companions: recursive
triangles, multidegrees, Chern coefficients of the half-twisted cotangent
bundle, determinantal stratum degrees, and fundamental-locus degrees.

Three jagged triangles drive everything.  Each satisfies the additive
recursion entry(i, j) = entry(i, j-1) + entry(i-1, j) with out-of-range
entries read as 0; they differ only in the seed column:

  a: first column alternates 1, 0, 1, 0, ...  (rows of even index start 1)
  b: first column is all 1
  c: first column alternates 0, 1, 0, 1, ...  and equals b - a entrywise

Antidiagonals of a/b/c give the multidegrees of the kernel-line congruence,
of a generic linear congruence of the same codimension, and of the residual
congruence; diagonals give degrees (Fine numbers for a, Catalan numbers for
b).  Every quantity here is computed two independent ways whenever a second
route exists, and the alternate routes are cross-asserted at runtime.

Chern coefficients come from the formal series (1 + t/2)^(n+1) / (1 + 3t/2):
the half-integer twist has no underlying line bundle, so the coefficients
are formal rationals; they are exactly what the banded Harris-Tu determinant
for the degree of a rank-<=r degeneracy stratum consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

__all__ = [
    "MultidegreeTriangle",
    "ChernVector",
    "Multidegrees",
    "FundamentalLocusDegrees",
    "triangle",
    "multidegrees",
    "chern",
    "stratum_class_degree",
    "fundamental_locus_degrees",
    "tables_rows",
]


@dataclass(frozen=True)
class MultidegreeTriangle:
    """Jagged integer triangle under the entry(i,j) = entry(i,j-1) + entry(i-1,j)
    recursion; row r has r+1 entries."""

    kind: str
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.kind not in ("a", "b", "c"):
            raise ValueError(f"triangle kind must be a|b|c, got {self.kind!r}")
        for r, row in enumerate(self.rows):
            if len(row) != r + 1:
                raise ValueError(f"row {r} must have {r + 1} entries")

    def entry(self, i: int, j: int) -> int:
        """Entry with out-of-range indices reading as 0."""
        if i < 0 or j < 0 or i >= len(self.rows) or j > i:
            return 0
        return self.rows[i][j]

    def antidiagonal(self, n: int) -> tuple[int, ...]:
        """(entry(n-1, 0), entry(n-2, 1), ...) down to the middle of row n-1."""
        return tuple(
            self.entry(n - 1 - l, l) for l in range((n - 1) // 2 + 1)
        )

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entry(i, i) for i in range(len(self.rows)))


def _build_rows(first_column, depth: int) -> list[list[int]]:
    rows: list[list[int]] = []
    for i in range(depth):
        row = [first_column(i)]
        for j in range(1, i + 1):
            above = rows[i - 1][j] if j <= i - 1 else 0
            row.append(row[j - 1] + above)
        rows.append(row)
    return rows


def triangle(kind: str, depth: int) -> MultidegreeTriangle:
    """Build a triangle to the given number of rows.

    The c triangle is computed both by its own recursion (seed column
    0, 1, 0, 1, ...) and as b - a entrywise; the two must agree.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if kind == "a":
        rows = _build_rows(lambda i: 1 if i % 2 == 0 else 0, depth)
    elif kind == "b":
        rows = _build_rows(lambda i: 1, depth)
    elif kind == "c":
        rows = _build_rows(lambda i: 0 if i % 2 == 0 else 1, depth)
        a_rows = _build_rows(lambda i: 1 if i % 2 == 0 else 0, depth)
        b_rows = _build_rows(lambda i: 1, depth)
        difference = [
            [bv - av for av, bv in zip(ar, br)] for ar, br in zip(a_rows, b_rows)
        ]
        if rows != difference:
            raise RuntimeError("triangle c: recursion and b-a routes disagree")
    else:
        raise ValueError(f"triangle kind must be a|b|c, got {kind!r}")
    return MultidegreeTriangle(kind, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class Multidegrees:
    """Multidegrees and degrees of the kernel-line congruence X, the generic
    linear congruence B of the same codimension, and the residual Y = B - X."""

    n: int
    X: tuple[int, ...]
    B: tuple[int, ...]
    Y: tuple[int, ...]
    degX: int
    degB: int
    degY: int


def multidegrees(n: int) -> Multidegrees:
    """Antidiagonal multidegrees and diagonal degrees, each cross-checked
    against an independent closed-form or difference route."""
    if n < 3:
        raise ValueError("n must be >= 3")
    tri_a = triangle("a", n)
    tri_b = triangle("b", n)
    tri_c = triangle("c", n)
    X = tri_a.antidiagonal(n)
    B = tri_b.antidiagonal(n)
    Y = tri_c.antidiagonal(n)
    width = (n - 1) // 2 + 1
    closed_B = tuple(
        comb(n - 2, i) - (comb(n - 2, i - 2) if i >= 2 else 0) for i in range(width)
    )
    if B != closed_B:
        raise RuntimeError(f"n={n}: triangle and closed-form B multidegrees disagree")
    if Y != tuple(bv - xv for xv, bv in zip(X, B)):
        raise RuntimeError(f"n={n}: Y antidiagonal does not equal B - X")
    degX = tri_a.entry(n - 1, n - 1)
    degB = tri_b.entry(n - 1, n - 1)
    degY = tri_c.entry(n - 1, n - 1)
    catalan, rem = divmod(comb(2 * n - 2, n), n - 1)
    if rem != 0 or degB != catalan:
        raise RuntimeError(f"n={n}: triangle degB disagrees with C(2n-2,n)/(n-1)")
    if degY != degB - degX:
        raise RuntimeError(f"n={n}: degY does not equal degB - degX")
    return Multidegrees(n, X, B, Y, degX, degB, degY)


@dataclass(frozen=True)
class ChernVector:
    """Coefficients c[i] of h^i in the i-th Chern class of the half-twisted
    cotangent bundle on P^n; formal rationals from the series
    (1 + t/2)^(n+1) / (1 + 3t/2)."""

    n: int
    c: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.c[0] != 1:
            raise ValueError("c[0] must be 1")
        if len(self.c) > 1 and self.c[1] != Fraction(self.n, 2) - 1:
            raise ValueError("c[1] must be n/2 - 1")


def _chern_coefficient(n: int, i: int) -> Fraction:
    """Coefficient of t^i in (1 + t/2)^(n+1) * sum_j (-3t/2)^j, any i >= 0."""
    if i < 0:
        return Fraction(0)
    total = Fraction(0)
    for k in range(0, i + 1):
        total += comb(n + 1, k) * Fraction(1, 2) ** k * Fraction(-3, 2) ** (i - k)
    return total


def chern(n: int) -> ChernVector:
    """Chern coefficients c[0..n]; asserts the printed low-degree specializations."""
    if n < 3:
        raise ValueError("n must be >= 3")
    coeffs = tuple(_chern_coefficient(n, i) for i in range(n + 1))
    if coeffs[1] != Fraction(n, 2) - 1:
        raise RuntimeError("c1 specialization failed")
    if coeffs[2] != Fraction(n * n - 5 * n + 12, 8):
        raise RuntimeError("c2 specialization failed")
    if coeffs[3] != Fraction(n**3 - 9 * n**2 + 44 * n - 108, 48):
        raise RuntimeError("c3 specialization failed")
    return ChernVector(n, coeffs)


def _det_fraction(m: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction elimination (local, small matrices)."""
    size = len(m)
    a = [row[:] for row in m]
    det = Fraction(1)
    for col in range(size):
        pivot_row = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            det = -det
        det *= a[col][col]
        inv_p = 1 / a[col][col]
        for r in range(col + 1, size):
            factor = a[r][col] * inv_p
            if factor == 0:
                continue
            for c2 in range(col, size):
                a[r][c2] -= factor * a[col][c2]
    return det


def stratum_class_degree(n: int, r: int) -> int:
    """Degree of the stratum where the contraction matrix has rank <= r:
    the k x k banded determinant det(c_{n-r-1-2i+j}), k = n-r-1, with c_0 = 1
    and negative indices read as 0.  Asserts the printed closed forms for
    r = n-2, n-3, n-4, n-5 and integrality of the result."""
    if r % 2 != 0:
        raise ValueError("rank bound r must be even")
    if not (0 <= r < n):
        raise ValueError("need 0 <= r < n")
    k = n - r - 1

    def cc(i: int) -> Fraction:
        if i < 0:
            return Fraction(0)
        return _chern_coefficient(n, i)

    matrix = [[cc(n - r - 1 - 2 * i + j) for j in range(k)] for i in range(k)]
    value = _det_fraction(matrix)

    expected: Fraction | None = None
    if r == n - 2:
        expected = Fraction(n, 2) - 1
    elif r == n - 3:
        expected = Fraction(comb(n - 1, 3), 4) + 1
    elif r == n - 4:
        expected = Fraction(
            n * (n - 6) * (n + 1) * (n + 2) * (n * n - 9 * n + 44), 2880
        )
    elif r == n - 5:
        expected = Fraction(
            n * (n - 1) * (n + 1) ** 2 * (n + 2) * (n + 3)
            * (n**4 - 26 * n**3 + 311 * n**2 - 1966 * n + 5400),
            4838400,
        )
    if expected is not None and value != expected:
        raise RuntimeError(
            f"stratum degree determinant {value} disagrees with closed form "
            f"{expected} at (n={n}, r={r})"
        )
    if value.denominator != 1:
        raise RuntimeError(f"stratum degree {value} is not an integer")
    return int(value)


@dataclass(frozen=True)
class FundamentalLocusDegrees:
    """Degrees of the locus F of extra-degenerate points and of the residual
    fundamental locus: a single hypersurface degree for odd n, the pair
    (component G0, its plane section) for even n."""

    n: int
    degF: int
    degG: int | None = None  # odd n: hypersurface degree of the second component
    degG0: int | None = None  # even n: degree of the positive-dimensional part
    degG0_meet_plane: int | None = None  # even n: degree of its plane section


def fundamental_locus_degrees(n: int) -> FundamentalLocusDegrees:
    if n < 3:
        raise ValueError("n must be >= 3")
    if n % 2 == 0:
        m = n // 2
        return FundamentalLocusDegrees(
            n,
            degF=m - 1,
            degG0=2 * comb(m + 1, 3) - comb(m + 1, 2) + 2,
            degG0_meet_plane=(m - 1) * (m - 2),
        )
    m = (n - 1) // 2
    quarter, rem = divmod(comb(n - 1, 3), 4)
    if rem != 0:
        raise RuntimeError(f"C({n - 1},3) not divisible by 4")
    return FundamentalLocusDegrees(n, degF=quarter + 1, degG=m)


def tables_rows(n_max: int) -> list[dict]:
    """Numeric table rows for 3 <= n <= n_max (consumed by the CLI)."""
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    rows = []
    for n in range(3, n_max + 1):
        md = multidegrees(n)
        fl = fundamental_locus_degrees(n)
        row = {
            "n": n,
            "multidegree_X": list(md.X),
            "multidegree_B": list(md.B),
            "multidegree_Y": list(md.Y),
            "degX": md.degX,
            "degB": md.degB,
            "degY": md.degY,
            "degF": fl.degF,
        }
        if n % 2 == 0:
            row["degG0"] = fl.degG0
            row["degG0_meet_plane"] = fl.degG0_meet_plane
        else:
            row["degG"] = fl.degG
        rows.append(row)
    return rows
