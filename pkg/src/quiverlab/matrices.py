"""Dense exact integer matrices.

Determinants use fraction-free Bareiss elimination, so every intermediate
value is an integer (Python ints are arbitrary precision).  Inverses are
carried as an integer matrix plus a common denominator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import Singular


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major tuple of tuples of ints

    @staticmethod
    def from_rows(rows_list) -> "IntMatrix":
        rows_t = tuple(tuple(int(x) for x in row) for row in rows_list)
        r = len(rows_t)
        c = len(rows_t[0]) if r else 0
        if any(len(row) != c for row in rows_t):
            raise ValueError("ragged rows")
        return IntMatrix(r, c, rows_t)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(r: int, c: int) -> "IntMatrix":
        return IntMatrix.from_rows([[0] * c for _ in range(r)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.col(j) for j in range(self.cols)])

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        assert (self.rows, self.cols) == (other.rows, other.cols)
        return IntMatrix.from_rows(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        assert (self.rows, self.cols) == (other.rows, other.cols)
        return IntMatrix.from_rows(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix.from_rows([[k * x for x in row] for row in self.entries])

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        assert self.cols == other.rows, "shape mismatch"
        ot = other.transpose().entries
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.entries]
        )

    def mul_vec(self, v):
        assert len(v) == self.cols
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def submatrix(self, row_idx, col_idx) -> "IntMatrix":
        return IntMatrix.from_rows([[self.entries[i][j] for j in col_idx] for i in row_idx])

    def is_skew_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == -self.entries[j][i]
            for i in range(self.rows)
            for j in range(i, self.cols)
        )

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [x for row in self.entries for x in row],
        }

    @staticmethod
    def from_json(data: dict) -> "IntMatrix":
        r, c = data["rows"], data["cols"]
        flat = data["entries"]
        assert len(flat) == r * c
        return IntMatrix.from_rows([flat[i * c : (i + 1) * c] for i in range(r)])

    def pretty(self) -> str:
        w = max((len(str(x)) for row in self.entries for x in row), default=1)
        return "\n".join(" ".join(str(x).rjust(w) for x in row) for row in self.entries)


def bareiss_det(m: IntMatrix) -> int:
    """Fraction-free determinant; all intermediate divisions are exact."""
    assert m.rows == m.cols, "determinant needs a square matrix"
    n = m.rows
    if n == 0:
        return 1
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_inv(m: IntMatrix):
    """Exact determinant and inverse.

    Returns (det, num, den) with inverse = num / den as an exact rational
    matrix (num integral, den = a positive integer).  Raises Singular when
    det = 0 and the inverse is requested implicitly by this call.
    """
    det = bareiss_det(m)
    if det == 0:
        raise Singular("matrix is singular")
    n = m.rows
    # Gauss-Jordan over Fraction; sizes here are desk scale.
    a = [[Fraction(x) for x in row] for row in m.entries]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    inv[k], inv[i] = inv[i], inv[k]
                    break
        piv = a[k][k]
        a[k] = [x / piv for x in a[k]]
        inv[k] = [x / piv for x in inv[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[k])]
    den = abs(det)
    num_rows = []
    for row in inv:
        out = []
        for x in row:
            v = x * den
            assert v.denominator == 1, "inverse denominator must divide |det|"
            out.append(int(v))
        num_rows.append(out)
    return det, IntMatrix.from_rows(num_rows), den


def inverse_rational(m: IntMatrix):
    """Inverse as a nested list of Fractions (convenience for solvers)."""
    det, num, den = det_inv(m)
    return [[Fraction(x, den) for x in row] for row in num.entries]
