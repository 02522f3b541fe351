"""Lower-triangular rational matrices and structured index-matrix products.

The index matrix of a sequence f repeats f(i) across row i of a lower
triangle; its shifted variant pushes everything down one row.  Products
of these matrices evaluate nested sums, and right-multiplying by a
structured factor costs O(N^2) scalar operations instead of the O(N^3)
dense triangular product.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .exact import SequenceSpec, format_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


class TriMatrix:
    """Dense lower-triangular N x N matrix of exact rationals.

    Storage is packed row-major: row i holds exactly i entries, columns
    1..i, so entries above the diagonal are structurally zero.  Instances
    are immutable by convention; all operations return new matrices.
    """

    __slots__ = ("n", "_data")

    def __init__(self, n: int, data: list[Fraction]):
        if n < 1:
            raise ValueError("matrix dimension must be positive")
        if len(data) != n * (n + 1) // 2:
            raise ValueError(f"packed data length {len(data)} wrong for dimension {n}")
        self.n = n
        self._data = data

    @classmethod
    def zeros(cls, n: int) -> "TriMatrix":
        return cls(n, [_ZERO] * (n * (n + 1) // 2))

    @classmethod
    def identity(cls, n: int) -> "TriMatrix":
        data = [_ZERO] * (n * (n + 1) // 2)
        for i in range(1, n + 1):
            data[i * (i + 1) // 2 - 1] = _ONE
        return cls(n, data)

    @classmethod
    def from_rows(cls, rows) -> "TriMatrix":
        """Build from triangular rows: row i must contain exactly i entries."""
        data: list[Fraction] = []
        n = 0
        for i, row in enumerate(rows, start=1):
            row = [Fraction(v) for v in row]
            if len(row) != i:
                raise ValueError(f"row {i} must have {i} entries, got {len(row)}")
            data.extend(row)
            n = i
        if n == 0:
            raise ValueError("at least one row required")
        return cls(n, data)

    def entry(self, i: int, j: int) -> Fraction:
        """Entry (i, j), 1-based; zero above the diagonal."""
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"index ({i}, {j}) outside 1..{self.n}")
        if i < j:
            return _ZERO
        return self._data[i * (i - 1) // 2 + j - 1]

    def row(self, i: int) -> list[Fraction]:
        """Stored entries of row i (columns 1..i), as a copy."""
        if not 1 <= i <= self.n:
            raise IndexError(f"row {i} outside 1..{self.n}")
        base = i * (i - 1) // 2
        return self._data[base : base + i]

    def rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(1, self.n + 1)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TriMatrix):
            return NotImplemented
        return self.n == other.n and self._data == other._data

    __hash__ = None

    def __add__(self, other: "TriMatrix") -> "TriMatrix":
        if not isinstance(other, TriMatrix):
            return NotImplemented
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        return TriMatrix(self.n, [a + b for a, b in zip(self._data, other._data)])

    def to_json_dict(self) -> dict:
        """JSON form: {"n": N, "rows": [["p/q", ...], ...]}, rows cut at the diagonal."""
        return {
            "n": self.n,
            "rows": [[format_rational(v) for v in row] for row in self.rows()],
        }

    def __repr__(self) -> str:
        if self.n <= 8:
            body = ", ".join(
                "[" + ", ".join(str(v) for v in row) + "]" for row in self.rows()
            )
            return f"TriMatrix({self.n}: {body})"
        return f"TriMatrix(n={self.n})"


class Kind(Enum):
    """Structured descriptions that materialize to a TriMatrix."""

    INDEX = "index"  # row i is f(i) repeated i times
    SHIFTED_INDEX = "shifted-index"  # index matrix pushed down one row
    SHIFT = "shift"  # ones on the first subdiagonal
    PREFIX = "prefix"  # all-ones lower triangle
    DENSE = "dense"


@dataclass(frozen=True)
class StructuredMatrix:
    """O(N) description of a triangular matrix, materialized on demand.

    Keeping index matrices symbolic is what makes chained products cheap:
    ``multiply`` consumes the description directly instead of the dense
    entries.
    """

    kind: Kind
    n: int
    seq: SequenceSpec | None = None
    dense: TriMatrix | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("matrix dimension must be positive")
        if self.kind in (Kind.INDEX, Kind.SHIFTED_INDEX):
            if self.seq is None or len(self.seq) != self.n:
                raise ValueError(f"{self.kind.value} matrix needs a length-{self.n} sequence")
        if self.kind is Kind.DENSE and (self.dense is None or self.dense.n != self.n):
            raise ValueError("dense kind needs a TriMatrix of matching dimension")

    def materialize(self) -> TriMatrix:
        n = self.n
        if self.kind is Kind.DENSE:
            return self.dense
        data: list[Fraction] = []
        if self.kind is Kind.INDEX:
            for i in range(1, n + 1):
                data.extend([self.seq.at(i)] * i)
        elif self.kind is Kind.SHIFTED_INDEX:
            data.append(_ZERO)
            for i in range(2, n + 1):
                data.extend([self.seq.at(i - 1)] * (i - 1))
                data.append(_ZERO)
        elif self.kind is Kind.SHIFT:
            data.append(_ZERO)
            for i in range(2, n + 1):
                data.extend([_ZERO] * (i - 2))
                data.append(_ONE)
                data.append(_ZERO)
        elif self.kind is Kind.PREFIX:
            for i in range(1, n + 1):
                data.extend([_ONE] * i)
        return TriMatrix(n, data)


def index_matrix(f: SequenceSpec) -> StructuredMatrix:
    """Matrix with entry (i, j) = f(i) for i >= j, zero above the diagonal."""
    return StructuredMatrix(Kind.INDEX, len(f), seq=f)


def shifted_index_matrix(f: SequenceSpec) -> StructuredMatrix:
    """Index matrix of f shifted down one row: entry (i, j) = f(i-1) for i-1 >= j.

    Row 1 and column N are all zero; f(N) is never used.
    """
    return StructuredMatrix(Kind.SHIFTED_INDEX, len(f), seq=f)


def shift_matrix(n: int) -> StructuredMatrix:
    """The down-shift: entry (i, j) = 1 iff i - 1 = j."""
    return StructuredMatrix(Kind.SHIFT, n)


def prefix_matrix(n: int) -> StructuredMatrix:
    """All-ones lower triangle; left-multiplying by it sums columns downward."""
    return StructuredMatrix(Kind.PREFIX, n)


def materialize(matrix: TriMatrix | StructuredMatrix) -> TriMatrix:
    if isinstance(matrix, TriMatrix):
        return matrix
    return matrix.materialize()


def _apply_structured(values: list[Fraction], right: StructuredMatrix) -> list[Fraction]:
    """Row-times-structured-matrix product for a row holding columns 1..m.

    For an index-matrix factor this is the right-to-left recurrence
    out(j) = out(j+1) + values(j) * f(j), one multiply-add per entry.
    """
    m = len(values)
    kind = right.kind
    if kind is Kind.SHIFT:
        return values[1:] + [_ZERO]
    out = [_ZERO] * m
    acc = _ZERO
    if kind is Kind.INDEX:
        f = right.seq
        for j in range(m, 0, -1):
            acc = acc + values[j - 1] * f.at(j)
            out[j - 1] = acc
    elif kind is Kind.SHIFTED_INDEX:
        f = right.seq
        for j in range(m, 0, -1):
            out[j - 1] = acc
            if j >= 2:
                acc = acc + values[j - 1] * f.at(j - 1)
    elif kind is Kind.PREFIX:
        for j in range(m, 0, -1):
            acc = acc + values[j - 1]
            out[j - 1] = acc
    else:
        raise ValueError(f"unsupported structured kind {kind}")
    return out


def _dense_product(a: TriMatrix, b: TriMatrix) -> TriMatrix:
    n = a.n
    data: list[Fraction] = []
    for i in range(1, n + 1):
        arow = a.row(i)
        for j in range(1, i + 1):
            total = _ZERO
            for l in range(j, i + 1):
                left = arow[l - 1]
                if left:
                    total += left * b.entry(l, j)
            data.append(total)
    return TriMatrix(n, data)


def multiply(
    left: TriMatrix | StructuredMatrix, right: TriMatrix | StructuredMatrix
) -> TriMatrix:
    """Exact triangular matrix product.

    When the right operand is a structured index / shifted-index / shift /
    prefix description, each output row is produced by the one-pass
    recurrence in O(N) scalar operations, O(N^2) for the whole product.
    A dense right operand falls back to the O(N^3) triangular product.
    """
    if left.n != right.n:
        raise ValueError(f"dimension mismatch: {left.n} vs {right.n}")
    a = materialize(left)
    if isinstance(right, TriMatrix) or right.kind is Kind.DENSE:
        return _dense_product(a, materialize(right))
    data: list[Fraction] = []
    for i in range(1, a.n + 1):
        data.extend(_apply_structured(a.row(i), right))
    return TriMatrix(a.n, data)


def row_multiply(
    row: list[Fraction], right: TriMatrix | StructuredMatrix
) -> list[Fraction]:
    """Product of a full-length row vector with a triangular matrix.

    ``row`` holds columns 1..N.  Structured right operands cost O(N);
    a dense right operand costs O(N^2).
    """
    if len(row) != right.n:
        raise ValueError(f"row length {len(row)} does not match dimension {right.n}")
    if isinstance(right, TriMatrix) or right.kind is Kind.DENSE:
        b = materialize(right)
        out = [_ZERO] * b.n
        for l in range(1, b.n + 1):
            v = row[l - 1]
            if v:
                brow = b.row(l)
                for j in range(1, l + 1):
                    out[j - 1] += v * brow[j - 1]
        return out
    return _apply_structured(list(row), right)
