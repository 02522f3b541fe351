"""Inverse, exact identities, eigendecomposition, and powers of index matrices.

Everything here is exact: the closed-form eigenvector matrices divide by
differences of the diagonal sequence, so duplicate entries are a hard
error rather than something to perturb around.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import SequenceSpec, pointwise_product, sequence_all_distinct
from .trimatrix import TriMatrix, index_matrix, materialize, multiply, shift_matrix

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DuplicateEntriesError(ValueError):
    """The sequence has repeated entries where distinct ones are required."""


def _require_nonzero(a: SequenceSpec, what: str) -> None:
    for idx, value in enumerate(a, start=1):
        if value == 0:
            raise ValueError(f"{what} requires nonzero entries; entry {idx} is zero")


def index_matrix_inverse(a: SequenceSpec) -> TriMatrix:
    """Exact inverse of the index matrix of a nonzero sequence.

    The inverse is bidiagonal: 1/a_i on the diagonal and -1/a_(i-1) just
    below it.
    """
    _require_nonzero(a, "index-matrix inverse")
    n = len(a)
    data: list[Fraction] = []
    for i in range(1, n + 1):
        data.extend([_ZERO] * (i - 2))
        if i >= 2:
            data.append(-1 / a.at(i - 1))
        data.append(1 / a.at(i))
    return TriMatrix(n, data)


def identity_minus_shift(n: int) -> TriMatrix:
    """The bidiagonal matrix I - shift: 1 on the diagonal, -1 below it."""
    data: list[Fraction] = []
    for i in range(1, n + 1):
        data.extend([_ZERO] * (i - 2))
        if i >= 2:
            data.append(-_ONE)
        data.append(_ONE)
    return TriMatrix(n, data)


def check_two_factor_identity(a: SequenceSpec, b: SequenceSpec) -> bool:
    """Verify inv(S_a) * S_ab * inv(S_b) = I - shift, exactly.

    S_x denotes the index matrix of x and ab the pointwise product.  The
    identity always holds; this evaluates both sides and compares them,
    so a False return signals an implementation bug.
    """
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    _require_nonzero(a, "two-factor identity")
    _require_nonzero(b, "two-factor identity")
    lhs = multiply(
        multiply(index_matrix_inverse(a), index_matrix(pointwise_product(a, b))),
        index_matrix_inverse(b),
    )
    return lhs == identity_minus_shift(len(a))


def check_three_factor_identity(
    a: SequenceSpec, b: SequenceSpec, c: SequenceSpec
) -> bool:
    """Verify the three-factor expansion of S_a * S_b * S_c, exactly.

    S_a D S_b D S_c + S_ab D S_c + S_a D S_bc + S_abc = S_a S_b S_c,
    where D is the down-shift.  Zero entries are allowed; no inverses
    are involved.
    """
    if not (len(a) == len(b) == len(c)):
        raise ValueError("sequences must have equal lengths")
    n = len(a)
    shift = shift_matrix(n)
    ab = pointwise_product(a, b)
    bc = pointwise_product(b, c)
    abc = pointwise_product(ab, c)

    term1 = multiply(
        multiply(multiply(multiply(index_matrix(a), shift), index_matrix(b)), shift),
        index_matrix(c),
    )
    term2 = multiply(multiply(index_matrix(ab), shift), index_matrix(c))
    term3 = multiply(multiply(index_matrix(a), shift), index_matrix(bc))
    term4 = materialize(index_matrix(abc))
    lhs = term1 + term2 + term3 + term4

    rhs = multiply(multiply(index_matrix(a), index_matrix(b)), index_matrix(c))
    return lhs == rhs


@dataclass(frozen=True)
class EigenDecomposition:
    """Exact diagonalization of an index matrix with distinct diagonal.

    ``vectors`` holds one eigenvector per column; ``vectors_inv`` is its
    exact inverse, verified at construction, so
    vectors * diag(eigenvalues) * vectors_inv reproduces the index
    matrix bit-exactly.
    """

    vectors: TriMatrix
    eigenvalues: tuple[Fraction, ...]
    vectors_inv: TriMatrix

    @property
    def n(self) -> int:
        return self.vectors.n

    def power(self, k: int) -> TriMatrix:
        """vectors * diag(eigenvalues^k) * vectors_inv, the k-th matrix power."""
        if k < 0:
            raise ValueError("power must be nonnegative")
        n = self.n
        scaled: list[Fraction] = []
        for i in range(1, n + 1):
            row = self.vectors.row(i)
            scaled.extend(v * self.eigenvalues[j] ** k for j, v in enumerate(row))
        return multiply(TriMatrix(n, scaled), self.vectors_inv)


def eigendecompose(a: SequenceSpec) -> EigenDecomposition:
    """Exact eigendecomposition of the index matrix of ``a``.

    The eigenvalues are the entries of ``a`` themselves.  For i >= j the
    eigenvector matrix and its inverse have the closed forms

        vectors(i, j)     = (a_i / a_N) * prod_{l=i+1..N} (1 - a_l / a_j)
        vectors_inv(i, j) = (a_N / a_i) * prod_{l=j..N, l != i} 1 / (1 - a_l / a_i)

    with zeros above the diagonal.  Entries must be nonzero and pairwise
    distinct (the inverse formula divides by their differences); the
    product vectors * vectors_inv is checked against the identity at
    construction as an exactness certificate.
    """
    _require_nonzero(a, "eigendecomposition")
    if not sequence_all_distinct(a):
        raise DuplicateEntriesError("duplicate eigenvalues: sequence entries must be distinct")
    n = len(a)
    a_n = a.at(n)

    d_data = [_ZERO] * (n * (n + 1) // 2)
    for j in range(1, n + 1):
        a_j = a.at(j)
        prod = _ONE  # prod_{l=i+1..N} (1 - a_l/a_j), built downward from i = N
        for i in range(n, j - 1, -1):
            d_data[i * (i - 1) // 2 + j - 1] = a.at(i) / a_n * prod
            prod *= _ONE - a.at(i) / a_j
    vectors = TriMatrix(n, d_data)

    e_data = [_ZERO] * (n * (n + 1) // 2)
    for i in range(1, n + 1):
        a_i = a.at(i)
        value = a_n / a_i
        for l in range(i + 1, n + 1):
            value /= _ONE - a.at(l) / a_i
        e_data[i * (i - 1) // 2 + i - 1] = value  # column j = i
        for j in range(i - 1, 0, -1):
            value /= _ONE - a.at(j) / a_i
            e_data[i * (i - 1) // 2 + j - 1] = value
    vectors_inv = TriMatrix(n, e_data)

    if multiply(vectors, vectors_inv) != TriMatrix.identity(n):
        raise AssertionError("eigenvector inverse certificate failed")
    return EigenDecomposition(vectors, tuple(a.values), vectors_inv)


def power_via_diag(a: SequenceSpec, k: int) -> TriMatrix:
    """k-th power of the index matrix through its diagonalization.

    Equals the k-fold repeated product exactly; k = 0 gives the identity.
    """
    return eigendecompose(a).power(k)


def partial_fraction_sum(a: SequenceSpec, i: int, j: int) -> Fraction:
    """The reciprocal-difference sum sum_{t=j..i} prod_{l=j..i, l != t} 1/(a_t - a_l).

    Requires pairwise distinct entries and j <= i.  Collapses to 1 when
    i = j (empty product) and to 0 otherwise.
    """
    if not 1 <= j <= i <= len(a):
        raise ValueError(f"need 1 <= j <= i <= {len(a)}, got i={i}, j={j}")
    if not sequence_all_distinct(a):
        raise DuplicateEntriesError("partial-fraction sum needs distinct entries")
    total = _ZERO
    for t in range(j, i + 1):
        term = _ONE
        for l in range(j, i + 1):
            if l != t:
                term /= a.at(t) - a.at(l)
        total += term
    return total


def check_partial_fraction(a: SequenceSpec, i: int, j: int) -> bool:
    """Verify that partial_fraction_sum(a, i, j) equals [i == j], exactly."""
    expected = _ONE if i == j else _ZERO
    return partial_fraction_sum(a, i, j) == expected
