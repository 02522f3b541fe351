"""Nested-sum evaluation: matrix route, brute-force oracle, streaming floats.

A nested sum multiplies one sequence value per index over a weakly or
strictly decreasing index chain.  The matrix route evaluates it as an
entry of the product of the prefix matrix with one index matrix per
factor; the brute-force route enumerates every chain and exists as the
ground-truth oracle for tests; the streaming route tracks the float
value of convergent cases at large N without building matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import SequenceSpec, make_harmonic_sequence
from .trimatrix import (
    StructuredMatrix,
    TriMatrix,
    index_matrix,
    materialize,
    multiply,
    prefix_matrix,
    row_multiply,
    shifted_index_matrix,
)

_ONE = Fraction(1)

DEFAULT_EXPLOSION_GUARD = 10_000_000


class Mode(Enum):
    """Index-chain flavour: WEAK descends with >=, STRICT with >."""

    WEAK = "weak"
    STRICT = "strict"


class ExplosionGuardError(ValueError):
    """Brute-force enumeration would exceed the configured tuple budget."""


@dataclass(frozen=True)
class SumSpec:
    """A nested-sum request over factor sequences f_1, ..., f_k.

    WEAK mode sums f_1(n_1) * ... * f_k(n_k) over N >= n_1 >= ... >= n_k >= m;
    STRICT mode over N > n_1 > ... > n_k >= m.  Factors may be longer than N;
    only their first N values participate.
    """

    factors: tuple[SequenceSpec, ...]
    n: int
    m: int = 1
    mode: Mode = Mode.WEAK

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if self.n < 1:
            raise ValueError("upper bound N must be positive")
        if not 1 <= self.m <= self.n:
            raise ValueError(f"lower bound m={self.m} must satisfy 1 <= m <= N={self.n}")
        for idx, f in enumerate(self.factors, start=1):
            if len(f) < self.n:
                raise ValueError(
                    f"factor {idx} has length {len(f)}, shorter than N={self.n}"
                )

    @property
    def k(self) -> int:
        return len(self.factors)


def _factor_structure(f: SequenceSpec, n: int, mode: Mode) -> StructuredMatrix:
    f = f.truncate(n)
    if mode is Mode.WEAK:
        return index_matrix(f)
    return shifted_index_matrix(f)


def evaluate_matrix(spec: SumSpec) -> Fraction:
    """Exact nested-sum value via the index-matrix product.

    Only the output row containing the requested (N, m) entry is pushed
    through the factor chain, so the cost is O(k*N) scalar operations.
    An empty factor list yields the (N, m) entry of the bare prefix
    matrix, i.e. 1 (empty-product convention; see evaluate_bruteforce).
    """
    row = [_ONE] * spec.n  # row N of the prefix matrix
    for f in spec.factors:
        row = row_multiply(row, _factor_structure(f, spec.n, spec.mode))
    return row[spec.m - 1]


@dataclass(frozen=True)
class SumTable:
    """All nested-sum values for bounds 1 <= m <= N' <= N at once.

    ``matrix`` is the full product of the prefix matrix with the factor
    chain; its (i, j) entry is the nested sum with upper bound i and
    lower bound j in the table's mode.
    """

    matrix: TriMatrix
    mode: Mode

    def value(self, upper: int, lower: int) -> Fraction:
        return self.matrix.entry(upper, lower)


def evaluate_table(
    factors: Iterable[SequenceSpec], mode: Mode, n: int
) -> SumTable:
    """Evaluate the nested sum simultaneously for every bound pair.

    Each factor is absorbed by the O(N^2) structured product, so the
    whole table costs O(k*N^2) scalar operations.
    """
    factors = tuple(factors)
    if n < 1:
        raise ValueError("dimension must be positive")
    current = materialize(prefix_matrix(n))
    for f in factors:
        if len(f) < n:
            raise ValueError(f"factor of length {len(f)} shorter than N={n}")
        current = multiply(current, _factor_structure(f, n, mode))
    return SumTable(current, mode)


def evaluate_bruteforce(
    spec: SumSpec, guard: int = DEFAULT_EXPLOSION_GUARD
) -> Fraction:
    """Exact value by explicit enumeration of every index chain.

    This is the ground-truth oracle for the matrix route.  Chains are
    enumerated by nested descent (each index ranges over [m, previous]
    or [m, previous - 1]) rather than filtering the full box.  The box
    bound (N - m + 1)^k must stay within ``guard`` tuples.
    """
    box = (spec.n - spec.m + 1) ** spec.k
    if box > guard:
        raise ExplosionGuardError(
            f"brute force would scan up to {box} index tuples (guard: {guard})"
        )
    strict = spec.mode is Mode.STRICT
    factors = spec.factors
    k = spec.k
    m = spec.m
    total = Fraction(0)

    def descend(level: int, upper: int, acc: Fraction) -> None:
        nonlocal total
        if level == k:
            total += acc
            return
        f = factors[level]
        for value in range(m, upper + 1):
            descend(level + 1, value - 1 if strict else value, acc * f.at(value))

    descend(0, spec.n - 1 if strict else spec.n, _ONE)
    return total


def harmonic_weak(indices: Sequence[int], n: int) -> Fraction:
    """Harmonic sum over weakly decreasing chains N >= n_1 >= ... >= n_k >= 1.

    Each nonzero integer index i contributes the factor sgn(i)^x / x^|i|.
    """
    factors = tuple(make_harmonic_sequence(i, n) for i in indices)
    return evaluate_matrix(SumSpec(factors, n, 1, Mode.WEAK))


def harmonic_strict(indices: Sequence[int], n: int) -> Fraction:
    """Harmonic sum over strictly decreasing chains N > n_1 > ... > n_k >= 1."""
    factors = tuple(make_harmonic_sequence(i, n) for i in indices)
    return evaluate_matrix(SumSpec(factors, n, 1, Mode.STRICT))


def default_checkpoints(n_max: int) -> list[int]:
    """Doubling checkpoints 1, 2, 4, ... capped at and including n_max."""
    points = []
    n = 1
    while n < n_max:
        points.append(n)
        n *= 2
    points.append(n_max)
    return points


def converge_stream(
    exponents: Sequence[int],
    n_max: int,
    checkpoints: Sequence[int] | None = None,
) -> list[tuple[int, float]]:
    """Float running values of the weak nested sum with factors 1/x^e.

    One partial inner sum per factor is updated at each step, O(k) work
    per index and no matrices.  The leading exponent must be at least 2:
    with a leading exponent of 1 the outer sum diverges and there is
    nothing to converge to.  Checkpoints default to the doubling
    sequence so the convergence rate is visible in the output.
    """
    exponents = [int(e) for e in exponents]
    if not exponents:
        raise ValueError("at least one exponent is required")
    if any(e < 1 for e in exponents):
        raise ValueError("exponents must be positive integers")
    if exponents[0] < 2:
        raise ValueError(
            "leading exponent must be >= 2: with exponent 1 the outer sum "
            "diverges like log N and has no limit"
        )
    if n_max < 1:
        raise ValueError("N must be positive")
    if checkpoints is None:
        marks = default_checkpoints(n_max)
    else:
        marks = sorted(set(int(c) for c in checkpoints))
        if not marks or marks[0] < 1 or marks[-1] > n_max:
            raise ValueError("checkpoints must lie in 1..N")
    mark_set = set(marks)

    k = len(exponents)
    partial = [0.0] * (k + 1)
    partial[k] = 1.0  # sentinel: empty inner product
    out: list[tuple[int, float]] = []
    for n in range(1, n_max + 1):
        for j in range(k - 1, -1, -1):
            partial[j] += n ** (-float(exponents[j])) * partial[j + 1]
        if n in mark_set:
            out.append((n, partial[0]))
    return out
