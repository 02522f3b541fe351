"""Truncated weak/strict sum relations and combinatorial identity verifiers.

Each verifier computes both sides of an identity with the exact
evaluators and packages them in an IdentityReport instead of asserting,
so the CLI can surface the values and test suites can assert on the
verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    SequenceSpec,
    format_rational,
    make_harmonic_sequence,
    pointwise_product,
    sequence_all_distinct,
)
from .nested import Mode, SumSpec, evaluate_matrix

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, SequenceSpec):
        return [format_rational(v) for v in value]
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Mode):
        return value.value
    return value


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of evaluating both sides of an identity exactly."""

    identity: str
    params: dict
    lhs: Fraction | None
    rhs: Fraction | None
    equal: bool

    @classmethod
    def compare(cls, identity: str, params: dict, lhs: Fraction, rhs: Fraction):
        return cls(identity, dict(params), lhs, rhs, lhs == rhs)

    def to_json_dict(self) -> dict:
        return {
            "identity": self.identity,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "lhs": None if self.lhs is None else format_rational(self.lhs),
            "rhs": None if self.rhs is None else format_rational(self.rhs),
            "equal": self.equal,
        }


def verify_weak_strict_pair(
    f: SequenceSpec, g: SequenceSpec, n: int, m: int = 1
) -> IdentityReport:
    """Weak double sum to N-1 as strict sums to N.

    Checks S(f, g; N-1, m) = A(f, g; N, m) + A(fg; N, m), where S sums
    over weakly and A over strictly decreasing chains.  Holds for any
    factor sequences whenever N > m >= 1.
    """
    if not n > m >= 1:
        raise ValueError(f"need N > m >= 1, got N={n}, m={m}")
    lhs = evaluate_matrix(SumSpec((f, g), n - 1, m, Mode.WEAK))
    rhs = evaluate_matrix(SumSpec((f, g), n, m, Mode.STRICT)) + evaluate_matrix(
        SumSpec((pointwise_product(f, g),), n, m, Mode.STRICT)
    )
    return IdentityReport.compare("weak-strict-pair", {"N": n, "m": m}, lhs, rhs)


def verify_weak_strict_triple(
    f: SequenceSpec, g: SequenceSpec, h: SequenceSpec, n: int, m: int = 1
) -> IdentityReport:
    """Weak triple sum to N-1 as the four strict sums to N.

    Checks S(f, g, h; N-1, m) = A(f, g, h; N, m) + A(fg, h; N, m)
    + A(f, gh; N, m) + A(fgh; N, m).
    """
    if not n > m >= 1:
        raise ValueError(f"need N > m >= 1, got N={n}, m={m}")
    fg = pointwise_product(f, g)
    gh = pointwise_product(g, h)
    fgh = pointwise_product(fg, h)
    lhs = evaluate_matrix(SumSpec((f, g, h), n - 1, m, Mode.WEAK))
    rhs = (
        evaluate_matrix(SumSpec((f, g, h), n, m, Mode.STRICT))
        + evaluate_matrix(SumSpec((fg, h), n, m, Mode.STRICT))
        + evaluate_matrix(SumSpec((f, gh), n, m, Mode.STRICT))
        + evaluate_matrix(SumSpec((fgh,), n, m, Mode.STRICT))
    )
    return IdentityReport.compare("weak-strict-triple", {"N": n, "m": m}, lhs, rhs)


class ButlerKarasikTable:
    """Memoized two-term recurrence table over a coefficient sequence.

    Values satisfy G(n, n) = 1 and G(n, k) = G(n-1, k-1) + a_k * G(n-1, k)
    for k >= 1.  Boundary: G(0, 0) = 1, and G(n, k) = 0 for k <= 0 < n.
    The zero column is forced by consistency with the one-factor weak
    sum (G(2, 1) must equal a_1), not stated by the recurrence itself.
    """

    def __init__(self, a: SequenceSpec):
        self._a = a
        self._memo: dict[tuple[int, int], Fraction] = {(0, 0): _ONE}

    @property
    def coefficients(self) -> SequenceSpec:
        return self._a

    def value(self, n: int, k: int) -> Fraction:
        if k < 0 or k > n:
            raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
        if k >= 1 and k > len(self._a):
            raise ValueError(
                f"column {k} needs coefficient a_{k} but the sequence has length {len(self._a)}"
            )
        memo = self._memo
        if (n, k) in memo:
            return memo[n, k]
        a = self._a
        for nn in range(1, n + 1):
            for kk in range(max(0, k - (n - nn)), min(nn, k) + 1):
                if (nn, kk) in memo:
                    continue
                if kk == nn:
                    memo[nn, kk] = _ONE
                elif kk == 0:
                    memo[nn, kk] = _ZERO
                else:
                    memo[nn, kk] = memo[nn - 1, kk - 1] + a.at(kk) * memo[nn - 1, kk]
        return memo[n, k]


def butler_karasik_value(a: SequenceSpec, n: int, k: int) -> Fraction:
    """Single table value G(n, k); see ButlerKarasikTable."""
    return ButlerKarasikTable(a).value(n, k)


def verify_butler_karasik(a: SequenceSpec, n: int, k: int) -> IdentityReport:
    """Weak power sum against the recurrence table.

    Checks S(a, ..., a; N, 1) with k copies of the factor against
    G(N + k, N) from the two-term recurrence.
    """
    if k < 1:
        raise ValueError("need at least one factor copy")
    if not 1 <= n <= len(a):
        raise ValueError(f"need 1 <= N <= {len(a)}, got N={n}")
    lhs = evaluate_matrix(SumSpec((a,) * k, n, 1, Mode.WEAK))
    rhs = ButlerKarasikTable(a).value(n + k, n)
    return IdentityReport.compare("butler-karasik", {"N": n, "k": k}, lhs, rhs)


def symmetric_expansion(a: SequenceSpec, k: int) -> Fraction:
    """Closed form for the k-fold weak power sum of a distinct sequence.

    Evaluates sum_j (prod_{m != j} 1 / (1 - a_m/a_j)) * a_j^k, the
    expression the diagonalization produces; it equals
    S(a, ..., a; N, 1) with k factor copies.  For k = 0 the weights sum
    to 1, matching the empty-product convention.
    """
    if k < 0:
        raise ValueError("power must be nonnegative")
    for idx, value in enumerate(a, start=1):
        if value == 0:
            raise ValueError(f"entry {idx} is zero; weights divide by the entries")
    if not sequence_all_distinct(a):
        raise ValueError("entries must be pairwise distinct")
    n = len(a)
    total = _ZERO
    for j in range(1, n + 1):
        a_j = a.at(j)
        weight = _ONE
        for m in range(1, n + 1):
            if m != j:
                weight /= _ONE - a.at(m) / a_j
        total += weight * a_j**k
    return total


def verify_symmetric_expansion(a: SequenceSpec, k: int) -> IdentityReport:
    """Matrix evaluation of the weak power sum against symmetric_expansion."""
    lhs = evaluate_matrix(SumSpec((a,) * k, len(a), 1, Mode.WEAK))
    rhs = symmetric_expansion(a, k)
    return IdentityReport.compare("symmetric-expansion", {"N": len(a), "k": k}, lhs, rhs)


def dilcher_binomial_sum(n: int, k: int) -> Fraction:
    """Alternating binomial sum sum_{l=1..N} C(N, l) (-1)^(l-1) / l^k.

    Equals the all-ones harmonic sum with k weak indices.
    """
    if n < 1:
        raise ValueError("N must be positive")
    if k < 0:
        raise ValueError("k must be nonnegative")
    total = _ZERO
    for l in range(1, n + 1):
        term = Fraction(math.comb(n, l), l**k)
        total += term if (l - 1) % 2 == 0 else -term
    return total


def verify_dilcher(n: int, k: int) -> IdentityReport:
    """All-ones weak harmonic sum against the alternating binomial sum."""
    lhs = evaluate_matrix(
        SumSpec(tuple(make_harmonic_sequence(1, n) for _ in range(k)), n, 1, Mode.WEAK)
    )
    rhs = dilcher_binomial_sum(n, k)
    return IdentityReport.compare("dilcher", {"N": n, "k": k}, lhs, rhs)


def general_dilcher_sum(a: int, n: int, k: int) -> Fraction:
    """Lagrange-weight generalization of the alternating binomial sum.

    Evaluates sum_{l=1..N} (prod_{j != l} j^a / (j^a - l^a)) / l^(a*k),
    which equals the harmonic sum with k weak indices all equal to a.
    Reduces to dilcher_binomial_sum when a = 1.
    """
    if a < 1:
        raise ValueError("exponent a must be a positive integer")
    if n < 1:
        raise ValueError("N must be positive")
    if k < 0:
        raise ValueError("k must be nonnegative")
    total = _ZERO
    for l in range(1, n + 1):
        weight = Fraction(1, l ** (a * k))
        la = l**a
        for j in range(1, n + 1):
            if j != l:
                ja = j**a
                weight *= Fraction(ja, ja - la)
        total += weight
    return total


def verify_general_dilcher(a: int, n: int, k: int) -> IdentityReport:
    """Harmonic sum with k equal indices a against the Lagrange-weight sum."""
    lhs = evaluate_matrix(
        SumSpec(tuple(make_harmonic_sequence(a, n) for _ in range(k)), n, 1, Mode.WEAK)
    )
    rhs = general_dilcher_sum(a, n, k)
    return IdentityReport.compare("general-dilcher", {"a": a, "N": n, "k": k}, lhs, rhs)
