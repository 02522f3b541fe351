"""Exact rational scalars and finite sequence specifications.

Every exact computation in the package runs over arbitrary-precision
rationals (``fractions.Fraction``), which are always kept in canonical
form: positive denominator, gcd(|numerator|, denominator) = 1.  Floats
appear only in the convergence and Monte Carlo helpers of other modules.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction


def parse_rational(text: str) -> Fraction:
    """Parse canonical rational text: "p/q", or just "p" when q = 1."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(value: Fraction) -> str:
    """Canonical text form "p/q"; the "/q" is omitted when q = 1."""
    return str(value)


@dataclass(frozen=True)
class SequenceSpec:
    """A finite sequence f(1), ..., f(N) of exact rationals.

    Indexing is 1-based everywhere in the public API.  Values are
    normalized to ``Fraction`` at construction and the instance is
    immutable, so sequences are safe to share.
    """

    values: tuple[Fraction, ...]
    label: str | None = None

    def __post_init__(self):
        values = tuple(Fraction(v) for v in self.values)
        if not values:
            raise ValueError("sequence must have at least one value")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def at(self, n: int) -> Fraction:
        """Value f(n), 1-based."""
        if not 1 <= n <= len(self.values):
            raise IndexError(f"sequence index {n} outside 1..{len(self.values)}")
        return self.values[n - 1]

    def truncate(self, n: int) -> "SequenceSpec":
        """The prefix f(1..n) as a new sequence."""
        if not 1 <= n <= len(self.values):
            raise ValueError(f"cannot truncate length-{len(self.values)} sequence to {n}")
        if n == len(self.values):
            return self
        return SequenceSpec(self.values[:n], self.label)


def make_harmonic_sequence(i: int, n: int) -> SequenceSpec:
    """The sequence sgn(i)^m / m^|i| for m = 1..n.

    Positive i gives 1/m^i; negative i gives the alternating variant
    (-1)^m / m^|i|.  i = 0 is rejected: it has no sign convention.
    """
    if i == 0:
        raise ValueError("harmonic index must be nonzero")
    if n < 1:
        raise ValueError("sequence length must be positive")
    sign = -1 if i < 0 else 1
    power = abs(i)
    return SequenceSpec(
        tuple(Fraction(sign**m, m**power) for m in range(1, n + 1)),
        label=f"H{i}",
    )


def pointwise_product(f: SequenceSpec, g: SequenceSpec) -> SequenceSpec:
    """Entrywise product (fg)(n) = f(n) * g(n); lengths must match."""
    if len(f) != len(g):
        raise ValueError(f"length mismatch: {len(f)} vs {len(g)}")
    label = None
    if f.label and g.label:
        label = f"{f.label}*{g.label}"
    return SequenceSpec(tuple(x * y for x, y in zip(f.values, g.values)), label)


def sequence_all_distinct(f: SequenceSpec) -> bool:
    """True iff no two entries of f are equal (exact comparison)."""
    return len(set(f.values)) == len(f.values)


def random_sequence(
    rng: random.Random,
    n: int,
    *,
    nonzero: bool = False,
    distinct: bool = False,
    bound: int = 9,
) -> SequenceSpec:
    """Random sequence with numerators in [-bound, bound] and denominators in [1, bound].

    Used by the randomized identity verifiers and the test suite; the
    draw is deterministic for a given ``rng`` state.
    """
    if n < 1:
        raise ValueError("sequence length must be positive")
    values: list[Fraction] = []
    seen: set[Fraction] = set()
    while len(values) < n:
        numerator = rng.randint(-bound, bound)
        if nonzero and numerator == 0:
            continue
        value = Fraction(numerator, rng.randint(1, bound))
        if distinct and value in seen:
            continue
        seen.add(value)
        values.append(value)
    return SequenceSpec(tuple(values))
