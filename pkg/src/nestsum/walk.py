"""Leftward random walks whose transition matrices are index matrices.

A walker on sites 1..N may only jump to its own site or sites to the
left, landing on each with probability 1/l^a from site l.  For a = 1
those probabilities fill the row; for a > 1 the deficit 1 - 1/l^(a-1)
flows to an extra terminal state R.  Absorption probabilities at site 1
after a fixed number of steps are entries of powers of the index matrix
of 1/x^a, giving exact values to cross-check simulations against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import make_harmonic_sequence
from .identities import IdentityReport
from .nested import Mode, SumSpec, evaluate_matrix
from .trimatrix import index_matrix, row_multiply

_ZERO = Fraction(0)
_ONE = Fraction(1)

# Samples per simulation chunk; fixed so the estimate is a deterministic
# function of (seed, samples).
_CHUNK = 1 << 16


@dataclass(frozen=True)
class WalkChain:
    """Exact row-stochastic transition matrix for the leftward walk.

    States are sites 1..n_sites; with exponent > 1 the terminal state R
    sits at index n_sites + 1.  Site 1 (and R) transition only to
    themselves.
    """

    n_sites: int
    exponent: int
    transition: tuple[tuple[Fraction, ...], ...]

    @property
    def n_states(self) -> int:
        return len(self.transition)


def build_chain(n: int, a: int) -> WalkChain:
    """Transition matrix for N sites and jump exponent a.

    Row l holds 1/l^a in columns 1..l.  For a = 1 that exhausts the
    probability; for a > 1 the remainder 1 - 1/l^(a-1) goes to the
    terminal column R, and R maps to itself.
    """
    if n < 1:
        raise ValueError("site count must be positive")
    if a < 1:
        raise ValueError("exponent must be a positive integer")
    rows: list[tuple[Fraction, ...]] = []
    if a == 1:
        for l in range(1, n + 1):
            p = Fraction(1, l)
            rows.append((p,) * l + (_ZERO,) * (n - l))
    else:
        for l in range(1, n + 1):
            p = Fraction(1, l**a)
            sink = _ONE - Fraction(1, l ** (a - 1))
            rows.append((p,) * l + (_ZERO,) * (n - l) + (sink,))
        rows.append((_ZERO,) * n + (_ONE,))
    return WalkChain(n, a, tuple(rows))


def absorption_probability_exact(n: int, a: int, k: int) -> Fraction:
    """Probability of standing on site 1 after exactly k+1 steps from site N.

    Site 1 self-loops, so walks that arrive early still count.  The value
    is the (N, 1) entry of the (k+1)-th power of the index matrix of
    1/x^a, computed here by pushing row N through k further products.
    """
    if n < 1:
        raise ValueError("site count must be positive")
    if a < 1:
        raise ValueError("exponent must be a positive integer")
    if k < 0:
        raise ValueError("step offset k must be nonnegative")
    h = make_harmonic_sequence(a, n)
    step = index_matrix(h)
    row = [Fraction(1, n**a)] * n  # row N of the one-step matrix
    for _ in range(k):
        row = row_multiply(row, step)
    return row[0]


def absorption_probability_montecarlo(
    n: int, a: int, k: int, samples: int, seed: int
) -> tuple[float, float]:
    """Seeded simulation estimate of absorption_probability_exact.

    Runs ``samples`` independent (k+1)-step walks from site N and returns
    the fraction that stand on site 1 afterwards together with the
    binomial standard error.  The exact transition rows are converted to
    float cumulative rows once; sampling then proceeds in fixed-size
    chunks from a single PCG64 stream, so the result is a deterministic
    function of (seed, samples).
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    chain = build_chain(n, a)
    cdf = np.cumsum(
        np.array([[float(p) for p in row] for row in chain.transition]), axis=1
    )
    cdf[:, -1] = 1.0  # guard against float round-off in the last column
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = samples
    while remaining > 0:
        size = min(_CHUNK, remaining)
        sites = np.full(size, n - 1, dtype=np.int64)
        for _ in range(k + 1):
            u = rng.random(size)
            sites = (u[:, None] > cdf[sites]).sum(axis=1)
        hits += int((sites == 0).sum())
        remaining -= size
    estimate = hits / samples
    stderr = math.sqrt(estimate * (1.0 - estimate) / samples)
    return estimate, stderr


def verify_walk_identity(n: int, a: int, k: int) -> IdentityReport:
    """Absorption probability against the weak nested sum.

    Checks N^a * P(site 1 after k+1 steps) = S(H_a, ..., H_a; N, 1) with
    k factor copies, where H_a(x) = 1/x^a.
    """
    lhs = Fraction(n**a) * absorption_probability_exact(n, a, k)
    rhs = evaluate_matrix(
        SumSpec(tuple(make_harmonic_sequence(a, n) for _ in range(k)), n, 1, Mode.WEAK)
    )
    return IdentityReport.compare("walk-absorption", {"N": n, "a": a, "k": k}, lhs, rhs)
