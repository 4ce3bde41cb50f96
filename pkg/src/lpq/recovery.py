"""Recovering the period from a measured frequency via continued fractions.

A measured y is useful when y/n sits within 1/(2*q^2) of a reduced fraction
d/q with q equal to the true period: the classical convergence theorem then
guarantees d/q appears among the convergents of y/n, so the period can be
read off a denominator.  ``recover_period`` never consults the oracle; the
caller verifies candidates with the probe tests in :mod:`lpq.offset`.

Residue conventions.  {a}_n denotes the representative of a mod n in the
half-open window (-n/2, n/2].  The frequency window

    Y = { y : -p/2 < {p*y}_n <= p/2 }

is in bijection with the multipliers d in 0..p-1 via d(y) = round(p*y/n)
and y(d) = round(n*d/p), both rounding half up.  Keeping the window
half-open on the same side as {a}_n is what makes the bijection total;
with a closed window both endpoints of a |{p*y}_n| = p/2 tie would land on
the same d (for example n=18, p=4, y in {4, 5}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import ValidationError, ZeroDenominator
from .oracle import OracleSpec
from .spectrum import Algorithm


@dataclass(frozen=True)
class ContinuedFraction:
    """Partial quotients [a0; a1, a2, ...] of a non-negative rational.

    Canonical form: the final quotient is >= 2 whenever there is more than
    one, which makes the expansion unique.
    """

    quotients: tuple[int, ...]

    def value(self) -> Fraction:
        acc = Fraction(self.quotients[-1])
        for a in reversed(self.quotients[:-1]):
            acc = a + 1 / acc
        return acc


class Convergent(NamedTuple):
    d: int
    q: int


def continued_fraction(num: int, den: int) -> ContinuedFraction:
    """Euclidean partial quotients of num/den (reduced internally)."""
    if den == 0:
        raise ZeroDenominator("continued fraction of x/0")
    if num < 0 or den < 0:
        raise ValidationError("continued fraction needs num >= 0, den >= 1")
    g = math.gcd(num, den) or 1
    num, den = num // g, den // g
    quotients = []
    while den:
        a, rem = divmod(num, den)
        quotients.append(a)
        num, den = den, rem
    # Euclid on a reduced fraction already ends with a quotient >= 2 unless
    # the expansion is a single integer, so this is canonical as-is.
    return ContinuedFraction(tuple(quotients))


def convergents(cf: ContinuedFraction) -> list[Convergent]:
    """Convergent ladder d_i/q_i by the standard recurrence; each reduced."""
    out = []
    d_prev, d_prev2 = 1, 0
    q_prev, q_prev2 = 0, 1
    for a in cf.quotients:
        d, q = a * d_prev + d_prev2, a * q_prev + q_prev2
        out.append(Convergent(d, q))
        d_prev2, d_prev = d_prev, d
        q_prev2, q_prev = q_prev, q
    return out


class RecoveryStatus(str, Enum):
    RECOVERED = "recovered"
    NO_CANDIDATE = "no-candidate"
    GCD_OBSTRUCTION = "gcd-obstruction"


@dataclass
class RecoveryResult:
    y: int
    candidates: list[Convergent]
    accepted: int | None
    status: RecoveryStatus

    def to_json_obj(self) -> dict:
        return {
            "y": self.y,
            "convergents": [[c.d, c.q] for c in self.candidates],
            "accepted": self.accepted,
            "status": self.status.value,
        }


def accepted_denominator(y: int, n: int, q_max: int | None = None) -> int | None:
    """Allocation-free core of :func:`recover_period`: just the accepted q.

    Fuses the Euclidean loop with the convergent recurrence; the selection
    rule is identical, and the test suite holds the two paths together.
    """
    if q_max is None:
        q_max = math.isqrt(n)
    g = math.gcd(y, n) or 1
    num, den = y // g, n // g
    d_prev, d_prev2 = 1, 0
    q_prev, q_prev2 = 0, 1
    best_q = 0
    while den:
        a, rem = divmod(num, den)
        d, q = a * d_prev + d_prev2, a * q_prev + q_prev2
        if q > q_max:
            break
        if 2 * q * abs(y * q - d * n) <= n:
            best_q = q
        d_prev2, d_prev = d_prev, d
        q_prev2, q_prev = q_prev, q
        num, den = den, rem
    if y == 0 or best_q <= 1:
        return None
    return best_q


def recover_period(y: int, n: int, q_max: int | None = None) -> RecoveryResult:
    """Largest convergent denominator q <= q_max with |y/n - d/q| <= 1/(2q^2).

    q_max defaults to isqrt(n), the largest period the convergence theorem
    covers.  y = 0 and bare q = 1 candidates carry no period information and
    come back as no-candidate.  Smaller-q false positives are possible and
    must be weeded out by oracle verification downstream.
    """
    if q_max is None:
        q_max = math.isqrt(n)
    ladder = convergents(continued_fraction(y, n))
    best = None
    for c in ladder:
        if c.q > q_max:
            break
        # |y/n - d/q| <= 1/(2 q^2)  <=>  2*q*|y*q - d*n| <= n, exactly
        if 2 * c.q * abs(y * c.q - c.d * n) <= n:
            best = c
    if y == 0 or best is None or best.q == 1:
        return RecoveryResult(y, ladder, None, RecoveryStatus.NO_CANDIDATE)
    return RecoveryResult(y, ladder, best.q, RecoveryStatus.RECOVERED)


def smallest_residue(a: int, n: int) -> int:
    """Representative of a mod n in (-n/2, n/2]."""
    r = a % n
    return r - n if 2 * r > n else r


def y_to_d(y: int, n: int, p: int) -> int:
    """Multiplier d(y) = round(p*y/n), consistent with {p*y}_n = p*y - n*d."""
    return (p * y - smallest_residue(p * y, n)) // n


def d_to_y(d: int, n: int, p: int) -> int:
    """Frequency y(d) = round(n*d/p), rounding half up."""
    return (2 * n * d + p) // (2 * p)


def success_set(spec: OracleSpec) -> np.ndarray:
    """Frequencies from which the period is certified recoverable.

    These are the nonzero y in the window -p/2 < {p*y}_n <= p/2 whose
    multiplier d(y) is coprime to p; there are phi(p) of them for p >= 2
    (none for p = 1), and they are the same for every algorithm.
    """
    n, p = spec.n, spec.p
    y = np.arange(n, dtype=np.int64)
    r = (p * y) % n
    r = np.where(2 * r > n, r - n, r)
    window = (2 * r > -p) & (2 * r <= p)
    d = (p * y - r) // n
    ok = window & (y != 0) & (np.gcd(d, p) == 1)
    return y[ok]


def success_probability(algorithm: Algorithm, spec: OracleSpec) -> float:
    """Closed-form probability mass of the certified success set."""
    from .closedform import closed_form_table

    table = closed_form_table(spec, Algorithm(algorithm))
    return float(table.pr[success_set(spec)].sum())


def euler_phi(p: int) -> int:
    """Totient by trial division; periods here are at most isqrt(n)."""
    result = p
    q = 2
    while q * q <= p:
        if p % q == 0:
            while p % q == 0:
                p //= q
            result -= result // q
        q += 1
    if p > 1:
        result -= result // p
    return result


def totient_ratio(p: int) -> float:
    """phi(p)/p, the chance a uniform multiplier is coprime to p."""
    return euler_phi(p) / p
