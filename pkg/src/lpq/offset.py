"""Finding the offset once a period candidate is in hand.

Three-probe verification: if f(s1) = 1, f(s1 + p1) = 1 and
f(s1 + (m-1)*p1) = 1 then (s1, p1) is the true pair — any smaller p1 misses
the member next to s, any larger one (or any wrong s1) runs past the top of
the marked set.  Probes outside 0..n-1 evaluate to 0 rather than erroring,
which makes the tests total.  For m = 1 the pair test is vacuous (there is
no second member to probe), so the search procedures return the single
member directly in that case.

Two seeded searches recover the offset from a measured member x1 = s + r*p:

* counting: an idealized counter reports how many of the t probe points
  g(x) = max(0, x1 - (x+1)*p) are marked.  The counter returns the exact
  count with probability >= 2/3 and an adversarial near-miss otherwise; a
  wrong count (or a wrong period) is always caught by the pair test and
  surfaces as VerificationFailed.  Its cost is charged as
  sqrt((R+1)(t-R+1)) oracle applications.

* decreasing: amplify the t-point register on the marked g-image, measure
  a member strictly below the current one, and repeat; the walk halves the
  remaining multiplier on average, so it ends at s after O(log2 m) rounds.

Each search owns its local state; concurrent searches are safe because the
oracle itself is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NonTermination, VerificationFailed
from .oracle import OracleHandle
from .simulator import grover_schedule

_MEASURE_RETRIES = 16


def _probe(handle: OracleHandle, x: int) -> int:
    # Labels outside the space cannot be marked; don't charge a query.
    if 0 <= x <= handle.n - 1:
        return handle(x)
    return 0


def test_period_known_s(handle: OracleHandle, s: int, p1: int, m: int) -> bool:
    """Three probes decide whether p1 is the true period for known offset s."""
    probes = (_probe(handle, s), _probe(handle, s + p1), _probe(handle, s + (m - 1) * p1))
    return all(b == 1 for b in probes)


def test_pair(handle: OracleHandle, s1: int, p1: int, m: int) -> bool:
    """Three probes decide whether (s1, p1) is the true (offset, period)."""
    return test_period_known_s(handle, s1, p1, m)


def exhaust_offsets(handle: OracleHandle, candidate_offsets, p1: int, m: int):
    """First candidate offset passing the pair test, or None (p1 is wrong)."""
    for s1 in candidate_offsets:
        if test_pair(handle, s1, p1, m):
            return s1, p1
    return None


def amplified_measure_member(handle: OracleHandle, seed) -> int:
    """Measure the register after the full amplification schedule.

    Samples the exact two-level distribution (a_k^2 on each member, b_k^2
    off); lands on a member with probability sin^2((2k+1) theta) >= 1 - m/n.
    The caller still checks membership through the oracle.
    """
    spec = handle.spec
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    schedule = grover_schedule(spec.n, spec.m)
    if rng.random() < spec.m * schedule.a_k**2:
        return spec.s + int(rng.integers(spec.m)) * spec.p
    outside = int(rng.integers(spec.n - spec.m))
    # map the draw onto the (n - m) unmarked labels
    for x in range(spec.n):
        if not spec.contains(x):
            if outside == 0:
                return x
            outside -= 1
    raise AssertionError("unreachable: fewer unmarked labels than counted")


def g_function(x: int, x1: int, p: int) -> int:
    """Probe ladder g(x) = max(0, x1 - (x+1)*p); non-increasing in x."""
    return max(0, x1 - (x + 1) * p)


def _pow2_at_least(m: int) -> int:
    return 1 << max(0, (m - 1).bit_length())


@dataclass(frozen=True)
class CountingContract:
    """Idealized exact-count subroutine: reports the number of marked probe
    points, correct with probability >= confidence, at the quoted cost."""

    t: int
    reported: int
    true_count: int
    confidence: float = 2.0 / 3.0

    @property
    def cost(self) -> float:
        r = self.reported
        return math.sqrt((r + 1) * (self.t - r + 1))


def _idealized_count(true_count: int, t: int, rng: np.random.Generator) -> CountingContract:
    if rng.random() < 2.0 / 3.0 or t == 0:
        return CountingContract(t, true_count, true_count)
    # Adversarial failure: a near-miss, the hardest wrong answer to spot.
    wrong = [c for c in (true_count - 1, true_count + 1) if 0 <= c <= t]
    return CountingContract(t, int(rng.choice(wrong)), true_count)


@dataclass
class OffsetSearchResult:
    """Transcript of one offset search."""

    method: str
    offset: int
    history: list[int] = field(default_factory=list)
    iterations: int = 0
    oracle_queries: int = 0
    counting_cost: float = 0.0

    def to_json_obj(self) -> dict:
        return {
            "method": self.method,
            "offset": self.offset,
            "history": list(self.history),
            "iterations": self.iterations,
            "oracle_queries": self.oracle_queries,
            "counting_cost": self.counting_cost,
        }


def _measure_starting_member(handle, rng, x_start):
    if x_start is not None:
        return x_start
    for _ in range(_MEASURE_RETRIES):
        x1 = amplified_measure_member(handle, rng)
        if _probe(handle, x1) == 1:
            return x1
    raise NonTermination(f"no member measured in {_MEASURE_RETRIES} amplified attempts")


def find_offset_counting(
    handle: OracleHandle, p: int, m: int, seed, x_start: int | None = None
) -> OffsetSearchResult:
    """Offset via one idealized count of the marked probe ladder.

    Raises VerificationFailed when the pair test rejects the candidate,
    which happens exactly when p is wrong or the counter lied; the caller
    should rerun period finding.
    """
    rng = np.random.default_rng(seed)
    queries_before = handle.query_count
    x1 = _measure_starting_member(handle, rng, x_start)
    result = OffsetSearchResult("counting", x1, history=[x1])
    if m == 1:
        # x1 is the only member, hence the offset; no pair to test.
        result.oracle_queries = handle.query_count - queries_before
        return result
    if _probe(handle, x1 - p) == 0:
        # Either the multiplier is already zero or p is wrong.
        if test_pair(handle, x1, p, m):
            result.oracle_queries = handle.query_count - queries_before
            return result
        raise VerificationFailed(f"pair (s={x1}, p={p}) rejected by probes")
    t = _pow2_at_least(m)
    true_count = sum(_probe(handle, g_function(x, x1, p)) for x in range(t))
    contract = _idealized_count(true_count, t, rng)
    candidate = x1 - contract.reported * p
    result.counting_cost = contract.cost
    result.iterations = 1
    if not test_pair(handle, candidate, p, m):
        raise VerificationFailed(
            f"pair (s={candidate}, p={p}) rejected by probes (count={contract.reported})"
        )
    result.offset = candidate
    result.history.append(candidate)
    result.oracle_queries = handle.query_count - queries_before
    return result


def find_offset_decreasing(
    handle: OracleHandle, p: int, m: int, seed, x_start: int | None = None
) -> OffsetSearchResult:
    """Offset via a strictly decreasing walk of amplified measurements.

    Raises VerificationFailed when p is wrong and NonTermination if the
    walk exceeds its iteration guard.
    """
    rng = np.random.default_rng(seed)
    queries_before = handle.query_count
    x = _measure_starting_member(handle, rng, x_start)
    result = OffsetSearchResult("decreasing", x, history=[x])
    if m == 1:
        result.oracle_queries = handle.query_count - queries_before
        return result
    max_rounds = 64 * math.ceil(math.log2(m) + 1)
    t = _pow2_at_least(m)
    while True:
        if _probe(handle, x - p) == 0:
            if test_pair(handle, x, p, m):
                result.offset = x
                result.oracle_queries = handle.query_count - queries_before
                return result
            raise VerificationFailed(f"pair (s={x}, p={p}) rejected by probes")
        if result.iterations >= max_rounds:
            raise NonTermination(f"offset walk exceeded {max_rounds} rounds")
        # Mark the probe ladder below x and amplify over the t-point register.
        g_vals = [g_function(i, x, p) for i in range(t)]
        marked = [_probe(handle, g) == 1 for g in g_vals]
        good = sum(marked)
        schedule = grover_schedule(t, good)
        for _ in range(_MEASURE_RETRIES):
            if rng.random() < good * schedule.a_k**2:
                pick = int(rng.integers(good))
                idx = [i for i, hit in enumerate(marked) if hit][pick]
            else:
                idx = None  # landed off the marked image; retry the round
            if idx is not None:
                break
        else:
            raise NonTermination(f"{_MEASURE_RETRIES} off-image measurements in a row")
        x_new = g_vals[idx]
        _probe(handle, x_new)  # membership confirmation probe
        result.history.append(x_new)
        result.iterations += 1
        x = x_new
