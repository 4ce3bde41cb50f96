"""Problem instances: a 0/1 oracle marking an arithmetic progression.

An instance over the labels {0..n-1} marks the m labels
{s, s+p, ..., s+(m-1)p}; the oracle is the indicator of that set, wrapped
behind a query counter so search procedures can report their cost.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass

from .errors import (
    DegenerateInstance,
    LabelOutOfRange,
    MarkedSetTooLarge,
    OverflowsLabelSpace,
    PeriodTooLarge,
)


@dataclass(frozen=True)
class OracleSpec:
    """Validated instance parameters.

    n: label-space size, m: marked-set size, p: period, s: offset.
    Construct through :func:`build_oracle` to get the invariants checked.
    """

    n: int
    m: int
    p: int
    s: int

    @property
    def is_strict(self) -> bool:
        """True when p*p <= n and 2*m <= n, the regime all bounds assume."""
        return self.p * self.p <= self.n and 2 * self.m <= self.n

    def members(self) -> list[int]:
        """The marked labels, ascending."""
        return [self.s + r * self.p for r in range(self.m)]

    def contains(self, x: int) -> bool:
        if x < self.s:
            return False
        r, rem = divmod(x - self.s, self.p)
        return rem == 0 and r < self.m

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "m": self.m, "p": self.p, "s": self.s})

    @classmethod
    def from_json(cls, text: str, strict: bool = True) -> "OracleSpec":
        obj = json.loads(text)
        return build_oracle(obj["n"], obj["m"], obj["p"], obj["s"], strict=strict)


def build_oracle(n: int, m: int, p: int, s: int, strict: bool = True) -> OracleSpec:
    """Validate (n, m, p, s) and return the spec.

    Strict mode additionally enforces p*p <= n and 2*m <= n; turn it off
    for exploratory instances that the closed-form bounds do not cover.
    """
    if n <= 0 or m <= 0:
        raise DegenerateInstance(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    if p < 1:
        raise DegenerateInstance(f"period must be >= 1, got {p}")
    if not 0 <= s <= n - 1:
        raise OverflowsLabelSpace(f"offset {s} outside 0..{n - 1}")
    if s + (m - 1) * p > n - 1:
        raise OverflowsLabelSpace(
            f"marked set ends at {s + (m - 1) * p}, past the last label {n - 1}"
        )
    if strict and p * p > n:
        raise PeriodTooLarge(f"strict mode needs p*p <= n, got {p}**2 > {n}")
    if strict and 2 * m > n:
        raise MarkedSetTooLarge(f"strict mode needs 2*m <= n, got m={m}, n={n}")
    return OracleSpec(n, m, p, s)


def members(spec: OracleSpec) -> list[int]:
    return spec.members()


class OracleHandle:
    """The oracle as a callable with an atomic query tally.

    ``handle(x)`` returns 1 iff x is marked, and bumps ``query_count``.
    The membership test itself is pure; only the counter mutates, under a
    lock so concurrent searches keep an exact tally.
    """

    def __init__(self, spec: OracleSpec):
        self.spec = spec
        self._n = spec.n
        self._contains = spec.contains
        self._count = 0
        self._lock = threading.Lock()

    @classmethod
    def from_members(cls, n: int, labels) -> "OracleHandle":
        """Oracle for an arbitrary marked subset (no periodic structure).

        Exists so recovery can be exercised on aperiodic sets; such handles
        carry no spec and only support evaluation.
        """
        marked = frozenset(int(x) for x in labels)
        if not marked:
            raise DegenerateInstance("marked set is empty")
        if min(marked) < 0 or max(marked) > n - 1:
            raise OverflowsLabelSpace(f"labels outside 0..{n - 1}")
        handle = cls.__new__(cls)
        handle.spec = None
        handle._n = n
        handle._contains = marked.__contains__
        handle._count = 0
        handle._lock = threading.Lock()
        return handle

    @property
    def n(self) -> int:
        return self._n

    @property
    def query_count(self) -> int:
        return self._count

    def __call__(self, x: int) -> int:
        if not 0 <= x <= self._n - 1:
            raise LabelOutOfRange(f"label {x} outside 0..{self._n - 1}")
        with self._lock:
            self._count += 1
        return 1 if self._contains(x) else 0


def evaluate(handle: OracleHandle, x: int) -> int:
    return handle(x)
