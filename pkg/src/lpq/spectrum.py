"""Shared spectral vocabulary: algorithms, per-frequency cases, tables.

Every frequency y in 0..n-1 falls in exactly one case, decided by integer
arithmetic alone (never by floating point):

    zero       y == 0
    resonant   p*y == 0 (mod n), y != 0
    generic    p*y != 0 and m*p*y != 0 (mod n)
    null       p*y != 0 but m*p*y == 0 (mod n)

Null frequencies carry exactly zero probability under all three pipelines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Iterator

import numpy as np

from .errors import ValidationError

if TYPE_CHECKING:
    from .oracle import OracleSpec


class Algorithm(str, Enum):
    AMPLIFIED = "amplified"
    QFT = "qft"
    QHS = "qhs"


class SpectrumCase(str, Enum):
    ZERO = "zero"
    RESONANT = "resonant"
    GENERIC = "generic"
    NULL = "null"


# Small-int codes used in bulk arrays; CASES maps code -> case.
CASES = (SpectrumCase.ZERO, SpectrumCase.RESONANT, SpectrumCase.GENERIC, SpectrumCase.NULL)
CODE_ZERO, CODE_RESONANT, CODE_GENERIC, CODE_NULL = range(4)

# Simulated probabilities this close to zero are reported as exact zeros,
# so the null case reads as 0 rather than as rounding dust.
ZERO_CLAMP = 1e-12

NORMALIZATION_TOL = 1e-9


def classify(y: int, spec: "OracleSpec") -> SpectrumCase:
    """Spectral case of frequency y for this instance."""
    if y == 0:
        return SpectrumCase.ZERO
    if (spec.p * y) % spec.n == 0:
        return SpectrumCase.RESONANT
    if (spec.m * spec.p * y) % spec.n == 0:
        return SpectrumCase.NULL
    return SpectrumCase.GENERIC


def case_codes(n: int, m: int, p: int) -> np.ndarray:
    """Vectorized classification: int8 codes for every y in 0..n-1."""
    y = np.arange(n, dtype=np.int64)
    py = (p * y) % n
    mpy = (m * p * y) % n
    codes = np.full(n, CODE_GENERIC, dtype=np.int8)
    codes[(py != 0) & (mpy == 0)] = CODE_NULL
    codes[py == 0] = CODE_RESONANT
    codes[0] = CODE_ZERO
    return codes


@dataclass
class ProbabilityTable:
    """Per-frequency measurement probabilities with case annotations.

    ``source`` records provenance: "closed-form" or "simulated".
    """

    n: int
    pr: np.ndarray
    codes: np.ndarray
    source: str

    def case(self, y: int) -> SpectrumCase:
        return CASES[self.codes[y]]

    def entries(self) -> Iterator[tuple[int, float, SpectrumCase]]:
        for y in range(self.n):
            yield y, float(self.pr[y]), CASES[self.codes[y]]

    def total(self) -> float:
        return float(self.pr.sum())

    def to_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("# schema=1\n")
            fh.write("y,pr,case,source\n")
            for y, pr, case in self.entries():
                fh.write(f"{y},{pr:.17g},{case.value},{self.source}\n")

    def to_json_obj(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "source": self.source,
            "entries": [
                {"y": y, "pr": pr, "case": case.value} for y, pr, case in self.entries()
            ],
        }

    def to_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_obj(), fh, indent=1, sort_keys=True)
            fh.write("\n")


def make_table(n: int, pr: np.ndarray, codes: np.ndarray, source: str) -> ProbabilityTable:
    """Clamp rounding dust, enforce normalization, and build the table."""
    pr = np.asarray(pr, dtype=float).copy()
    if pr.min() < -ZERO_CLAMP:
        raise ValidationError(f"negative probability {pr.min()} in table")
    pr[np.abs(pr) < ZERO_CLAMP] = 0.0
    total = pr.sum()
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise ValidationError(f"table sums to {total}, not 1")
    return ProbabilityTable(n, pr, codes, source)
