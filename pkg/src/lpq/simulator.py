"""Exact statevector simulation of the three measurement pipelines.

Everything lives in C^n for an arbitrary integer n >= 1 (no power-of-two
restriction): labels are ring elements and the Fourier step is the order-n
transform with kernel omega = exp(-2*pi*i/n),

    out(y) = n**-0.5 * sum_z omega**(z*y) * in(z).

numpy's FFT computes that sum exactly for any n; ``dft(method="direct")``
keeps the O(n^2) direct-summation reference path available, and the test
suite holds the fast path to it within 1e-9.

States are plain complex ndarrays. All operations return fresh arrays and
never mutate their inputs, so they are safe to call concurrently.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DegenerateInstance, NotUnitary, ValidationError
from .oracle import OracleSpec
from .spectrum import Algorithm, ProbabilityTable, case_codes, make_table

DEFAULT_SOFT_N_LIMIT = 1 << 16


def soft_n_limit() -> int:
    """Full-spectrum size ceiling; override with LPQ_SOFT_N_LIMIT."""
    return int(os.environ.get("LPQ_SOFT_N_LIMIT", DEFAULT_SOFT_N_LIMIT))


def _check_desk_scale(n: int) -> None:
    limit = soft_n_limit()
    if n > limit:
        warnings.warn(
            f"n={n} exceeds the soft full-spectrum ceiling {limit}; "
            "expect long runtimes and reduced accuracy margins",
            RuntimeWarning,
            stacklevel=3,
        )


def marked_mask(spec: OracleSpec) -> np.ndarray:
    """Boolean indicator of the marked set over 0..n-1."""
    mask = np.zeros(spec.n, dtype=bool)
    mask[spec.s : spec.s + (spec.m - 1) * spec.p + 1 : spec.p] = True
    return mask


def uniform_state(n: int) -> np.ndarray:
    if n < 1:
        raise DegenerateInstance(f"need n >= 1, got {n}")
    _check_desk_scale(n)
    return np.full(n, 1.0 / math.sqrt(n), dtype=complex)


@dataclass(frozen=True)
class GroverSchedule:
    """Amplification geometry: rotation angle, round count, and the two
    amplitude levels the state reaches after k rounds."""

    n: int
    m: int
    theta: float
    k: int
    a_k: float
    b_k: float

    @property
    def good_probability(self) -> float:
        """Total probability on the marked set after k rounds."""
        return math.sin((2 * self.k + 1) * self.theta) ** 2


def grover_schedule(n: int, m: int, iterations: int | None = None) -> GroverSchedule:
    """sin(theta) = sqrt(m/n), k = floor(pi / (4 theta)) unless overridden."""
    if m < 1:
        raise DegenerateInstance(f"need m >= 1, got {m}")
    if m > n:
        raise DegenerateInstance(f"need m <= n, got m={m}, n={n}")
    theta = math.asin(math.sqrt(m / n))
    k = math.floor(math.pi / (4 * theta)) if iterations is None else int(iterations)
    a_k = math.sin((2 * k + 1) * theta) / math.sqrt(m)
    b_k = 0.0 if m == n else math.cos((2 * k + 1) * theta) / math.sqrt(n - m)
    return GroverSchedule(n, m, theta, k, a_k, b_k)


def grover_iterate(state: np.ndarray, spec: OracleSpec) -> np.ndarray:
    """One amplification round: flip the sign of every marked amplitude,
    then reflect all amplitudes about their mean."""
    state = np.asarray(state, dtype=complex)
    flipped = np.where(marked_mask(spec), -state, state)
    return 2.0 * flipped.mean() - flipped


def dft(state: np.ndarray, inverse: bool = False, method: str = "fft") -> np.ndarray:
    """Order-n transform with kernel exp(-2*pi*i*z*y/n) (conjugated when
    ``inverse``); norm preserving."""
    state = np.asarray(state, dtype=complex)
    n = state.shape[-1]
    if method == "fft":
        out = np.fft.ifft(state) * n if inverse else np.fft.fft(state)
        return out / math.sqrt(n)
    if method != "direct":
        raise ValidationError(f"unknown dft method {method!r}")
    sign = 2j if inverse else -2j
    out = np.empty(n, dtype=complex)
    z = np.arange(n)
    for start in range(0, n, 512):  # bound the twiddle block to ~4 MB
        y = np.arange(start, min(start + 512, n))
        out[y] = np.exp(sign * np.pi / n * np.outer(y, z)) @ state
    return out / math.sqrt(n)


def _amplified_register(spec: OracleSpec, iterations: int | None = None) -> np.ndarray:
    state = uniform_state(spec.n)
    schedule = grover_schedule(spec.n, spec.m, iterations)
    for _ in range(schedule.k):
        state = grover_iterate(state, spec)
    return state


def amplified_qft_state(spec: OracleSpec, iterations: int | None = None) -> np.ndarray:
    """k amplification rounds on the uniform state, then the transform."""
    return dft(_amplified_register(spec, iterations))


def _kicked_register(spec: OracleSpec) -> np.ndarray:
    # Single oracle application via phase kickback: amplitude (1-2)/sqrt(n)
    # on marked labels, 1/sqrt(n) elsewhere (the ancilla is dropped).
    state = np.where(marked_mask(spec), -1.0, 1.0) / math.sqrt(spec.n)
    return state.astype(complex)


def qft_state(spec: OracleSpec) -> np.ndarray:
    """Oracle phase kickback on the uniform state, then the transform."""
    _check_desk_scale(spec.n)
    return dft(_kicked_register(spec))


def qhs_state(spec: OracleSpec) -> np.ndarray:
    """Two-register pipeline: amplitudes as an (n, 2) array.

    Column b holds, for each frequency y, (1/n) * sum over labels x with
    oracle value b of omega**(x*y).
    """
    _check_desk_scale(spec.n)
    mask = marked_mask(spec)
    n = spec.n
    out = np.empty((n, 2), dtype=complex)
    out[:, 1] = np.fft.fft(mask.astype(float)) / n
    out[:, 0] = np.fft.fft((~mask).astype(float)) / n
    return out


def qhs_distribution(spec: OracleSpec) -> ProbabilityTable:
    """Measurement distribution of the first register: the squared norms of
    the two-register columns, summed per frequency."""
    state = qhs_state(spec)
    pr = np.abs(state[:, 0]) ** 2 + np.abs(state[:, 1]) ** 2
    return make_table(spec.n, pr, case_codes(spec.n, spec.m, spec.p), "simulated")


def _as_transform(transform) -> Callable[[np.ndarray], np.ndarray]:
    if callable(transform):
        return transform
    matrix = np.asarray(transform, dtype=complex)
    return lambda v: matrix @ v


def _spot_check_unitary(apply_u: Callable, n: int, tol: float = 1e-8) -> None:
    rng = np.random.default_rng(0x5EED)
    for _ in range(3):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v /= np.linalg.norm(v)
        if abs(np.linalg.norm(apply_u(v)) - 1.0) > tol:
            raise NotUnitary("transform does not preserve norm on probe vectors")


def general_unitary_state(
    spec: OracleSpec,
    transform,
    amplified: bool = True,
    iterations: int | None = None,
) -> np.ndarray:
    """Run either pipeline with the final transform replaced by ``transform``
    (an (n, n) matrix or a callable on state vectors)."""
    apply_u = _as_transform(transform)
    _spot_check_unitary(apply_u, spec.n)
    register = _amplified_register(spec, iterations) if amplified else _kicked_register(spec)
    return apply_u(register)


def simulated_table(
    spec: OracleSpec, algorithm: Algorithm, iterations: int | None = None
) -> ProbabilityTable:
    """Brute-force measurement distribution for one pipeline."""
    algorithm = Algorithm(algorithm)
    if algorithm is Algorithm.QHS:
        return qhs_distribution(spec)
    if algorithm is Algorithm.AMPLIFIED:
        state = amplified_qft_state(spec, iterations)
    else:
        state = qft_state(spec)
    pr = np.abs(state) ** 2
    return make_table(spec.n, pr, case_codes(spec.n, spec.m, spec.p), "simulated")


def sample(table: ProbabilityTable, seed) -> int:
    """One frequency drawn from the table; deterministic for a fixed seed."""
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(table.pr)
    return int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
