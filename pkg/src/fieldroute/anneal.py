"""Simulated-annealing tour pre-planner.

Treats the permutation segment as one giant closed tour through the depot
and improves it under a geometric cooling schedule. Used to seed the genetic
population with low-cost visit orders before machine assignment.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .errors import NonPositiveTemperature
from .instance import DistanceMatrix

_MOVE_NAMES = ("swap", "reverse", "relocate")


@dataclass(frozen=True)
class AnnealParams:
    """Cooling schedule settings.

    With auto_scale on, instances beyond 500 tasks get a longer chain and
    faster cooling to bound runtime; off by default.
    """

    t_initial: float = 120.0
    t_final: float = 1.0
    chain_length: int = 100
    cooling_factor: float = 0.98
    auto_scale: bool = False

    def __post_init__(self):
        # t_initial == t_final is allowed and runs exactly one stage
        if not (self.t_initial >= self.t_final > 0):
            raise ValueError(
                f"need t_initial >= t_final > 0, got {self.t_initial}, {self.t_final}")
        if self.chain_length < 1:
            raise ValueError(f"chain_length must be >= 1, got {self.chain_length}")
        if not (0 < self.cooling_factor < 1):
            raise ValueError(f"cooling_factor must be in (0,1), got {self.cooling_factor}")

    def scaled_for(self, n: int) -> "AnnealParams":
        if self.auto_scale and n > 500:
            return replace(self, chain_length=max(100, n // 5), cooling_factor=0.95)
        return self

    def stage_count(self) -> int:
        """Number of temperature stages: T stays >= t_final under T <- a*T."""
        stages = 0
        temp = self.t_initial
        while temp >= self.t_final:
            stages += 1
            temp *= self.cooling_factor
        return stages


def _draw_move(n: int, rng: np.random.Generator) -> tuple[int, int, int]:
    """One move draw: (kind, x, z) with x != z, matching the kernel scheme."""
    kind = int(rng.integers(3))
    x = int(rng.integers(n))
    z = int(rng.integers(n - 1))
    if z >= x:
        z += 1
    return kind, x, z


def perturb_tour(order, rng: np.random.Generator) -> np.ndarray:
    """Apply one random move (swap / segment reversal / relocate) to a copy."""
    out = np.asarray(order, dtype=np.int64).copy()
    if out.size < 2:
        raise ValueError("need at least 2 elements to perturb")
    kind, x, z = _draw_move(out.size, rng)
    _kernels.apply_move(out, kind, x, z)
    return out


def metropolis_accept(delta: float, temperature: float, rng: np.random.Generator) -> bool:
    """Accept improving moves always, worsening ones with prob exp(-delta/T)."""
    if temperature <= 0:
        raise NonPositiveTemperature(f"temperature must be > 0, got {temperature}")
    if delta <= 0:
        return True
    exponent = -delta / temperature
    if exponent < -700.0:  # exp underflow; acceptance indistinguishable from 0
        return False
    return float(rng.random()) < math.exp(exponent)


def anneal_tour(order, matrix, params: AnnealParams, rng: np.random.Generator,
                return_trace: bool = False):
    """Improve a giant-tour permutation by simulated annealing.

    Runs stage after stage of `chain_length` random moves with Metropolis
    acceptance, cooling geometrically, and returns the best tour seen (never
    worse than the input). All randomness is pregenerated from `rng` so the
    compiled chain is a pure function of the draws.
    """
    d = matrix.entries if isinstance(matrix, DistanceMatrix) else np.asarray(matrix, dtype=np.float64)
    start = np.asarray(order, dtype=np.int64).copy()
    n = start.size
    params = params.scaled_for(n)
    stages = params.stage_count()
    total = stages * params.chain_length

    kinds = rng.integers(0, 3, size=total)
    xs = rng.integers(0, n, size=total)
    ys = rng.integers(0, n - 1, size=total)
    with np.errstate(divide="ignore"):  # u == 0 -> log -inf -> always accept
        log_us = np.log(rng.random(size=total))

    best, trace = _kernels.anneal_chain(
        start, d, params.t_initial, params.cooling_factor, stages,
        params.chain_length, kinds, xs, ys, log_us)
    if return_trace:
        return best, trace
    return best
