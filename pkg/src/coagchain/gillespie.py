"""Exact stochastic simulation of the chain, independent of the spectra.

Events are read off the columns of the very same local operators that
build the generator, so the simulator and the matrix machinery cannot
disagree about rates.  The sampler is the direct method: exponential
waiting time at the total rate, then a linear scan over per-bond event
tables.  Runs are reproducible: one PCG64 stream seeded by the caller,
with replica streams at seed_base + replica_index.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from itertools import accumulate

import numpy as np

from .model import ChainSpec


@dataclass
class LatticeState:
    """Occupancy bitmask (site 1 = most significant bit) and current time."""

    occupancy: int
    n_sites: int
    time: float = 0.0

    @classmethod
    def empty(cls, n_sites: int) -> "LatticeState":
        return cls(0, n_sites)

    @classmethod
    def full(cls, n_sites: int) -> "LatticeState":
        return cls((1 << n_sites) - 1, n_sites)

    @classmethod
    def from_bits(cls, bits) -> "LatticeState":
        occ = 0
        for b in bits:
            occ = (occ << 1) | (1 if b else 0)
        return cls(occ, len(bits))

    def bits(self) -> list[int]:
        return [(self.occupancy >> (self.n_sites - 1 - k)) & 1
                for k in range(self.n_sites)]


@dataclass(frozen=True)
class Event:
    bond: int          # 1-based bond index
    target_pair: int   # two-site configuration after the event
    rate: float
    new_occupancy: int


def _bond_tables(spec: ChainSpec):
    """For each bond: events[source_pair] = (targets, rates, cum, total)."""
    tables = []
    for k in range(1, spec.n_sites):
        m = spec.bond_operator(k).entries
        per_config = []
        for source in range(4):
            targets = [t for t in range(4) if t != source and m[t, source] > 0]
            rates = [float(m[t, source]) for t in targets]
            cum = list(accumulate(rates))
            total = cum[-1] if cum else 0.0
            per_config.append((targets, rates, cum, total))
        tables.append(per_config)
    return tables


def _pair_of(occ: int, bond: int, n: int) -> int:
    return (occ >> (n - 1 - bond)) & 3


def _apply_pair(occ: int, bond: int, n: int, pair: int) -> int:
    shift = n - 1 - bond
    return (occ & ~(3 << shift)) | (pair << shift)


def enabled_events(state: LatticeState, spec: ChainSpec) -> list[Event]:
    """Every transition enabled in the current configuration."""
    tables = _bond_tables(spec)
    n = state.n_sites
    events = []
    for k in range(1, n):
        pair = _pair_of(state.occupancy, k, n)
        targets, rates, _, _ = tables[k - 1][pair]
        for t, r in zip(targets, rates):
            events.append(Event(k, t, r,
                                _apply_pair(state.occupancy, k, n, t)))
    return events


@dataclass
class SimulationResult:
    config_weights: dict[int, float]  # time-weighted occupation per config
    site_occupation: np.ndarray       # time-weighted density per site
    total_time: float
    n_events: int
    absorbed: bool
    final_state: LatticeState
    seed: int

    def histogram(self) -> dict[int, float]:
        """Configuration weights normalized to a probability distribution."""
        if self.total_time <= 0:
            return {self.final_state.occupancy: 1.0}
        return {c: w / self.total_time for c, w in self.config_weights.items()}

    def density_profile(self) -> np.ndarray:
        if self.total_time <= 0:
            return np.asarray(self.final_state.bits(), dtype=float)
        return self.site_occupation / self.total_time


# track per-config weights only while the state space stays enumerable
_HISTOGRAM_MAX_SITES = 16


def run(spec: ChainSpec, initial: LatticeState, n_events: int,
        seed: int, t_max: float | None = None) -> SimulationResult:
    """Simulate up to ``n_events`` transitions (or ``t_max`` time units)."""
    rng = np.random.default_rng(seed)
    tables = _bond_tables(spec)
    n = spec.n_sites
    keep_hist = n <= _HISTOGRAM_MAX_SITES
    weights: dict[int, float] = {}
    site_occ = np.zeros(n)
    occ = initial.occupancy
    t = initial.time
    executed = 0
    absorbed = False

    def accumulate(config, dt):
        if keep_hist:
            weights[config] = weights.get(config, 0.0) + dt
        else:
            for k in range(n):
                if (config >> (n - 1 - k)) & 1:
                    site_occ[k] += dt

    bond_range = range(1, n)
    while executed < n_events:
        totals = [tables[k - 1][_pair_of(occ, k, n)][3] for k in bond_range]
        rate_sum = sum(totals)
        if rate_sum == 0.0:
            absorbed = True
            break
        dt = rng.exponential() / rate_sum
        if t_max is not None and t + dt > t_max:
            accumulate(occ, t_max - t)
            t = t_max
            break
        accumulate(occ, dt)
        t += dt
        u = rng.random() * rate_sum
        bond = 1
        while u > totals[bond - 1] and bond < n - 1:
            u -= totals[bond - 1]
            bond += 1
        targets, _, cum, _ = tables[bond - 1][_pair_of(occ, bond, n)]
        occ = _apply_pair(occ, bond, n, targets[bisect_right(cum, u)
                                                if u < cum[-1] else len(cum) - 1])
        executed += 1

    if keep_hist:
        for config, w in weights.items():
            for k in range(n):
                if (config >> (n - 1 - k)) & 1:
                    site_occ[k] += w
    return SimulationResult(weights, site_occ, t - initial.time, executed,
                            absorbed, LatticeState(occ, n, t), seed)


def run_replicas(spec: ChainSpec, initial: LatticeState, n_events: int,
                 seed_base: int, n_replicas: int) -> dict[int, float]:
    """Merged normalized histogram of independent replicas.

    Replica k runs on its own stream seeded with seed_base + k; merging
    sums time weights, so the result is order-independent.
    """
    weights: dict[int, float] = {}
    total = 0.0
    for k in range(n_replicas):
        result = run(spec, initial, n_events, seed=seed_base + k)
        for config, w in result.config_weights.items():
            weights[config] = weights.get(config, 0.0) + w
        total += result.total_time
    if total > 0:
        weights = {c: w / total for c, w in weights.items()}
    return weights


def total_variation(histogram: dict[int, float], exact: np.ndarray) -> float:
    """TV distance between an empirical histogram and an exact distribution."""
    dim = len(exact)
    emp = np.zeros(dim)
    for c, w in histogram.items():
        emp[c] = w
    return 0.5 * float(np.sum(np.abs(emp - exact)))
