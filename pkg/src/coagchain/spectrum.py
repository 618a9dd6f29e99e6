"""Assembling the full generator spectrum from one-particle energies.

Every eigenvalue of the chain generator is the vacuum energy plus a sum
of one-particle energies over a subset of fixed parity (the zero mode is
discarded).  The parity and the vacuum energy are determined by the signs
of delta_i*(q_i - p_i) on the two segments; the spectral gap is the
largest strictly nonzero eigenvalue, which by negativity of the energies
is realized with the minimal number of excitations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ChainValidationError, ConsistencyError, SizeLimitError
from .model import ChainSpec, RateTriple
from .oneparticle import OneParticleSpectrum
from .spins import junction_coefficients

MAX_ASSEMBLY_SITES = 20
_GAP_ZERO_TOL = 1e-10


def _segment_products(spec: ChainSpec) -> tuple[float, float]:
    d1 = spec.seg1.delta * (spec.seg1.q - spec.seg1.p)
    d2 = spec.seg2.delta * (spec.seg2.q - spec.seg2.p)
    return d1, d2


def vacuum_energy_closed_form(spec: ChainSpec) -> float:
    """Case analysis on the segment products delta_i*(q_i - p_i)."""
    d1, d2 = _segment_products(spec)
    if d1 < d2:
        raise ChainValidationError(
            f"delta1*(q1-p1)={d1:.6g} < delta2*(q2-p2)={d2:.6g}: "
            f"invalid chain orientation")
    if d2 > 0:
        return d2 / 2.0
    if d1 >= 0:
        return 0.0
    return -d1 / 2.0


def vacuum_energy(spec: ChainSpec, spectrum: OneParticleSpectrum,
                  tol: float = 1e-6) -> float:
    """Vacuum energy from the energy sum, checked against the closed form.

    The sum route uses all one-particle energies and the constant part of
    the fermionic normal form; disagreement with the closed form signals
    wrong secular roots and raises.
    """
    coj = junction_coefficients(spec.seg1, spec.seg2, spec.junction)
    omega_sum = (-0.5 * float(np.sum(spectrum.all_values()))
                 + (spec.L1 - 1) * spec.seg1.f
                 + (spec.L2 - 1) * spec.seg2.f
                 + coj.psi)
    omega_closed = vacuum_energy_closed_form(spec)
    if abs(omega_sum - omega_closed) > tol:
        raise ConsistencyError(
            f"vacuum energy mismatch: sum formula {omega_sum!r} vs closed "
            f"form {omega_closed!r}")
    return omega_sum


def parity(spec: ChainSpec) -> str:
    """Which excitation-number parity reproduces the generator spectrum."""
    d1, d2 = _segment_products(spec)
    if d1 < d2:
        raise ChainValidationError(
            f"delta1*(q1-p1)={d1:.6g} < delta2*(q2-p2)={d2:.6g}: "
            f"invalid chain orientation")
    if d1 >= d2 > 0 or 0 > d1 >= d2:
        return "odd"
    # includes the boundary ties d1 = 0 and/or d2 = 0
    return "even"


def assemble_full_spectrum(spectrum: OneParticleSpectrum, omega: float,
                           par: str, n_sites: int) -> np.ndarray:
    """All 2^N generator eigenvalues, sorted descending."""
    if n_sites > MAX_ASSEMBLY_SITES:
        raise SizeLimitError(
            f"full-spectrum assembly capped at N={MAX_ASSEMBLY_SITES}, "
            f"got {n_sites}")
    values, _ = spectrum.excitations()
    if len(values) != n_sites + 1:
        raise ConsistencyError(
            f"expected {n_sites + 1} excitation energies, got {len(values)}")
    even_sums = np.zeros(1)
    odd_sums = np.zeros(0)
    for lam in values:
        even_sums, odd_sums = (np.concatenate((even_sums, odd_sums + lam)),
                               np.concatenate((odd_sums, even_sums + lam)))
    sums = odd_sums if par == "odd" else even_sums
    return np.sort(sums + omega)[::-1]


@dataclass(frozen=True)
class GapResult:
    gap: float
    labels: tuple[str, ...]
    energies: tuple[float, ...] = field(default=())


def spectral_gap(spectrum: OneParticleSpectrum, omega: float,
                 par: str) -> GapResult:
    """Largest strictly nonzero eigenvalue and the excitations forming it.

    Since all one-particle energies are nonpositive, the optimum uses the
    minimal admissible excitation count: one energy in the odd sector, a
    pair in the even sector (the empty even configuration is the
    stationary value).  Candidates indistinguishable from zero are the
    stationary states and are excluded.
    """
    values, labels = spectrum.excitations()
    scale = max(1.0, float(np.max(np.abs(values))) if len(values) else 1.0)
    zero_tol = _GAP_ZERO_TOL * scale

    candidates: list[tuple[float, tuple[str, ...], tuple[float, ...]]] = []
    if par == "odd":
        for lam, lab in zip(values, labels):
            candidates.append((omega + lam, (lab,), (lam,)))
    else:
        for i in range(len(values)):
            for k in range(i + 1, len(values)):
                candidates.append((omega + values[i] + values[k],
                                   (labels[i], labels[k]),
                                   (values[i], values[k])))
    nonzero = [c for c in candidates if abs(c[0]) > zero_tol]
    if not nonzero:
        raise ConsistencyError(
            "all minimal-excitation eigenvalues vanish; spectrum is "
            "degenerate at this parameter point")
    gap, labs, ens = max(nonzero, key=lambda c: c[0])
    return GapResult(float(gap), labs, tuple(float(e) for e in ens))


def homogeneous_gap(rates: RateTriple) -> float:
    """Thermodynamic-limit gap of the homogeneous chain (closed form)."""
    p, q, c2 = rates.p, rates.q, rates.cos_2theta
    if p > q:
        return -p / c2 ** 2 * (math.sqrt(q / p) - c2) ** 2
    return -q / c2 ** 2 * (math.sqrt(p / q) - c2) ** 2


def critical_theta(p: float, q: float) -> float:
    """Angle where the homogeneous gap closes: sqrt(min/max ratio)=cos(2*theta)."""
    if p == q or p <= 0 or q <= 0:
        raise ChainValidationError(
            "gap closing requires distinct positive rates")
    ratio = math.sqrt(min(p, q) / max(p, q))
    return 0.5 * math.acos(ratio)


def finite_homogeneous_gap(rates: RateTriple, L: int) -> float:
    """Finite-chain gap of the homogeneous model via its closed-form energies."""
    from .oneparticle import homogeneous_energies
    spectrum = homogeneous_energies(rates, L)
    omega = abs(rates.p - rates.q) * rates.delta / 2.0
    d = rates.delta * (rates.q - rates.p)
    par = "odd" if d != 0 else "even"
    return spectral_gap(spectrum, omega, par).gap
