"""One-particle energies and eigenmodes of the free-fermion reduction.

The 2^N-dimensional generator collapses onto a one-particle problem of
size 2*(N+2): a block-tridiagonal real matrix whose eigenvalues come in
+/- pairs.  Its nonpositive eigenvalues are, in closed form,

* a trivial zero mode,
* two boundary energies -|p_i - q_i| * delta_i / 2, one per segment,
* N-1 roots of a secular polynomial built from Chebyshev U factors of the
  two segments coupled through the junction rates.

Root finding follows a bracketing strategy on the exactly-signed scaled
secular function, with the dense block matrix as a guaranteed fallback
route.  The eigenvector constructors mirror the analytic ansatz: plane
waves (or their hyperbolic continuations, reached automatically through a
complex branch base) in each segment, tied together at the junction.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .chebyshev import ScaledValue, chebyshev_u_pair_scaled
from .errors import (AnalyticPathError, ChainValidationError,
                     DegenerateModeError, RootCountError)
from .model import ChainSpec, RateTriple
from .spins import BulkCoefficients, JunctionCoefficients, bulk_coefficients, \
    junction_coefficients

ROOT_ABS_TOL = 1e-12
GRID_FACTOR = 64
GRID_DOUBLINGS = 3


@dataclass(frozen=True)
class OneParticleSpectrum:
    """All nonpositive one-particle energies of a chain, with provenance."""

    lambda_zero: float
    lambda_edge_1: float
    lambda_edge_2: float
    bulk_roots: np.ndarray  # sorted descending, length N-1
    route: str              # secular | matrix | closed-form

    def __post_init__(self):
        roots = np.sort(np.asarray(self.bulk_roots, dtype=float))[::-1].copy()
        roots.flags.writeable = False
        object.__setattr__(self, "bulk_roots", roots)

    @property
    def count(self) -> int:
        return 3 + len(self.bulk_roots)

    def all_values(self) -> np.ndarray:
        """Every energy including the zero mode, sorted descending."""
        return np.sort(np.concatenate((
            [self.lambda_zero, self.lambda_edge_1, self.lambda_edge_2],
            self.bulk_roots)))[::-1]

    def excitations(self) -> tuple[np.ndarray, list[str]]:
        """Energies entering the spectrum assembly (zero mode discarded)."""
        values = np.concatenate(([self.lambda_edge_1, self.lambda_edge_2],
                                 self.bulk_roots))
        labels = ["edge1", "edge2"] + [f"bulk{i+1}"
                                       for i in range(len(self.bulk_roots))]
        return values, labels


def edge_energies(spec: ChainSpec) -> tuple[float, float]:
    e1 = -abs(spec.seg1.p - spec.seg1.q) * spec.seg1.delta / 2.0
    e2 = -abs(spec.seg2.p - spec.seg2.q) * spec.seg2.delta / 2.0
    return e1, e2


def homogeneous_energies(rates: RateTriple, L: int) -> OneParticleSpectrum:
    """Closed-form one-particle energies of a homogeneous chain of L sites."""
    if L < 2:
        raise ChainValidationError(f"need at least 2 sites, got L={L}")
    if rates.p <= 0 or rates.q <= 0:
        raise AnalyticPathError(
            "closed-form energies need p, q > 0; diagonalize the full "
            "generator instead")
    k = np.arange(1, L)
    roots = 2 * rates.mu * np.cos(np.pi * k / L) + 2 * rates.f
    edge = -abs(rates.p - rates.q) * rates.delta / 2.0
    return OneParticleSpectrum(0.0, edge, edge, roots, route="closed-form")


# ---------------------------------------------------------------------------
# Secular equation
# ---------------------------------------------------------------------------

def _secular_scaled(spec: ChainSpec, lam: np.ndarray):
    """Mantissas and exponents of the secular function on an array of lam."""
    lam = np.asarray(lam, dtype=float)
    s1, s2, j = spec.seg1, spec.seg2, spec.junction
    if s1.p * s1.q <= 0 or s2.p * s2.q <= 0:
        raise AnalyticPathError(
            "secular equation needs p, q > 0 in both segments")
    x1 = (lam - 2 * s1.f) / (2 * s1.mu)
    x2 = (lam - 2 * s2.f) / (2 * s2.mu)
    u1, u1m, e1 = chebyshev_u_pair_scaled(spec.L1 - 1, x1)
    u2, u2m, e2 = chebyshev_u_pair_scaled(spec.L2 - 1, x2)
    if spec.L1 == 1:
        u1m = np.zeros_like(u1)
    if spec.L2 == 1:
        u2m = np.zeros_like(u2)
    coef = lam + j.Q_bar + j.p_bar + j.q_bar
    mant = (coef * u1 * u2
            - s1.mu * j.p_bar / s1.p * u1m * u2
            - s2.mu * j.q_bar / s2.q * u1 * u2m)
    return mant, e1 + e2


def secular_function(spec: ChainSpec, lam: float) -> ScaledValue:
    """Secular function at one energy, in exact-sign scaled form."""
    mant, exp2 = _secular_scaled(spec, np.asarray([float(lam)]))
    return ScaledValue(float(mant[0]), int(exp2[0]))


def _bisect_brackets(spec: ChainSpec, lo: np.ndarray, hi: np.ndarray,
                     sign_lo: np.ndarray) -> np.ndarray:
    """Vectorized sign bisection of every bracket down to ROOT_ABS_TOL."""
    lo = lo.copy()
    hi = hi.copy()
    max_iter = int(np.ceil(np.log2(max(np.max(hi - lo), ROOT_ABS_TOL)
                                   / ROOT_ABS_TOL))) + 2
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        mant, _ = _secular_scaled(spec, mid)
        s = np.sign(mant)
        go_right = s == sign_lo
        lo = np.where(go_right, mid, lo)
        hi = np.where(go_right, hi, mid)
        if np.max(hi - lo) < ROOT_ABS_TOL:
            break
    return 0.5 * (lo + hi)


def _log2_abs(mant: np.ndarray, exp2: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log2(np.abs(mant)) + exp2


def _grid_roots(spec: ChainSpec, grid: np.ndarray):
    """Roots bracketed by sign changes on a grid, plus the |g| landscape."""
    mant, exp2 = _secular_scaled(spec, grid)
    signs = np.sign(mant)
    exact = np.nonzero(signs == 0)[0]
    flips = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    found = _bisect_brackets(spec, grid[flips], grid[flips + 1],
                             signs[flips]) if len(flips) else np.empty(0)
    roots = np.sort(np.concatenate((found, grid[exact])))
    return roots, flips, _log2_abs(mant, exp2)


def _zoom_dip(spec: ChainSpec, lo: float, hi: float) -> list[float]:
    """Resolve a |g| dip without sign change: a tight root pair or tangency.

    Root pairs near band edges approach each other exponentially fast in
    the chain length, far below any affordable uniform grid resolution.
    Zooming on the local minimum either exposes the two sign changes or
    bottoms out at a double root, reported twice.
    """
    for _ in range(60):
        xs = np.linspace(lo, hi, 65)
        mant, exp2 = _secular_scaled(spec, xs)
        signs = np.sign(mant)
        exact = xs[np.nonzero(signs == 0)[0]]
        flips = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
        if len(flips) + len(exact) >= 1:
            roots = _bisect_brackets(spec, xs[flips], xs[flips + 1],
                                     signs[flips]) if len(flips) else np.empty(0)
            return sorted(np.concatenate((roots, exact)).tolist())
        j = int(np.argmin(_log2_abs(mant, exp2)))
        lo = xs[max(j - 1, 0)]
        hi = xs[min(j + 1, len(xs) - 1)]
        if hi - lo < 1e-13 * max(1.0, abs(lo)):
            mid = 0.5 * (lo + hi)
            return [mid, mid]  # tangency: double root
    return []


def solve_secular(spec: ChainSpec) -> np.ndarray:
    """All N-1 secular roots, bracketed and bisected to 1e-12 absolute.

    Samples a uniform grid over [lam_lo - margin, 0] and bisects every
    sign change.  When the count falls short (root pairs tighter than the
    grid), dips of |g| without a sign change are zoomed individually;
    remaining shortfalls densify the grid up to three times before a
    RootCountError hands control to the caller's fallback.
    """
    n = spec.n_sites
    expected = n - 1
    s1, s2 = spec.seg1, spec.seg2
    band_floor = min(2 * s1.f - 2 * s1.mu, 2 * s2.f - 2 * s2.mu)
    # junction bound states can sit below the bands; every eigenvalue of
    # the block matrix obeys the row-sum bound, so start the grid there
    row_bound = float(np.max(np.sum(np.abs(build_script_matrix(spec)),
                                    axis=1)))
    lo_edge = min(band_floor - 0.1 * abs(band_floor), -row_bound)
    points = GRID_FACTOR * n
    found = np.empty(0)
    for _ in range(GRID_DOUBLINGS + 1):
        grid = np.linspace(lo_edge, 0.0, points)
        found, flips, log_mag = _grid_roots(spec, grid)
        if len(found) < expected:
            # dip candidates: interior |g| minima not adjacent to a bracket
            interior = np.arange(1, len(grid) - 1)
            is_min = ((log_mag[interior] < log_mag[interior - 1])
                      & (log_mag[interior] < log_mag[interior + 1]))
            near_flip = np.zeros(len(grid), dtype=bool)
            near_flip[flips] = True
            near_flip[flips + 1] = True
            dips = interior[is_min & ~near_flip[interior]]
            # deepest dips first; each can hide at most one tight pair
            dips = dips[np.argsort(log_mag[dips])][:max(8, 2 * expected
                                                        - 2 * len(found))]
            extra: list[float] = []
            for j in dips:
                if len(found) + len(extra) >= expected:
                    break
                extra.extend(_zoom_dip(spec, grid[j - 1], grid[j + 1]))
            if extra:
                found = np.sort(np.concatenate((found, extra)))
        if len(found) == expected:
            break
        points *= 2
    if len(found) != expected:
        raise RootCountError(
            f"found {len(found)} secular roots, expected {expected} "
            f"(densest grid {points // 2} points)",
            roots_found=found, grid_points=points // 2)
    if np.max(found) > 1e-10:
        raise RootCountError(
            f"positive secular root {np.max(found)!r}; spectrum would not "
            f"be a generator's", roots_found=found, grid_points=points)
    return found[::-1]


# ---------------------------------------------------------------------------
# Block one-particle matrix
# ---------------------------------------------------------------------------

def _t_block(t: float) -> np.ndarray:
    return np.array([[-t, -t], [t, t]])


def _hop_blocks(a, b, c, d):
    right = np.array([[-a, -c], [d, b]])
    left = np.array([[-b, c], [-d, a]])
    return right, left


def _assemble_blocks(n_sites: int, bonds, t1: float, t2: float) -> np.ndarray:
    """Generic block assembly; bonds is a list of (a,b,c,d,h,h_bar)."""
    dim = 2 * (n_sites + 2)
    m = np.zeros((dim, dim))

    def blk(i, j):
        return np.s_[2 * i:2 * i + 2, 2 * j:2 * j + 2]

    for k, (a, b, c, d, h, h_bar) in enumerate(bonds, start=1):
        m[blk(k, k)] += 2 * np.diag([h, -h])
        m[blk(k + 1, k + 1)] += 2 * np.diag([h_bar, -h_bar])
        right, left = _hop_blocks(a, b, c, d)
        m[blk(k, k + 1)] += right
        m[blk(k + 1, k)] += left
    tb1, tb2 = _t_block(t1), _t_block(t2)
    m[blk(0, 1)] += tb1
    m[blk(1, 0)] += tb1.T
    m[blk(n_sites, n_sites + 1)] += -tb2
    m[blk(n_sites + 1, n_sites)] += -tb2.T
    return m


def _bond_tuple(co: BulkCoefficients):
    return (co.a, co.b, co.c, co.d, co.h, co.h_bar)


def _junction_tuple(co: JunctionCoefficients):
    return (co.alpha, co.beta, co.gamma, co.delta_c, co.eta, co.eta_bar)


def build_script_matrix(spec: ChainSpec) -> np.ndarray:
    """Block-tridiagonal one-particle matrix of the extended chain.

    Sites 0 .. N+1 each carry a (+, -) component pair; the two extra sites
    absorb the boundary terms of the spin decomposition, and the junction
    bond contributes its own coefficient blocks.
    """
    co1 = bulk_coefficients(spec.seg1)
    co2 = bulk_coefficients(spec.seg2)
    coj = junction_coefficients(spec.seg1, spec.seg2, spec.junction)
    bonds = ([_bond_tuple(co1)] * (spec.L1 - 1)
             + [_junction_tuple(coj)]
             + [_bond_tuple(co2)] * (spec.L2 - 1))
    return _assemble_blocks(spec.n_sites, bonds, co1.t, co2.t)


def build_homogeneous_script_matrix(rates: RateTriple, L: int) -> np.ndarray:
    co = bulk_coefficients(rates)
    return _assemble_blocks(L, [_bond_tuple(co)] * (L - 1), co.t, co.t)


def script_matrix_negative_spectrum(spec: ChainSpec,
                                    imag_tol: float = 1e-8) -> np.ndarray:
    """Nonpositive half of the block-matrix spectrum (N+2 values, desc)."""
    m = build_script_matrix(spec)
    ev = np.linalg.eigvals(m)
    if np.max(np.abs(ev.imag)) > imag_tol * max(1.0, np.max(np.abs(ev.real))):
        raise AnalyticPathError(
            f"block matrix produced complex eigenvalues "
            f"(max imag {np.max(np.abs(ev.imag)):.3e})")
    re = np.sort(ev.real)
    return re[:spec.n_sites + 2][::-1]


def _bulk_roots_from_matrix(spec: ChainSpec) -> np.ndarray:
    """Extract the N-1 bulk roots from the block-matrix spectrum."""
    neg = list(script_matrix_negative_spectrum(spec))
    # remove the zero mode, then one copy of each boundary energy
    for target in (0.0, *edge_energies(spec)):
        neg.pop(int(np.argmin([abs(v - target) for v in neg])))
    return np.sort(np.asarray(neg))[::-1]


def one_particle_spectrum(spec: ChainSpec,
                          method: str = "auto") -> OneParticleSpectrum:
    """Complete one-particle spectrum: zero mode, two edges, N-1 roots.

    ``method`` is ``"secular"`` (bracketing only), ``"matrix"`` (dense
    block-matrix eigenvalues), or ``"auto"`` (secular with matrix
    fallback).  The route actually taken is recorded on the result.
    """
    e1, e2 = edge_energies(spec)
    if method not in ("auto", "secular", "matrix"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("auto", "secular"):
        try:
            roots = solve_secular(spec)
            return OneParticleSpectrum(0.0, e1, e2, roots, route="secular")
        except RootCountError:
            if method == "secular":
                raise
        except AnalyticPathError:
            if method == "secular":
                raise
    roots = _bulk_roots_from_matrix(spec)
    return OneParticleSpectrum(0.0, e1, e2, roots, route="matrix")


def pairing_residual(spec: ChainSpec) -> float:
    """How far the block-matrix spectrum is from exact +/- symmetry."""
    ev = np.sort(np.linalg.eigvals(build_script_matrix(spec)).real)
    return float(np.max(np.abs(ev + ev[::-1])))


# ---------------------------------------------------------------------------
# Bethe-equation residuals (sin form), used as a consistency invariant
# ---------------------------------------------------------------------------

def bethe_residuals(spec: ChainSpec, lam: float) -> tuple[float, float]:
    """Residuals of the two junction quantization equations at ``lam``.

    Both vanish simultaneously at a true root; physically the first
    equation implies the second through the shared dispersion relation.
    Residuals are normalized by the largest term magnitude.
    """
    s1, s2, j = spec.seg1, spec.seg2, spec.junction
    K = j.Q_bar + j.p_bar + j.q_bar
    z1 = cmath.acos(complex((lam - 2 * s1.f) / (2 * s1.mu)))
    z2 = cmath.acos(complex((lam - 2 * s2.f) / (2 * s2.mu)))
    L1, L2 = spec.L1, spec.L2

    def norm_resid(terms):
        total = sum(terms)
        scale = max(abs(t) for t in terms)
        return abs(total) / scale if scale > 0 else abs(total)

    r1 = norm_resid([
        (2 * s1.f + K) * cmath.sin(L1 * z1) * cmath.sin(L2 * z2),
        -s1.mu * (j.p_bar / s1.p - 1) * cmath.sin((L1 - 1) * z1) * cmath.sin(L2 * z2),
        -s2.mu * j.q_bar / s2.q * cmath.sin(L1 * z1) * cmath.sin((L2 - 1) * z2),
        s1.mu * cmath.sin((L1 + 1) * z1) * cmath.sin(L2 * z2),
    ])
    r2 = norm_resid([
        (2 * s2.f + K) * cmath.sin(L1 * z1) * cmath.sin(L2 * z2),
        -s2.mu * (j.q_bar / s2.q - 1) * cmath.sin(L1 * z1) * cmath.sin((L2 - 1) * z2),
        -s1.mu * j.p_bar / s1.p * cmath.sin((L1 - 1) * z1) * cmath.sin(L2 * z2),
        s2.mu * cmath.sin(L1 * z1) * cmath.sin((L2 + 1) * z2),
    ])
    return r1, r2


# ---------------------------------------------------------------------------
# Eigenvector ansatze
# ---------------------------------------------------------------------------

class DegenerateModeWarning(UserWarning):
    pass


@dataclass(frozen=True)
class ModeVector:
    """One eigenvector of the block matrix in component-pair layout."""

    kind: str                 # trivial-zero | bulk | left-edge | right-edge | ...
    lam: float
    components: np.ndarray    # shape (N+2, 2), complex
    residual: float
    aux: dict = field(default_factory=dict)

    def flat(self) -> np.ndarray:
        return self.components.reshape(-1)


def _mode_residual(matrix: np.ndarray, phi: np.ndarray, lam: float) -> float:
    scale = float(np.max(np.abs(phi)))
    return float(np.max(np.abs(matrix @ phi - lam * phi))) / scale


def _finish_mode(matrix, kind, lam, comp, t1, t2, n, aux):
    """Fill the extended-site components, normalize, measure the residual.

    The first and last block rows of the eigenproblem force the extended
    components exactly, so they are derived rather than posited.
    """
    if abs(lam) < 1e-300:
        raise DegenerateModeError(f"{kind}: zero eigenvalue, components at "
                                  "the extended sites are undetermined")
    comp[0] = _t_block(t1) @ comp[1] / lam
    comp[n + 1] = -_t_block(t2).T @ comp[n] / lam
    scale = np.max(np.abs(comp))
    if scale < 1e-250:
        raise DegenerateModeError(f"{kind}: ansatz collapsed to zero")
    comp = comp / scale
    phi = comp.reshape(-1)
    if np.max(np.abs(phi.imag)) < 1e-30:
        phi = phi.real
        comp = comp.real
    resid = _mode_residual(matrix, phi, lam)
    return ModeVector(kind, lam, comp, resid, aux)


def trivial_zero_modes(spec: ChainSpec) -> list[ModeVector]:
    """The two exact zero modes, supported on the extended boundary sites."""
    matrix = build_script_matrix(spec)
    n = spec.n_sites
    out = []
    for sign in (+1.0, -1.0):
        comp = np.zeros((n + 2, 2))
        comp[0] = [0.5, 0.5]
        comp[n + 1] = [0.5 * sign, -0.5 * sign]
        phi = comp.reshape(-1)
        resid = float(np.max(np.abs(matrix @ phi)))
        out.append(ModeVector("trivial-zero", 0.0, comp, resid,
                              {"sign": sign}))
    return out


def _branch_base(rates: RateTriple, lam: float) -> tuple[complex, complex]:
    """Both solutions x of the segment dispersion at energy lam.

    Real roots describe junction/edge-localized (hyperbolic) profiles,
    complex-conjugate roots the oscillatory band regime.  The two roots
    multiply to p/q; returns (smaller-|x|, larger-|x|).
    """
    a, b, c = rates.q, -(lam - 2 * rates.f) * rates.cos_2theta, rates.p
    disc = cmath.sqrt(complex(b * b - 4 * a * c))
    xs = sorted([(-b + disc) / (2 * a), (-b - disc) / (2 * a)], key=abs)
    return xs[0], xs[1]


def _pair_vec(x: complex) -> np.ndarray:
    return np.array([1 + x, 1 - x], dtype=complex)


def _branch_diff(x: complex, xp: complex, exponent: int) -> np.ndarray:
    return x ** exponent * _pair_vec(x) - xp ** exponent * _pair_vec(xp)


class _JunctionRows:
    """The two block rows of the eigenproblem at the junction sites."""

    def __init__(self, spec: ChainSpec):
        co1 = bulk_coefficients(spec.seg1)
        co2 = bulk_coefficients(spec.seg2)
        coj = junction_coefficients(spec.seg1, spec.seg2, spec.junction)
        right1, left1 = _hop_blocks(co1.a, co1.b, co1.c, co1.d)
        right2, left2 = _hop_blocks(co2.a, co2.b, co2.c, co2.d)
        rightj, leftj = _hop_blocks(coj.alpha, coj.beta, coj.gamma, coj.delta_c)
        self.J1 = left1
        self.I2 = right2
        self.A = rightj
        self.B = leftj
        # site L1 diagonal: junction left coefficient, plus the right-site
        # coefficient of the last segment-1 bond when that bond exists
        self.NH = 2 * np.diag([coj.eta, -coj.eta])
        if spec.L1 > 1:
            self.NH = self.NH + 2 * np.diag([co1.h_bar, -co1.h_bar])
        self.HN = 2 * np.diag([coj.eta_bar, -coj.eta_bar])
        if spec.L2 > 1:
            self.HN = self.HN + 2 * np.diag([co2.h, -co2.h])


def bulk_mode(spec: ChainSpec, lam: float) -> ModeVector:
    """Eigenvector for one secular root, glued across the junction.

    The segment weights are the closed-form transmission pair; when both
    vanish (segment standing waves resonate exactly through the junction,
    as in the homogeneous reduction) they are recovered as the null vector
    of the junction rows instead.
    """
    if spec.L1 < 2 or spec.L2 < 2:
        raise DegenerateModeError("bulk-mode ansatz needs both segments >= 2 sites")
    s1, s2 = spec.seg1, spec.seg2
    n = spec.n_sites
    x1, x1_alt = _branch_base(s1, lam)
    x2, x2_alt = _branch_base(s2, lam)
    for x, rates in ((x1, s1), (x2, s2)):
        if abs(x * x - rates.p / rates.q) < 1e-12 * max(1.0, rates.p / rates.q):
            raise DegenerateModeError(
                f"branch base degenerate at band edge (x^2 = p/q), lam={lam}")
    x1p = s1.p / (s1.q * x1)
    x2p = s2.p / (s2.q * x2)

    weight1 = x2 ** (-spec.L2) - (s2.q * x2 / s2.p) ** spec.L2
    weight2 = x1 ** spec.L1 - (s1.p / (s1.q * x1)) ** spec.L1
    scale1 = abs(x2) ** (-spec.L2) + abs(s2.q * x2 / s2.p) ** spec.L2
    scale2 = abs(x1) ** spec.L1 + abs(s1.p / (s1.q * x1)) ** spec.L1
    resonant = (abs(weight1) < 1e-8 * scale1 and abs(weight2) < 1e-8 * scale2)

    def seg1_vec(ell):
        return _branch_diff(x1, x1p, ell - 1)

    def seg2_vec(ell):
        return _branch_diff(x2, x2p, ell - n - 1)

    if resonant:
        rows = _JunctionRows(spec)
        mat = np.zeros((4, 2), dtype=complex)
        mat[0:2, 0] = rows.J1 @ seg1_vec(spec.L1 - 1) \
            + rows.NH @ seg1_vec(spec.L1) - lam * seg1_vec(spec.L1)
        mat[0:2, 1] = rows.A @ seg2_vec(spec.L1 + 1)
        mat[2:4, 0] = rows.B @ seg1_vec(spec.L1)
        mat[2:4, 1] = rows.HN @ seg2_vec(spec.L1 + 1) \
            + rows.I2 @ seg2_vec(spec.L1 + 2) - lam * seg2_vec(spec.L1 + 1)
        _, _, vh = np.linalg.svd(mat)
        weight1, weight2 = vh[-1].conj()

    comp = np.zeros((n + 2, 2), dtype=complex)
    for ell in range(1, spec.L1 + 1):
        comp[ell] = weight1 * seg1_vec(ell)
    for ell in range(spec.L1 + 1, n + 1):
        comp[ell] = weight2 * seg2_vec(ell)
    transmission = weight1 / weight2 if abs(weight2) > 0 else math.inf
    co1 = bulk_coefficients(s1)
    co2 = bulk_coefficients(s2)
    return _finish_mode(build_script_matrix(spec), "bulk", lam, comp,
                        co1.t, co2.t, n,
                        {"x1": x1, "x2": x2, "v": transmission,
                         "resonant": resonant})


def _solve_junction_weights(spec: ChainSpec, lam: float, fixed_side: str,
                            x_free: complex, xp_free: complex,
                            x_fixed: complex, xp_fixed: complex):
    """Weights of the two free branches from the junction block rows.

    ``fixed_side`` names the segment whose part of the eigenvector is the
    plain branch difference with unit weight; the other segment carries
    two independent branch weights, fixed here by least squares on the
    four junction equations (they are consistent at a true eigenvalue;
    the final residual check guards against abuse).
    """
    rows = _JunctionRows(spec)
    n = spec.n_sites
    L1 = spec.L1

    if fixed_side == "right":
        def fixed_vec(ell):
            return _branch_diff(x_fixed, xp_fixed, ell - n - 1)

        def free_pair(ell):
            e = ell - 1
            return (x_free ** e * _pair_vec(x_free),
                    -xp_free ** e * _pair_vec(xp_free))

        a_m1, b_m1 = free_pair(L1 - 1)
        a_0, b_0 = free_pair(L1)
        mat = np.zeros((4, 2), dtype=complex)
        rhs = np.zeros(4, dtype=complex)
        mat[0:2, 0] = rows.J1 @ a_m1 + rows.NH @ a_0 - lam * a_0
        mat[0:2, 1] = rows.J1 @ b_m1 + rows.NH @ b_0 - lam * b_0
        rhs[0:2] = -(rows.A @ fixed_vec(L1 + 1))
        mat[2:4, 0] = rows.B @ a_0
        mat[2:4, 1] = rows.B @ b_0
        rhs[2:4] = -(rows.HN @ fixed_vec(L1 + 1)
                     + rows.I2 @ fixed_vec(L1 + 2) - lam * fixed_vec(L1 + 1))
    else:
        def fixed_vec(ell):
            return _branch_diff(x_fixed, xp_fixed, ell - 1)

        def free_pair(ell):
            e = ell - n - 1
            return (x_free ** e * _pair_vec(x_free),
                    -xp_free ** e * _pair_vec(xp_free))

        a_1, b_1 = free_pair(L1 + 1)
        a_2, b_2 = free_pair(L1 + 2)
        mat = np.zeros((4, 2), dtype=complex)
        rhs = np.zeros(4, dtype=complex)
        mat[0:2, 0] = rows.A @ a_1
        mat[0:2, 1] = rows.A @ b_1
        rhs[0:2] = -(rows.J1 @ fixed_vec(L1 - 1) + rows.NH @ fixed_vec(L1)
                     - lam * fixed_vec(L1))
        mat[2:4, 0] = rows.HN @ a_1 + rows.I2 @ a_2 - lam * a_1
        mat[2:4, 1] = rows.HN @ b_1 + rows.I2 @ b_2 - lam * b_1
        rhs[2:4] = -(rows.B @ fixed_vec(L1))
    weights, *_ = np.linalg.lstsq(mat, rhs, rcond=None)
    return weights


def edge_modes(spec: ChainSpec) -> list[ModeVector]:
    """Up to four junction/boundary-localized modes, both energy signs.

    The left family pins the branch base in segment 1 to one of its two
    closed-form values (energies +/-(q1-p1)*delta1/2) and lets segment 1
    carry two branch weights; the right family mirrors this for segment 2.
    Weights come from the junction block rows; each mode is validated by
    its residual.  Degenerate cases (zero edge energy merging with the
    zero modes, or a branch collapse) are skipped with a warning.
    """
    if spec.L1 < 2 or spec.L2 < 2:
        raise DegenerateModeError("edge-mode ansatz needs both segments >= 2 sites")
    s1, s2 = spec.seg1, spec.seg2
    matrix = build_script_matrix(spec)
    co1 = bulk_coefficients(s1)
    co2 = bulk_coefficients(s2)
    n = spec.n_sites
    out = []

    cases = [
        ("left-edge", s1.p / s1.q * s1.cos_2theta, (s1.q - s1.p) / 2 * s1.delta),
        ("left-edge", s1.cos_2theta, -(s1.q - s1.p) / 2 * s1.delta),
        ("right-edge", s2.p / s2.q * s2.cos_2theta, (s2.q - s2.p) / 2 * s2.delta),
        ("right-edge", s2.cos_2theta, -(s2.q - s2.p) / 2 * s2.delta),
    ]
    for kind, x_pinned, lam in cases:
        if abs(lam) < 1e-14:
            warnings.warn(
                f"{kind} energy vanishes (p=q or delta=0); mode merges with "
                f"the zero modes", DegenerateModeWarning)
            continue
        try:
            if kind == "left-edge":
                x1 = complex(x_pinned)
                x1p = s1.p / (s1.q * x1)
                x2, _ = _branch_base(s2, lam)
                x2p = s2.p / (s2.q * x2)
                w = _solve_junction_weights(spec, lam, "right", x1, x1p, x2, x2p)
                comp = np.zeros((n + 2, 2), dtype=complex)
                for ell in range(1, spec.L1 + 1):
                    comp[ell] = (w[0] * x1 ** (ell - 1) * _pair_vec(x1)
                                 - w[1] * x1p ** (ell - 1) * _pair_vec(x1p))
                for ell in range(spec.L1 + 1, n + 1):
                    comp[ell] = _branch_diff(x2, x2p, ell - n - 1)
                aux = {"x1": x1, "x2": x2, "v1": w[0], "v2": w[1]}
            else:
                x2 = complex(x_pinned)
                x2p = s2.p / (s2.q * x2)
                x1, _ = _branch_base(s1, lam)
                x1p = s1.p / (s1.q * x1)
                w = _solve_junction_weights(spec, lam, "left", x2, x2p, x1, x1p)
                comp = np.zeros((n + 2, 2), dtype=complex)
                for ell in range(1, spec.L1 + 1):
                    comp[ell] = _branch_diff(x1, x1p, ell - 1)
                for ell in range(spec.L1 + 1, n + 1):
                    e = ell - n - 1
                    comp[ell] = (w[0] * x2 ** e * _pair_vec(x2)
                                 - w[1] * x2p ** e * _pair_vec(x2p))
                aux = {"x1": x1, "x2": x2, "w1": w[0], "w2": w[1]}
            out.append(_finish_mode(matrix, kind, lam, comp, co1.t, co2.t,
                                    n, aux))
        except DegenerateModeError as exc:
            warnings.warn(str(exc), DegenerateModeWarning)
    return out


def homogeneous_modes(rates: RateTriple, L: int,
                      family: str = "first") -> list[ModeVector]:
    """All L+1 modes of one sign family for a homogeneous chain.

    The first family carries the nonpositive energies (two boundary values
    plus the standing-wave band); the second family carries their
    opposites, built from the particle-hole partner ansatz whose branch
    bases swap the roles of p and q.
    """
    if family not in ("first", "second"):
        raise ValueError(f"unknown family {family!r}")
    if L < 2:
        raise ChainValidationError(f"need at least 2 sites, got L={L}")
    p, q, c2 = rates.p, rates.q, rates.cos_2theta
    matrix = build_homogeneous_script_matrix(rates, L)
    co = bulk_coefficients(rates)
    out = []

    if family == "first":
        xs = [p / q * c2, c2] + [cmath.sqrt(p / q) * cmath.exp(1j * math.pi * k / L)
                                 for k in range(1, L)]
    else:
        xs = [q / p * c2, c2] + [cmath.sqrt(q / p) * cmath.exp(1j * math.pi * k / L)
                                 for k in range(1, L)]

    for x in xs:
        try:
            if family == "first":
                lam = (q * x + p / x - (p + q) / 2 * (c2 + 1 / c2)) / c2
                xp = p / (q * x)
                comp = np.zeros((L + 2, 2), dtype=complex)
                for ell in range(1, L + 1):
                    comp[ell] = _branch_diff(x, xp, ell - 1)
                aux = {"x": x}
            else:
                lam = -(p * x + q / x - (p + q) / 2 * (c2 + 1 / c2)) / c2
                # reflection factor kept as an unreduced fraction: the
                # discrete x choices sit exactly on its poles/zeros, where
                # the mode degenerates to a single pure branch
                refl_num = p * q * (x * c2 - 1) * (x - c2)
                refl_den = (p * x * c2 - q) * (p * x - q * c2)
                scale = (p * q) * max(1.0, abs(x)) ** 2
                if max(abs(refl_num), abs(refl_den)) < 1e-12 * scale:
                    raise DegenerateModeError(
                        f"second-family reflection factor indeterminate "
                        f"at x={x}")
                xp = q / (p * x)
                c4 = rates.cos_theta_sq ** 2
                s4 = rates.sin_theta_sq ** 2

                def window(y):
                    return np.array([(1 - y) * c4, (1 + y) * s4], dtype=complex)

                comp = np.zeros((L + 2, 2), dtype=complex)
                for ell in range(1, L + 1):
                    comp[ell] = (refl_den * x ** (ell - 1) * window(x)
                                 - refl_num * xp ** (ell - 1) * window(xp))
                aux = {"x": x, "r_num": refl_num, "r_den": refl_den}
            lam = float(lam.real) if isinstance(lam, complex) else float(lam)
            out.append(_finish_mode(matrix, f"homogeneous-{family}", lam,
                                    comp, co.t, co.t, L, aux))
        except DegenerateModeError as exc:
            warnings.warn(str(exc), DegenerateModeWarning)
    return out
