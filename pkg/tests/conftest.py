"""Shared fixtures: canonical chains and a random valid-chain sampler."""

import numpy as np
import pytest

from coagchain import (ChainSpec, JunctionRates, RateTriple,
                       build_impurity_junction, build_quench_junction,
                       homogeneous_chain)


def make_impurity_spec(L=3, p=0.5, q=3.0, theta=0.6, s=-0.3) -> ChainSpec:
    rates = RateTriple.from_theta(p, q, theta)
    junction, _ = build_impurity_junction(rates, s)
    return ChainSpec(L, L, rates, rates, junction,
                     junction_kind="impurity", impurity_s=s)


def make_quench_spec(L=3, delta1=1.0, delta2=1.0) -> ChainSpec:
    seg1 = RateTriple(0.6, 6.0, delta1)
    seg2 = RateTriple(6.0, 0.2, delta2)
    junction, _ = build_quench_junction(seg1, seg2)
    return ChainSpec(L, L, seg1, seg2, junction, junction_kind="quench")


def random_rate_triple(rng) -> RateTriple:
    p, q = rng.uniform(0.2, 3.0, 2)
    return RateTriple(float(p), float(q), float(rng.uniform(0.05, 3.0)))


def random_chain(rng, L1=None, L2=None) -> ChainSpec:
    """A uniformly sampled chain satisfying every positivity constraint.

    The junction interval for q_bar*delta2 has width 2*(Q1 - Q2) >= 0, so
    sampling q_bar inside it and Q_bar inside its own interval always
    succeeds once the segments are ordered by Q.
    """
    if L1 is None:
        L1 = int(rng.integers(2, 4))
    if L2 is None:
        L2 = int(rng.integers(2, 4))
    seg1 = random_rate_triple(rng)
    seg2 = random_rate_triple(rng)
    if seg1.Q < seg2.Q:
        seg1, seg2 = seg2, seg1
    # feasibility needs p_bar*delta1 >= -2*Q1 when Q1 < 0
    pd_lo = max(0.0, -2 * seg1.Q)
    p_bar = float(rng.uniform(pd_lo, pd_lo + 3.0 * seg1.delta)) / seg1.delta
    qd_lo = max(0.0, p_bar * seg1.delta + 2 * seg2.Q)
    qd_hi = p_bar * seg1.delta + 2 * seg1.Q
    q_bar = float(rng.uniform(qd_lo, max(qd_hi, qd_lo))) / seg2.delta
    lo = max((p_bar * seg1.delta + q_bar * seg2.delta) / 2, -seg1.Q, seg2.Q)
    hi = min(p_bar * seg1.delta + seg1.Q, q_bar * seg2.delta - seg2.Q)
    Q_bar = float(rng.uniform(lo, max(hi, lo)))
    return ChainSpec(L1, L2, seg1, seg2,
                     JunctionRates(p_bar, q_bar, Q_bar))


@pytest.fixture
def rng():
    return np.random.default_rng(20240809)


@pytest.fixture
def impurity_spec():
    return make_impurity_spec()


@pytest.fixture
def quench_spec():
    return make_quench_spec()


@pytest.fixture
def homogeneous_spec():
    return homogeneous_chain(RateTriple(0.5, 3.0, 1.0), 3, 3)
