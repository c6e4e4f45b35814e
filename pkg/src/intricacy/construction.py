"""Sparse random support construction: the empirical measure of d^M i.i.d.
uniform configurations, its exact expected subset entropies, and the
nearly-constant-entropy envelope.

Writing B_k for a Binomial(d^M, d^-k) variable and
phi(x) = -x log(x)/log(d), the expected subset entropy of a size-k
sub-family is h_k = d^k E(phi(B_k d^-M)) in units of log d, with the two
equivalent stabler forms h_k = k + E(phi(B_k d^{k-M})) and
h_k = M + d^{k-M} E(phi(B_k)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import stats

from .coefficients import CoefficientTable, coefficient_table
from .laws import CapExceededError, EntropyProfile, SystemLaw, entropy_profile_exact
from .profiles import g_functional
from .rng import SplitMix64

DEFAULT_SUPPORT_CAP = 1 << 20
EXACT_SUM_CAP = 10**6


@dataclass(frozen=True)
class ConstructionSpec:
    """Parameters of one sparse random system draw."""

    d: int
    N: int
    M: int
    seed: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("d must be >= 2")
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if not 0 <= self.M <= self.N:
            raise ValueError(f"need 0 <= M <= N, got M={self.M}, N={self.N}")


def m_from_target(x: float, N: int) -> int:
    """Support exponent M = floor(x*N) for a normalized entropy target."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0,1]")
    return int(math.floor(x * N))


def sample_sparse_system(spec: ConstructionSpec, *,
                         cap: int = DEFAULT_SUPPORT_CAP) -> SystemLaw:
    """Empirical measure of d^M i.i.d. uniform configurations.

    Each configuration is drawn coordinate by coordinate (coordinate 1
    first) with one bounded splitmix64 draw per symbol, so the output is a
    byte-exact function of the spec.  Colliding draws accumulate weight.
    """
    d, N, M = spec.d, spec.N, spec.M
    draws = d**M
    if draws > cap:
        raise CapExceededError(
            f"d^M = {draws} exceeds the support cap {cap}")
    rng = SplitMix64(spec.seed)
    counts: dict[tuple[int, ...], int] = {}
    for _ in range(draws):
        cfg = tuple(rng.randbelow(d) for _ in range(N))
        counts[cfg] = counts.get(cfg, 0) + 1
    configs = np.array(sorted(counts), dtype=np.uint8).reshape(-1, N)
    probs = np.array([counts[tuple(int(s) for s in c)] for c in configs],
                     dtype=float) / draws
    return SystemLaw.sparse(d, N, configs, probs)


def _phi(x: np.ndarray, d: int) -> np.ndarray:
    """phi(x) = -x log(x)/log(d), with phi(0) = 0."""
    out = np.zeros_like(x, dtype=float)
    pos = x > 0
    out[pos] = -x[pos] * np.log(x[pos]) / math.log(d)
    return out


class ExpectedEntropyDetail(NamedTuple):
    value: float
    truncated_tail_mass: float


def expected_subset_entropy_detail(d: int, N: int, M: int, k: int, *,
                                   exact_cap: int = EXACT_SUM_CAP,
                                   truncate: bool = True) -> ExpectedEntropyDetail:
    """Exact (or mean +/- 12 sigma truncated) binomial expectation of the
    size-k expected subset entropy, in units of log d."""
    if not 0 <= k <= N:
        raise ValueError(f"need 0 <= k <= N, got k={k}")
    if not 0 <= M <= N:
        raise ValueError(f"need 0 <= M <= N, got M={M}")
    if k == 0:
        return ExpectedEntropyDetail(0.0, 0.0)
    n = d**M
    p = float(d) ** (-k)
    tail = 0.0
    if n > exact_cap:
        if not truncate:
            raise CapExceededError(
                f"d^M = {n} exceeds the exact-summation cap {exact_cap}")
        mean = n * p
        sigma = math.sqrt(n * p * (1.0 - p))
        lo = max(0, int(mean - 12 * sigma))
        hi = min(n, int(mean + 12 * sigma) + 1)
        js = np.arange(lo, hi + 1)
        pmf = stats.binom.pmf(js, n, p)
        tail = max(0.0, 1.0 - float(pmf.sum()))
    else:
        js = np.arange(0, n + 1)
        pmf = stats.binom.pmf(js, n, p)
    if k <= M:
        # first closed form: stable when the binomial mean d^{M-k} is large
        value = k + float(np.dot(pmf, _phi(js * float(d) ** (k - M), d)))
    else:
        value = M + float(d) ** (k - M) * float(np.dot(pmf, _phi(js.astype(float), d)))
    return ExpectedEntropyDetail(value, tail)


def expected_subset_entropy(d: int, N: int, M: int, k: int, *,
                            exact_cap: int = EXACT_SUM_CAP,
                            truncate: bool = True) -> float:
    """h_k, the expected entropy of a size-k sub-family of the sparse
    random construction, in units of log d."""
    return expected_subset_entropy_detail(
        d, N, M, k, exact_cap=exact_cap, truncate=truncate).value


def entropy_envelope(d: int, M: int, k: int) -> tuple[float, float]:
    """Envelope containing h_k: (k - 2 d^{(k-M)/2}, k) for k <= M and
    (M - d^{M-k}, M) for k > M, in units of log d."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k <= M:
        return (k - 2.0 * float(d) ** ((k - M) / 2.0), float(k))
    return (M - float(d) ** (M - k), float(M))


@dataclass(frozen=True)
class RealizedProfile:
    """One sampled system together with its exact profile, normalized
    entropy and per-family normalized intricacies."""

    spec: ConstructionSpec
    law: SystemLaw
    profile: EntropyProfile
    normalized_entropy: float
    normalized_intricacy: dict


def realized_profile(spec: ConstructionSpec, families=(), *,
                     subset_cap: int = 22,
                     support_cap: int = DEFAULT_SUPPORT_CAP) -> RealizedProfile:
    """Sample the system and evaluate its exact profile plus one normalized
    intricacy per requested (name, MixingMeasure) family."""
    law = sample_sparse_system(spec, cap=support_cap)
    profile = entropy_profile_exact(law, cap=subset_cap)
    x_n = float(profile.values[-1])
    intricacies = {}
    for name, measure in families:
        table: CoefficientTable = coefficient_table(measure, spec.N)
        intricacies[name] = g_functional(profile, table)
    return RealizedProfile(spec, law, profile, x_n, intricacies)
