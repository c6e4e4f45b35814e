"""Convergence, profile-convergence, simultaneity and threshold-census
experiments, plus a small-scale stochastic maximizer search benchmarked
against the finite-size ceiling.

All experiments are deterministic given their seeds: system draws and
subset sampling run on the portable splitmix64 stream, the maximizer search
on a seeded numpy generator.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .coefficients import (CoefficientTable, MixingMeasure, coefficient_table)
from .construction import (ConstructionSpec, m_from_target,
                           sample_sparse_system)
from .laws import (CapExceededError, EntropyProfile, SystemLaw, entropy,
                   entropy_profile_exact, subset_entropy)
from .profiles import g_functional, ic_limit, ic_n, ideal_profile, profile_norm
from .rng import SplitMix64

SWEEP_CSV_HEADER = ("family,d,N,M,seed,x_N,I_N,icn_at_xN,deficit,"
                    "sup_profile_gap")
CENSUS_CSV_HEADER = ("family,d,N,M,seed,y,k,epsilon,samples,frac_uniform,"
                     "se_uniform,frac_determining,se_determining")


@dataclass(frozen=True)
class ExperimentRecord:
    """One row of a convergence/simultaneity experiment.

    ``sup_profile_gap`` is max_k |h_X(k/N) - h*_x(k/N)| against the sweep's
    target entropy x (the limit profile the sequence should approach).
    """

    family: str
    d: int
    N: int
    M: int
    seed: int
    x_N: float
    I_N: float
    icn_at_xN: float
    deficit: float
    sup_profile_gap: float

    def csv_row(self) -> str:
        return (f"{self.family},{self.d},{self.N},{self.M},{self.seed},"
                f"{self.x_N!r},{self.I_N!r},{self.icn_at_xN!r},"
                f"{self.deficit!r},{self.sup_profile_gap!r}")


def _record_for(profile: EntropyProfile, family: str,
                table: CoefficientTable, spec: ConstructionSpec,
                target_x: float) -> ExperimentRecord:
    x_n = min(max(float(profile.values[-1]), 0.0), 1.0)
    return ExperimentRecord(
        family=family,
        d=spec.d,
        N=spec.N,
        M=spec.M,
        seed=spec.seed,
        x_N=x_n,
        I_N=g_functional(profile, table),
        icn_at_xN=ic_n(x_n, table),
        deficit=2.0 * profile_norm(profile, ideal_profile(x_n, spec.N), table),
        sup_profile_gap=float(np.max(np.abs(
            profile.values - ideal_profile(target_x, spec.N).values))),
    )


def convergence_sweep(families, d: int, x: float, N_list, seeds, *,
                      subset_cap: int = 22,
                      keep_profiles: bool = False):
    """One sampled system per (N, seed) with M = floor(x*N); every family is
    evaluated on the same law.  Returns records sorted by (family, N, seed);
    with ``keep_profiles`` also returns {(N, seed): EntropyProfile}.
    """
    if not 0.0 < x < 1.0:
        raise ValueError("x must lie in (0,1)")
    families = list(families)
    records = []
    profiles = {}
    for N in N_list:
        M = m_from_target(x, N)
        tables = {name: coefficient_table(measure, N)
                  for name, measure in families}
        for seed in seeds:
            spec = ConstructionSpec(d, N, M, seed)
            law = sample_sparse_system(spec)
            profile = entropy_profile_exact(law, cap=subset_cap)
            if keep_profiles:
                profiles[(N, seed)] = profile
            for name, _ in families:
                records.append(_record_for(profile, name, tables[name], spec, x))
    records.sort(key=lambda r: (r.family, r.N, r.seed))
    if keep_profiles:
        return records, profiles
    return records


@dataclass(frozen=True)
class GapRow:
    N: int
    mean_gap: float
    stderr: float
    samples: int


def profile_convergence(profiles_by_N: dict, x: float) -> list[GapRow]:
    """Per-N seed mean (and standard error) of sup_k |h_X - h*_x|."""
    rows = []
    for N in sorted(profiles_by_N):
        ideal = ideal_profile(x, N).values
        gaps = np.array([float(np.max(np.abs(p.values - ideal)))
                         for p in profiles_by_N[N]])
        se = gaps.std(ddof=1) / math.sqrt(gaps.size) if gaps.size > 1 else 0.0
        rows.append(GapRow(N, float(gaps.mean()), float(se), gaps.size))
    return rows


@dataclass(frozen=True)
class CensusReport:
    """Shares of sampled size-k subsets that are near-uniform or that
    nearly determine the whole system."""

    y: float
    k: int
    epsilon: float
    samples: int
    fraction_near_uniform: float
    se_uniform: float
    fraction_determining: float
    se_determining: float


def threshold_census(law: SystemLaw, x: float, y: float, epsilon: float,
                     samples: int, seed: int, *,
                     exhaustive: bool = False) -> CensusReport:
    """Sample uniform size-floor(y*N) subsets S (with replacement) and count
    those with H(X_S) > (1-eps)|S| log d and those with
    H(X | X_S) < eps * x * N log d.  Standard errors are binomial.
    """
    if not 0.0 < y < 1.0:
        raise ValueError("y must lie in (0,1)")
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0,1)")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    N = law.N
    k = int(math.floor(y * N))
    if k < 1:
        raise ValueError(f"floor(y*N) = {k} must be >= 1")
    logd = math.log(law.d)
    h_full = entropy(law)
    uniform_cut = (1.0 - epsilon) * k * logd
    determine_cut = epsilon * x * N * logd
    if exhaustive:
        if N > 20:
            raise CapExceededError("exhaustive census capped at N <= 20")
        from itertools import combinations
        masks = [sum(1 << i for i in c) for c in combinations(range(N), k)]
    else:
        rng = SplitMix64(seed)
        masks = [rng.sample_subset_mask(N, k) for _ in range(samples)]
    n_uniform = 0
    n_determining = 0
    for mask in masks:
        h_s = subset_entropy(law, mask)
        if h_s > uniform_cut:
            n_uniform += 1
        if h_full - h_s < determine_cut:
            n_determining += 1
    n = len(masks)
    fu, fd = n_uniform / n, n_determining / n
    return CensusReport(
        y=y, k=k, epsilon=epsilon, samples=n,
        fraction_near_uniform=fu,
        se_uniform=math.sqrt(fu * (1.0 - fu) / n),
        fraction_determining=fd,
        se_determining=math.sqrt(fd * (1.0 - fd) / n),
    )


# --- maximizer search ----------------------------------------------------


@dataclass(frozen=True)
class RestartResult:
    intricacy: float
    normalized_intricacy: float
    x: float
    certificate: float


@dataclass(frozen=True)
class SearchResult:
    law: SystemLaw
    intricacy: float
    certificate: float
    restarts: list[RestartResult] = field(default_factory=list)


def _subset_axes(N: int):
    masks = range(1 << N)
    return [(m, tuple(i for i in range(N) if not (m >> i) & 1)) for m in masks]


def _intricacy_and_grad(p: np.ndarray, c: np.ndarray, axes):
    logp = np.log(np.maximum(p, 1e-300))
    h_full = float(-(p * logp).sum())
    value = -h_full
    grad = 1.0 + logp
    for mask, drop in axes:
        if mask == 0:
            continue
        k = mask.bit_count()
        if drop:
            nu = p.sum(axis=drop, keepdims=True)
            lognu = np.log(np.maximum(nu, 1e-300))
            value += 2.0 * c[k] * float(-(nu * lognu).sum())
            grad -= 2.0 * c[k] * (1.0 + lognu)
        else:
            value += 2.0 * c[k] * h_full
            grad -= 2.0 * c[k] * (1.0 + logp)
    return value, grad


def maximizer_search(d: int, N: int, table: CoefficientTable, *,
                     restarts: int = 20, iterations: int = 200, seed: int = 0,
                     entropy_target: float | None = None,
                     penalty_weight: float = 20.0,
                     step_size: float = 0.5,
                     cap_n: int = 6, cap_d: int = 3) -> SearchResult:
    """Stochastic mirror ascent over the simplex on d^N configurations.

    Exponentiated-gradient steps with 1/sqrt(t) decay; the optional entropy
    target enters through a squared penalty whose weight escalates over the
    iterations.  The certificate ic_n(x_achieved) - I/(N log d) is
    nonnegative for every restart by the deficit identity.
    """
    if N > cap_n or d > cap_d:
        raise CapExceededError(
            f"dense search capped at N <= {cap_n}, d <= {cap_d}")
    if table.N != N:
        raise ValueError("table size mismatch")
    rng = np.random.default_rng(seed)
    axes = _subset_axes(N)
    shape = (d,) * N
    norm = N * math.log(d)
    best = None
    results = []
    for _ in range(restarts):
        p = rng.dirichlet(np.ones(d**N)).reshape(shape)
        p = np.maximum(p, 1e-12)
        p /= p.sum()
        for t in range(1, iterations + 1):
            value, grad = _intricacy_and_grad(p, table.c, axes)
            if entropy_target is not None:
                logp = np.log(np.maximum(p, 1e-300))
                h_n = float(-(p * logp).sum()) / norm
                w = penalty_weight * t / iterations
                grad += 2.0 * w * (h_n - entropy_target) * (1.0 + logp) / norm
            step = step_size / math.sqrt(t)
            p = p * np.exp(step * (grad - grad.max()))
            p /= p.sum()
        law = SystemLaw.dense(d, N, p.ravel())
        value, _ = _intricacy_and_grad(p, table.c, axes)
        x_ach = min(max(entropy(law) / norm, 0.0), 1.0)
        cert = ic_n(x_ach, table) - value / norm
        results.append(RestartResult(value, value / norm, x_ach, cert))
        if best is None or value > best[0]:
            best = (value, law, cert)
    return SearchResult(law=best[1], intricacy=best[0], certificate=best[2],
                        restarts=results)


# --- simultaneity ---------------------------------------------------------


@dataclass(frozen=True)
class FamilyTrend:
    family: str
    limit: float
    rows: list  # (N, mean_I_N, stderr, gap_to_limit)
    supported: bool


def simultaneity_check(families, d: int, x: float, N_list, seeds, *,
                       subset_cap: int = 22) -> list[FamilyTrend]:
    """Evaluate every family's normalized intricacy trend on the SAME
    sampled law sequence and compare against each family's own limit
    i^c(x).  Emits a warning (not a failure) when x is outside a family's
    mixing-measure support, where the simultaneity guarantee does not apply.
    """
    families = list(families)
    records = convergence_sweep(families, d, x, N_list, seeds,
                                subset_cap=subset_cap)
    by_family: dict[str, dict[int, list[float]]] = {}
    for r in records:
        by_family.setdefault(r.family, {}).setdefault(r.N, []).append(r.I_N)
    trends = []
    for name, measure in families:
        supported = measure.supports(x)
        if not supported:
            warnings.warn(
                f"x={x} is outside the support of family {name!r}; "
                "the simultaneity guarantee does not apply", stacklevel=2)
        limit = ic_limit(x, measure)
        rows = []
        for N in sorted(by_family[name]):
            vals = np.array(by_family[name][N])
            se = vals.std(ddof=1) / math.sqrt(vals.size) if vals.size > 1 else 0.0
            rows.append((N, float(vals.mean()), float(se),
                         float(abs(vals.mean() - limit))))
        trends.append(FamilyTrend(name, limit, rows, supported))
    return trends
