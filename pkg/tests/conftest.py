"""Shared fixtures and a naive dict-based reference implementation.

The reference path enumerates configurations directly and never touches the
package's vectorized kernels, so it can serve as an independent oracle for
small systems.
"""
import itertools
import math

import numpy as np
import pytest

from intricacy import SystemLaw


# --- naive reference implementation (independent oracle) ----------------


def naive_pmap(law: SystemLaw) -> dict:
    configs, probs = law.support()
    return {tuple(int(s) for s in c): float(p) for c, p in zip(configs, probs)}


def naive_entropy(pmap: dict) -> float:
    return -sum(p * math.log(p) for p in pmap.values() if p > 0)


def naive_marginal(pmap: dict, keep: tuple) -> dict:
    out = {}
    for cfg, p in pmap.items():
        key = tuple(cfg[i] for i in keep)
        out[key] = out.get(key, 0.0) + p
    return out


def naive_subset_entropy(pmap: dict, keep: tuple) -> float:
    return naive_entropy(naive_marginal(pmap, keep))


def naive_mutual_information(pmap: dict, keep: tuple, N: int) -> float:
    comp = tuple(i for i in range(N) if i not in keep)
    if not keep or not comp:
        return 0.0
    return (naive_subset_entropy(pmap, keep)
            + naive_subset_entropy(pmap, comp) - naive_entropy(pmap))


def naive_profile(pmap: dict, N: int, d: int) -> list:
    norm = N * math.log(d)
    values = [0.0]
    for k in range(1, N + 1):
        hs = [naive_subset_entropy(pmap, keep)
              for keep in itertools.combinations(range(N), k)]
        values.append(sum(hs) / len(hs) / norm)
    return values


def naive_intricacy(pmap: dict, N: int, c) -> float:
    total = 0.0
    for k in range(N + 1):
        for keep in itertools.combinations(range(N), k):
            total += c[k] * naive_mutual_information(pmap, keep, N)
    return total


# --- random law factories -------------------------------------------------


def random_dense_law(rng: np.random.Generator, d: int, N: int) -> SystemLaw:
    return SystemLaw.dense(d, N, rng.dirichlet(np.ones(d**N)))


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260824)
