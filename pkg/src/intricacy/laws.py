"""Exact entropy, marginals, mutual information and entropy profiles for
finite systems of discrete random variables.

A system is a probability law on the configuration space {0,...,d-1}^N.
Coordinate 1 is the most significant digit base d in the dense (mixed-radix)
indexing; bit i of a subset mask corresponds to coordinate i+1.  Entropies
are in nats; "normalized" quantities divide by N*log(d).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .rng import SplitMix64

MASS_TOL = 1e-9
DEFAULT_SUBSET_CAP = 22


class LawValidationError(ValueError):
    """Malformed probability law (negative mass, mass far from 1, ...)."""


class CapExceededError(RuntimeError):
    """An exhaustive-enumeration cap would be exceeded."""


def full_mask(N: int) -> int:
    return (1 << N) - 1


def mask_to_indices(mask: int, N: int) -> list[int]:
    """0-based coordinate indices of a subset mask."""
    if mask < 0 or mask >> N:
        raise IndexError(f"mask {mask:#x} references coordinates >= N={N}")
    return [i for i in range(N) if (mask >> i) & 1]


def indices_to_mask(indices) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def _radix(d: int, N: int) -> np.ndarray:
    # coordinate 1 (index 0) is the most significant digit
    return d ** np.arange(N - 1, -1, -1, dtype=np.int64)


@dataclass(frozen=True)
class SystemLaw:
    """Probability measure on {0,...,d-1}^N.

    ``kind`` is "dense" (flat table of d^N probabilities in mixed-radix
    order) or "sparse" (distinct support configurations with weights).
    ``configs``/``probs`` always hold the (nonzero) support; ``table`` is
    only set for dense laws.
    """

    d: int
    N: int
    kind: str
    configs: np.ndarray
    probs: np.ndarray
    table: np.ndarray | None = None

    @staticmethod
    def dense(d: int, N: int, table) -> "SystemLaw":
        if d < 2:
            raise LawValidationError("alphabet size d must be >= 2")
        if N < 0:
            raise LawValidationError("system size N must be >= 0")
        table = np.asarray(table, dtype=float).ravel()
        if table.size != d**N:
            raise LawValidationError(
                f"dense table must have d^N = {d**N} entries, got {table.size}")
        table = _normalized(table)
        idx = np.flatnonzero(table)
        configs = _decode_indices(idx, d, N)
        law = SystemLaw(d, N, "dense", configs, table[idx], table)
        _freeze(law)
        return law

    @staticmethod
    def sparse(d: int, N: int, configs, probs) -> "SystemLaw":
        if d < 2:
            raise LawValidationError("alphabet size d must be >= 2")
        if N < 0:
            raise LawValidationError("system size N must be >= 0")
        probs = np.asarray(probs, dtype=float).ravel()
        configs = np.asarray(configs, dtype=np.uint8).reshape(probs.size, N)
        if configs.size and configs.max(initial=0) >= d:
            raise LawValidationError("configuration symbol out of range")
        probs = _normalized(probs)
        idx = configs.astype(np.int64) @ _radix(d, N)
        if np.unique(idx).size != idx.size:
            raise LawValidationError("sparse support has duplicate configurations")
        order = np.argsort(idx)
        keep = probs[order] > 0.0
        law = SystemLaw(d, N, "sparse", configs[order][keep], probs[order][keep])
        _freeze(law)
        return law

    def support(self) -> tuple[np.ndarray, np.ndarray]:
        """Nonzero support as (configurations, weights)."""
        return self.configs, self.probs

    @property
    def support_size(self) -> int:
        return self.probs.size

    # --- serialization (file contract) ---------------------------------

    def to_json_dict(self) -> dict:
        if self.kind == "dense":
            return {"d": self.d, "N": self.N, "dense": self.table.tolist()}
        return {
            "d": self.d,
            "N": self.N,
            "support": [
                {"config": [int(s) for s in cfg], "p": float(p)}
                for cfg, p in zip(self.configs, self.probs)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @staticmethod
    def from_json_dict(obj: dict) -> "SystemLaw":
        d, N = int(obj["d"]), int(obj["N"])
        if "dense" in obj:
            return SystemLaw.dense(d, N, obj["dense"])
        if "support" not in obj:
            raise LawValidationError("law JSON needs a 'dense' or 'support' field")
        entries = obj["support"]
        configs = [e["config"] for e in entries]
        probs = [e["p"] for e in entries]
        return SystemLaw.sparse(d, N, np.array(configs).reshape(-1, N), probs)

    @staticmethod
    def from_json(text: str) -> "SystemLaw":
        return SystemLaw.from_json_dict(json.loads(text))


def _freeze(law: SystemLaw) -> None:
    for arr in (law.configs, law.probs, law.table):
        if arr is not None:
            arr.setflags(write=False)


def _normalized(p: np.ndarray) -> np.ndarray:
    if p.size == 0:
        raise LawValidationError("empty probability table")
    if np.any(p < 0):
        raise LawValidationError("negative probability mass")
    total = float(p.sum())
    if abs(total - 1.0) > MASS_TOL:
        raise LawValidationError(
            f"total mass {total!r} differs from 1 beyond tolerance {MASS_TOL}")
    return p / total


def _decode_indices(idx: np.ndarray, d: int, N: int) -> np.ndarray:
    out = np.empty((idx.size, N), dtype=np.uint8)
    rem = idx.astype(np.int64)
    for j in range(N - 1, -1, -1):
        out[:, j] = rem % d
        rem //= d
    return out


# --- convenient constructors -------------------------------------------


def point_mass(d: int, N: int, config) -> SystemLaw:
    return SystemLaw.sparse(d, N, np.array([config], dtype=np.uint8), [1.0])


def uniform_law(d: int, N: int) -> SystemLaw:
    return SystemLaw.dense(d, N, np.full(d**N, 1.0 / d**N))


def diagonal_law(d: int, N: int) -> SystemLaw:
    """X_1 uniform on {0,...,d-1} and X_i = X_1 for all i."""
    configs = np.repeat(np.arange(d, dtype=np.uint8)[:, None], N, axis=1)
    return SystemLaw.sparse(d, N, configs, np.full(d, 1.0 / d))


def product_law(marginals: list[np.ndarray], d: int) -> SystemLaw:
    """Independent coordinates with the given single-site distributions."""
    table = np.array([1.0])
    for m in marginals:
        table = np.multiply.outer(table, np.asarray(m, dtype=float)).ravel()
    return SystemLaw.dense(d, len(marginals), table)


# --- law transforms (invariance checks) --------------------------------


def permute_coordinates(law: SystemLaw, perm) -> SystemLaw:
    """Law of (X_{perm^{-1}(i)})_i; ``perm`` maps old index -> new index."""
    perm = list(perm)
    if sorted(perm) != list(range(law.N)):
        raise ValueError("perm must be a permutation of 0..N-1")
    inv = np.argsort(perm)
    configs = law.configs[:, inv]
    new = SystemLaw.sparse(law.d, law.N, configs, law.probs)
    if law.kind == "dense":
        return _sparse_to_dense(new)
    return new


def relabel_symbols(law: SystemLaw, tables) -> SystemLaw:
    """Apply a per-coordinate symbol permutation; ``tables[i][s]`` is the
    new symbol at coordinate i."""
    tables = np.asarray(tables, dtype=np.uint8)
    if tables.shape != (law.N, law.d):
        raise ValueError("need one symbol permutation per coordinate")
    configs = np.empty_like(law.configs)
    for i in range(law.N):
        configs[:, i] = tables[i][law.configs[:, i]]
    new = SystemLaw.sparse(law.d, law.N, configs, law.probs)
    if law.kind == "dense":
        return _sparse_to_dense(new)
    return new


def _sparse_to_dense(law: SystemLaw) -> SystemLaw:
    table = np.zeros(law.d**law.N)
    idx = law.configs.astype(np.int64) @ _radix(law.d, law.N)
    table[idx] = law.probs
    return SystemLaw.dense(law.d, law.N, table)


# --- core operations ----------------------------------------------------


def entropy(law: SystemLaw) -> float:
    """Shannon entropy -sum p log p in nats (0 log 0 := 0)."""
    p = law.probs
    return float(-(p * np.log(p)).sum()) + 0.0 if p.size else 0.0


def marginal(law: SystemLaw, mask: int) -> SystemLaw:
    """Pushforward of the law under projection onto the coordinates in
    ``mask``; preserves the dense/sparse representation."""
    keep = mask_to_indices(mask, law.N)
    k = len(keep)
    if law.kind == "dense":
        shaped = law.table.reshape((law.d,) * law.N if law.N else (1,))
        drop = tuple(i for i in range(law.N) if i not in keep)
        out = shaped.sum(axis=drop) if drop else shaped
        return SystemLaw.dense(law.d, k, np.asarray(out).ravel())
    sub = law.configs[:, keep]
    idx = sub.astype(np.int64) @ _radix(law.d, k)
    uniq, inv = np.unique(idx, return_inverse=True)
    probs = np.bincount(inv, weights=law.probs, minlength=uniq.size)
    return SystemLaw.sparse(law.d, k, _decode_indices(uniq, law.d, k), probs)


def subset_entropy(law: SystemLaw, mask: int) -> float:
    return entropy(marginal(law, mask))


def mutual_information(law: SystemLaw, mask: int) -> float:
    """MI(X_S, X_{S^c}) = H(X_S) + H(X_{S^c}) - H(X); zero for S in
    {empty, full} by convention."""
    comp = full_mask(law.N) ^ mask
    if mask == 0 or comp == 0:
        return 0.0
    return subset_entropy(law, mask) + subset_entropy(law, comp) - entropy(law)


def conditional_entropy(law: SystemLaw, mask: int) -> float:
    """H(X | X_S) = H(X) - H(X_S) for a sub-family S."""
    return entropy(law) - subset_entropy(law, mask)


# --- all-subset enumeration ---------------------------------------------


def _popcounts(masks: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(masks)
    table = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)
    counts = np.zeros(masks.shape, dtype=np.int64)
    m = masks.astype(np.uint64)
    while m.any():
        counts += table[(m & 0xFF).astype(np.intp)]
        m >>= np.uint64(8)
    return counts


def _grouped_entropies(K: np.ndarray, probs: np.ndarray) -> np.ndarray:
    """Entropy of the weight distribution grouped by equal key, row-wise.

    K is (n_masks, n_support); row j holds the projected-configuration key
    of each support point under mask j.  Key and support index are packed
    into one integer so a single radix sort orders every row.
    """
    m, n = K.shape
    shift = max((n - 1).bit_length(), 1)
    kmax = int(K.max()) if K.size else 0
    dtype = np.uint32 if (kmax << shift) | (n - 1) < 2**32 else np.int64
    comb = (K.astype(dtype) << dtype(shift)) | np.arange(n, dtype=dtype)
    comb = np.sort(comb, axis=1, kind="stable")
    Ks = comb >> dtype(shift)
    Ps = probs[(comb & dtype((1 << shift) - 1)).astype(np.intp)]
    starts = np.empty((m, n), dtype=bool)
    starts[:, 0] = True
    np.not_equal(Ks[:, 1:], Ks[:, :-1], out=starts[:, 1:])
    sf = starts.ravel()
    grp = np.cumsum(sf) - 1
    sums = np.bincount(grp, weights=Ps.ravel())
    rows = np.repeat(np.arange(m), n)[sf]
    contrib = -sums * np.log(sums)
    return np.bincount(rows, weights=contrib, minlength=m)


def all_subset_entropies(law: SystemLaw, *, cap: int = DEFAULT_SUBSET_CAP,
                         chunk: int = 4096) -> np.ndarray:
    """H(X_S) for every mask S in {0,...,2^N - 1}, indexed by mask.

    Works on the support, so sparse laws cost O(2^N * support) rather than
    O(2^N * d^N).  Raises :class:`CapExceededError` above the cap; use
    :func:`entropy_profile_sampled` for larger systems.
    """
    N, d = law.N, law.d
    if N > cap:
        raise CapExceededError(
            f"N={N} exceeds the exhaustive subset cap {cap}; "
            "use entropy_profile_sampled for larger systems")
    configs, probs = law.support()
    total = 1 << N
    out = np.empty(total)
    if d == 2:
        pts = (configs.astype(np.uint32) @ (1 << np.arange(N, dtype=np.uint32)))
        for start in range(0, total, chunk):
            ms = np.arange(start, min(start + chunk, total), dtype=np.uint32)
            K = ms[:, None] & pts[None, :]
            out[start:start + ms.size] = _grouped_entropies(K, probs)
    else:
        keyed = configs.astype(np.int64) * (d ** np.arange(N, dtype=np.int64))
        for start in range(0, total, chunk):
            ms = np.arange(start, min(start + chunk, total), dtype=np.int64)
            bits = ((ms[:, None] >> np.arange(N, dtype=np.int64)[None, :]) & 1)
            K = bits @ keyed.T
            out[start:start + ms.size] = _grouped_entropies(K, probs)
    return out


# --- entropy profiles ----------------------------------------------------


@dataclass(frozen=True)
class EntropyProfile:
    """Averaged subset entropies h(k/N) for k = 0..N, normalized by
    N*log(d).  ``stderr`` is set by the sampled estimator (NaN where a size
    was not requested)."""

    N: int
    values: np.ndarray
    stderr: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.values.size != self.N + 1:
            raise ValueError("profile needs N+1 values")

    def value_at(self, k: int) -> float:
        return float(self.values[k])

    def validate(self, tol: float = 1e-9) -> None:
        """Check membership in Gamma: h(0)=0, nondecreasing, increments
        at most 1/N."""
        v = self.values
        if abs(v[0]) > tol:
            raise ValueError("profile must start at 0")
        inc = np.diff(v)
        if np.any(inc < -tol) or np.any(inc > 1.0 / self.N + tol):
            raise ValueError("profile increments outside [0, 1/N]")


def entropy_profile_exact(law: SystemLaw, *,
                          cap: int = DEFAULT_SUBSET_CAP) -> EntropyProfile:
    """Exact entropy profile: h(k/N) is the average of H(X_S)/(N log d)
    over all C(N,k) subsets of size k."""
    N = law.N
    H = all_subset_entropies(law, cap=cap)
    k = _popcounts(np.arange(1 << N, dtype=np.uint32)).astype(np.intp)
    sums = np.bincount(k, weights=H, minlength=N + 1)
    counts = np.array([math.comb(N, j) for j in range(N + 1)], dtype=float)
    return EntropyProfile(N, sums / counts / (N * math.log(law.d)))


def entropy_profile_sampled(law: SystemLaw, sizes, samples_per_size: int,
                            seed: int, *, exhaustive: bool = False) -> EntropyProfile:
    """Monte Carlo estimate of the entropy profile at the requested subset
    sizes (uniform over size-k subsets), with per-point standard errors.

    Deterministic given ``seed``.  With ``exhaustive=True`` every size-k
    subset is enumerated instead (ignoring ``samples_per_size``), matching
    :func:`entropy_profile_exact` at the requested sizes.
    """
    if not exhaustive and samples_per_size < 2:
        raise ValueError("samples_per_size must be >= 2")
    N = law.N
    norm = N * math.log(law.d)
    values = np.full(N + 1, np.nan)
    stderr = np.full(N + 1, np.nan)
    values[0], stderr[0] = 0.0, 0.0
    rng = SplitMix64(seed)
    for k in sorted(set(int(s) for s in sizes)):
        if not 0 <= k <= N:
            raise IndexError(f"subset size {k} outside 0..{N}")
        if k == 0:
            continue
        if exhaustive:
            from itertools import combinations
            hs = [subset_entropy(law, indices_to_mask(c))
                  for c in combinations(range(N), k)]
        else:
            hs = [subset_entropy(law, rng.sample_subset_mask(N, k))
                  for _ in range(samples_per_size)]
        hs = np.asarray(hs) / norm
        values[k] = hs.mean()
        stderr[k] = hs.std(ddof=1) / math.sqrt(hs.size) if hs.size > 1 else 0.0
    return EntropyProfile(N, values, stderr)
