"""Seeded item-size generators for the benchmark set-instances.

Random bits
-----------
Every sequence is drawn from a PCG64 (XSL-RR 128/64) stream whose raw state
is set directly, without NumPy's SeedSequence:

* ``splitmix64(state)`` advances ``state += 0x9E3779B97F4A7C15`` and returns
  the usual SplitMix64 finaliser of the new state.
* The seed of trial ``t`` under master ``m`` is the ``(t+1)``-th SplitMix64
  output starting from state ``m``.
* Four further SplitMix64 outputs ``w0..w3`` from that seed give the PCG64
  state ``w0 << 64 | w1`` and increment ``(w2 << 64 | w3) | 1``.
* Uniform doubles are ``(next64 >> 11) * 2**-53``.

All samplers below are inverse transforms of those doubles, so a port only
needs PCG64 and the formulas here to reproduce the streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln, ndtri

from .core import Sequence

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

KINDS = ("DU", "NORMAL", "POISSON", "ZIPF", "SORTD", "WEIBULL", "BPS")

# stop rejection sampling when fewer than 1 in 1000 draws land in range
MIN_ACCEPT = 1e-3


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def splitmix64(state: int) -> tuple[int, int]:
    """Return ``(new_state, output)``."""
    state = (state + GOLDEN) & MASK64
    return state, mix64(state)


def name_key(name: str) -> int:
    """64-bit FNV-1a of an ASCII name, used to separate set-instance streams."""
    h = 0xCBF29CE484222325
    for byte in name.encode("ascii"):
        h = ((h ^ byte) * 0x100000001B3) & MASK64
    return h


@dataclass(frozen=True)
class Seed:
    master: int
    trial_index: int = 0

    @property
    def value(self) -> int:
        return mix64(self.master + (self.trial_index + 1) * GOLDEN)

    def generator(self) -> np.random.Generator:
        state = self.value
        words = []
        for _ in range(4):
            state, out = splitmix64(state)
            words.append(out)
        bitgen = np.random.PCG64()
        bitgen.state = {
            "bit_generator": "PCG64",
            "state": {"state": words[0] << 64 | words[1], "inc": (words[2] << 64 | words[3]) | 1},
            "has_uint32": 0,
            "uinteger": 0,
        }
        return np.random.Generator(bitgen)


@dataclass(frozen=True)
class DistributionSpec:
    name: str
    kind: str
    E: int
    lo: int
    hi: int
    params: dict = field(default_factory=dict, hash=False, compare=True)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown distribution kind {self.kind!r}")
        if not 1 <= self.lo <= self.hi <= self.E:
            raise ValueError(f"{self.name}: need 1 <= lo <= hi <= E, got lo={self.lo} hi={self.hi} E={self.E}")
        required = {"NORMAL": ("mu", "sigma"), "POISSON": ("lam",), "ZIPF": ("theta",),
                    "WEIBULL": ("k",), "BPS": ("s",)}.get(self.kind, ())
        for key in required:
            if key not in self.params:
                raise ValueError(f"{self.name}: {self.kind} needs parameter {key!r}")
        if self.kind == "NORMAL" and self.params["sigma"] <= 0:
            raise ValueError("sigma must be positive")
        if self.kind == "POISSON" and self.params["lam"] <= 0:
            raise ValueError("lam must be positive")
        if self.kind == "WEIBULL" and (self.params["k"] <= 0 or self.params.get("scale", 1) <= 0):
            raise ValueError("Weibull shape and scale must be positive")
        if self.kind == "BPS" and int(self.params["s"]) < 1:
            raise ValueError("BPS support size must be positive")

    def describe(self) -> dict:
        return {"name": self.name, "kind": self.kind, "E": self.E, "lo": self.lo,
                "hi": self.hi, "params": dict(self.params)}


def _builtins() -> list[DistributionSpec]:
    E = 1000
    return [
        DistributionSpec("DU0", "DU", 100, 1, 100),
        DistributionSpec("DU1", "DU", 500, 1, 500),
        DistributionSpec("DU2", "DU", E, 1, E),
        DistributionSpec("DU3", "DU", E, 1, E // 2),
        DistributionSpec("DU4", "DU", E, 1, E // 10),
        DistributionSpec("NORMAL", "NORMAL", E, 1, E, {"mu": E / 2, "sigma": E / 6}),
        DistributionSpec("POISSON", "POISSON", E, 1, E, {"lam": E / 3}),
        DistributionSpec("ZIPF1", "ZIPF", E, 1, E, {"theta": 1 / 2}),
        DistributionSpec("ZIPF2", "ZIPF", E, 1, E, {"theta": 1 / 3}),
        DistributionSpec("SORTD", "SORTD", E, 1, E),
        DistributionSpec("WD1", "WEIBULL", E, 1, E, {"k": 0.454, "scale": E / 2}),
        DistributionSpec("WD2", "WEIBULL", E, 1, E, {"k": 1.044, "scale": E / 2}),
        DistributionSpec("BPSD1", "BPS", E, E // 4, E // 2, {"s": 100}),
        DistributionSpec("BPSD2", "BPS", E, 1, E // 4, {"s": 100}),
    ]


_BUILTIN = {spec.name: spec for spec in _builtins()}

#: continuous-uniform stand-in: sizes uniform on (0, 1] at resolution 2**-20
UNIFORM20 = DistributionSpec("UNIFORM20", "DU", 1 << 20, 1, 1 << 20)

_EXTRA = {UNIFORM20.name: UNIFORM20}


def builtin_set_instances() -> list[DistributionSpec]:
    return list(_BUILTIN.values())


def lookup(name: str) -> DistributionSpec:
    spec = _BUILTIN.get(name) or _EXTRA.get(name)
    if spec is None:
        raise KeyError(f"unknown set-instance {name!r}")
    return spec


def custom_spec(kind: str, E: int, lo: int, hi: int, name: str = "custom", **params) -> DistributionSpec:
    if kind == "WEIBULL":
        params.setdefault("scale", E / 2)
    return DistributionSpec(name, kind, E, lo, hi, params)


def _uniform_ints(rng: np.random.Generator, lo: int, hi: int, n: int) -> np.ndarray:
    u = rng.random(n)
    return lo + np.floor(u * (hi - lo + 1)).astype(np.int64)


def _rejection(rng: np.random.Generator, draw, lo: int, hi: int, n: int, what: str) -> np.ndarray:
    """Call ``draw(rng, m)`` for m values at a time until n land in [lo, hi]."""
    out = np.empty(0, dtype=np.int64)
    drawn = accepted = 0
    while len(out) < n:
        m = n - len(out)
        vals = draw(rng, m)
        keep = vals[(vals >= lo) & (vals <= hi)]
        drawn += m
        accepted += len(keep)
        if drawn >= 10_000 and accepted < MIN_ACCEPT * drawn:
            raise ValueError(f"{what}: fewer than {MIN_ACCEPT:.1%} of draws land in [{lo}, {hi}]")
        out = np.concatenate([out, keep.astype(np.int64)])
    return out


def _round_half_up(v: np.ndarray) -> np.ndarray:
    return np.floor(v + 0.5)


def _clip_to_int(v: np.ndarray) -> np.ndarray:
    # values beyond int64 are far outside any range; map them to -1 (rejected)
    v = np.where(np.isfinite(v) & (np.abs(v) < 2.0**62), v, -1.0)
    return v.astype(np.int64)


def zipf_table(spec: DistributionSpec) -> tuple[np.ndarray, np.ndarray]:
    """Support lo..hi and cumulative weights of P(i) proportional to i**-theta."""
    support = np.arange(spec.lo, spec.hi + 1, dtype=np.int64)
    w = support.astype(np.float64) ** (-float(spec.params["theta"]))
    return support, np.cumsum(w)


def poisson_cdf(lam: float, upto: int) -> np.ndarray:
    """P(X <= j) for j = 0..upto, computed from log-pmf."""
    j = np.arange(upto + 1, dtype=np.float64)
    logp = j * math.log(lam) - lam - gammaln(j + 1)
    return np.cumsum(np.exp(logp))


def bps_table(spec: DistributionSpec, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Draw the support points (without replacement) and their weights."""
    m = spec.hi - spec.lo + 1
    s = min(int(spec.params["s"]), m)
    pool = np.arange(spec.lo, spec.hi + 1, dtype=np.int64)
    u = rng.random(s)
    for j in range(s):  # partial Fisher-Yates
        r = j + int(u[j] * (m - j))
        pool[j], pool[r] = pool[r], pool[j]
    support = pool[:s].copy()
    weights = 1.0 - rng.random(s)  # uniform on (0, 1]
    return support, weights


def generate(spec: DistributionSpec, n: int, seed: Seed) -> Sequence:
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = seed.generator()
    lo, hi = spec.lo, spec.hi
    p = spec.params
    kind = spec.kind

    if kind == "DU":
        vals = _uniform_ints(rng, lo, hi, n)
    elif kind == "SORTD":
        vals = np.sort(_uniform_ints(rng, lo, hi, n))[::-1]
    elif kind == "NORMAL":
        mu, sigma = float(p["mu"]), float(p["sigma"])

        def draw(g, m):
            return _clip_to_int(_round_half_up(mu + sigma * ndtri(g.random(m))))
        vals = _rejection(rng, draw, lo, hi, n, spec.name)
    elif kind == "WEIBULL":
        k, scale = float(p["k"]), float(p.get("scale", spec.E / 2))

        def draw(g, m):
            return _clip_to_int(_round_half_up(scale * (-np.log1p(-g.random(m))) ** (1.0 / k)))
        vals = _rejection(rng, draw, lo, hi, n, spec.name)
    elif kind == "POISSON":
        cdf = poisson_cdf(float(p["lam"]), hi)

        def draw(g, m):
            # u beyond cdf[hi] maps to hi + 1 and is rejected
            return np.searchsorted(cdf, g.random(m), side="right").astype(np.int64)
        vals = _rejection(rng, draw, lo, hi, n, spec.name)
    elif kind == "ZIPF":
        support, cum = zipf_table(spec)
        idx = np.searchsorted(cum, rng.random(n) * cum[-1], side="right")
        vals = support[np.minimum(idx, len(support) - 1)]
    elif kind == "BPS":
        support, weights = bps_table(spec, rng)
        cum = np.cumsum(weights)
        idx = np.searchsorted(cum, rng.random(n) * cum[-1], side="right")
        vals = support[np.minimum(idx, len(support) - 1)]
    else:  # pragma: no cover - guarded by DistributionSpec
        raise ValueError(kind)
    return Sequence(spec.E, tuple(int(v) for v in vals))
