"""Verification and counting sweeps shared by the CLI, the tests and the demos."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .counting import with_tally
from .fft import dft_naive, fft_sr, msr, whufft
from .hprime import apply_hprime, hprime_matrix
from .predictors import LEADING_CONSTANTS, Prediction, predict
from .wht import wht_folklore, wht_h4, wht_h8, wht_naive

__all__ = [
    "AlgoSpec",
    "ALGORITHMS",
    "RNG_NAME",
    "BenchRecord",
    "VerifyResult",
    "make_input",
    "relative_error",
    "verify",
    "bench",
    "table",
]

RNG_NAME = "numpy.random.PCG64(SeedSequence(seed, spawn_key=(log2n, trial)))"


@dataclass(frozen=True)
class AlgoSpec:
    name: str
    domain: str  # "wht", "hprime" or "fft"
    run: Callable
    oracle: Callable
    predictor: str | None
    max_verify_log2n: int
    wht_tol: bool = False


def _hprime_oracle(x):
    return hprime_matrix(len(x)).astype(float) @ x


def _fft_reference(x):
    # independent of dft_naive, used only to check the oracle itself
    return np.fft.fft(x)


ALGORITHMS: dict[str, AlgoSpec] = {
    s.name: s
    for s in [
        AlgoSpec("wht-naive", "wht", wht_naive, wht_folklore, None, 12, True),
        AlgoSpec("wht-folklore", "wht", wht_folklore, wht_naive, "folklore", 12, True),
        AlgoSpec("wht-h4", "wht", wht_h4, wht_naive, "h4", 12, True),
        AlgoSpec("wht-h8", "wht", wht_h8, wht_naive, "h8", 12, True),
        AlgoSpec("hprime", "hprime", lambda x: apply_hprime(x, "h8"), _hprime_oracle, "hprime_exact", 10, True),
        AlgoSpec("fft-naive", "fft", dft_naive, _fft_reference, None, 12),
        AlgoSpec("fft-sr", "fft", fft_sr, dft_naive, "sr", 12),
        AlgoSpec("fft-msr", "fft", msr, dft_naive, "msr", 12),
        AlgoSpec("fft-whufft", "fft", whufft, dft_naive, "whufft", 12),
    ]
}

MAX_COUNT_LOG2N = 22


def _rng(seed: int, log2n: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(log2n, trial))))


def make_input(spec: AlgoSpec, log2n: int, trial: int, seed: int, integer: bool = False) -> np.ndarray:
    """Seeded test vector: uniform in [-1, 1] or integers in [-8, 8].

    WHT inputs are real; H' and FFT inputs are complex.
    """
    rng = _rng(seed, log2n, trial)
    n = 1 << log2n

    def draw():
        if integer:
            return rng.integers(-8, 9, n).astype(float)
        return rng.uniform(-1.0, 1.0, n)

    if spec.domain == "wht":
        return draw()
    re = draw()
    return re + 1j * draw()


def relative_error(y, ref) -> float:
    """``max|y - ref| / max|ref|`` (absolute error when ``ref`` is zero)."""
    y = np.asarray(y)
    ref = np.asarray(ref)
    err = float(np.max(np.abs(y - ref))) if y.size else 0.0
    scale = float(np.max(np.abs(ref))) if ref.size else 0.0
    return err / scale if scale > 0 else err


@dataclass
class VerifyResult:
    algo: str
    log2n: int
    trials: int
    max_rel_err: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_rel_err <= self.tol


def verify(algo: str, log2n: int, trials: int, seed: int, tol: float, integer: bool = False,
           vectors: list[np.ndarray] | None = None) -> VerifyResult:
    """Run ``algo`` against its oracle on seeded inputs (or on ``vectors``)."""
    spec = ALGORITHMS[algo]
    if vectors is None:
        if not 0 <= log2n <= spec.max_verify_log2n:
            raise ValueError(f"{algo}: oracle sizes are capped at log2n = {spec.max_verify_log2n}")
        vectors = [make_input(spec, log2n, t, seed, integer) for t in range(trials)]
    worst = 0.0
    for x in vectors:
        worst = max(worst, relative_error(spec.run(x), spec.oracle(x)))
    return VerifyResult(algo, log2n, len(vectors), worst, tol)


@dataclass
class BenchRecord:
    algo: str
    log2n: int
    add_sub: int
    mul: int
    div2: int
    mul_pow2: int
    total: int
    predicted_total: int | float | None
    predicted_kind: str
    max_rel_err: float | None
    seed: int

    FIELDS = ("algo", "log2n", "add_sub", "mul", "div2", "mul_pow2", "total",
              "predicted_total", "predicted_kind", "max_rel_err", "seed")

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.FIELDS}


def _pred_value(p: Prediction | None):
    if p is None:
        return None, "none"
    v = p.value
    return (int(v) if v.denominator == 1 else float(v)), p.kind.value


def bench(algo: str, log2n: int, seed: int, max_rel_err: float | None = None) -> BenchRecord:
    """Count one run of ``algo`` at ``N = 2**log2n`` under a fresh tally."""
    spec = ALGORITHMS[algo]
    if not 0 <= log2n <= MAX_COUNT_LOG2N:
        raise ValueError(f"counting sweeps are capped at log2n = {MAX_COUNT_LOG2N}")
    x = make_input(spec, log2n, 0, seed)
    _, tally = with_tally(spec.run, x)
    pred = predict(spec.predictor, log2n) if spec.predictor else None
    value, kind = _pred_value(pred)
    return BenchRecord(algo, log2n, tally.add_sub, tally.mul, tally.div2, tally.mul_pow2, tally.total(),
                       value, kind, max_rel_err, seed)


TABLE_ALGOS = {
    "wht-folklore": "folklore",
    "wht-h8": "h8",
    "fft-sr": "sr",
    "fft-msr": "msr",
    "fft-whufft": "whufft",
}


def table(log2n_max: int, seed: int = 0) -> list[dict]:
    """Measured ``total / (N log2 N)`` per algorithm next to its leading constant."""
    if not 1 <= log2n_max <= 20:
        raise ValueError("table sizes must satisfy 1 <= log2n_max <= 20")
    rows = []
    for algo, key in TABLE_ALGOS.items():
        c: Fraction = LEADING_CONSTANTS[key]
        ratios = {}
        for t in range(1, log2n_max + 1):
            rec = bench(algo, t, seed)
            ratios[t] = rec.total / ((1 << t) * t)
        rows.append({"algo": algo, "leading_constant": float(c), "leading_constant_exact": str(c),
                     "ratios": ratios})
    return rows

