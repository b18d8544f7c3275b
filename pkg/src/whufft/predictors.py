"""Closed-form operation counts and crossover search.

Everything is evaluated with integers and :class:`fractions.Fraction`, so
exact predictions are compared to measured tallies with ``==``.

Prediction kinds
----------------
``EXACT``
    The count the implementation must reproduce, operation class by class.
``EXACT_CANDIDATE``
    A published exact formula whose low-order terms depend on special-case
    handling the source leaves unstated.  Deltas are reported.
``UPPER_BOUND``
    A bound the measured count must not exceed (up to a stated slack).
``LEADING_ORDER``
    Only ``c N log2 N`` is meaningful.

The ``h4`` and ``h8`` entries count dyadic scalings as ``N - 2**m``
(``m = log2 N mod 2`` resp. ``mod 3``): the leftmost leaf of the recursion
has size ``2**m`` and keeps exponent 0, so those entries are never scaled.
``h4_rounded`` and ``h8_rounded`` keep the rounder ``N - 1`` and are therefore
upper bounds, tight when ``m = 0``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .counting import OpTally
from .hprime import f_table

__all__ = [
    "PredictionKind",
    "Prediction",
    "ALGOS",
    "predict",
    "crossover",
    "reduction_constant",
    "LEADING_CONSTANTS",
]


class PredictionKind(str, enum.Enum):
    EXACT = "exact"
    EXACT_CANDIDATE = "exact_candidate"
    UPPER_BOUND = "upper_bound"
    LEADING_ORDER = "leading_order"


@dataclass(frozen=True)
class Prediction:
    algo: str
    log2n: int
    kind: PredictionKind
    value: Fraction
    tally: OpTally | None = None

    @property
    def total(self) -> Fraction | int:
        """Integer when the value is integral, else the exact fraction."""
        return int(self.value) if self.value.denominator == 1 else self.value


def _wht_tally(log2n: int, arity_log: int, adds_per_block: int, rounded: bool) -> OpTally:
    n = 1 << log2n
    m = log2n % arity_log
    blocks = n * (log2n - m) // ((1 << arity_log) * arity_log)  # combinations x block width
    # per combination of 2**a blocks of width w: adds_per_block * w adds, w halvings
    add = adds_per_block * blocks + m * n
    div2 = blocks
    pow2 = n - 1 if rounded else n - (1 << m)
    return OpTally(add_sub=add, div2=div2, mul_pow2=max(pow2, 0))


def _h4(t, rounded=False):
    return _wht_tally(t, 2, 7, rounded)


def _h8(t, rounded=False):
    return _wht_tally(t, 3, 22, rounded)


def _hprime_exact(t: int) -> OpTally:
    acc = OpTally()
    for j, f in enumerate(f_table(t)):
        if f:
            acc = acc + _h8(j).scaled(2 * f)
    return acc


def _sign(t: int) -> int:
    return -1 if t % 2 else 1


def _tw(t):
    n = 1 << t
    return Fraction(28, 9) * n * t - Fraction(112, 27) * n - 2 * t - Fraction(2, 27) * _sign(t) + 8


def _msr(t):
    n = 1 << t
    return Fraction(34, 9) * n * t - Fraction(124, 27) * n - 2 * t + Fraction(10, 27) * _sign(t) + 8


def _exact(algo, t, tally):
    return Prediction(algo, t, PredictionKind.EXACT, Fraction(tally.total()), tally)


def _value(algo, t, kind, v):
    return Prediction(algo, t, kind, Fraction(v))


_K = PredictionKind

ALGOS = {
    "folklore": lambda t: _exact("folklore", t, OpTally(add_sub=(1 << t) * t)),
    "h4": lambda t: _exact("h4", t, _h4(t)),
    "h8": lambda t: _exact("h8", t, _h8(t)),
    "h4_rounded": lambda t: Prediction("h4_rounded", t, _K.UPPER_BOUND, Fraction(_h4(t, True).total()), _h4(t, True)),
    "h8_rounded": lambda t: Prediction("h8_rounded", t, _K.UPPER_BOUND, Fraction(_h8(t, True).total()), _h8(t, True)),
    "hprime_exact": lambda t: _exact("hprime_exact", t, _hprime_exact(t)),
    "hprime_bound": lambda t: _value(
        "hprime_bound", t, _K.UPPER_BOUND, Fraction(23, 36) * (1 << t) * t + Fraction(25, 12) * (1 << t)
    ),
    "tw": lambda t: _value("tw", t, _K.EXACT_CANDIDATE, _tw(t)),
    "whufft": lambda t: _value(
        "whufft", t, _K.UPPER_BOUND, Fraction(15, 4) * (1 << t) * t - Fraction(223, 108) * (1 << t)
    ),
    "msr": lambda t: _value("msr", t, _K.EXACT_CANDIDATE, _msr(t)),
    "sr": lambda t: _value("sr", t, _K.LEADING_ORDER, 4 * (1 << t) * t),
}

# leading constants c in c N log2 N
LEADING_CONSTANTS = {
    "folklore": Fraction(1),
    "h8": Fraction(23, 24),
    "sr": Fraction(4),
    "msr": Fraction(34, 9),
    "whufft": Fraction(15, 4),
}


def reduction_constant(c) -> Fraction:
    """Leading constant of the FFT obtained from a ``c N log2 N`` WHT.

    >>> reduction_constant(1), reduction_constant(Fraction(23, 24))
    (Fraction(34, 9), Fraction(15, 4))
    """
    return Fraction(2, 3) * Fraction(c) + Fraction(28, 9)


def predict(algo: str, log2n: int, c=None) -> Prediction:
    """Predicted count for ``algo`` at ``N = 2**log2n`` (0 <= log2n <= 60).

    ``algo="reduction"`` needs the WHT constant ``c`` and returns the
    leading-order count ``(2c/3 + 28/9) N log2 N``.

    >>> predict("h8", 3).total, predict("folklore", 3).total
    (30, 24)
    """
    if not isinstance(log2n, int) or not 0 <= log2n <= 60:
        raise ValueError(f"log2n must be an integer in [0, 60], got {log2n!r}")
    if algo == "reduction":
        if c is None:
            raise ValueError("reduction needs the WHT leading constant c")
        return _value("reduction", log2n, _K.LEADING_ORDER, reduction_constant(c) * (1 << log2n) * log2n)
    try:
        fn = ALGOS[algo]
    except KeyError:
        raise ValueError(f"unknown algorithm {algo!r}; expected one of {sorted(ALGOS) + ['reduction']}")
    return fn(log2n)


_COMPARABLE = {_K.EXACT, _K.UPPER_BOUND}


def crossover(algo_a: str, algo_b: str, log2n_max: int) -> int | None:
    """Smallest ``log2n`` in ``[1, log2n_max]`` with total(a) < total(b).

    >>> crossover("h8", "folklore", 40)
    24
    """
    for t in range(1, log2n_max + 1):
        pa, pb = predict(algo_a, t), predict(algo_b, t)
        if pa.kind not in _COMPARABLE or pb.kind not in _COMPARABLE:
            raise ValueError(f"cannot compare {pa.kind.value} with {pb.kind.value}")
        if pa.value < pb.value:
            return t
    return None
