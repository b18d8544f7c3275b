"""The H' family: all pre-recursion additions of split-radix, uprooted.

``H'_1 = [1]``, ``H'_2 = I_2`` and, in block layout,

    H'_N = diag(H'_{N/2}, [[H'_{N/4},  H'_{N/4}],
                           [H'_{N/4}, -H'_{N/4}]])

Block layout means the first N/2 coordinates feed the half-size
subproblem and the last two quarters feed the two quarter-size ones, at
every level.  In this layout H'_N is a direct sum of Walsh-Hadamard blocks
on a fixed index partition, so it is applied with one WHT per block.

The FFT side reads its input in natural order; :func:`butterfly_permutation`
gives the (free) gather that converts natural order to block layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .counting import ComplexPair, check_length
from .wht import WHT_KERNELS

__all__ = [
    "PartitionSpec",
    "partition",
    "butterfly_permutation",
    "f_count",
    "f_table",
    "apply_hprime",
    "hprime_matrix",
    "LemmaRow",
    "LemmaReport",
    "lemma_checks",
]


@dataclass(frozen=True)
class PartitionSpec:
    """Ordered index partition of ``range(n)`` into power-of-2 WHT blocks."""

    n: int
    subsets: tuple[tuple[int, ...], ...]

    def sizes(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for s in self.subsets:
            hist[len(s)] = hist.get(len(s), 0) + 1
        return hist

    def to_lists(self) -> list[list[int]]:
        return [list(s) for s in self.subsets]

    @cached_property
    def grouped(self) -> dict[int, np.ndarray]:
        """Blocks grouped by size as ``{size: index array (count, size)}``."""
        by_size: dict[int, list[tuple[int, ...]]] = {}
        for s in self.subsets:
            by_size.setdefault(len(s), []).append(s)
        return {size: np.array(ss, dtype=np.intp) for size, ss in sorted(by_size.items())}


@lru_cache(maxsize=None)
def _partition(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 1:
        return ((0,),)
    if n == 2:
        return ((0,), (1,))
    half, quarter = n // 2, 3 * n // 4
    out = list(_partition(n // 2))
    for subset in _partition(n // 4):
        temp = []
        for i in subset:
            temp.append(i + half)
            temp.append(i + quarter)
        out.append(tuple(temp))
    return tuple(out)


def partition(n: int) -> PartitionSpec:
    """Walsh-Hadamard partition of H'_n (block layout).

    >>> partition(8).to_lists()
    [[0], [1], [2, 3], [4, 6], [5, 7]]
    """
    check_length(n)
    return _spec(n)


@lru_cache(maxsize=None)
def _spec(n: int) -> PartitionSpec:
    return PartitionSpec(n, _partition(n))


@lru_cache(maxsize=None)
def _butterfly(n: int) -> np.ndarray:
    if n == 1:
        return np.zeros(1, dtype=np.intp)
    if n == 2:
        return np.arange(2, dtype=np.intp)
    p2 = _butterfly(n // 2)
    p4 = _butterfly(n // 4)
    return np.concatenate([2 * p2, 4 * p4 + 1, (4 * p4 - 1) % n])


def butterfly_permutation(n: int) -> np.ndarray:
    """Natural index feeding each block-layout position.

    ``x[butterfly_permutation(n)]`` reorders ``x`` so that, recursively,
    even indices come first, then indices 1 mod 4, then indices -1 mod 4
    (with ``x[-1] = x[n-1]``).
    """
    check_length(n)
    p = _butterfly(n).copy()
    p.flags.writeable = False
    return p


# -- block counts -------------------------------------------------------------


@lru_cache(maxsize=None)
def _f(t1: int, t2: int) -> int:
    # F(2**t1, 2**t2); t2 < 0 encodes N2 < 1
    if t2 < 0 or t2 > t1:
        return 0
    if t1 == 0:
        return 1
    if t1 == 1:
        return 2 if t2 == 0 else 0
    return _f(t1 - 1, t2) + _f(t1 - 2, t2 - 1)


def f_count(n1: int, n2) -> int:
    """Number of size-``n2`` WHT blocks in the partition of H'_``n1``.

    >>> f_count(4, 1), f_count(4, 2), f_count(8, 2)
    (2, 1, 3)
    """
    t1 = check_length(n1)
    n2 = Fraction(n2)
    if n2 < 1 or n2 > n1:
        return 0
    t2 = check_length(int(n2)) if n2.denominator == 1 else -1
    return _f(t1, t2)


def f_table(log2n: int) -> list[int]:
    """``[F(2**log2n, 2**j) for j in 0..log2n]``."""
    return [_f(log2n, j) for j in range(log2n + 1)]


# -- applying H' --------------------------------------------------------------


def _resolve_kernel(wht_impl):
    if callable(wht_impl) and not isinstance(wht_impl, str):
        name = getattr(wht_impl, "__name__", "")
        wht_impl = name.removeprefix("wht_")
    try:
        return WHT_KERNELS[wht_impl]
    except KeyError:
        raise ValueError(f"unknown WHT implementation {wht_impl!r}; expected one of {sorted(WHT_KERNELS)}")


def _apply_real(x: np.ndarray, kernel) -> np.ndarray:
    spec = partition(len(x))
    y = np.empty_like(x)
    for size, idx in spec.grouped.items():
        blocks = x[idx]
        if size == 1:
            y[idx] = blocks
            continue
        y[idx] = kernel(blocks, np.zeros(len(idx), dtype=int))
    return y


def apply_hprime(x, wht_impl="h8"):
    """``H'_N x`` (block layout) with one WHT per partition block.

    ``wht_impl`` is one of ``"naive"``, ``"folklore"``, ``"h4"``, ``"h8"``
    or the corresponding ``wht_*`` function.  Gathers and scatters are
    index moves and cost nothing.
    """
    kernel = _resolve_kernel(wht_impl)
    if isinstance(x, ComplexPair):
        check_length(len(x))
        return ComplexPair(_apply_real(x.re, kernel), _apply_real(x.im, kernel))
    arr = np.asarray(x)
    if arr.ndim != 1:
        raise ValueError("expected a 1-D vector")
    check_length(len(arr))
    if np.iscomplexobj(arr):
        pair = apply_hprime(ComplexPair.from_complex(arr), wht_impl)
        return pair.to_complex()
    if arr.dtype != object:
        arr = arr.astype(float)
    return _apply_real(arr, kernel)


def hprime_matrix(n: int) -> np.ndarray:
    """H'_n built directly from its block recursion (test oracle, n <= 1024)."""
    check_length(n)
    if n > 1024:
        raise ValueError("hprime_matrix is an oracle capped at n = 1024")
    if n <= 2:
        return np.eye(n, dtype=np.int8)
    q = hprime_matrix(n // 4)
    m = np.zeros((n, n), dtype=np.int8)
    m[: n // 2, : n // 2] = hprime_matrix(n // 2)
    a, b, c = n // 2, 3 * n // 4, n
    m[a:b, a:b] = q
    m[a:b, b:c] = q
    m[b:c, a:b] = q
    m[b:c, b:c] = -q
    return m


# -- lemma identities ---------------------------------------------------------


@dataclass(frozen=True)
class LemmaRow:
    log2n: int
    size_sum: int  # sum_j F(N, 2^j) 2^j
    weighted_sum: int  # sum_j F(N, 2^j) 2^j j
    weighted_closed_form: Fraction
    mod_sum: Fraction  # sum_j F(N, 2^j) (2^j / 12) (j mod 3)
    mod_constant: float  # (mod_sum - N/12) / N^0.8

    @property
    def size_ok(self) -> bool:
        return self.size_sum == 1 << self.log2n

    @property
    def weighted_ok(self) -> bool:
        return self.weighted_sum == self.weighted_closed_form


@dataclass
class LemmaReport:
    rows: list[LemmaRow] = field(default_factory=list)

    @property
    def sizes_pass(self) -> bool:
        return all(r.size_ok for r in self.rows)

    @property
    def weighted_pass(self) -> bool:
        return all(r.weighted_ok for r in self.rows)

    @property
    def max_c(self) -> float:
        """Smallest C >= 0 with mod_sum <= N/12 + C N^0.8 on every row."""
        return max([0.0] + [r.mod_constant for r in self.rows])


def weighted_closed_form(log2n: int) -> Fraction:
    n = 1 << log2n
    return Fraction(n * log2n, 3) + Fraction(2 * (-1) ** log2n, 9) - Fraction(2 * n, 9)


def lemma_checks(log2n_max: int) -> LemmaReport:
    """Evaluate the block-count identities for N = 1, 2, ..., 2**log2n_max.

    All sums are exact integers or fractions.
    """
    if not 0 <= log2n_max <= 40:
        raise ValueError("log2n_max must be in [0, 40]")
    report = LemmaReport()
    for t in range(log2n_max + 1):
        n = 1 << t
        fs = f_table(t)
        size_sum = sum(f << j for j, f in enumerate(fs))
        weighted = sum((f << j) * j for j, f in enumerate(fs))
        mod_sum = Fraction(sum((f << j) * (j % 3) for j, f in enumerate(fs)), 12)
        c = float((mod_sum - Fraction(n, 12))) / n**0.8
        report.rows.append(LemmaRow(t, size_sum, weighted, weighted_closed_form(t), mod_sum, c))
    return report
