"""DFT kernels over counted complex arithmetic.

Conventions: ``omega_N = exp(-2 pi i / N)`` and ``x[-1] = x[N-1]``.

``dft_naive``
    O(N^2) oracle.
``fft_sr``
    Conjugate-pair split-radix.
``msr``
    Modified split-radix, four mutually recursive variants whose outputs
    are the DFT divided by 1, ``s_{N,k}``, ``s_{2N,k}`` or ``s_{4N,k}``.
``whufft_tw``
    The twiddle half of the uprooted FFT (TW, TWS, TWS2, TWS4).  It reads
    its input in block layout, i.e. already transformed by H' (see
    :mod:`whufft.hprime`).
``whufft``
    ``whufft_tw(H'(x[perm]))`` with H' computed through ``wht_h8`` blocks.

Recursions are evaluated level by level: every subproblem of one size and
variant is stacked into a single batch, so the Python-level work is
O(log N) numpy calls per level regardless of N.  Twiddle constants are
tabulated once per size and are free circuit constants; multiplying by an
entry that is exactly 0 or +-1 costs nothing.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .counting import ComplexPair, check_length, vadd, vdot2, vscale, vsub
from .hprime import apply_hprime, butterfly_permutation

__all__ = [
    "ScaledVariant",
    "s_scale",
    "t_twiddle",
    "s_table",
    "scale_divisors",
    "TwiddleTables",
    "twiddles",
    "dft_naive",
    "fft_sr",
    "msr",
    "whufft_tw",
    "whufft",
    "conj_combine",
    "conj_combine_outputs",
]

_SNAP = 1e-12


class ScaledVariant(str, enum.Enum):
    """Output scaling: DFT divided by 1, s_{N,k}, s_{2N,k}, s_{4N,k}."""

    PLAIN = "plain"
    S = "s"
    S2 = "s2"
    S4 = "s4"


def _variant(v) -> ScaledVariant:
    try:
        return ScaledVariant(v.value if isinstance(v, ScaledVariant) else str(v).lower())
    except ValueError:
        raise ValueError(f"unknown variant {v!r}; expected one of {[m.value for m in ScaledVariant]}")


# -- scale factors and twiddles ----------------------------------------------


def _snap(a: np.ndarray) -> np.ndarray:
    a = a.copy()
    for target in (1.0, -1.0, 0.0):
        a[np.abs(a - target) < _SNAP] = target
    return a


@lru_cache(maxsize=None)
def s_table(n: int) -> np.ndarray:
    """``[s_{n,k} for k in range(n)]`` from the recursive definition."""
    check_length(n)
    if n <= 4:
        t = np.ones(n)
    else:
        q = n // 4
        k4 = np.arange(q)
        ang = 2 * np.pi * k4 / n
        trig = np.where(k4 <= n // 8, np.cos(ang), np.sin(ang))
        t = np.tile(s_table(q) * trig, 4)
    t.flags.writeable = False
    return t


def s_scale(n: int, k: int) -> float:
    """Scale factor ``s_{n,k}``; ``0 <= k < n``.

    >>> s_scale(16, 3)  # sin(3 pi / 8)
    0.9238795325112867
    """
    check_length(n)
    if not 0 <= k < n:
        raise ValueError(f"k must satisfy 0 <= k < {n}, got {k}")
    return float(s_table(n)[k])


def _s(n: int, k: np.ndarray) -> np.ndarray:
    # s_{n,k} for any k (periodic in n/4), n may be below 4
    if n <= 4:
        return np.ones(len(k))
    return s_table(n)[np.asarray(k) % n]


def _omega(n: int, k: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ang = 2 * np.pi * np.asarray(k) / n
    return _snap(np.cos(ang)), _snap(-np.sin(ang))


def t_twiddle(n: int, k: int) -> complex:
    """``t_n^k = omega_n^k s_{n/4,k} / s_{n,k}`` with the unit part snapped.

    >>> t_twiddle(16, 3).imag
    -1.0
    """
    check_length(n)
    if not 0 <= k < n:
        raise ValueError(f"k must satisfy 0 <= k < {n}, got {k}")
    r, ri = _t(n, np.array([k]))
    return complex(r[0], ri[0])


def _t(n: int, k: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    k = np.asarray(k)
    ang = 2 * np.pi * k / n
    ratio = _s(max(n // 4, 1), k) / _s(n, k)
    return _snap(np.cos(ang) * ratio), _snap(-np.sin(ang) * ratio)


def scale_divisors(n: int, variant) -> np.ndarray:
    """``d_V(k)`` such that ``variant output * d_V = DFT``."""
    v = _variant(variant)
    k = np.arange(n)
    if v is ScaledVariant.PLAIN:
        return np.ones(n)
    mult = {ScaledVariant.S: 1, ScaledVariant.S2: 2, ScaledVariant.S4: 4}[v]
    return _s(mult * n, k).copy()


@dataclass(frozen=True)
class TwiddleTables:
    """Circuit constants of one recursion level of size ``n`` (k < n/4)."""

    n: int
    omega: tuple[np.ndarray, np.ndarray]  # omega_n^k
    plain: tuple[np.ndarray, np.ndarray]  # omega_n^k s_{n/4,k}
    t: tuple[np.ndarray, np.ndarray]  # t_n^k
    ratio2: tuple[np.ndarray, np.ndarray]  # s_{n,k}/s_{2n,k}, s_{n,k}/s_{2n,k+n/4}
    ratio4: tuple[np.ndarray, ...]  # s_{n,k}/s_{4n,k+qn/4}, q = 0..3


@lru_cache(maxsize=None)
def twiddles(n: int) -> TwiddleTables:
    check_length(n)
    if n < 4:
        raise ValueError("twiddle tables exist for n >= 4")
    q = n // 4
    k = np.arange(q)
    wr, wi = _omega(n, k)
    s4 = _s(q, k)
    sn = _s(n, k)
    return TwiddleTables(
        n=n,
        omega=(wr, wi),
        plain=(_snap(np.cos(2 * np.pi * k / n) * s4), _snap(-np.sin(2 * np.pi * k / n) * s4)),
        t=_t(n, k),
        ratio2=(_snap(sn / _s(2 * n, k)), _snap(sn / _s(2 * n, k + q))),
        ratio4=tuple(_snap(sn / _s(4 * n, k + j * q)) for j in range(4)),
    )


# -- oracle --------------------------------------------------------------------


def dft_naive(x) -> np.ndarray:
    """Direct O(N^2) DFT.  Accepts shape ``(N,)`` or ``(N, B)`` (columns).

    >>> np.round(dft_naive([1, 2, 3, 4]), 12) + 0.0
    array([10.+0.j, -2.+2.j, -2.+0.j, -2.-2.j])
    """
    if isinstance(x, ComplexPair):
        x = x.to_complex()
    x = np.asarray(x, dtype=complex)
    n = x.shape[0]
    if n == 0:
        raise ValueError("empty input")
    check_length(n)
    roots = np.exp(-2j * np.pi * np.arange(n) / n)
    out = np.empty(x.shape, dtype=complex)
    j = np.arange(n)
    step = max(1, (1 << 22) // n)
    for lo in range(0, n, step):
        k = np.arange(lo, min(n, lo + step))
        out[lo : lo + len(k)] = roots[np.outer(k, j) % n] @ x
    return out


# -- the conjugate-pair combination ---------------------------------------------


def conj_combine(a, a1, z, z1, b, b1, c, c1, r, r1):
    """Shared products of the conjugate-pair butterfly.

    Returns ``(D, E, F, G)`` with ``D = r b - r1 c1``, ``E = r b1 + r1 c``,
    ``F = r1 b + r c1`` and ``G = r1 b1 - r c``.  The first four
    arguments are accepted for signature symmetry with
    :func:`conj_combine_outputs` and are not used here.
    """
    r = np.asarray(r, dtype=float)
    r1 = np.asarray(r1, dtype=float)
    d = vdot2(r, b, -r1, c1)
    e = vdot2(r, b1, r1, c)
    f = vdot2(r1, b, r, c1)
    g = vdot2(r1, b1, -r, c)
    return d, e, f, g


def conj_combine_outputs(a, a1, z, z1, b, b1, c, c1, r, r1):
    """Full butterfly: ``(D, E, F, G)`` and the eight output reals.

    With ``b + b1 i = B + C`` and ``c + c1 i = B - C`` the outputs are

    ``A + (alpha B + alpha* C)``  -> ``(a + D, a1 + E)``
    ``Z - i(alpha B - alpha* C)`` -> ``(z + F, z1 + G)``
    ``A - (alpha B + alpha* C)``  -> ``(a - D, a1 - E)``
    ``Z + i(alpha B - alpha* C)`` -> ``(z - F, z1 - G)``

    for ``alpha = r + r1 i``.
    """
    d, e, f, g = conj_combine(a, a1, z, z1, b, b1, c, c1, r, r1)
    outs = (vadd(a, d), vadd(a1, e), vadd(z, f), vadd(z1, g),
            vsub(a, d), vsub(a1, e), vsub(z, f), vsub(z1, g))
    return (d, e, f, g), outs


# -- level-batched recursion ------------------------------------------------------

P, S, S2, S4 = ScaledVariant.PLAIN, ScaledVariant.S, ScaledVariant.S2, ScaledVariant.S4

_CHILD_A = {
    "sr": {P: P},
    "msr": {P: P, S: S2, S2: S4, S4: S2},
}
_CHILD_BC = {"sr": P, "msr": S}


def _split(re, im, layout):
    n = re.shape[1]
    if layout == "block":
        h, t = n // 2, 3 * n // 4
        parts = (slice(0, h), slice(h, t), slice(t, n))
        return [(re[:, p], im[:, p]) for p in parts]
    last = np.r_[n - 1, 3:n - 1:4] if n > 4 else np.array([n - 1])
    idx = (np.arange(0, n, 2), np.arange(1, n, 4), last)
    return [(re[:, i], im[:, i]) for i in idx]


def _base(re, im, v: ScaledVariant):
    n = re.shape[1]
    if n == 1:
        return re, im
    y0r, y0i = vadd(re[:, :1], re[:, 1:]), vadd(im[:, :1], im[:, 1:])
    y1r, y1i = vsub(re[:, :1], re[:, 1:]), vsub(im[:, :1], im[:, 1:])
    if v is S4:
        # DFT_1 / s_{8,1}; the other divisors are 1 at this size
        c = 1.0 / s_table(8)[1]
        y1r, y1i = vscale(c, y1r), vscale(c, y1i)
    return np.concatenate([y0r, y1r], axis=1), np.concatenate([y0i, y1i], axis=1)


def _cmul(r, ri, xr, xi):
    # (r + ri i)(xr + xi i)
    return vdot2(r, xr, -ri, xi), vdot2(r, xi, ri, xr)


def _cmul_conj(r, ri, xr, xi):
    # (r - ri i)(xr + xi i)
    return vdot2(r, xr, ri, xi), vdot2(r, xi, -ri, xr)


def _join(*blocks):
    return np.concatenate(blocks, axis=1)


def _combine_natural(family, v, n, A, B, C):
    """Split-radix / MSR butterfly in the form written by its authors."""
    tw = twiddles(n)
    q = n // 4
    if family == "sr":
        r, ri = tw.omega
    elif v is P:
        r, ri = tw.plain
    else:
        r, ri = tw.t
    ar, ai = A
    alo, ahi = (ar[:, :q], ai[:, :q]), (ar[:, q:], ai[:, q:])
    ur, ui = _cmul(r, ri, *B)
    wr, wi = _cmul_conj(r, ri, *C)
    sr_, si = vadd(ur, wr), vadd(ui, wi)
    dr, di = vsub(ur, wr), vsub(ui, wi)
    if v is S2:
        s1, s2 = tw.ratio2
        sr_, si = vscale(s1, sr_), vscale(s1, si)
        dr, di = vscale(s2, dr), vscale(s2, di)
    y0 = (vadd(alo[0], sr_), vadd(alo[1], si))
    y1 = (vadd(ahi[0], di), vsub(ahi[1], dr))
    y2 = (vsub(alo[0], sr_), vsub(alo[1], si))
    y3 = (vsub(ahi[0], di), vadd(ahi[1], dr))
    ys = [y0, y1, y2, y3]
    if v is S4:
        ys = [(vscale(c, yr), vscale(c, yi)) for c, (yr, yi) in zip(tw.ratio4, ys)]
    return _join(*(y[0] for y in ys)), _join(*(y[1] for y in ys))


def _combine_tw(family, v, n, A, B, C):
    """TW-family butterfly on H'-transformed subresults."""
    tw = twiddles(n)
    q = n // 4
    r, ri = tw.plain if v is P else tw.t
    ar, ai = A
    a, a1, z, z1 = ar[:, :q], ai[:, :q], ar[:, q:], ai[:, q:]
    d, e, f, g = conj_combine(a, a1, z, z1, B[0], B[1], C[0], C[1], r, ri)
    if v is S2:
        s1, s2 = tw.ratio2
        d, e = vscale(s1, d), vscale(s1, e)
        f, g = vscale(s2, f), vscale(s2, g)
    ys = [(vadd(a, d), vadd(a1, e)), (vadd(z, f), vadd(z1, g)),
          (vsub(a, d), vsub(a1, e)), (vsub(z, f), vsub(z1, g))]
    if v is S4:
        ys = [(vscale(c, yr), vscale(c, yi)) for c, (yr, yi) in zip(tw.ratio4, ys)]
    return _join(*(y[0] for y in ys)), _join(*(y[1] for y in ys))


def _run(re, im, top: ScaledVariant, family: str, layout: str):
    """Evaluate one recursion family on rows of ``(re, im)`` (shape (B, N))."""
    n_top = re.shape[1]
    child_a = _CHILD_A["msr" if family in ("msr", "tw") else "sr"]
    child_bc = _CHILD_BC["msr" if family in ("msr", "tw") else "sr"]
    combine = _combine_tw if family == "tw" else _combine_natural

    # top-down: stack every subproblem of one (size, variant) into one batch
    pending: dict[tuple[int, ScaledVariant], list] = {(n_top, top): [(re, im)]}
    rows: dict[tuple[int, ScaledVariant], int] = {(n_top, top): re.shape[0]}
    batches: dict[tuple[int, ScaledVariant], tuple] = {}
    links: dict[tuple[int, ScaledVariant], tuple] = {}
    n = n_top
    while n >= 1:
        for v in ScaledVariant:
            key = (n, v)
            if key not in pending:
                continue
            parts = pending.pop(key)
            br = np.concatenate([p[0] for p in parts], axis=0)
            bi = np.concatenate([p[1] for p in parts], axis=0)
            batches[key] = (br, bi)
            if n <= 2:
                continue
            (xa, xb, xc) = _split(br, bi, layout)
            ka, kbc = (n // 2, child_a[v]), (n // 4, child_bc)
            off_a = rows.get(ka, 0)
            off_bc = rows.get(kbc, 0)
            nb = br.shape[0]
            pending.setdefault(ka, []).append(xa)
            pending.setdefault(kbc, []).append(
                (np.concatenate([xb[0], xc[0]], axis=0), np.concatenate([xb[1], xc[1]], axis=0))
            )
            rows[ka] = off_a + nb
            rows[kbc] = off_bc + 2 * nb
            links[key] = (ka, off_a, kbc, off_bc, nb)
        n //= 2

    # bottom-up
    results: dict[tuple[int, ScaledVariant], tuple] = {}
    for key in sorted(batches, key=lambda kv: kv[0]):
        n, v = key
        br, bi = batches[key]
        if n <= 2:
            results[key] = _base(br, bi, v)
            continue
        ka, off_a, kbc, off_bc, nb = links[key]
        ra, ia = results[ka]
        rbc, ibc = results[kbc]
        A = (ra[off_a:off_a + nb], ia[off_a:off_a + nb])
        B = (rbc[off_bc:off_bc + nb], ibc[off_bc:off_bc + nb])
        C = (rbc[off_bc + nb:off_bc + 2 * nb], ibc[off_bc + nb:off_bc + 2 * nb])
        results[key] = combine(family, v, n, A, B, C)
    return results[(n_top, top)]


def _to_pair(x):
    """Normalize input to (re, im, kind) with 1-D field arrays."""
    if isinstance(x, ComplexPair):
        return x.re, x.im, "pair"
    arr = np.asarray(x)
    if arr.ndim != 1:
        raise ValueError("expected a 1-D vector")
    if arr.dtype == object:
        raise TypeError("object arrays must be wrapped in a ComplexPair (re, im)")
    arr = arr.astype(complex)
    return arr.real.copy(), arr.imag.copy(), "complex"


def _from_pair(re, im, kind):
    if kind == "pair":
        return ComplexPair(re, im)
    return re.astype(float) + 1j * im.astype(float)


def _transform(x, variant, family, layout):
    re, im, kind = _to_pair(x)
    check_length(len(re))
    yr, yi = _run(re[None, :], im[None, :], _variant(variant), family, layout)
    return _from_pair(yr[0], yi[0], kind)


def fft_sr(x):
    """Conjugate-pair split-radix FFT."""
    return _transform(x, P, "sr", "natural")


def msr(x, variant="plain"):
    """Modified split-radix FFT; ``variant`` selects the output scaling."""
    return _transform(x, variant, "msr", "natural")


def whufft_tw(x, variant="plain"):
    """TW / TWS / TWS2 / TWS4 applied to block-layout, H'-transformed input."""
    return _transform(x, variant, "tw", "block")


def whufft(x, wht_impl="h8"):
    """Walsh-Hadamard uprooted FFT: ``TW(H'(x))``.

    >>> np.round(whufft([1, 2, 3, 4]), 12)
    array([10.+0.j, -2.+2.j, -2.+0.j, -2.-2.j])
    """
    re, im, kind = _to_pair(x)
    perm = butterfly_permutation(len(re))
    v = apply_hprime(ComplexPair(re[perm], im[perm]), wht_impl)
    y = whufft_tw(v, P)
    return y if kind == "pair" else y.to_complex()
