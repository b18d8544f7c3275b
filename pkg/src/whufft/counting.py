"""Operation counting for arithmetic circuits.

Every transform in this package is written against a handful of array
primitives (``vadd``, ``vsub``, ``vscale``, ``vdot2``) that charge the
active :class:`OpTally` scope.  Multiplications are always by constants
that are known when the circuit is built (twiddles, scale ratios, powers
of two), so the charge depends only on the constant's class:

* multiplying by 0, 1 or -1 is free, and a product with the constant 0
  is a structural zero that never feeds an addition;
* multiplying by 1/2 is a "divide by 2";
* multiplying by any other exact power of two is a "multiply by 2^k";
* anything else is a generic multiplication.

Two routes are supported by the same primitives.  Float arrays are
charged in bulk (one count per element).  Object arrays holding
:class:`CountedScalar` values are charged one scalar operation at a time
by the scalars themselves, which gives an independent check on the bulk
counts.
"""

from __future__ import annotations

import contextlib
import contextvars
import enum
import math
from dataclasses import dataclass, fields
from typing import Any, Callable, Iterator

import numpy as np

__all__ = [
    "OpClass",
    "OpTally",
    "ConstKind",
    "classify_constant",
    "charge",
    "with_tally",
    "tally_scope",
    "CountedScalar",
    "counted_array",
    "values_of",
    "vadd",
    "vsub",
    "vscale",
    "vdot2",
    "ComplexPair",
    "check_length",
]


class OpClass(enum.Enum):
    ADD_SUB = "add_sub"
    MUL = "mul"
    DIV2 = "div2"
    MUL_POW2 = "mul_pow2"


@dataclass(frozen=True)
class OpTally:
    """Exact counts of real (or field) operations, one field per class."""

    add_sub: int = 0
    mul: int = 0
    div2: int = 0
    mul_pow2: int = 0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, (int, np.integer)) or v < 0:
                raise ValueError(f"{f.name} must be a nonnegative integer, got {v!r}")
            object.__setattr__(self, f.name, int(v))

    def total(self) -> int:
        return self.add_sub + self.mul + self.div2 + self.mul_pow2

    def __add__(self, other: "OpTally") -> "OpTally":
        if not isinstance(other, OpTally):
            return NotImplemented
        return OpTally(
            self.add_sub + other.add_sub,
            self.mul + other.mul,
            self.div2 + other.div2,
            self.mul_pow2 + other.mul_pow2,
        )

    def scaled(self, factor: int) -> "OpTally":
        return OpTally(
            self.add_sub * factor,
            self.mul * factor,
            self.div2 * factor,
            self.mul_pow2 * factor,
        )

    def get(self, op: OpClass) -> int:
        return getattr(self, op.value)

    def as_dict(self) -> dict[str, int]:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["total"] = self.total()
        return d


@dataclass(frozen=True)
class ConstKind:
    """Classification of a circuit constant.

    ``tag`` is one of ``"zero"``, ``"plus_one"``, ``"minus_one"``,
    ``"pow_two"`` or ``"generic"``; ``exponent`` is only meaningful for
    ``"pow_two"`` (value == 2**exponent, exponent != 0).
    """

    tag: str
    exponent: int = 0

    @property
    def is_free(self) -> bool:
        return self.tag in ("zero", "plus_one", "minus_one")

    @property
    def op_class(self) -> OpClass | None:
        """The class charged for one real multiplication by this constant."""
        if self.is_free:
            return None
        if self.tag == "pow_two":
            return OpClass.DIV2 if self.exponent == -1 else OpClass.MUL_POW2
        return OpClass.MUL


ZERO = ConstKind("zero")
PLUS_ONE = ConstKind("plus_one")
MINUS_ONE = ConstKind("minus_one")
GENERIC = ConstKind("generic")


def classify_constant(c: float) -> ConstKind:
    c = float(c)
    if not math.isfinite(c):
        raise ValueError(f"cannot classify non-finite constant {c!r}")
    if c == 0.0:
        return ZERO
    if c == 1.0:
        return PLUS_ONE
    if c == -1.0:
        return MINUS_ONE
    if c > 0:
        mant, exp = math.frexp(c)
        if mant == 0.5:
            return ConstKind("pow_two", exp - 1)
    return GENERIC


# -- charging rules ---------------------------------------------------------

_STEPS = (
    "add",  # real add or subtract
    "mul_const",  # real times constant of kind `const`
    "mul",  # real times real, both variable
    "complex_add",
    "complex_scale",  # real constant of kind `const` times complex
    "complex_mul",  # generic complex product
    "complex_mul_unit",  # complex product where one real part is +-1
)


def _tally_of(counts: dict[OpClass, int]) -> OpTally:
    return OpTally(**{op.value: n for op, n in counts.items()})


def charge(tally: OpTally, step: str, const: ConstKind | None = None, count: int = 1) -> OpTally:
    """Return ``tally`` plus the cost of ``count`` arithmetic steps.

    >>> charge(OpTally(), "complex_add")
    OpTally(add_sub=2, mul=0, div2=0, mul_pow2=0)
    """
    if step not in _STEPS:
        raise ValueError(f"unknown arithmetic step {step!r}")
    if step in ("mul_const", "complex_scale") and const is None:
        raise ValueError(f"{step} needs a ConstKind")
    cost: dict[OpClass, int] = {}
    if step == "add":
        cost = {OpClass.ADD_SUB: 1}
    elif step == "complex_add":
        cost = {OpClass.ADD_SUB: 2}
    elif step == "mul":
        cost = {OpClass.MUL: 1}
    elif step in ("mul_const", "complex_scale"):
        op = const.op_class
        if op is not None:
            cost = {op: 1 if step == "mul_const" else 2}
    elif step == "complex_mul":
        cost = {OpClass.MUL: 4, OpClass.ADD_SUB: 2}
    elif step == "complex_mul_unit":
        cost = {OpClass.MUL: 2, OpClass.ADD_SUB: 2}
    return tally + _tally_of(cost).scaled(count)


# -- tally scopes -------------------------------------------------------------


class _Scope:
    __slots__ = ("counts", "track_magnitude", "max_abs", "tally")

    def __init__(self, track_magnitude: bool = False):
        self.counts = {op: 0 for op in OpClass}
        self.track_magnitude = track_magnitude
        self.max_abs = 0.0
        self.tally: OpTally | None = None

    def snapshot(self) -> OpTally:
        return _tally_of(self.counts)


_ACTIVE: contextvars.ContextVar[_Scope | None] = contextvars.ContextVar("whufft_tally", default=None)


def _record(op: OpClass, n: int) -> None:
    scope = _ACTIVE.get()
    if scope is not None and n:
        scope.counts[op] += int(n)


def _observe(arr: np.ndarray) -> None:
    scope = _ACTIVE.get()
    if scope is not None and scope.track_magnitude and arr.size and arr.dtype != object:
        m = float(np.max(np.abs(arr)))
        if m > scope.max_abs:
            scope.max_abs = m


@contextlib.contextmanager
def tally_scope(track_magnitude: bool = False) -> Iterator[_Scope]:
    """Open a fresh counting scope; ``scope.tally`` is set on exit.

    Scopes nest without leaking: charges made inside go only to the
    innermost scope.
    """
    scope = _Scope(track_magnitude)
    token = _ACTIVE.set(scope)
    try:
        yield scope
    finally:
        _ACTIVE.reset(token)
        scope.tally = scope.snapshot()


def with_tally(computation: Callable[..., Any], *args, **kwargs) -> tuple[Any, OpTally]:
    """Run ``computation(*args, **kwargs)`` and return ``(result, tally)``."""
    with tally_scope() as scope:
        result = computation(*args, **kwargs)
    return result, scope.tally


# -- scalar route -------------------------------------------------------------


def _is_const(x) -> bool:
    return isinstance(x, (int, float, np.integer, np.floating)) and not isinstance(x, bool)


class CountedScalar:
    """A real value whose arithmetic charges the active tally scope.

    Plain Python numbers mixed into the arithmetic are treated as circuit
    constants: multiplying by 0 yields the plain constant ``0.0`` (a
    structural zero), and adding a literal zero is elided.
    """

    __slots__ = ("value",)

    def __init__(self, value: float):
        self.value = float(value)

    def __repr__(self):
        return f"CountedScalar({self.value!r})"

    def __float__(self):
        return self.value

    def __neg__(self):
        return CountedScalar(-self.value)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, CountedScalar):
            _record(OpClass.ADD_SUB, 1)
            return CountedScalar(self.value + other.value)
        if _is_const(other):
            if other == 0:
                return self
            _record(OpClass.ADD_SUB, 1)
            return CountedScalar(self.value + float(other))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, CountedScalar):
            _record(OpClass.ADD_SUB, 1)
            return CountedScalar(self.value - other.value)
        if _is_const(other):
            if other == 0:
                return self
            _record(OpClass.ADD_SUB, 1)
            return CountedScalar(self.value - float(other))
        return NotImplemented

    def __rsub__(self, other):
        if _is_const(other):
            if other == 0:
                return -self
            _record(OpClass.ADD_SUB, 1)
            return CountedScalar(float(other) - self.value)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, CountedScalar):
            _record(OpClass.MUL, 1)
            return CountedScalar(self.value * other.value)
        if _is_const(other):
            kind = classify_constant(other)
            if kind.tag == "zero":
                return 0.0
            if kind.tag == "plus_one":
                return self
            if kind.tag == "minus_one":
                return -self
            _record(kind.op_class, 1)
            return CountedScalar(self.value * float(other))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_const(other):
            c = float(other)
            if c == 0:
                raise ZeroDivisionError("division by constant zero")
            kind = classify_constant(c)
            if kind.tag == "pow_two":
                kind = classify_constant(1.0 / c)
            if kind.tag == "plus_one":
                return self
            if kind.tag == "minus_one":
                return -self
            _record(kind.op_class, 1)
            return CountedScalar(self.value / c)
        return NotImplemented


def counted_array(values) -> np.ndarray:
    """Wrap a float array as an object array of :class:`CountedScalar`."""
    arr = np.asarray(values, dtype=float)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = CountedScalar(v)
    return out


def values_of(arr) -> np.ndarray:
    """Plain float values of a (possibly counted) array."""
    arr = np.asarray(arr)
    if arr.dtype != object:
        return arr.astype(float)
    out = np.empty(arr.shape, dtype=float)
    for idx, v in np.ndenumerate(arr):
        out[idx] = float(v)
    return out


# -- array primitives ---------------------------------------------------------


def _is_obj(*arrays) -> bool:
    return any(isinstance(a, np.ndarray) and a.dtype == object for a in arrays)


def _const_classes(c: np.ndarray):
    """Boolean masks (zero, free, div2, pow2, generic) for a constant array."""
    c = np.asarray(c, dtype=float)
    if not np.all(np.isfinite(c)):
        raise ValueError("circuit constants must be finite")
    zero = c == 0.0
    free = zero | (c == 1.0) | (c == -1.0)
    mant, exp = np.frexp(c)
    pow2 = (mant == 0.5) & (c > 0) & ~free
    div2 = pow2 & (exp - 1 == -1)
    mulp2 = pow2 & ~div2
    generic = ~free & ~pow2
    return zero, div2, mulp2, generic


def _charge_products(c: np.ndarray, reps: int) -> None:
    zero, div2, mulp2, generic = _const_classes(c)
    _record(OpClass.DIV2, int(div2.sum()) * reps)
    _record(OpClass.MUL_POW2, int(mulp2.sum()) * reps)
    _record(OpClass.MUL, int(generic.sum()) * reps)


def _reps(c: np.ndarray, shape) -> int:
    return int(np.prod(shape)) // max(c.size, 1)


def vadd(x, y):
    r = x + y
    if not _is_obj(r):
        _record(OpClass.ADD_SUB, np.size(r))
        _observe(np.asarray(r))
    return r


def vsub(x, y):
    r = x - y
    if not _is_obj(r):
        _record(OpClass.ADD_SUB, np.size(r))
        _observe(np.asarray(r))
    return r


def vscale(c, x):
    """Multiply ``x`` by the circuit constant(s) ``c`` (broadcast on the right).

    Entries where the constant is 0 come back as exact ``0.0``.
    """
    c = np.asarray(c, dtype=float)
    if _is_obj(x):
        return c.astype(object) * x
    x = np.asarray(x, dtype=float)
    r = np.broadcast_to(c, np.broadcast_shapes(c.shape, x.shape)) * x
    zero = c == 0.0
    if zero.any():
        r = np.where(zero, 0.0, r)
    _charge_products(c, _reps(c, r.shape))
    _observe(r)
    return r


def vdot2(c1, x1, c2, x2):
    """``c1*x1 + c2*x2`` for constants ``c1, c2``.

    Products with a zero constant are dropped before the addition, so the
    addition is charged only where both constants are nonzero.
    """
    c1 = np.asarray(c1, dtype=float)
    c2 = np.asarray(c2, dtype=float)
    if _is_obj(x1, x2):
        return c1.astype(object) * x1 + c2.astype(object) * x2
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    shape = np.broadcast_shapes(c1.shape, x1.shape, c2.shape, x2.shape)
    p1 = c1 * x1
    p2 = c2 * x2
    nz1 = np.broadcast_to(c1 != 0.0, shape)
    nz2 = np.broadcast_to(c2 != 0.0, shape)
    r = np.where(nz1 & nz2, p1 + p2, np.where(nz1, p1, np.where(nz2, p2, 0.0)))
    _charge_products(c1, _reps(c1, shape))
    _charge_products(c2, _reps(c2, shape))
    both = np.broadcast_to((c1 != 0.0), np.broadcast_shapes(c1.shape, c2.shape)) & (c2 != 0.0)
    _record(OpClass.ADD_SUB, int(both.sum()) * _reps(both, shape))
    _observe(r)
    return r


# -- complex storage ----------------------------------------------------------


@dataclass
class ComplexPair:
    """A complex vector held as two separately stored real arrays."""

    re: np.ndarray
    im: np.ndarray

    def __post_init__(self):
        self.re = _as_field(self.re)
        self.im = _as_field(self.im)
        if self.re.shape != self.im.shape:
            raise ValueError(f"re/im shape mismatch: {self.re.shape} vs {self.im.shape}")

    @classmethod
    def from_complex(cls, z) -> "ComplexPair":
        z = np.asarray(z, dtype=complex)
        return cls(z.real.copy(), z.imag.copy())

    def to_complex(self) -> np.ndarray:
        return values_of(self.re) + 1j * values_of(self.im)

    def __len__(self):
        return len(self.re)


def _as_field(x) -> np.ndarray:
    arr = np.asarray(x)
    if arr.dtype == object:
        return arr
    if np.iscomplexobj(arr):
        raise TypeError("complex data must be split into a ComplexPair")
    return arr.astype(float)


def check_length(n: int) -> int:
    """Return log2(n), rejecting lengths that are not powers of two."""
    if n < 1 or n & (n - 1):
        raise ValueError(f"length must be a power of 2, got {n}")
    return n.bit_length() - 1
