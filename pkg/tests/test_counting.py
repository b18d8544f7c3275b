import math
import threading

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whufft import (
    ComplexPair,
    CountedScalar,
    OpClass,
    OpTally,
    charge,
    classify_constant,
    counted_array,
    tally_scope,
    values_of,
    with_tally,
    wht_folklore,
)
from whufft.counting import GENERIC, MINUS_ONE, PLUS_ONE, ZERO, ConstKind, vadd, vdot2, vscale

counts = st.integers(min_value=0, max_value=10**9)
tallies = st.builds(OpTally, counts, counts, counts, counts)


def test_four_classes():
    assert {op.value for op in OpClass} == {"add_sub", "mul", "div2", "mul_pow2"}


@given(tallies, tallies, tallies)
def test_tally_merge_is_a_commutative_monoid(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a + OpTally() == a
    assert (a + b).total() == a.total() + b.total()


def test_tally_rejects_negative_and_non_integer():
    with pytest.raises(ValueError):
        OpTally(add_sub=-1)
    with pytest.raises((TypeError, ValueError)):
        OpTally(mul=1.5)


@pytest.mark.parametrize(
    "c, kind",
    [
        (0.0, ZERO),
        (-0.0, ZERO),
        (1.0, PLUS_ONE),
        (-1.0, MINUS_ONE),
        (0.5, ConstKind("pow_two", -1)),
        (2.0, ConstKind("pow_two", 1)),
        (8.0, ConstKind("pow_two", 3)),
        (0.25, ConstKind("pow_two", -2)),
        (-2.0, GENERIC),
        (3.0, GENERIC),
        (math.sin(3 * math.pi / 8), GENERIC),
    ],
)
def test_classify_constant(c, kind):
    assert classify_constant(c) == kind


@pytest.mark.parametrize("c", [math.inf, -math.inf, math.nan])
def test_classify_rejects_non_finite(c):
    with pytest.raises(ValueError):
        classify_constant(c)


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_pow_two_is_exact(c):
    k = classify_constant(c)
    if k.tag == "pow_two":
        assert k.exponent != 0
        assert c == 2.0**k.exponent
    if c in (0.0, 1.0, -1.0):
        assert k.tag != "pow_two"


def test_charge_rules():
    z = OpTally()
    assert charge(z, "complex_add") == OpTally(add_sub=2)
    assert charge(z, "complex_scale", PLUS_ONE) == z
    assert charge(z, "complex_scale", GENERIC) == OpTally(mul=2)
    assert charge(z, "mul_const", ConstKind("pow_two", -1)) == OpTally(div2=1)
    assert charge(z, "mul_const", ConstKind("pow_two", 4)) == OpTally(mul_pow2=1)
    assert charge(z, "mul_const", ConstKind("pow_two", -3)) == OpTally(mul_pow2=1)
    assert charge(z, "complex_mul") == OpTally(add_sub=2, mul=4)
    assert charge(z, "complex_mul_unit") == OpTally(add_sub=2, mul=2)
    assert charge(z, "add", count=5) == OpTally(add_sub=5)
    with pytest.raises(ValueError):
        charge(z, "fma")
    with pytest.raises(ValueError):
        charge(z, "mul_const")


def test_with_tally_basics():
    a, b = CountedScalar(1.5), CountedScalar(2.0)
    r, t = with_tally(lambda: a + b)
    assert float(r) == 3.5 and t == OpTally(add_sub=1)
    assert with_tally(lambda: None)[1] == OpTally()
    assert with_tally(wht_folklore, np.arange(8.0))[1] == OpTally(add_sub=24)


def test_scalar_charges():
    x, y = CountedScalar(3.0), CountedScalar(-5.0)
    cases = [
        (lambda: x - y, OpTally(add_sub=1)),
        (lambda: -x, OpTally()),
        (lambda: x * 1, OpTally()),
        (lambda: x * -1.0, OpTally()),
        (lambda: x + 0, OpTally()),
        (lambda: 0 - x, OpTally()),
        (lambda: x * 0.5, OpTally(div2=1)),
        (lambda: x / 2, OpTally(div2=1)),
        (lambda: 4 * x, OpTally(mul_pow2=1)),
        (lambda: x * 0.3, OpTally(mul=1)),
        (lambda: x * y, OpTally(mul=1)),
        (lambda: x + 2.0, OpTally(add_sub=1)),
    ]
    for fn, want in cases:
        assert with_tally(fn)[1] == want


def test_multiplying_by_zero_leaves_a_structural_zero():
    x = CountedScalar(7.0)
    (r, t) = with_tally(lambda: x * 0.0 + x)
    assert t == OpTally()
    assert float(r) == 7.0


def test_free_constant_rule():
    x = counted_array([1.0, -2.0, 3.5])
    base = with_tally(lambda: x[0] + x[1] * 0.7 - x[2])[1]
    padded = with_tally(lambda: (x[0] * 1 + 0) + (-(-x[1])) * 0.7 - x[2] * -1 * -1)[1]
    assert base == padded


def test_nested_scopes_do_not_leak():
    x = CountedScalar(1.0)
    with tally_scope() as outer:
        _ = x + x
        with tally_scope() as inner:
            _ = x * x
            _ = x + x
        _ = x - x
    assert inner.tally == OpTally(add_sub=1, mul=1)
    assert outer.tally == OpTally(add_sub=2)


def test_no_scope_means_no_charge():
    x = CountedScalar(1.0)
    _ = x + x  # must not raise
    assert with_tally(lambda: None)[1] == OpTally()


def test_threads_count_independently():
    results = {}

    def work(name, n):
        def body():
            x = CountedScalar(1.0)
            for _ in range(n):
                x = x + CountedScalar(1.0)
            return x
        results[name] = with_tally(body)[1]

    threads = [threading.Thread(target=work, args=(i, 100 * (i + 1))) for i in range(4)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert all(results[i] == OpTally(add_sub=100 * (i + 1)) for i in range(4))


def test_additivity():
    x = np.arange(16.0)
    f = lambda: wht_folklore(x)
    g = lambda: vscale(0.3, x)
    both = with_tally(lambda: (f(), g()))[1]
    assert both == with_tally(f)[1] + with_tally(g)[1]


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.floats(-1e6, 1e6), min_size=4, max_size=4),
    st.lists(st.sampled_from([0.0, 1.0, -1.0, 0.5, 2.0, 0.7071067811865476, -0.3]), min_size=4, max_size=4),
)
def test_bulk_and_scalar_routes_agree(vals, consts):
    # numeric transparency and identical charging on the two routes
    x = np.array(vals)
    c1, c2 = np.array(consts[:2]), np.array(consts[2:])

    def circuit(a, b):
        s = vadd(a, b)
        return vdot2(c1, s, c2, vscale(np.array([0.5, 2.0]), b))

    ra, ta = with_tally(circuit, x[:2], x[2:])
    rb, tb = with_tally(circuit, counted_array(x[:2]), counted_array(x[2:]))
    assert ta == tb
    assert np.array_equal(ra, values_of(rb))


def test_complex_pair_storage():
    z = np.array([1 + 2j, -3.5 + 0j])
    p = ComplexPair.from_complex(z)
    assert p.re.dtype == float and p.im.dtype == float
    assert np.array_equal(p.to_complex(), z)
    with pytest.raises(ValueError):
        ComplexPair(np.zeros(2), np.zeros(3))


def test_magnitude_tracking():
    with tally_scope(track_magnitude=True) as s:
        vadd(np.array([1.0, -4.0]), np.array([2.0, -3.0]))
    assert s.max_abs == 7.0
