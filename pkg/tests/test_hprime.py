from fractions import Fraction

import numpy as np
import pytest

from whufft import (
    ComplexPair,
    OpTally,
    apply_hprime,
    butterfly_permutation,
    f_count,
    hprime_matrix,
    lemma_checks,
    partition,
    values_of,
    counted_array,
    with_tally,
    wht_h8,
)
from whufft.hprime import f_table, weighted_closed_form


def test_partition_examples():
    assert partition(1).to_lists() == [[0]]
    assert partition(2).to_lists() == [[0], [1]]
    assert partition(4).to_lists() == [[0], [1], [2, 3]]
    assert partition(8).to_lists() == [[0], [1], [2, 3], [4, 6], [5, 7]]


@pytest.mark.parametrize("t", range(0, 17))
def test_partition_structure(t):
    n = 1 << t
    spec = partition(n)
    flat = [i for s in spec.subsets for i in s]
    assert sorted(flat) == list(range(n))
    assert all(len(s) & (len(s) - 1) == 0 for s in spec.subsets)
    assert spec.sizes() == {1 << j: f for j, f in enumerate(f_table(t)) if f}


def test_partition_is_deterministic():
    assert partition(64).subsets == partition(64).subsets


def test_partition_rejects_bad_length():
    with pytest.raises(ValueError):
        partition(6)


def test_f_count_examples():
    assert f_count(4, 1) == 2 and f_count(4, 2) == 1
    assert f_count(8, 2) == 3
    assert f_count(1, 1) == 1 and f_count(2, 1) == 2
    assert f_count(16, 32) == 0
    assert f_count(16, Fraction(1, 2)) == 0


def test_f_recurrence():
    for t1 in range(2, 25):
        for t2 in range(0, t1 + 1):
            n1, n2 = 1 << t1, 1 << t2
            want = f_count(n1 // 2, n2) + (f_count(n1 // 4, n2 // 2) if n2 >= 2 else 0)
            assert f_count(n1, n2) == want


def test_hprime_matrix_small():
    assert hprime_matrix(1).tolist() == [[1]]
    assert hprime_matrix(2).tolist() == [[1, 0], [0, 1]]
    assert hprime_matrix(4).tolist() == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, -1]]


def test_hprime_matrix_block_pattern_32():
    m = hprime_matrix(32)
    assert np.array_equal(m[:16, :16], hprime_matrix(16))
    assert not m[:16, 16:].any() and not m[16:, :16].any()
    q = hprime_matrix(8)
    assert np.array_equal(m[16:24, 16:24], q) and np.array_equal(m[16:24, 24:], q)
    assert np.array_equal(m[24:, 16:24], q) and np.array_equal(m[24:, 24:], -q)
    # one nonzero per (row, column) inside each WHT block
    assert sum(len(s) ** 2 for s in partition(32).subsets) == int(np.count_nonzero(m))


def test_hprime_matrix_cap():
    with pytest.raises(ValueError):
        hprime_matrix(2048)


def test_apply_examples():
    x = np.array([3.0 + 1j, -2.0])
    y, t = with_tally(apply_hprime, x)
    assert np.array_equal(y, x) and t == OpTally()
    e2 = np.zeros(8, dtype=complex)
    e2[2] = 1
    assert np.array_equal(apply_hprime(e2), [0, 0, 1, 1, 0, 0, 0, 0])


@pytest.mark.parametrize("impl", ["naive", "folklore", "h4", "h8"])
def test_apply_matches_matrix(impl, rng):
    for t in range(0, 11):
        n = 1 << t
        x = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
        ref = hprime_matrix(n) @ x
        got = apply_hprime(x, impl)
        assert np.max(np.abs(got - ref)) <= 1e-12 * max(1.0, np.max(np.abs(ref)))


def test_apply_accepts_function_selector(rng):
    x = rng.standard_normal(64) + 0j
    assert np.array_equal(apply_hprime(x, wht_h8), apply_hprime(x, "h8"))
    with pytest.raises(ValueError):
        apply_hprime(x, "fastest")


def test_apply_pair_and_scalar_routes(rng):
    x = rng.standard_normal(32) + 1j * rng.standard_normal(32)
    y, t = with_tally(apply_hprime, x)
    p = ComplexPair(counted_array(x.real), counted_array(x.imag))
    q, tq = with_tally(apply_hprime, p)
    assert t == tq
    assert np.array_equal(values_of(q.re), y.real) and np.array_equal(values_of(q.im), y.imag)


def test_butterfly_permutation():
    assert butterfly_permutation(8).tolist() == [0, 4, 2, 6, 1, 5, 7, 3]
    for t in range(0, 13):
        p = butterfly_permutation(1 << t)
        assert sorted(p.tolist()) == list(range(1 << t))


def test_hprime_tally_matches_block_sum():
    for t in range(0, 15):
        n = 1 << t
        _, tally = with_tally(apply_hprime, np.ones(n, dtype=complex))
        want = OpTally()
        for j, f in enumerate(f_table(t)):
            _, tj = with_tally(wht_h8, np.ones(1 << j))
            want = want + tj.scaled(2 * f)
        assert tally == want


def test_lemma_examples():
    # N = 8: only F(8, 2) = 3 contributes, 3 * 2 * 1 = 6
    assert weighted_closed_form(3) == 6
    rep = lemma_checks(20)
    assert rep.rows[0].size_sum == 1
    assert rep.rows[20].size_sum == 1 << 20
    assert rep.sizes_pass and rep.weighted_pass
    assert 0 <= rep.max_c < 1


def test_lemma_range():
    with pytest.raises(ValueError):
        lemma_checks(41)
