from fractions import Fraction

import numpy as np
import pytest

from ffiter import build_code, decompose, descent_bound, greedy_orbit_decomposition, ordered_orbit_decomposition
from ffiter.generators import (
    SplitMix64,
    anti_chain_function,
    chain_function,
    derive_seed,
    random_function,
    random_permutation,
    staircase_function,
)
from ffiter.oracle import oracle_descents


def test_splitmix64_reference_outputs():
    # published outputs of splitmix64 seeded with 0
    assert [int(v) for v in SplitMix64(0).next_u64(3)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]


def test_splitmix64_blocks_are_contiguous():
    a = SplitMix64(99)
    b = SplitMix64(99)
    assert list(a.next_u64(5)) + list(a.next_u64(3)) == list(b.next_u64(8))


def test_bounded_is_in_range_and_roughly_uniform():
    draws = SplitMix64(5).bounded(np.full(60000, 6))
    assert draws.min() == 0 and draws.max() == 5
    counts = np.bincount(draws)
    assert (abs(counts - 10000) < 500).all()


def test_random_function_deterministic():
    assert random_function(100, 7) == random_function(100, 7)
    assert random_function(100, 7) != random_function(100, 8)
    assert random_function(100, 7, stream=1) != random_function(100, 7)
    assert random_function(1, 123).values == (0,)


def test_random_function_golden():
    assert random_function(8, 42).values == (0, 6, 4, 5, 1, 5, 7, 1)
    assert random_permutation(8, 42).table.values == (4, 6, 7, 2, 0, 1, 3, 5)


def test_derive_seed_distinct():
    seeds = {derive_seed(1, n, s) for n in range(1, 20) for s in range(20)}
    assert len(seeds) == 19 * 20


def test_random_permutation():
    assert random_permutation(1, 3).table.values == (0,)
    p = random_permutation(500, 3)
    assert sorted(p.table.values) == list(range(500))
    assert random_permutation(500, 3) == p


def test_permutation_cycle_count_report():
    # expected number of cycles is the harmonic number H_n, about ln n
    n = 1 << 12
    counts = [decompose(random_permutation(n, s), "cycle").n_components for s in range(30)]
    harmonic = sum(1.0 / k for k in range(1, n + 1))
    assert abs(np.mean(counts) - harmonic) < 2.0


def test_chain_family():
    assert chain_function(3).values == (0, 0, 1)
    assert chain_function(1).values == (0,)
    assert ordered_orbit_decomposition(chain_function(8)).structure == (1,) * 8


def test_antichain_family():
    t = anti_chain_function(3)
    assert t.values == (1, 2, 2)
    for n in (1, 5, 30):
        t = anti_chain_function(n)
        for strategy in ("ordered", "greedy"):
            d = decompose(t, strategy)
            assert d.n_components == 1
            assert all(oracle_descents(t, d, x) == 0 for x in range(n))


def test_staircase_paper_instance():
    t, d, size_m = staircase_function(10)
    assert (d, size_m) == (3, 10)
    assert t.values == (1, 2, 3, 3, 5, 6, 3, 8, 6, 8)
    assert oracle_descents(t, greedy_orbit_decomposition(t), 9) == 3


def test_staircase_extension():
    t, d, size_m = staircase_function(11)
    assert (d, size_m) == (3, 10) and t.values[10] == 0
    dec = greedy_orbit_decomposition(t)
    assert dec.components[0] == (10, 0, 1, 2, 3)
    assert oracle_descents(t, dec, 9) == 3


@pytest.mark.parametrize("n", list(range(1, 60)) + [100, 231, 500])
def test_staircase_is_tight(n):
    t, d, _ = staircase_function(n)
    dec = greedy_orbit_decomposition(t)
    assert d == descent_bound(n)
    assert max(oracle_descents(t, dec, x) for x in range(n)) == d


@pytest.mark.parametrize("d", range(0, 12))
def test_staircase_average_is_d_over_3(d):
    n = (d + 1) * (d + 2) // 2
    t, dd, _ = staircase_function(n)
    assert dd == d
    dec = greedy_orbit_decomposition(t)
    total = sum(oracle_descents(t, dec, x) for x in range(n))
    assert Fraction(total, n) == Fraction(d, 3)
    assert build_code(t, "greedy") is not None


def test_chain_descents_by_strategy():
    t = chain_function(40)
    assert oracle_descents(t, ordered_orbit_decomposition(t), 39) == 39
    g = greedy_orbit_decomposition(t)
    assert all(oracle_descents(t, g, x) == 0 for x in range(40))
