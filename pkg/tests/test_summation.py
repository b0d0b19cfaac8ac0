import math

import numpy as np

from cantelli.summation import CompensatedSum, compensated_cumsum, compensated_sum


def test_matches_fsum_on_harmonic():
    values = [1.0 / n for n in range(1, 100001)]
    assert abs(compensated_sum(values) - math.fsum(values)) < 1e-12


def test_cumsum_checkpoints_match_fsum():
    values = np.array([n**-2.0 for n in range(1, 100001)])
    sums = compensated_cumsum(values)
    for cut in (10, 1000, 100000):
        assert abs(sums[cut - 1] - math.fsum(values[:cut])) < 1e-12


def test_beats_naive_on_adversarial_cancellation():
    # large value followed by many tiny ones: naive accumulation loses them
    values = [1e16] + [1.0] * 1000
    acc = CompensatedSum()
    for v in values:
        acc.add(v)
    assert acc.value == math.fsum(values)


def test_empty_sum_is_zero():
    assert compensated_sum([]) == 0.0
