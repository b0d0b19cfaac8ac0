"""Compensated (Neumaier) summation for long nonnegative series."""

from __future__ import annotations

from typing import Iterable

import numpy as np


class CompensatedSum:
    """Running sum with a Neumaier compensation term.

    Keeps the error of accumulating N terms near one ulp instead of N ulps,
    which matters for 1e5-term partial sums checked against 1e-10 tolerances.
    """

    __slots__ = ("_total", "_compensation")

    def __init__(self) -> None:
        self._total = 0.0
        self._compensation = 0.0

    def add(self, x: float) -> None:
        t = self._total + x
        if abs(self._total) >= abs(x):
            self._compensation += (self._total - t) + x
        else:
            self._compensation += (x - t) + self._total
        self._total = t

    @property
    def value(self) -> float:
        return self._total + self._compensation


def compensated_sum(values: Iterable[float]) -> float:
    acc = CompensatedSum()
    for v in values:
        acc.add(float(v))
    return acc.value


def compensated_cumsum(values: np.ndarray) -> np.ndarray:
    """Running compensated partial sums, same length as ``values``."""
    out = np.empty(len(values), dtype=float)
    acc = CompensatedSum()
    for i, v in enumerate(values):
        acc.add(float(v))
        out[i] = acc.value
    return out
