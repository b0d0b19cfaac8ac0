"""Deterministic sequence families used for marginal probabilities and latent thresholds.

A family maps an index ``n >= 1`` to a value in ``[0, 1]``.  Besides pointwise
evaluation, each family knows what can be said about itself in closed form:
its limit, an upper bound on its tail sum, the supremum of its tail, and a
convergence/divergence classification of the window series it induces under an
independent model.  Those closed forms are what turns a "Likely" verdict into a
"Certified" one downstream, so every classification carries its justification.
"""

from __future__ import annotations

import enum
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass


class SeriesClass(enum.Enum):
    """Closed-form classification of a nonnegative series."""

    CONVERGENT = "convergent"
    DIVERGENT = "divergent"


class SequenceIndexError(ValueError):
    """An explicit-list family was queried past its declared range."""


def clamp01(x: float) -> float:
    if x != x:
        raise ValueError("sequence family produced NaN")
    if x < 0.0:
        return 0.0
    if x > 1.0:
        return 1.0
    return x


class SequenceFamily(ABC):
    """Index -> probability map with optional closed-form analysis.

    ``value(n)`` must be pure and defined for all n >= 1.  Indices n <= 0 occur
    only through per-latent index offsets; families saturate there (the value a
    growing formula would clamp to) rather than raising.
    """

    @abstractmethod
    def value(self, n: int) -> float:
        """The n-th value, clamped to [0, 1]."""

    @abstractmethod
    def limit(self) -> float | None:
        """lim value(n), or None when unknown/undefined."""

    @abstractmethod
    def describe(self) -> str:
        """Human-readable formula, including any clamping note."""

    def tail_sum_bound(self, n: int) -> float | None:
        """Upper bound on sum_{j >= n} value(j); None when no finite bound exists."""
        return None

    def tail_sup(self, n: int) -> float | None:
        """Upper bound on sup_{j >= n} value(j); None when unknown."""
        return None

    def series_class(self, prefix_len: int) -> tuple[SeriesClass, str] | None:
        """Classify sum_n (prod of prefix_len complements) * value(n + prefix_len).

        Returns (class, justification) for the window series induced by an
        independent model with these marginals, or None when the family admits
        no closed-form answer.  Valid for either window orientation: the term
        is a product of ``prefix_len`` complement factors and one occurrence
        factor either way.
        """
        return None


def _constant_series_class(c: float, prefix_len: int, source: str) -> tuple[SeriesClass, str]:
    if c == 0.0:
        return SeriesClass.CONVERGENT, f"{source}: all terms are exactly zero"
    if c == 1.0 and prefix_len >= 1:
        return (
            SeriesClass.CONVERGENT,
            f"{source}: complement factors are exactly zero, so every term vanishes",
        )
    return (
        SeriesClass.DIVERGENT,
        f"{source}: terms are constant at {(1.0 - c) ** prefix_len * c:.6g} > 0",
    )


@dataclass(frozen=True)
class Constant(SequenceFamily):
    """value(n) = c for all n."""

    c: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.c <= 1.0:
            raise ValueError(f"constant family value {self.c} outside [0, 1]")

    def value(self, n: int) -> float:
        return self.c

    def limit(self) -> float | None:
        return self.c

    def tail_sum_bound(self, n: int) -> float | None:
        return 0.0 if self.c == 0.0 else None

    def tail_sup(self, n: int) -> float | None:
        return self.c

    def series_class(self, prefix_len: int) -> tuple[SeriesClass, str] | None:
        return _constant_series_class(self.c, prefix_len, f"constant p = {self.c}")

    def describe(self) -> str:
        return f"constant p_n = {self.c}"


@dataclass(frozen=True)
class PowerLaw(SequenceFamily):
    """value(n) = clamp(scale * n**(-exponent))."""

    scale: float
    exponent: float

    def __post_init__(self) -> None:
        if self.scale < 0.0:
            raise ValueError("power-law scale must be nonnegative")

    def value(self, n: int) -> float:
        if self.scale == 0.0:
            return 0.0
        if n <= 0:
            # Saturation for offset indices: the formula blows up (exponent > 0)
            # or vanishes (exponent < 0) at n = 0.
            if self.exponent > 0.0:
                return 1.0
            if self.exponent == 0.0:
                return clamp01(self.scale)
            return 0.0
        return clamp01(self.scale * float(n) ** (-self.exponent))

    def limit(self) -> float | None:
        if self.scale == 0.0:
            return 0.0
        if self.exponent > 0.0:
            return 0.0
        if self.exponent == 0.0:
            return clamp01(self.scale)
        return 1.0

    def tail_sum_bound(self, n: int) -> float | None:
        if self.scale == 0.0:
            return 0.0
        if self.exponent <= 1.0:
            return None
        # Integral test: sum_{j>=n} j^-s <= n^-s + n^(1-s)/(s-1); clamping only lowers terms.
        m = max(n, 1)
        s = self.exponent
        return self.scale * (float(m) ** (-s) + float(m) ** (1.0 - s) / (s - 1.0))

    def tail_sup(self, n: int) -> float | None:
        if self.scale == 0.0:
            return 0.0
        if self.exponent > 0.0:
            return self.value(max(n, 1))
        if self.exponent == 0.0:
            return clamp01(self.scale)
        return 1.0

    def series_class(self, prefix_len: int) -> tuple[SeriesClass, str] | None:
        if self.scale == 0.0:
            return SeriesClass.CONVERGENT, "power law with zero scale: all terms zero"
        s = self.exponent
        name = f"p_n = min(1, {self.scale:g}*n^-{s:g})"
        if s > 1.0:
            return (
                SeriesClass.CONVERGENT,
                f"{name}: terms dominated by the p-series with exponent {s:g} > 1",
            )
        if s > 0.0:
            return (
                SeriesClass.DIVERGENT,
                f"{name}: terms eventually exceed a positive multiple of n^-{s:g}"
                " (complement factors tend to 1), a divergent p-series",
            )
        if s == 0.0:
            return _constant_series_class(clamp01(self.scale), prefix_len, name)
        if prefix_len >= 1:
            return (
                SeriesClass.CONVERGENT,
                f"{name}: marginals clamp to 1 eventually, so complement factors"
                " are exactly zero from some index on",
            )
        return SeriesClass.DIVERGENT, f"{name}: marginals clamp to 1 eventually"

    def describe(self) -> str:
        base = f"power-law p_n = min(1, {self.scale:g}*n^-{self.exponent:g})"
        if self.scale > 1.0 or self.exponent < 0.0:
            base += " (head values clamped to 1)"
        return base


@dataclass(frozen=True)
class LogPower(SequenceFamily):
    """value(n) = clamp(scale * ln(n+1)**(-exponent)); decays slower than any power."""

    scale: float
    exponent: float

    def __post_init__(self) -> None:
        if self.scale < 0.0:
            raise ValueError("log-power scale must be nonnegative")

    def value(self, n: int) -> float:
        if self.scale == 0.0:
            return 0.0
        if n <= 0:
            if self.exponent > 0.0:
                return 1.0
            if self.exponent == 0.0:
                return clamp01(self.scale)
            return 0.0
        return clamp01(self.scale * math.log(n + 1.0) ** (-self.exponent))

    def limit(self) -> float | None:
        if self.scale == 0.0:
            return 0.0
        if self.exponent > 0.0:
            return 0.0
        if self.exponent == 0.0:
            return clamp01(self.scale)
        return 1.0

    def tail_sum_bound(self, n: int) -> float | None:
        return 0.0 if self.scale == 0.0 else None

    def tail_sup(self, n: int) -> float | None:
        if self.scale == 0.0:
            return 0.0
        if self.exponent > 0.0:
            return self.value(max(n, 1))
        if self.exponent == 0.0:
            return clamp01(self.scale)
        return 1.0

    def series_class(self, prefix_len: int) -> tuple[SeriesClass, str] | None:
        if self.scale == 0.0:
            return SeriesClass.CONVERGENT, "log-power with zero scale: all terms zero"
        e = self.exponent
        name = f"p_n = min(1, {self.scale:g}*ln(n+1)^-{e:g})"
        if e > 0.0:
            return (
                SeriesClass.DIVERGENT,
                f"{name}: log powers grow slower than any n^eps, so terms eventually"
                " exceed n^-1/2 times a constant, a divergent p-series",
            )
        if e == 0.0:
            return _constant_series_class(clamp01(self.scale), prefix_len, name)
        if prefix_len >= 1:
            return (
                SeriesClass.CONVERGENT,
                f"{name}: marginals clamp to 1 eventually, complement factors vanish",
            )
        return SeriesClass.DIVERGENT, f"{name}: marginals clamp to 1 eventually"

    def describe(self) -> str:
        base = f"log-power p_n = min(1, {self.scale:g}*ln(n+1)^-{self.exponent:g})"
        if self.exponent < 0.0 or self.value(1) == 1.0 and self.scale > 0.0:
            base += " (head values clamped to 1)"
        return base


@dataclass(frozen=True)
class ExplicitList(SequenceFamily):
    """Finite list of values followed by a constant tail.

    A missing tail makes indices past the list undefined; querying them raises
    SequenceIndexError (a malformed-model signal, not a numeric fault).
    """

    values: tuple[float, ...]
    tail: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        for i, v in enumerate(self.values):
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"explicit value [{i}] = {v} outside [0, 1]")
        if self.tail is not None and not 0.0 <= self.tail <= 1.0:
            raise ValueError(f"explicit tail {self.tail} outside [0, 1]")

    def value(self, n: int) -> float:
        if n <= 0:
            raise SequenceIndexError(f"explicit list queried at index {n} < 1")
        if n <= len(self.values):
            return self.values[n - 1]
        if self.tail is None:
            raise SequenceIndexError(
                f"explicit list of length {len(self.values)} queried at index {n}"
                " with no tail declared"
            )
        return self.tail

    def limit(self) -> float | None:
        return self.tail

    def tail_sum_bound(self, n: int) -> float | None:
        if self.tail not in (0.0, None):
            return None
        if self.tail is None:
            return None
        start = max(n, 1)
        return math.fsum(self.values[start - 1 :]) if start <= len(self.values) else 0.0

    def tail_sup(self, n: int) -> float | None:
        if self.tail is None:
            return None
        start = max(n, 1)
        rest = self.values[start - 1 :]
        return max([self.tail, *rest]) if rest else self.tail

    def series_class(self, prefix_len: int) -> tuple[SeriesClass, str] | None:
        if self.tail is None:
            return None
        if self.tail == 0.0:
            return (
                SeriesClass.CONVERGENT,
                "explicit list with zero tail: terms vanish beyond the declared prefix",
            )
        return _constant_series_class(
            self.tail, prefix_len, f"explicit list with constant tail {self.tail}"
        )

    def describe(self) -> str:
        head = ", ".join(f"{v:g}" for v in self.values[:6])
        if len(self.values) > 6:
            head += ", ..."
        tail = "no tail" if self.tail is None else f"tail {self.tail:g}"
        return f"explicit [{head}] ({len(self.values)} values, {tail})"
