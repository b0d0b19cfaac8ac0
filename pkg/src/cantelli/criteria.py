"""Series criteria for deciding P(events occur infinitely often) = 0.

For a model and a complement-run length m, the window series is

    sum_n P( not-A_n ... not-A_{n+m-1}, A_{n+m} )

(m = 0 gives the plain marginal series sum_n P(A_n), the classical
Borel-Cantelli criterion).  A convergent window series plus decaying marginals
forces P(A_n infinitely often) = 0; for m = 0 the decay hypothesis is not
needed, and for independent models a divergent marginal series forces
probability 1.  Verdicts separate what is certified (closed forms, exact-zero
tails with structural emptiness proofs) from what is merely likely (fitted
tail exponents).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .families import SeriesClass
from .models import (
    DecayVerdict,
    EventSequenceModel,
    IndependentModel,
    default_decay_probes,
    marginal_decay_check,
)
from .summation import compensated_cumsum
from .windows import Orientation, WindowPattern, first_occurrence

__all__ = [
    "SeriesKind",
    "BOREL_CANTELLI",
    "VerdictLabel",
    "Verdict",
    "InsufficientDataError",
    "series_terms",
    "TailFit",
    "fit_tail",
    "classify_series",
    "SeriesReport",
    "build_series_report",
    "Conclusion",
    "CriterionResult",
    "check_criterion",
    "SweepResult",
    "sweep_prefix_len",
]

MIN_TERMS_FOR_FIT = 100
MAX_PREFIX_LEN = 8
SLOPE_CONVERGENT = -1.1
SLOPE_DIVERGENT = -0.9


@dataclass(frozen=True)
class SeriesKind:
    """Which series to evaluate: complement-run length and orientation.

    prefix_len = 0 is the marginal (Borel-Cantelli) series; prefix_len = 1
    with PREFIX_COMPLEMENT is the one-gap series P(not-A_n, A_{n+1}).
    """

    prefix_len: int = 0
    orientation: Orientation = Orientation.PREFIX_COMPLEMENT

    def __post_init__(self) -> None:
        if self.prefix_len < 0:
            raise ValueError("prefix_len must be >= 0")

    def window(self, n: int) -> WindowPattern:
        return first_occurrence(n, self.prefix_len, self.orientation)

    @property
    def label(self) -> str:
        if self.prefix_len == 0:
            return "marginal series"
        side = "prefix" if self.orientation is Orientation.PREFIX_COMPLEMENT else "suffix"
        return f"window series (m={self.prefix_len}, {side} complements)"


BOREL_CANTELLI = SeriesKind(0)


class VerdictLabel(enum.Enum):
    CERTIFIED_CONVERGENT = "certified-convergent"
    CERTIFIED_DIVERGENT = "certified-divergent"
    LIKELY_CONVERGENT = "likely-convergent"
    LIKELY_DIVERGENT = "likely-divergent"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    label: VerdictLabel
    justification: str

    @property
    def certified(self) -> bool:
        return self.label in (
            VerdictLabel.CERTIFIED_CONVERGENT,
            VerdictLabel.CERTIFIED_DIVERGENT,
        )

    @property
    def convergent(self) -> bool:
        return self.label in (
            VerdictLabel.CERTIFIED_CONVERGENT,
            VerdictLabel.LIKELY_CONVERGENT,
        )

    @property
    def divergent(self) -> bool:
        return self.label in (
            VerdictLabel.CERTIFIED_DIVERGENT,
            VerdictLabel.LIKELY_DIVERGENT,
        )


class InsufficientDataError(ValueError):
    """Too few terms to classify and no analytic metadata to fall back on."""


def series_terms(model: EventSequenceModel, kind: SeriesKind, num_terms: int) -> np.ndarray:
    """Evaluate term[n] for n = 1..num_terms."""
    if num_terms < 1:
        raise ValueError("num_terms must be >= 1")
    return np.array(
        [model.window_prob(kind.window(n)) for n in range(1, num_terms + 1)], dtype=float
    )


@dataclass(frozen=True)
class TailFit:
    """Least-squares slope of log(term) against log(n) over the last decade."""

    slope: float | None
    residual: float | None
    points: int
    zero_fraction: float


def fit_tail(terms: np.ndarray) -> TailFit:
    n_total = len(terms)
    lo = max(1, n_total // 10)
    ns = np.arange(lo, n_total + 1)
    window = terms[lo - 1 :]
    nonzero = window > 0.0
    zero_fraction = 1.0 - float(nonzero.sum()) / len(window) if len(window) else 1.0
    if nonzero.sum() < 5:
        return TailFit(None, None, int(nonzero.sum()), zero_fraction)
    x = np.log(ns[nonzero].astype(float))
    y = np.log(window[nonzero])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    rms = float(np.sqrt(np.mean(resid**2)))
    return TailFit(float(slope), rms, int(nonzero.sum()), zero_fraction)


def _zero_tail_start(terms: np.ndarray) -> int | None:
    """1-based index from which all evaluated terms are exactly zero, or None."""
    nz = np.flatnonzero(terms)
    if nz.size == 0:
        return 1
    start = int(nz[-1]) + 2
    return start if start <= len(terms) else None


def classify_series(
    terms: np.ndarray,
    kind: SeriesKind,
    model: EventSequenceModel | None = None,
    *,
    min_terms: int = MIN_TERMS_FOR_FIT,
) -> Verdict:
    """Issue a convergence verdict for the evaluated terms.

    Certified verdicts come from exact-zero tails whose windows the backend
    proves empty, or from analytic metadata; everything else rests on the
    fitted tail exponent with a +-0.1 buffer around the p-series boundary.
    """
    meta = model.metadata if model is not None else None
    if len(terms) < min_terms and (meta is None or meta.classify_series(kind.prefix_len) is None):
        raise InsufficientDataError(
            f"{len(terms)} terms evaluated; need {min_terms} or analytic metadata"
        )

    # Exact zeros observed beat declared metadata: verify them structurally.
    zero_start = _zero_tail_start(terms)
    if zero_start is not None and zero_start <= len(terms) // 2 + 1:
        if model is not None and all(
            model.window_is_empty(kind.window(n)) for n in range(zero_start, len(terms) + 1)
        ):
            return Verdict(
                VerdictLabel.CERTIFIED_CONVERGENT,
                f"eventually zero terms: every window from n = {zero_start} is provably"
                " empty, so the series is a finite sum",
            )
        return Verdict(
            VerdictLabel.LIKELY_CONVERGENT,
            f"terms are numerically zero from n = {zero_start} but the backend does"
            " not prove the windows empty",
        )

    if meta is not None:
        classified = meta.classify_series(kind.prefix_len)
        if classified is not None:
            cls, why = classified
            if cls is SeriesClass.CONVERGENT:
                return Verdict(VerdictLabel.CERTIFIED_CONVERGENT, why)
            return Verdict(VerdictLabel.CERTIFIED_DIVERGENT, why)

    fit = fit_tail(terms)
    if fit.slope is None:
        # too few nonzero points to fit; a mostly-zero tail still suggests
        # convergence, but scattered zeros alone never certify it
        if fit.zero_fraction > 0.5:
            return Verdict(
                VerdictLabel.LIKELY_CONVERGENT,
                f"{fit.zero_fraction:.0%} of tail terms are exactly zero and the"
                " nonzero residue is too sparse to fit",
            )
        return Verdict(VerdictLabel.INCONCLUSIVE, "tail fit unavailable (too few nonzero terms)")
    if fit.slope < SLOPE_CONVERGENT:
        return Verdict(
            VerdictLabel.LIKELY_CONVERGENT,
            f"fitted tail exponent {fit.slope:.3f} < {SLOPE_CONVERGENT}",
        )
    if fit.slope > SLOPE_DIVERGENT:
        return Verdict(
            VerdictLabel.LIKELY_DIVERGENT,
            f"fitted tail exponent {fit.slope:.3f} > {SLOPE_DIVERGENT}",
        )
    return Verdict(
        VerdictLabel.INCONCLUSIVE,
        f"fitted tail exponent {fit.slope:.3f} sits in the p-series boundary buffer"
        f" [{SLOPE_CONVERGENT}, {SLOPE_DIVERGENT}]",
    )


class Conclusion(enum.Enum):
    IO_PROB_ZERO = "io-prob-zero"
    IO_PROB_ONE = "io-prob-one"
    NO_CONCLUSION = "no-conclusion"


@dataclass
class SeriesReport:
    """Evaluated terms, compensated partial sums, tail fit and verdict."""

    kind: SeriesKind
    terms: np.ndarray
    partial_sums: np.ndarray
    tail_fit: TailFit
    verdict: Verdict
    conclusion: Conclusion = Conclusion.NO_CONCLUSION
    conclusion_note: str = ""

    def __post_init__(self) -> None:
        if np.any(self.terms < 0.0):
            raise ValueError("series terms must be nonnegative")
        if np.any(np.diff(self.partial_sums) < -1e-15):
            raise ValueError("partial sums must be non-decreasing")

    @property
    def partial_sum(self) -> float:
        return float(self.partial_sums[-1])


def build_series_report(
    model: EventSequenceModel,
    kind: SeriesKind,
    num_terms: int,
    *,
    min_terms: int = MIN_TERMS_FOR_FIT,
) -> SeriesReport:
    terms = series_terms(model, kind, num_terms)
    sums = compensated_cumsum(terms)
    verdict = classify_series(terms, kind, model, min_terms=min_terms)
    return SeriesReport(
        kind=kind,
        terms=terms,
        partial_sums=sums,
        tail_fit=fit_tail(terms),
        verdict=verdict,
        conclusion=Conclusion.NO_CONCLUSION,
        conclusion_note="series evaluated in isolation; decay hypothesis not assessed",
    )


@dataclass
class CriterionResult:
    """Outcome of one convergence criterion at a given complement-run length."""

    prefix_len: int
    orientation: Orientation
    conclusion: Conclusion
    certified: bool
    decay: DecayVerdict | None
    decay_note: str
    series: SeriesReport
    note: str


def check_criterion(
    model: EventSequenceModel,
    prefix_len: int,
    num_terms: int = 2000,
    tol: float = 1e-6,
    *,
    orientation: Orientation = Orientation.PREFIX_COMPLEMENT,
    probes: Sequence[int] | None = None,
    decay: tuple[DecayVerdict, str] | None = None,
) -> CriterionResult:
    """Run the window-series criterion with complement run ``prefix_len``.

    Concludes IO_PROB_ZERO when the series verdict is convergent and (for
    prefix_len >= 1) the marginals provably or plausibly decay to zero; the
    conclusion is certified only when both inputs are.  IO_PROB_ONE is issued
    only for independent models with a divergent marginal series.  Dependent
    models with divergent series get NO_CONCLUSION: the criteria are
    sufficient, not necessary.
    """
    if prefix_len < 0:
        raise ValueError("prefix_len must be >= 0")
    kind = SeriesKind(prefix_len, orientation)
    report = build_series_report(model, kind, num_terms)
    needs_decay = prefix_len >= 1
    if needs_decay and decay is None:
        decay = marginal_decay_check(
            model, probes if probes is not None else default_decay_probes(num_terms), tol
        )
    decay_verdict, decay_note = decay if (needs_decay and decay is not None) else (None, "")

    decay_ok = decay_verdict in (
        DecayVerdict.CERTIFIED_ZERO_LIMIT,
        DecayVerdict.LIKELY_ZERO_LIMIT,
    )
    if report.verdict.convergent and (not needs_decay or decay_ok):
        certified = report.verdict.certified and (
            not needs_decay or decay_verdict is DecayVerdict.CERTIFIED_ZERO_LIMIT
        )
        conclusion = Conclusion.IO_PROB_ZERO
        note = (
            f"{kind.label} converges ({report.verdict.justification})"
            + ("" if not needs_decay else f"; marginal decay: {decay_note}")
        )
    elif (
        prefix_len == 0
        and isinstance(model, IndependentModel)
        and report.verdict.divergent
    ):
        conclusion = Conclusion.IO_PROB_ONE
        certified = report.verdict.certified
        note = (
            "independent events with divergent marginal series"
            f" ({report.verdict.justification})"
        )
    else:
        conclusion = Conclusion.NO_CONCLUSION
        certified = False
        if report.verdict.divergent and prefix_len == 0:
            note = "marginal series diverges but events are dependent; criterion is one-sided"
        elif report.verdict.divergent:
            note = "window series diverges; criterion is one-sided, no conclusion"
        elif not decay_ok and needs_decay and report.verdict.convergent:
            note = f"series converges but marginal decay unsettled: {decay_note}"
        else:
            note = f"series verdict inconclusive ({report.verdict.justification})"
    report.conclusion = conclusion
    report.conclusion_note = note
    return CriterionResult(
        prefix_len=prefix_len,
        orientation=orientation,
        conclusion=conclusion,
        certified=certified,
        decay=decay_verdict,
        decay_note=decay_note,
        series=report,
        note=note,
    )


@dataclass
class SweepResult:
    results: list[CriterionResult] = field(default_factory=list)
    least_io_zero: int | None = None
    least_certified_io_zero: int | None = None


def sweep_prefix_len(
    model: EventSequenceModel,
    max_prefix_len: int = 3,
    num_terms: int = 2000,
    tol: float = 1e-6,
    *,
    orientation: Orientation = Orientation.PREFIX_COMPLEMENT,
    probes: Sequence[int] | None = None,
    hard_cap: int = MAX_PREFIX_LEN,
) -> SweepResult:
    """Run the criterion for every complement-run length 0..max_prefix_len.

    Reports the least length that concludes IO_PROB_ZERO (and the least doing
    so with certification), or None.
    """
    if max_prefix_len > hard_cap:
        raise ValueError(f"max_prefix_len {max_prefix_len} exceeds the cap of {hard_cap}")
    decay = marginal_decay_check(
        model, probes if probes is not None else default_decay_probes(num_terms), tol
    )
    out = SweepResult()
    for m in range(max_prefix_len + 1):
        res = check_criterion(
            model,
            m,
            num_terms,
            tol,
            orientation=orientation,
            probes=probes,
            decay=decay,
        )
        out.results.append(res)
        if res.conclusion is Conclusion.IO_PROB_ZERO:
            if out.least_io_zero is None:
                out.least_io_zero = m
            if res.certified and out.least_certified_io_zero is None:
                out.least_certified_io_zero = m
    return out
