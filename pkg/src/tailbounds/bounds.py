"""The bound catalogue: classical, continuous-smoothed, and sharpened discrete.

The discrete formulas stay in exact rationals; the continuous ones are
reference computations over moment summaries and use floats.  Raw
formula values may exceed 1 - clamping is left to presentation layers so
the algebraic identities between bounds remain exact.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Union

from .dist_core import Pmf, RationalLike, as_rational, mean, shape, variance
from .errors import ValidationError


class Formula(enum.Enum):
    MARKOV_CLASSICAL = "MarkovClassical"
    CHEBYSHEV_CLASSICAL = "ChebyshevClassical"
    MARKOV_DECREASING_DISCRETE = "MarkovDecreasingDiscrete"
    CHEBYSHEV_UNIMODAL_DISCRETE = "ChebyshevUnimodalDiscrete"
    MARKOV_CONTINUOUS_DECREASING = "MarkovContinuousDecreasing"
    CHEBYSHEV_CONTINUOUS_UNIMODAL = "ChebyshevContinuousUnimodal"


class TailMode(enum.Enum):
    ONE_SIDED_UPPER = "one-sided"
    TWO_SIDED = "two-sided"


@dataclass(frozen=True)
class BoundResult:
    """A bound value plus the facts that licensed the formula.

    ``verified`` lists preconditions this library actually checked;
    ``asserted`` lists conditions the caller vouched for (the continuous
    formulas cannot check density shape from moment summaries).
    """

    value: Union[Fraction, float]
    formula: Formula
    verified: tuple[str, ...] = ()
    asserted: tuple[str, ...] = ()

    def to_dict(self, exact: bool = True) -> dict:
        if isinstance(self.value, Fraction):
            value = str(self.value) if exact else float(self.value)
        else:
            value = self.value
        return {
            "formula": self.formula.value,
            "value": value,
            "verified": list(self.verified),
            "asserted": list(self.asserted),
        }


def _check_threshold(a: RationalLike) -> Fraction:
    a = as_rational(a)
    if a <= 0:
        raise ValidationError("threshold a must be positive")
    return a


def _check_integer_threshold(a: int) -> int:
    if not isinstance(a, int) or a < 1:
        raise ValidationError("threshold a must be an integer >= 1")
    return a


def markov_classical(mu: RationalLike, a: RationalLike) -> BoundResult:
    """P(|X| >= a) <= E|X| / a."""
    a = _check_threshold(a)
    mu = as_rational(mu)
    if mu < 0:
        raise ValidationError("E|X| must be nonnegative")
    return BoundResult(
        value=mu / a,
        formula=Formula.MARKOV_CLASSICAL,
        verified=("a > 0", "E|X| >= 0"),
    )


def chebyshev_classical(var: RationalLike, a: RationalLike) -> BoundResult:
    """P(|X - E[X]| >= a) <= V(X) / a^2."""
    a = _check_threshold(a)
    var = as_rational(var)
    if var < 0:
        raise ValidationError("variance must be nonnegative")
    return BoundResult(
        value=var / a**2,
        formula=Formula.CHEBYSHEV_CLASSICAL,
        verified=("a > 0", "V(X) >= 0"),
    )


def markov_decreasing(mu: RationalLike, a: int) -> BoundResult:
    """P(X >= a) <= E[X] / (2a - 1) for decreasing pmfs on {0,1,...}."""
    a = _check_integer_threshold(a)
    mu = as_rational(mu)
    if mu < 0:
        raise ValidationError("mean must be nonnegative")
    return BoundResult(
        value=mu / (2 * a - 1),
        formula=Formula.MARKOV_DECREASING_DISCRETE,
        verified=("a >= 1 integer", "E[X] >= 0"),
    )


def chebyshev_unimodal(var: RationalLike, a: int) -> BoundResult:
    """P(|X - E[X]| >= a) <= (V(X) + 1/12) / (2 (a - 1/2)^2) for unimodal pmfs."""
    a = _check_integer_threshold(a)
    var = as_rational(var)
    if var < 0:
        raise ValidationError("variance must be nonnegative")
    return BoundResult(
        value=(var + Fraction(1, 12)) / (2 * (a - Fraction(1, 2)) ** 2),
        formula=Formula.CHEBYSHEV_UNIMODAL_DISCRETE,
        verified=("a >= 1 integer", "V(X) >= 0"),
    )


def markov_continuous_decreasing(mu: float, a: float) -> BoundResult:
    """P(X >= a) <= E[X] / (2a) for continuous X with decreasing density."""
    if not a > 0:
        raise ValidationError("threshold a must be positive")
    if mu < 0:
        raise ValidationError("mean must be nonnegative")
    return BoundResult(
        value=mu / (2.0 * a),
        formula=Formula.MARKOV_CONTINUOUS_DECREASING,
        verified=("a > 0", "E[X] >= 0"),
        asserted=("nonnegative continuous with decreasing density (asserted, not verified)",),
    )


def chebyshev_continuous_unimodal(var: float, a: float) -> BoundResult:
    """P(|X - E[X]| >= a) <= V(X) / (2 a^2) under the half-interval density conditions."""
    if not a > 0:
        raise ValidationError("threshold a must be positive")
    if var < 0:
        raise ValidationError("variance must be nonnegative")
    return BoundResult(
        value=var / (2.0 * a * a),
        formula=Formula.CHEBYSHEV_CONTINUOUS_UNIMODAL,
        verified=("a > 0", "V(X) >= 0"),
        asserted=(
            "density decreasing on [a/2, 3a/2] and increasing on [-3a/2, -a/2] "
            "about the mean (asserted, not verified)",
        ),
    )


def best_bound(p: Pmf, a: int, mode: TailMode = TailMode.ONE_SIDED_UPPER) -> list[BoundResult]:
    """Every applicable bound for the pmf, sorted ascending by value.

    Classical bounds always apply; the sharpened discrete ones are
    included only when the relevant shape predicate verifies.  The first
    element is the best provable bound.
    """
    a = _check_integer_threshold(a)
    report = shape(p)
    results: list[BoundResult] = []
    if mode is TailMode.ONE_SIDED_UPPER:
        abs_mean = sum((w * abs(k) for k, w in p.items()), Fraction(0))
        r = markov_classical(abs_mean, a)
        results.append(replace(r, verified=r.verified + ("E|X| computed exactly",)))
        if report.is_decreasing:
            r = markov_decreasing(mean(p), a)
            results.append(
                replace(r, verified=r.verified + ("pmf decreasing on {0,1,...} (verified)",))
            )
    elif mode is TailMode.TWO_SIDED:
        var = variance(p)
        results.append(chebyshev_classical(var, a))
        if report.is_unimodal:
            r = chebyshev_unimodal(var, a)
            results.append(
                replace(r, verified=r.verified + (f"pmf unimodal with mode {report.mode} (verified)",))
            )
    else:
        raise ValidationError(f"unknown tail mode: {mode!r}")
    results.sort(key=lambda r: r.value)
    return results
