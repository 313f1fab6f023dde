"""Exact finite-support distributions on the integers.

Everything in this module is `fractions.Fraction` arithmetic.  Moments,
tails and shape predicates are computed exactly, so downstream equality
checks (bound tightness, decomposition roundtrips) are genuine equalities
rather than tolerance comparisons.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from .errors import ValidationError

RationalLike = Union[int, float, str, Fraction]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions, floats and strings like ``2/3`` or ``0.5``."""
    if isinstance(value, Fraction):
        return value
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ValidationError(f"not a rational number: {value!r}") from exc


@dataclass(frozen=True)
class Pmf:
    """Finite-support pmf on the integers with exact rational weights.

    ``weights[k]`` is the probability of ``offset + k``.  Canonical form:
    weights sum to exactly one and the first and last weight are nonzero,
    so structurally equal pmfs are equal distributions and vice versa.
    Use :func:`make_pmf` rather than the raw constructor; it trims and
    rescales arbitrary weight lists.
    """

    offset: int
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.weights:
            raise ValidationError("pmf needs at least one weight")
        if any(w < 0 for w in self.weights):
            raise ValidationError("pmf weights must be nonnegative")
        if sum(self.weights) != 1:
            raise ValidationError("pmf weights must sum to exactly 1")
        if self.weights[0] == 0 or self.weights[-1] == 0:
            raise ValidationError(
                "pmf weights must have nonzero endpoints (use make_pmf)"
            )

    @property
    def support_min(self) -> int:
        return self.offset

    @property
    def support_max(self) -> int:
        return self.offset + len(self.weights) - 1

    def probability(self, k: int) -> Fraction:
        idx = k - self.offset
        if 0 <= idx < len(self.weights):
            return self.weights[idx]
        return Fraction(0)

    def items(self) -> Iterator[tuple[int, Fraction]]:
        for idx, w in enumerate(self.weights):
            yield self.offset + idx, w

    def to_dict(self) -> dict:
        """JSON form: ``{"offset": int, "weights": ["num/den", ...]}``."""
        return {"offset": self.offset, "weights": [str(w) for w in self.weights]}

    @classmethod
    def from_dict(cls, obj: dict) -> "Pmf":
        try:
            offset = obj["offset"]
            raw = obj["weights"]
        except (TypeError, KeyError) as exc:
            raise ValidationError(
                "pmf JSON must be an object with 'offset' and 'weights'"
            ) from exc
        if not isinstance(offset, int):
            raise ValidationError("pmf 'offset' must be an integer")
        return make_pmf(offset, [as_rational(w) for w in raw])


@dataclass(frozen=True)
class ShapeReport:
    """Shape predicates of a pmf.

    ``is_decreasing`` is only meaningful for distributions on the
    nonnegative integers starting at 0; ``mode`` is the smallest position
    witnessing unimodality.
    """

    is_decreasing: bool
    is_unimodal: bool
    mode: Optional[int]


def make_pmf(offset: int, weights: Sequence[RationalLike]) -> Pmf:
    """Build a canonical pmf, rescaling weights by their exact sum."""
    if not isinstance(offset, int):
        raise ValidationError("offset must be an integer")
    ws = [as_rational(w) for w in weights]
    if not ws:
        raise ValidationError("pmf needs at least one weight")
    if any(w < 0 for w in ws):
        raise ValidationError("pmf weights must be nonnegative")
    total = sum(ws)
    if total == 0:
        raise ValidationError("pmf weights must not all be zero")
    lo = 0
    while ws[lo] == 0:
        lo += 1
    hi = len(ws)
    while ws[hi - 1] == 0:
        hi -= 1
    return Pmf(offset + lo, tuple(w / total for w in ws[lo:hi]))


def uniform_pmf(lo: int, hi: int) -> Pmf:
    """Discrete uniform on {lo..hi}."""
    if lo > hi:
        raise ValidationError(f"empty support {{{lo}..{hi}}}")
    return make_pmf(lo, [1] * (hi - lo + 1))


def point_pmf(k: int) -> Pmf:
    """Point mass at k."""
    return make_pmf(k, [1])


def mean(p: Pmf) -> Fraction:
    """Exact expectation."""
    return sum((w * k for k, w in p.items()), Fraction(0))


def variance(p: Pmf) -> Fraction:
    """Exact second central moment."""
    mu = mean(p)
    return sum((w * (k - mu) ** 2 for k, w in p.items()), Fraction(0))


def tail(p: Pmf, a: int) -> Fraction:
    """Exact P(X >= a); 1 when a is at or below the support minimum."""
    if not isinstance(a, int):
        raise ValidationError("tail threshold must be an integer")
    idx = max(0, a - p.offset)
    return sum(p.weights[idx:], Fraction(0))


def two_sided_tail(p: Pmf, a: RationalLike) -> Fraction:
    """Exact P(|X - E[X]| >= a) for rational a > 0."""
    a = as_rational(a)
    if a <= 0:
        raise ValidationError("two-sided threshold must be positive")
    mu = mean(p)
    return sum((w for k, w in p.items() if abs(k - mu) >= a), Fraction(0))


def shape(p: Pmf) -> ShapeReport:
    """Detect decreasing / unimodal structure.

    Uses non-strict inequalities: a pmf is decreasing when it starts at 0
    and each weight is <= its predecessor, unimodal when some mode splits
    the weights into a nondecreasing run followed by a nonincreasing run.
    The reported mode is the smallest valid one.
    """
    w = p.weights
    n = len(w)
    # Smallest index from which the weights are nonincreasing.
    dec_start = n - 1
    while dec_start > 0 and w[dec_start - 1] >= w[dec_start]:
        dec_start -= 1
    # Largest index up to which the weights are nondecreasing.
    inc_end = 0
    while inc_end < n - 1 and w[inc_end] <= w[inc_end + 1]:
        inc_end += 1
    unimodal = dec_start <= inc_end
    mode = p.offset + dec_start if unimodal else None
    decreasing = p.offset == 0 and dec_start == 0
    return ShapeReport(is_decreasing=decreasing, is_unimodal=unimodal, mode=mode)
