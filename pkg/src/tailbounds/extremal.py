"""Worst-case distributions and exact tail-maximization oracles.

Two closed-form constructions (the discrete two-atom mixture and the
continuous epsilon-mixture) sit next to two independent oracles that
maximize tail probability over moment classes by enumerating basic
feasible solutions of the equivalent linear programs in exact integer
arithmetic.  The oracles deliberately share no code with the bound
formulas: agreement between the two routes is the verification.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .decompose import IntervalMixture, UniformMixture, from_uniform_mixture, mixture_tail
from .dist_core import RationalLike, as_rational
from .errors import InfeasibleError, SoundnessViolationError, ValidationError


class ExtremalKind(enum.Enum):
    DISCRETE_TWO_ATOM = "DiscreteTwoAtom"
    CONTINUOUS_EPSILON_MIXTURE = "ContinuousEpsilonMixture"


@dataclass(frozen=True)
class ExtremalSpec:
    """A constructed worst-case distribution and what it achieves."""

    kind: ExtremalKind
    achieved_tail: Union[Fraction, float]
    bound_value: Union[Fraction, float]
    mixture: Optional[UniformMixture] = None  # discrete construction
    epsilon: Optional[float] = None  # continuous construction
    threshold: Optional[float] = None
    mix_weight: Optional[float] = None

    def to_dict(self, exact: bool = True) -> dict:
        out: dict = {"kind": self.kind.value}
        if self.mixture is not None:
            out["atoms"] = self.mixture.to_dict()["atoms"]
        if self.epsilon is not None:
            out.update(epsilon=self.epsilon, a=self.threshold, p=self.mix_weight)
        for name in ("achieved_tail", "bound_value"):
            v = getattr(self, name)
            if isinstance(v, Fraction):
                out[name] = str(v) if exact else float(v)
            else:
                out[name] = v
        return out


@dataclass(frozen=True)
class OracleResult:
    """Outcome of an exact tail-maximization: value, witness, work done."""

    max_tail: Fraction
    argmax: Union[UniformMixture, IntervalMixture]
    enumerated: int


@dataclass(frozen=True)
class TightnessRow:
    a: int
    mu: Fraction
    oracle: Optional[Fraction]
    bound: Fraction
    equal: Optional[bool]
    note: str = ""


def _check_a(a: int) -> int:
    if not isinstance(a, int) or a < 1:
        raise ValidationError("threshold a must be an integer >= 1")
    return a


def extremal_markov_discrete(a: int, mu: RationalLike) -> ExtremalSpec:
    """Two-atom mixture achieving tail exactly mu / (2a - 1).

    Mixes a point mass at 0 with the uniform on {0..2a-1}; feasible for
    0 < mu <= (2a - 1)/2.  The alternative maximizer uses {0..2a-2} and
    achieves the same tail.
    """
    a = _check_a(a)
    mu = as_rational(mu)
    if mu <= 0:
        raise ValidationError("mean must be positive")
    top = 2 * a - 1
    d_top = 2 * mu / top
    if d_top > 1:
        raise InfeasibleError(
            f"two-atom construction needs mu <= (2a-1)/2 = {Fraction(top, 2)}; got mu = {mu}"
        )
    mixture = UniformMixture({0: 1 - d_top, top: d_top})
    achieved = mixture_tail(mixture, a)
    bound = mu / top
    assert achieved == bound
    return ExtremalSpec(
        kind=ExtremalKind.DISCRETE_TWO_ATOM,
        achieved_tail=achieved,
        bound_value=bound,
        mixture=mixture,
    )


def extremal_markov_continuous(a: float, mu: float, epsilon: float) -> ExtremalSpec:
    """Mixture of Unif[0, epsilon] and Unif[0, 2a] with mean mu.

    Achieves P(X >= a) = (mu - epsilon/2) / (2a - epsilon), which tends
    to the supremum mu / (2a) as epsilon -> 0.
    """
    if not a > 0:
        raise ValidationError("threshold a must be positive")
    if not 0 < epsilon < a:
        raise ValidationError("epsilon must lie in (0, a)")
    if mu < epsilon / 2:
        raise ValidationError("mean must be at least epsilon/2")
    p = (mu - epsilon / 2) / (a - epsilon / 2)
    if p > 1:
        raise ValidationError(
            f"mean {mu} too large for threshold {a}: mix weight {p} exceeds 1"
        )
    achieved = (mu - epsilon / 2) / (2 * a - epsilon)
    bound = mu / (2 * a)
    return ExtremalSpec(
        kind=ExtremalKind.CONTINUOUS_EPSILON_MIXTURE,
        achieved_tail=achieved,
        bound_value=bound,
        epsilon=epsilon,
        threshold=a,
        mix_weight=p,
    )


def lp_max_tail_decreasing(a: int, mu: RationalLike, N: int) -> OracleResult:
    """Maximize P(X >= a) over decreasing pmfs on {0..N} with mean mu.

    In uniform-mixture coordinates the problem is a linear program with
    two equality constraints (total mass 1, E[D] = 2 mu), so some
    optimum is a basic solution with at most two positive atoms.  All
    bracketing atom pairs are enumerated and solved exactly.
    """
    a = _check_a(a)
    mu = as_rational(mu)
    if not isinstance(N, int) or N < 2 * a:
        raise ValidationError("support cap N must be an integer >= 2a")
    if mu <= 0 or 2 * mu > N:
        raise InfeasibleError(
            f"decreasing pmfs on {{0..{N}}} have mean in (0, {Fraction(N, 2)}]; got mu = {mu}"
        )
    two_mu = 2 * mu
    coeff = [Fraction(max(0, i - a + 1), i + 1) for i in range(N + 1)]
    best: Optional[tuple[Fraction, dict[int, Fraction]]] = None
    examined = 0
    i_hi = min(N, math.floor(two_mu))
    j_lo = math.ceil(two_mu)
    for i in range(i_hi + 1):
        for j in range(max(j_lo, i + 1), N + 1):
            examined += 1
            d_j = (two_mu - i) / (j - i)
            d_i = 1 - d_j
            value = d_i * coeff[i] + d_j * coeff[j]
            if best is None or value > best[0]:
                best = (value, {i: d_i, j: d_j})
    if best is None:  # single feasible point: two_mu == N is covered above
        raise InfeasibleError(f"no atom pair brackets E[D] = {two_mu} in {{0..{N}}}")
    return OracleResult(
        max_tail=best[0], argmax=UniformMixture(best[1]), enumerated=examined
    )


def _sum_of_squares(l: int, r: int) -> int:
    def prefix(n: int) -> int:
        return n * (n + 1) * (2 * n + 1) // 6

    return prefix(r) - prefix(l - 1)


def _cross(u: Sequence[int], v: Sequence[int]) -> tuple[int, int, int]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def lp_max_two_sided_unimodal(
    a: int, mu: RationalLike, var: RationalLike, N: int
) -> OracleResult:
    """Maximize P(|X - mu| >= a) over unimodal pmfs near mu with given moments.

    The support window is the integers within distance N of mu.  Any
    unimodal pmf on the window is a convex combination of uniforms on
    intervals sharing a common point, so the problem is a linear program
    over interval weights with three equality constraints (mass, mean,
    second moment).  Some optimum is a basic solution with at most three
    positive intervals; all singles, pairs and triples of intervals with
    a common point are enumerated and solved in exact integer arithmetic
    via Cramer's rule.
    """
    a = _check_a(a)
    mu = as_rational(mu)
    var = as_rational(var)
    if var < 0:
        raise ValidationError("variance must be nonnegative")
    if not isinstance(N, int) or N < 1:
        raise ValidationError("window radius N must be an integer >= 1")
    lo = math.ceil(mu - N)
    hi = math.floor(mu + N)
    if lo > hi:
        raise InfeasibleError("window contains no integers")
    upper_cut = math.ceil(mu + a)  # k >= mu + a  <=>  k >= upper_cut
    lower_cut = math.floor(mu - a)  # k <= mu - a  <=>  k <= lower_cut
    s2 = var + mu * mu
    b = (1, mu.numerator, s2.numerator)
    d2, d3 = mu.denominator, s2.denominator

    # One scaled integer column per interval.  Substituting
    # w = 2 * len * u makes every constraint coefficient an integer:
    # mass row 2*len, mean row d2*len*(l+r), second-moment row
    # 2*d3*sum(k^2); the objective coefficient is 2 * (# tail points).
    ls: list[int] = []
    rs: list[int] = []
    cols: list[tuple[int, int, int]] = []
    obj: list[int] = []
    for l in range(lo, hi + 1):
        for r in range(l, hi + 1):
            length = r - l + 1
            ls.append(l)
            rs.append(r)
            cols.append(
                (2 * length, d2 * length * (l + r), 2 * d3 * _sum_of_squares(l, r))
            )
            count = max(0, r - max(l, upper_cut) + 1) + max(
                0, min(r, lower_cut) - l + 1
            )
            obj.append(2 * count)

    n_cols = len(cols)
    examined = 0
    best_num, best_den = -1, 1
    best_basis: list[tuple[int, int]] = []  # (column index, weight numerator)

    # Singles: u = 1 / A0 must satisfy the mean and moment rows too.
    for j in range(n_cols):
        examined += 1
        A = cols[j]
        if A[1] == b[1] * A[0] and A[2] == b[2] * A[0]:
            num, den = obj[j], A[0]
            if num * best_den > best_num * den:
                best_num, best_den = num, den
                best_basis = [(j, 1)]
                best_basis_den = A[0]

    # Pairs: solve two rows, check the third exactly.
    for p in range(n_cols):
        Ap = cols[p]
        for q in range(p + 1, n_cols):
            if max(ls[p], ls[q]) > min(rs[p], rs[q]):
                continue
            examined += 1
            Aq = cols[q]
            for r0, r1, r2 in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
                det = Ap[r0] * Aq[r1] - Ap[r1] * Aq[r0]
                if det:
                    break
            else:
                continue
            up = b[r0] * Aq[r1] - b[r1] * Aq[r0]
            uq = Ap[r0] * b[r1] - Ap[r1] * b[r0]
            if Ap[r2] * up + Aq[r2] * uq != b[r2] * det:
                continue
            if det < 0:
                det, up, uq = -det, -up, -uq
            if up < 0 or uq < 0:
                continue
            num = obj[p] * up + obj[q] * uq
            if num * best_den > best_num * det:
                best_num, best_den = num, det
                best_basis = [(p, up), (q, uq)]
                best_basis_den = det

    # Triples via scalar triple products; cross products involving b are
    # hoisted out of the inner loop.
    b_cross = [_cross(b, A) for A in cols]
    for p in range(n_cols):
        Ap = cols[p]
        cp = obj[p]
        bxp = b_cross[p]
        for q in range(p + 1, n_cols):
            l_pq = max(ls[p], ls[q])
            r_pq = min(rs[p], rs[q])
            if l_pq > r_pq:
                continue
            Aq = cols[q]
            cq = obj[q]
            bxq = b_cross[q]
            cof = _cross(Ap, Aq)
            d1 = _dot(b, cof)
            for o in range(p):
                if ls[o] > r_pq or rs[o] < l_pq:
                    continue
                examined += 1
                Ao = cols[o]
                det = _dot(Ao, cof)
                if det == 0:
                    continue
                if det < 0:
                    det_abs = -det
                    uo = -d1
                    up = -_dot(Ao, bxq)
                    uq = _dot(Ao, bxp)
                else:
                    det_abs = det
                    uo = d1
                    up = _dot(Ao, bxq)
                    uq = -_dot(Ao, bxp)
                if uo < 0 or up < 0 or uq < 0:
                    continue
                num = obj[o] * uo + cp * up + cq * uq
                if num * best_den > best_num * det_abs:
                    best_num, best_den = num, det_abs
                    best_basis = [(o, uo), (p, up), (q, uq)]
                    best_basis_den = det_abs

    if best_num < 0:
        raise InfeasibleError(
            f"no unimodal pmf on [{lo}, {hi}] has mean {mu} and variance {var}"
        )
    atoms: dict[tuple[int, int], Fraction] = {}
    for j, unum in best_basis:
        if unum == 0:
            continue
        length = rs[j] - ls[j] + 1
        w = Fraction(2 * length * unum, best_basis_den)
        atoms[(ls[j], rs[j])] = atoms.get((ls[j], rs[j]), Fraction(0)) + w
    return OracleResult(
        max_tail=Fraction(best_num, best_den),
        argmax=IntervalMixture(atoms),
        enumerated=examined,
    )


def verify_tightness_theorem2(
    a_values: Iterable[int], mu_grid: Iterable[RationalLike], N: int
) -> list[TightnessRow]:
    """Cross-check the sharpened Markov bound against the LP oracle.

    For every (a, mu) cell the oracle maximum is compared with
    mu / (2a - 1).  Equality must hold exactly whenever the two-atom
    construction is feasible (mu <= (2a - 1)/2); an oracle value above
    the bound aborts, since that would disprove the bound itself.
    """
    rows: list[TightnessRow] = []
    for a in a_values:
        a = _check_a(a)
        for mu_raw in mu_grid:
            mu = as_rational(mu_raw)
            bound = mu / (2 * a - 1)
            if mu <= 0 or 2 * mu > N:
                rows.append(
                    TightnessRow(
                        a=a, mu=mu, oracle=None, bound=bound, equal=None,
                        note=f"infeasible: mean must lie in (0, {Fraction(N, 2)}]",
                    )
                )
                continue
            oracle = lp_max_tail_decreasing(a, mu, N).max_tail
            if oracle > bound:
                raise SoundnessViolationError(
                    f"oracle {oracle} exceeds bound {bound} at a={a}, mu={mu}, N={N}"
                )
            feasible_construction = 2 * mu <= 2 * a - 1
            rows.append(
                TightnessRow(
                    a=a, mu=mu, oracle=oracle, bound=bound, equal=oracle == bound,
                    note="" if feasible_construction
                    else f"two-atom construction infeasible: mu > {Fraction(2 * a - 1, 2)}",
                )
            )
    return rows


def tightness_rows_to_csv(rows: Iterable[TightnessRow]) -> str:
    lines = ["a,mu,oracle,bound,equal"]
    for row in rows:
        oracle = "" if row.oracle is None else str(row.oracle)
        equal = "" if row.equal is None else str(row.equal).lower()
        lines.append(f"{row.a},{row.mu},{oracle},{row.bound},{equal}")
    return "\n".join(lines) + "\n"


def tightness_rows_to_json(rows: Iterable[TightnessRow]) -> list[dict]:
    return [
        {
            "a": row.a,
            "mu": str(row.mu),
            "oracle": None if row.oracle is None else str(row.oracle),
            "bound": str(row.bound),
            "equal": row.equal,
            "note": row.note,
        }
        for row in rows
    ]
