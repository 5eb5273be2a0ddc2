"""Census of monic irreducible binomials x^t - a over F_q, t <= T.

Everything exact is exact: the per-degree counts, the full census sum,
and the stratum decomposition are integers and Fractions.  Floating
point appears only in bound and estimate evaluation.

The census over eligible degrees (rad_4(t) | q-1) reduces to the lattice
of exponent vectors of the primes of q-1.  Two congruence regimes:

* q != 3 (mod 4): eligible t are exactly the products of primes of q-1;
* q  = 3 (mod 4): q-1 = 2m with m odd; eligible t are the odd products
  of primes of m together with their doubles (degrees divisible by 4 are
  never eligible).  Sums split accordingly, the doubled half entering
  with weight 1/2 because phi(2t)/(2t) = phi(t)/(2t) for odd t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .arith import Factorization, euler_phi, factor, rad
from .lattice import count_products, iter_exponent_vectors

__all__ = [
    "CongruenceCase",
    "CensusInput",
    "CensusReport",
    "BoundReport",
    "RefinedUpperBound",
    "LogPowerBound",
    "DegenerateCensusError",
    "is_prime_power",
    "nq",
    "enumerate_eligible",
    "exact_sum",
    "stratum_sums",
    "stratum_closed_forms",
    "asymptotic_estimate",
    "normalized_ratio",
    "ratio_limit",
    "refined_upper_bound",
    "naive_bounds",
    "log_power_bound",
    "census_report",
]


class DegenerateCensusError(ValueError):
    """Raised by estimators when q-1 has no usable prime (q in {2, 3})."""


class CongruenceCase(Enum):
    NOT_THREE_MOD_FOUR = "q != 3 (mod 4)"
    THREE_MOD_FOUR = "q == 3 (mod 4)"


@lru_cache(maxsize=1024)
def _prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    f = factor(q)
    if len(f.factors) != 1:
        return None
    return f.factors[0]


def is_prime_power(q: int) -> bool:
    return _prime_power(q) is not None


@dataclass(frozen=True)
class CensusInput:
    """A census problem: field size q (prime power), degree bound max_t.

    `primes` holds the lattice primes for the active congruence case: all
    primes of q-1 when q != 3 (mod 4), the odd primes of q-1 otherwise.
    """

    q: int
    max_t: int
    q_minus_1: Factorization
    case: CongruenceCase
    primes: tuple[int, ...]

    @classmethod
    def from_q(cls, q: int, max_t: int) -> "CensusInput":
        if not is_prime_power(q):
            raise ValueError(f"q = {q} is not a prime power")
        if max_t < 1:
            raise ValueError(f"max_t must be >= 1, got {max_t}")
        qm1 = factor(q - 1)
        if q % 4 == 3:
            case = CongruenceCase.THREE_MOD_FOUR
            # q = 3 (mod 4) forces q-1 = 2 (mod 4): the exponent of 2 is 1
            assert qm1.factors and qm1.factors[0] == (2, 1)
            primes = tuple(p for p, _ in qm1.factors if p != 2)
        else:
            case = CongruenceCase.NOT_THREE_MOD_FOUR
            primes = qm1.primes
        return cls(q, max_t, qm1, case, primes)

    @property
    def s(self) -> int:
        return len(self.primes)


def nq(q: int, t: int) -> int:
    """Exact number of monic irreducible binomials of degree t over F_q.

    (q-1) * phi(t)/t when rad_4(t) | q-1, else 0; the divisibility makes
    the product an integer.  For t = 1 this is q-1 (the binomials x - a
    with a != 0).
    """
    if not is_prime_power(q):
        raise ValueError(f"q = {q} is not a prime power")
    if t < 1:
        raise ValueError(f"degree must be >= 1, got {t}")
    ft = factor(t)
    r = rad(ft)
    r4 = 2 * r if t % 4 == 0 else r
    if (q - 1) % r4 != 0:
        return 0
    return (q - 1) // r * euler_phi(factor(r))


def _support_count(primes: tuple[int, ...], vec: tuple[int, ...]) -> tuple[int, int]:
    """(radical, phi(radical)) of the product with exponents vec."""
    r = 1
    phi = 1
    for p, v in zip(primes, vec):
        if v:
            r *= p
            phi *= p - 1
    return r, phi


def enumerate_eligible(inp: CensusInput):
    """Yield (t, nq(q, t)) for every eligible t <= max_t, in increasing t.

    Eligible means rad_4(t) | q-1.  For q = 3 (mod 4) the eligible degrees
    are the odd products and their doubles; degrees divisible by 4 are
    never generated.
    """
    qm1 = inp.q - 1
    items: list[tuple[int, int]] = []
    if inp.case is CongruenceCase.NOT_THREE_MOD_FOUR:
        for vec, t in iter_exponent_vectors(inp.primes, inp.max_t):
            r, phi = _support_count(inp.primes, vec)
            items.append((t, (qm1 // r) * phi))
    else:
        for vec, t in iter_exponent_vectors(inp.primes, inp.max_t):
            r, phi = _support_count(inp.primes, vec)
            items.append((t, (qm1 // r) * phi))
        for vec, t in iter_exponent_vectors(inp.primes, inp.max_t // 2):
            r, phi = _support_count(inp.primes, vec)
            items.append((2 * t, (qm1 // (2 * r)) * phi))
    items.sort()
    yield from items


def exact_sum(inp: CensusInput) -> int:
    """Exact census: sum of nq(q, t) over t <= max_t."""
    return sum(n for _, n in enumerate_eligible(inp))


def _strata_sums_over(primes: tuple[int, ...], limit: int) -> tuple[Fraction, Fraction, Fraction]:
    """(A, B, C): sums of phi(t)/t over vectors with no / one / more zeros."""
    a = b = c = Fraction(0)
    for vec, _ in iter_exponent_vectors(primes, limit):
        r, phi = _support_count(primes, vec)
        w = Fraction(phi, r)
        zeros = sum(1 for v in vec if v == 0)
        if zeros == 0:
            a += w
        elif zeros == 1:
            b += w
        else:
            c += w
    return a, b, c


def stratum_sums(inp: CensusInput) -> tuple[Fraction, Fraction, Fraction]:
    """Exact stratum sums (A, B, C) with exact_sum = (q-1)(A + B + C).

    A runs over eligible degrees whose exponent vector is all-positive,
    B over those with exactly one zero coordinate, C over the rest.  For
    q = 3 (mod 4) each stratum combines the odd half at max_t with the
    doubled half at max_t // 2, the latter weighted 1/2.
    """
    if inp.case is CongruenceCase.NOT_THREE_MOD_FOUR:
        return _strata_sums_over(inp.primes, inp.max_t)
    a1, b1, c1 = _strata_sums_over(inp.primes, inp.max_t)
    a2, b2, c2 = _strata_sums_over(inp.primes, inp.max_t // 2)
    half = Fraction(1, 2)
    return a1 + half * a2, b1 + half * b2, c1 + half * c2


def _upsilon_j(primes: tuple[int, ...], j: int, limit: int) -> int:
    """|{vectors with coordinate j zero, all others >= 1, product <= limit}|."""
    others = primes[:j] + primes[j + 1 :]
    return count_products(others, limit // math.prod(others) if others else limit)


def _closed_forms_over(
    primes: tuple[int, ...], ratio: Fraction, limit: int
) -> tuple[Fraction, Fraction]:
    prod_primes = math.prod(primes) if primes else 1
    rhs_a = ratio * count_products(primes, limit // prod_primes)
    rhs_b = Fraction(0)
    for j, p in enumerate(primes):
        rhs_b += Fraction(p, p - 1) * _upsilon_j(primes, j, limit)
    return rhs_a, ratio * rhs_b


def stratum_closed_forms(inp: CensusInput) -> tuple[Fraction, Fraction]:
    """Closed forms equal to the exact stratum sums A and B.

    Over the all-positive stratum every phi(t)/t collapses to the fixed
    ratio prod (p-1)/p of the lattice primes, so A = ratio * |stratum|,
    and the stratum count shifts down to a plain bounded-product count.
    Likewise B = ratio * sum_j p_j/(p_j - 1) * |one-zero stratum at j|.
    Exact identities for every max_t >= 1.
    """
    ratio = Fraction(
        math.prod(p - 1 for p in inp.primes), math.prod(inp.primes) if inp.primes else 1
    )
    if inp.case is CongruenceCase.NOT_THREE_MOD_FOUR:
        return _closed_forms_over(inp.primes, ratio, inp.max_t)
    a1, b1 = _closed_forms_over(inp.primes, ratio, inp.max_t)
    a2, b2 = _closed_forms_over(inp.primes, ratio, inp.max_t // 2)
    half = Fraction(1, 2)
    return a1 + half * a2, b1 + half * b2


def asymptotic_estimate(inp: CensusInput) -> float:
    """Two-term growth law for the census sum.

    With s the number of lattice primes and l_j = log p_j:

    * q != 3 (mod 4):
        phi(q-1)/(s! l_1...l_s) * ((log T)^s
            + (s/2) sum_j (p_j+1) l_j/(p_j-1) * (log T)^(s-1))
    * q = 3 (mod 4):
        3 phi(q-1)/(s! l_1...l_s) * ((log T)^s
            + (s/2) [sum_j (p_j+1) l_j/(p_j-1) - log(4)/3] * (log T)^(s-1))

    The second case carries the factor 3: the odd half contributes twice
    the all-primes totient ratio (phi(m)/m = 2 phi(q-1)/(q-1) for
    q-1 = 2m, m odd) and the doubled half adds half of that again.
    Refuses q in {2, 3} (no lattice primes).
    """
    s = inp.s
    if s == 0:
        raise DegenerateCensusError(f"q = {inp.q}: no lattice primes, estimate undefined")
    logs = [math.log(p) for p in inp.primes]
    log_t = math.log(inp.max_t)
    phi_q = euler_phi(inp.q_minus_1)
    corr = sum((p + 1) * l / (p - 1) for p, l in zip(inp.primes, logs))
    denom = math.factorial(s) * math.prod(logs)
    if inp.case is CongruenceCase.NOT_THREE_MOD_FOUR:
        lead = phi_q / denom
    else:
        lead = 3 * phi_q / denom
        corr -= math.log(4) / 3
    return lead * (log_t**s + 0.5 * s * corr * log_t ** (s - 1))


def normalized_ratio(inp: CensusInput) -> float:
    """(s! l_1...l_s / phi(q-1)) * exact_sum / (log T)^s.

    Tends to ratio_limit(inp) as T grows.
    """
    s = inp.s
    if s == 0:
        raise DegenerateCensusError(f"q = {inp.q}: no lattice primes, ratio undefined")
    logs = math.prod(math.log(p) for p in inp.primes)
    return (
        math.factorial(s)
        * logs
        / euler_phi(inp.q_minus_1)
        * exact_sum(inp)
        / math.log(inp.max_t) ** s
    )


def ratio_limit(inp: CensusInput) -> float:
    """Limit of normalized_ratio: 1 when q != 3 (mod 4), else 3."""
    if inp.s == 0:
        raise DegenerateCensusError(f"q = {inp.q}: no lattice primes, limit undefined")
    return 1.0 if inp.case is CongruenceCase.NOT_THREE_MOD_FOUR else 3.0


@dataclass(frozen=True)
class RefinedUpperBound:
    """Small-T census upper bound with its correction coefficients."""

    bound: float
    m1: float
    m2: float


def refined_upper_bound(inp: CensusInput) -> RefinedUpperBound:
    """Corrected upper bound for the census at moderate T.

    (phi(q-1)/(s! l_1...l_s)) (log T)^s (1 + s M1 R + s(s-1) M2 R^2)
    with R = log(rad(q-1))/log T,
    M1 = rad(q-1)^(-(s-1)/(2 log T)) (1 + log(2s)/s) - 1/2,
    M2 = ((q-1)(s-1)/(2s phi(q-1))) rad(q-1)^((s-2)/(2 log T)) + 1/8.

    Requires q != 3 (mod 4), s >= 2, max_t > rad(q-1).  REPORT ONLY: the
    derivation leans on the half-shift upper bound, which fails on small
    instances, so the census harness records margins instead of asserting.
    """
    if inp.case is not CongruenceCase.NOT_THREE_MOD_FOUR:
        raise ValueError("the refined bound requires q != 3 (mod 4)")
    s = inp.s
    if s < 2:
        raise ValueError(f"the refined bound requires s >= 2, got s = {s}")
    radq = rad(inp.q_minus_1)
    if inp.max_t <= radq:
        raise ValueError(f"the refined bound needs max_t > rad(q-1) = {radq}")
    log_t = math.log(inp.max_t)
    r = math.log(radq) / log_t
    phi_q = euler_phi(inp.q_minus_1)
    m1 = radq ** (-(s - 1) / (2 * log_t)) * (1 + math.log(2 * s) / s) - 0.5
    m2 = ((inp.q - 1) * (s - 1) / (2 * s * phi_q)) * radq ** ((s - 2) / (2 * log_t)) + 0.125
    lead = phi_q / (math.factorial(s) * math.prod(math.log(p) for p in inp.primes))
    bound = lead * log_t**s * (1 + s * m1 * r + s * (s - 1) * m2 * r**2)
    return RefinedUpperBound(bound, m1, m2)


def _eligible_count(inp: CensusInput) -> int:
    if inp.case is CongruenceCase.NOT_THREE_MOD_FOUR:
        return count_products(inp.primes, inp.max_t)
    return count_products(inp.primes, inp.max_t) + count_products(
        inp.primes, inp.max_t // 2
    )


def naive_bounds(inp: CensusInput) -> tuple[int, int]:
    """phi(q-1) * #eligible <= exact_sum <= (q-1) * #eligible.

    From 1 >= phi(t)/t >= phi(q-1)/(q-1) on eligible degrees.  These are
    asserted (they always hold), unlike the report-only refined bounds.
    """
    cnt = _eligible_count(inp)
    return euler_phi(inp.q_minus_1) * cnt, (inp.q - 1) * cnt


@dataclass(frozen=True)
class LogPowerBound:
    """(q-1) T / (log T)^A with its range-of-validity flag.

    The validity threshold reads log_k as the k-fold iterated natural
    logarithm (an interpretation; flagged in reports).  `reason` explains
    a False flag; `threshold` is the minimal T when computable.
    """

    bound: float
    valid: bool
    threshold: float | None
    reason: str | None

    interpretation = "log_k read as k-fold iterated natural logarithm"


def log_power_bound(q: int, t_max: int, exponent: float = 1.0, eps: float = 0.5) -> LogPowerBound:
    """Comparison bound (q-1) T/(log T)^A, valid for
    T >= (log(q-1))^((1+eps) A log_3(q)/log_4(q)).

    Requires t_max >= 3 and q >= 5.  The flag is False with a reason when
    an iterated log is undefined (some iterate <= 1) or T is below the
    threshold; the bound value itself is always reported.
    """
    if q < 5:
        raise ValueError(f"need q >= 5, got {q}")
    if t_max < 3:
        raise ValueError(f"need T >= 3, got {t_max}")
    if exponent <= 0 or eps <= 0:
        raise ValueError("exponent and eps must be positive")
    bound = (q - 1) * t_max / math.log(t_max) ** exponent
    value = float(q)
    iterates = [value]
    for k in range(1, 5):
        if iterates[-1] <= 1.0:
            return LogPowerBound(
                bound,
                False,
                None,
                f"log_{k}(q) undefined: log_{k - 1}(q) = {iterates[-1]:.6g} <= 1",
            )
        iterates.append(math.log(iterates[-1]))
    l3, l4 = iterates[3], iterates[4]
    power = (1 + eps) * exponent * l3 / l4
    try:
        threshold = math.log(q - 1) ** power
    except OverflowError:
        threshold = math.inf
    if t_max >= threshold:
        return LogPowerBound(bound, True, threshold, None)
    return LogPowerBound(bound, False, threshold, f"T = {t_max} below threshold {threshold:.6g}")


@dataclass
class BoundReport:
    """All bound evaluations for one census, with signed margins.

    margins[name] = bound - exact_sum (positive means the bound sits above
    the exact census).
    """

    naive_lower: int
    naive_upper: int
    refined: RefinedUpperBound | None
    refined_note: str | None
    log_power: LogPowerBound | None
    margins: dict[str, float]


@dataclass
class CensusReport:
    """Exact census plus optional strata, asymptotics, and bounds."""

    q: int
    max_t: int
    case: str
    primes: tuple[int, ...]
    exact: int
    strata: tuple[Fraction, Fraction, Fraction] | None = None
    closed_forms: tuple[Fraction, Fraction] | None = None
    closed_forms_note: str | None = None
    asymptotic: float | None = None
    asymptotic_note: str | None = None
    ratio: float | None = None
    limit: float | None = None
    bounds: BoundReport | None = None


def census_report(
    inp: CensusInput,
    with_strata: bool = False,
    with_bounds: bool = False,
    with_asymptotic: bool = False,
    log_power_exponent: float = 1.0,
    log_power_eps: float = 0.5,
) -> CensusReport:
    """Assemble the full report for one (q, max_t) census."""
    report = CensusReport(
        q=inp.q,
        max_t=inp.max_t,
        case=inp.case.value,
        primes=inp.primes,
        exact=exact_sum(inp),
    )
    if with_strata:
        report.strata = stratum_sums(inp)
        try:
            report.closed_forms = stratum_closed_forms(inp)
        except ValueError as exc:
            report.closed_forms_note = str(exc)
    if with_asymptotic:
        try:
            report.asymptotic = asymptotic_estimate(inp)
            report.ratio = normalized_ratio(inp)
            report.limit = ratio_limit(inp)
        except DegenerateCensusError as exc:
            report.asymptotic_note = str(exc)
    if with_bounds:
        lower, upper = naive_bounds(inp)
        refined = None
        note = None
        try:
            refined = refined_upper_bound(inp)
        except ValueError as exc:
            note = str(exc)
        log_power = None
        if inp.q >= 5 and inp.max_t >= 3:
            log_power = log_power_bound(inp.q, inp.max_t, log_power_exponent, log_power_eps)
        margins = {
            "naive_lower": float(lower - report.exact),
            "naive_upper": float(upper - report.exact),
        }
        if refined is not None:
            margins["refined_upper"] = refined.bound - report.exact
        if log_power is not None:
            margins["log_power"] = log_power.bound - report.exact
        report.bounds = BoundReport(lower, upper, refined, note, log_power, margins)
    return report
