"""Congruence engine over rational q-integers and the concrete claim checkers.

A rational a/b (lowest terms) is a q-integer when gcd(b, q) = 1; two
q-integers are congruent mod q when their difference is q times another
q-integer.  That relation is the trust root here, so ``congruent_mod``
decides it by two independent routes that must agree.

On top of it sit the checkers: Euler numbers modulo odd integers via
alternating power sums, the denominator-cleared congruence that pins E_k
modulo powers of two through floor-weighted sums, the fast mod-2**n
evaluator built from it, the Stern valuation suite, polynomial congruences
for Bernoulli/Euler polynomials under argument scaling, the signed floor
sum closed form, and the Kummer/Adams/Thangadurai Bernoulli checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import special
from .exactmath import (
    InternalInconsistencyError,
    RationalLike,
    UnivariatePolynomial,
    floor_div,
    is_prime,
    mod_inverse,
    mod_pow,
    v_adic,
)

__all__ = [
    "QAdicContext",
    "CongruenceReport",
    "ValuationRecord",
    "KummerResult",
    "is_q_integer",
    "congruent_mod",
    "poly_congruent_mod",
    "alternating_power_sum",
    "check_euler_mod_odd",
    "stern_sum",
    "check_euler_mod_two_power",
    "cleared_coefficient_valuation",
    "euler_mod_2n",
    "check_power_sum_divisibility",
    "stern_valuation",
    "check_bernoulli_poly_congruence",
    "bernoulli_poly_congruence_route",
    "check_euler_poly_congruence",
    "signed_floor_sum_identity",
    "kummer_check",
    "adams_thangadurai_valuation",
]


@dataclass(frozen=True)
class QAdicContext:
    """The ring of rational q-integers for a fixed modulus q > 1 (q need not be prime)."""

    q: int

    def __post_init__(self) -> None:
        if self.q <= 1:
            raise ValueError(f"q must be an integer > 1, got {self.q}")


@dataclass(frozen=True)
class CongruenceReport:
    """Outcome of one congruence check, with the quotient witness.

    When ``holds``, lhs - rhs = modulus * quotient_witness exactly and the
    witness is itself a q-integer, so a reported result can be re-checked by
    hand from the record alone.
    """

    lhs: Fraction
    rhs: Fraction
    modulus: int
    holds: bool
    quotient_witness: Fraction


@dataclass(frozen=True)
class ValuationRecord:
    """One Stern-suite row: 2-adic valuations of the index gap and the value gap."""

    k: int
    l: int
    v_index: int
    v_value: int


@dataclass(frozen=True)
class KummerResult:
    """Kummer congruence outcome plus whether the exponents were congruent mod phi(p**n)."""

    report: CongruenceReport
    exponent_congruent: bool


def is_q_integer(x: RationalLike, ctx: QAdicContext) -> bool:
    """True iff the reduced denominator of x is coprime to q."""
    return gcd(Fraction(x).denominator, ctx.q) == 1


def congruent_mod(x: RationalLike, y: RationalLike, ctx: QAdicContext) -> CongruenceReport:
    """Decide x = y (mod q) over the q-integers, by two routes that must agree.

    Route one forms the quotient witness (x - y)/q and asks whether it is a
    q-integer.  Route two reduces x - y to a/b and tests a * b**-1 = 0 mod q.
    Disagreement would mean the congruence layer itself is broken, so it
    raises instead of returning.
    """
    x, y = Fraction(x), Fraction(y)
    for value in (x, y):
        if not is_q_integer(value, ctx):
            raise ValueError(f"{value} is not a {ctx.q}-integer")
    diff = x - y
    witness = diff / ctx.q
    holds = is_q_integer(witness, ctx)

    residue = diff.numerator * mod_inverse(diff.denominator, ctx.q) % ctx.q
    if holds != (residue == 0):
        raise InternalInconsistencyError(
            f"congruence routes disagree for {x} = {y} (mod {ctx.q})"
        )
    return CongruenceReport(lhs=x, rhs=y, modulus=ctx.q, holds=holds, quotient_witness=witness)


def poly_congruent_mod(P: UnivariatePolynomial, Q: UnivariatePolynomial,
                       ctx: QAdicContext) -> bool:
    """True iff every coefficient pair is congruent mod q (shorter side padded with 0)."""
    for i in range(max(P.degree, Q.degree) + 1):
        cp, cq = P.coefficient(i), Q.coefficient(i)
        for c in (cp, cq):
            if not is_q_integer(c, ctx):
                raise ValueError(f"coefficient {i} = {c} is not a {ctx.q}-integer")
        if not congruent_mod(cp, cq, ctx).holds:
            return False
    return True


def alternating_power_sum(q: int, k: int, modulus: int | None = None) -> int:
    """sum_{j=0}^{q-1} (-1)**j (2j+1)**k, exact, or reduced mod ``modulus``."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    total = 0
    if modulus is None:
        for j in range(q):
            term = (2 * j + 1) ** k
            total += -term if j % 2 else term
        return total
    for j in range(q):
        term = mod_pow(2 * j + 1, k, modulus)
        total += -term if j % 2 else term
    return total % modulus


def check_euler_mod_odd(k: int, q: int) -> CongruenceReport:
    """E_k against the alternating power sum of q odd-number k-th powers, mod odd q."""
    if k < 0 or k % 2:
        raise ValueError(f"k must be even and >= 0, got {k}")
    if q < 1 or q % 2 == 0:
        raise ValueError(f"q must be odd and >= 1, got {q}")
    e_k = special.euler_number(k)
    s = alternating_power_sum(q, k)
    if q == 1:
        # everything is congruent mod 1
        return CongruenceReport(lhs=Fraction(e_k), rhs=Fraction(s), modulus=1,
                                holds=True, quotient_witness=Fraction(e_k - s))
    return congruent_mod(e_k, s, QAdicContext(q))


def stern_sum(k: int, n: int, m: int, modulus: int | None = None) -> int:
    """Floor-weighted alternating power sum over one block of 2**n odd numbers.

    S = sum_{j=0}^{2**n - 1} (-1)**(j-1) (2j+1)**k floor((j m + (m-1)/2) / 2**n),
    exact, or reduced mod ``modulus`` with modular powering per term.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if m < 1 or m % 2 == 0:
        raise ValueError(f"m must be odd and >= 1, got {m}")
    block = 1 << n
    half = (m - 1) // 2
    total = 0
    if modulus is None:
        for j in range(block):
            term = (2 * j + 1) ** k * ((j * m + half) >> n)
            total += term if j % 2 else -term
        return total
    for j in range(block):
        term = mod_pow(2 * j + 1, k, modulus) * ((j * m + half) >> n)
        total += term if j % 2 else -term
    return total % modulus


def check_euler_mod_two_power(k: int, n: int, m: int) -> CongruenceReport:
    """Denominator-cleared congruence pinning E_k mod powers of two.

    Verifies (m**(k+1) - (-1)**((m-1)/2)) E_k = 2 m**k S (mod 2**(n+2)) with
    S the exact floor-weighted sum, using the exact E_k.  This is the
    fractional congruence multiplied through by its exact denominator 4 with
    the modulus raised to match, which keeps the whole check in plain
    integers: halves are not units modulo a power of two, so they must never
    appear.
    """
    if k < 0 or k % 2:
        raise ValueError(f"k must be even and >= 0, got {k}")
    eps = -1 if ((m - 1) // 2) % 2 else 1
    s = stern_sum(k, n, m)
    lhs = (m ** (k + 1) - eps) * special.euler_number(k)
    rhs = 2 * m ** k * s
    return congruent_mod(lhs, rhs, QAdicContext(1 << (n + 2)))


def cleared_coefficient_valuation(k: int, m: int) -> int:
    """2-adic valuation of (m**(k+1) - (-1)**((m-1)/2)) / 4 for even k, odd m.

    The cleared congruence divides by this coefficient only when it is odd;
    sweeps record the valuation so the cases where the coefficient is even
    (e.g. m = 7) are visible in the output.
    """
    if k < 0 or k % 2:
        raise ValueError(f"k must be even and >= 0, got {k}")
    if m < 1 or m % 2 == 0:
        raise ValueError(f"m must be odd and >= 1, got {m}")
    eps = -1 if ((m - 1) // 2) % 2 else 1
    value = m ** (k + 1) - eps
    if value == 0:  # m = 1: coefficient degenerates to zero
        return -1
    return v_adic(Fraction(value, 4), 2)


def euler_mod_2n(k: int, n: int) -> int:
    """E_k mod 2**n computed without the exact Euler number.

    The floor-weighted sum S over 2**n terms (m = 3) is evaluated modulo
    2**(n+2), which pins S/2 modulo 2**(n+1).  The coefficient
    c = (3**(k+1) + 1)/4 is odd for even k, hence invertible mod 2**n, and

        E_k  =  c**-1 * 3**k * (S/2)   (mod 2**n).

    Cost is O(2**n log k) modular multiplications, independent of the
    quadratic recurrence.  S must come out even; an odd S would falsify the
    congruence this evaluator is built on, so it raises loudly.
    """
    if k < 0 or k % 2:
        raise ValueError(f"k must be even and >= 0, got {k}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    wide = 1 << (n + 2)  # carries one spare bit beyond the 2**(n+1) actually needed
    target = 1 << n
    s = stern_sum(k, n, 3, modulus=wide)
    if s % 2:
        raise InternalInconsistencyError(
            f"floor-weighted sum S is odd for k={k}, n={n}; the cleared congruence fails"
        )
    half_s = (s // 2) % target
    c = (mod_pow(3, k + 1, wide) + 1) // 4 % target
    return mod_inverse(c, target) * mod_pow(3, k, target) * half_s % target


def check_power_sum_divisibility(k: int, n: int) -> bool:
    """Whether 2**(n+1) divides the alternating power sum over a full 2**n block."""
    if k < 0 or k % 2:
        raise ValueError(f"k must be even and >= 0, got {k}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    modulus = 1 << (n + 1)
    return alternating_power_sum(1 << n, k, modulus=modulus) == 0


def stern_valuation(k: int, l: int) -> ValuationRecord:
    """2-adic valuations of k - l and E_k - E_l (exact tables); they should match."""
    if k % 2 or l % 2 or k < 0 or l < 0:
        raise ValueError(f"indices must be even and >= 0, got k={k}, l={l}")
    if k == l:
        raise ValueError("indices must differ")
    e_k, e_l = special.euler_number(k), special.euler_number(l)
    return ValuationRecord(k=k, l=l, v_index=v_adic(k - l, 2), v_value=v_adic(e_k - e_l, 2))


def _one_minus_m_half(m: int, q: int) -> Fraction:
    # (1 - m)/2 is a q-integer whenever gcd(m, q) = 1, because q or m is odd
    return Fraction(1 - m, 2)


def _floor_sum_terms(a: int, m: int, q: int, k: int, alternating: bool) -> UnivariatePolynomial:
    """sum_j [sign] (floor((a + j m)/q) + (1-m)/2) (x + a + j m)**k for j in [0, q)."""
    shift = _one_minus_m_half(m, q)
    total = UnivariatePolynomial()
    for j in range(q):
        weight = floor_div(a + j * m, q) + shift
        if not weight:
            continue
        term = weight * UnivariatePolynomial.linear_power(a + j * m, k)
        if alternating and j % 2 == 0:
            term = -term
        total = total + term
    return total


def bernoulli_poly_congruence_route(k: int, q: int) -> str:
    """Which form the Bernoulli polynomial congruence check runs for (k, q).

    "stated" divides by k (1/k is a q-integer); "cleared" multiplies both
    sides by k instead, which is the only form that stays inside the
    q-integers when k shares a factor with q.
    """
    return "stated" if gcd(k, q) == 1 else "cleared"


def check_bernoulli_poly_congruence(a: int, k: int, m: int, q: int) -> bool:
    """Scaling congruence for Bernoulli polynomials against a floor-weighted sum.

    Checks (1/k)(m**k B_k((x+a)/m) - B_k(x)) against
    sum_j (floor((a+jm)/q) + (1-m)/2)(x + a + jm)**(k-1) coefficientwise
    mod q.  When 1/k is not a q-integer the k-cleared form is checked
    instead (see ``bernoulli_poly_congruence_route``).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if q <= 1:
        raise ValueError(f"q must be > 1, got {q}")
    if gcd(m, q) != 1:
        raise ValueError(f"m and q must be coprime, got m={m}, q={q}")
    ctx = QAdicContext(q)
    b_k = special.bernoulli_polynomial(k)
    inner = UnivariatePolynomial((Fraction(a, m), Fraction(1, m)))
    difference = Fraction(m) ** k * b_k.compose(inner) - b_k
    rhs = _floor_sum_terms(a, m, q, k - 1, alternating=False)
    if bernoulli_poly_congruence_route(k, q) == "stated":
        return poly_congruent_mod(Fraction(1, k) * difference, rhs, ctx)
    return poly_congruent_mod(difference, k * rhs, ctx)


def check_euler_poly_congruence(a: int, k: int, m: int, q: int) -> bool:
    """Scaling congruence for Euler polynomials against an alternating floor sum.

    Checks (m**(k+1)/2) E_k((x+a)/m) - ((-1)**a/2) E_k(x) against
    sum_j (-1)**(j-1)(floor((a+jm)/q) + (1-m)/2)(x + a + jm)**k mod even q.
    Every coefficient must land in the q-integers despite the halves; one
    that does not would falsify the claim, so it raises rather than returns.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if q < 2 or q % 2:
        raise ValueError(f"q must be even and >= 2, got {q}")
    if gcd(m, q) != 1:
        raise ValueError(f"m and q must be coprime, got m={m}, q={q}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    ctx = QAdicContext(q)
    e_k = special.euler_polynomial(k)
    inner = UnivariatePolynomial((Fraction(a, m), Fraction(1, m)))
    sign = -1 if a % 2 else 1
    lhs = Fraction(m ** (k + 1), 2) * e_k.compose(inner) - Fraction(sign, 2) * e_k
    rhs = _floor_sum_terms(a, m, q, k, alternating=True)
    for poly in (lhs, rhs):
        for i, c in enumerate(poly.coefficients):
            if not is_q_integer(c, ctx):
                raise InternalInconsistencyError(
                    f"coefficient {i} = {c} fell outside the {q}-integers"
                )
    return poly_congruent_mod(lhs, rhs, ctx)


def signed_floor_sum_identity(a: int, m: int, q: int) -> tuple[Fraction, Fraction]:
    """Computed and closed forms of the signed floor sum; they are exactly equal.

    computed = sum_{j=0}^{q-1} (-1)**(j-1) (floor((a+jm)/q) + (1-m)/2),
    closed   = (m - (-1)**a)/2.  Exact identity, not a congruence.
    """
    if q < 2 or q % 2:
        raise ValueError(f"q must be even and >= 2, got {q}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if gcd(m, q) != 1:
        raise ValueError(f"m and q must be coprime, got m={m}, q={q}")
    shift = _one_minus_m_half(m, q)
    computed = Fraction(0)
    for j in range(q):
        term = floor_div(a + j * m, q) + shift
        computed += term if j % 2 else -term
    sign = -1 if a % 2 else 1
    return computed, Fraction(m - sign, 2)


def kummer_check(p: int, n: int, k: int, l: int) -> KummerResult:
    """B_k/k against B_l/l mod p**n, plus whether k = l mod phi(p**n).

    Exponent congruence guarantees the value congruence; the converse can
    fail, which is exactly what makes the (p, n, k, l) = (13, 2, 16, 4)
    instance interesting.  Requires p odd prime with p - 1 dividing neither
    k nor l, so both values are p-integers.
    """
    if not is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    for index in (k, l):
        if index < 1 or index % 2:
            raise ValueError(f"indices must be even and >= 2, got {index}")
        if index % (p - 1) == 0:
            raise ValueError(
                f"p - 1 = {p - 1} divides {index}; B_{index}/{index} is not a {p}-integer"
            )
    lhs = special.bernoulli_number(k) / k
    rhs = special.bernoulli_number(l) / l
    report = congruent_mod(lhs, rhs, QAdicContext(p ** n))
    totient = p ** (n - 1) * (p - 1)
    return KummerResult(report=report, exponent_congruent=(k - l) % totient == 0)


def adams_thangadurai_valuation(p: int, k: int) -> tuple[int, int]:
    """(v_p(k), v_p of the numerator of B_k) for an odd prime p with p-1 not dividing k.

    The numerator valuation is always >= v_p(k); the conjectured ceiling is
    v_p(k) + 1 when v_p(k) > 0.  Callers assert whichever side they sweep.
    """
    if not is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    if k < 2 or k % 2:
        raise ValueError(f"k must be even and >= 2, got {k}")
    if k % (p - 1) == 0:
        raise ValueError(f"p - 1 = {p - 1} divides {k}; p sits in the denominator of B_{k}")
    n = v_adic(k, p)
    numerator = special.bernoulli_number(k).numerator
    return n, v_adic(numerator, p)
