"""Exact integer, rational, and polynomial kernels plus elementary modular arithmetic.

Everything here is pure and deterministic; values are immutable once built, so
they are safe to share across threads.  Rationals are ``fractions.Fraction``
(always in lowest terms, positive denominator), re-exported as ``Rational``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Union

Rational = Fraction

RationalLike = Union[int, Fraction]

__all__ = [
    "Rational",
    "NotInvertibleError",
    "InternalInconsistencyError",
    "floor_div",
    "is_prime",
    "v_adic",
    "mod_pow",
    "extended_gcd",
    "mod_inverse",
    "multiplicative_order",
    "OddResidueDecomposition",
    "decompose_odd_residue",
    "UnivariatePolynomial",
]


class NotInvertibleError(ValueError):
    """The element shares a factor with the modulus and has no inverse."""


class InternalInconsistencyError(RuntimeError):
    """Two routes that must agree did not: a falsified claim or a bug, never ignorable."""


def floor_div(a: int, b: int) -> int:
    """Floor quotient of a by b, rounding toward minus infinity. Requires b > 0."""
    if b <= 0:
        raise ValueError(f"floor_div requires a positive divisor, got {b}")
    return a // b


def is_prime(n: int) -> bool:
    """Trial-division primality test; adequate for the desk-scale primes used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _int_valuation(n: int, p: int) -> int:
    # n > 0; counts the exact power of p dividing n
    if p == 2:
        return (n & -n).bit_length() - 1
    v = 0
    while True:
        q, r = divmod(n, p)
        if r:
            return v
        n = q
        v += 1


def v_adic(x: RationalLike, p: int) -> int:
    """Exponent of the prime p in x: v_p(numerator) - v_p(denominator).

    For a nonzero integer this is the exact n with p^n dividing x but p^(n+1)
    not.  Zero has no finite valuation and is rejected; callers must branch
    on it first.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if x == 0:
        raise ValueError("zero has no finite valuation")
    return _int_valuation(abs(x.numerator), p) - _int_valuation(x.denominator, p)


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """base**exponent mod modulus, result normalized into [0, modulus).

    Binary (square-and-multiply) powering, O(log exponent) modular
    multiplications; delegated to the built-in ``pow``.
    """
    if exponent < 0:
        raise ValueError(f"negative exponent {exponent}")
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    return pow(base, exponent, modulus)


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) >= 0 and g = s*a + t*b."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def mod_inverse(x: int, modulus: int) -> int:
    """Inverse of x modulo modulus via extended gcd; requires gcd(x, modulus) = 1."""
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    g, s, _ = extended_gcd(x % modulus, modulus)
    if g != 1:
        raise NotInvertibleError(f"{x} is not invertible mod {modulus} (gcd = {g})")
    return s % modulus


def _factorize(n: int) -> dict[int, int]:
    # trial division; desk scale only
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        while n % f == 0:
            factors[f] = factors.get(f, 0) + 1
            n //= f
        f += 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _carmichael(modulus: int) -> int:
    # exponent of the unit group (Carmichael function)
    lam = 1
    for p, e in _factorize(modulus).items():
        if p == 2:
            pe_lam = 2 ** max(e - 2, 0) if e >= 3 else 2 ** (e - 1)
        else:
            pe_lam = (p - 1) * p ** (e - 1)
        lam = lam * pe_lam // gcd(lam, pe_lam)
    return lam


def multiplicative_order(x: int, modulus: int) -> int:
    """Least d >= 1 with x**d = 1 mod modulus; requires gcd(x, modulus) = 1.

    Starts from the unit-group exponent and strips prime factors that are
    not needed, so the modulus 2**20 costs a handful of powerings rather
    than a scan.
    """
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    x %= modulus
    if gcd(x, modulus) != 1:
        raise NotInvertibleError(f"{x} shares a factor with {modulus}; order undefined")
    order = _carmichael(modulus)
    for p in _factorize(order):
        while order % p == 0 and pow(x, order // p, modulus) == 1:
            order //= p
    return order


@dataclass(frozen=True)
class OddResidueDecomposition:
    """x written as (-1)**a * 5**b modulo 2**t, with a in {0,1} and 0 <= b < 2**(t-2)."""

    sign_exponent: int
    power_exponent: int
    modulus_exponent: int

    def residue(self) -> int:
        """The odd residue this decomposition represents, in [0, 2**t)."""
        mod = 1 << self.modulus_exponent
        r = pow(5, self.power_exponent, mod)
        return (mod - r) % mod if self.sign_exponent else r


def decompose_odd_residue(x: int, t: int) -> OddResidueDecomposition:
    """Unique (a, b) with (-1)**a * 5**b = x mod 2**t, a in {0,1}, 0 <= b < 2**(t-2).

    Direct scan over powers of 5; the scan is fine at desk scale (t up to
    roughly 24).  The map (a, b) -> residue is a bijection onto the odd
    residues mod 2**t, so the scan always succeeds.
    """
    if t < 3:
        raise ValueError(f"modulus exponent must be >= 3, got {t}")
    if x % 2 == 0:
        raise ValueError(f"{x} is even; only odd residues decompose")
    mod = 1 << t
    target = x % mod
    power = 1
    for b in range(1 << (t - 2)):
        if power == target:
            return OddResidueDecomposition(0, b, t)
        if mod - power == target:
            return OddResidueDecomposition(1, b, t)
        power = power * 5 % mod
    raise InternalInconsistencyError(
        f"odd residue {target} mod 2**{t} escaped the (-1)**a 5**b lattice"
    )


class UnivariatePolynomial:
    """Dense univariate polynomial with exact rational coefficients; immutable.

    Coefficient i is the coefficient of x**i.  The zero polynomial stores no
    coefficients and reports degree -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[RationalLike] = ()) -> None:
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(coeffs)

    @classmethod
    def variable(cls) -> "UnivariatePolynomial":
        """The polynomial x."""
        return cls((0, 1))

    @classmethod
    def constant(cls, value: RationalLike) -> "UnivariatePolynomial":
        return cls((value,))

    @classmethod
    def linear_power(cls, shift: RationalLike, k: int) -> "UnivariatePolynomial":
        """(x + shift)**k expanded exactly via the binomial theorem."""
        if k < 0:
            raise ValueError(f"negative exponent {k}")
        shift = Fraction(shift)
        coeffs = [Fraction(0)] * (k + 1)
        power = Fraction(1)
        for j in range(k, -1, -1):
            coeffs[j] = comb(k, j) * power
            power *= shift
        return cls(coeffs)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def coefficient(self, i: int) -> Fraction:
        """Coefficient of x**i (zero beyond the stored degree)."""
        if i < 0:
            raise ValueError(f"negative index {i}")
        return self._coeffs[i] if i < len(self._coeffs) else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UnivariatePolynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == UnivariatePolynomial((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __neg__(self) -> "UnivariatePolynomial":
        return UnivariatePolynomial(-c for c in self._coeffs)

    def __add__(self, other: "UnivariatePolynomial | RationalLike") -> "UnivariatePolynomial":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UnivariatePolynomial(out)

    __radd__ = __add__

    def __sub__(self, other: "UnivariatePolynomial | RationalLike") -> "UnivariatePolynomial":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: "UnivariatePolynomial | RationalLike") -> "UnivariatePolynomial":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: "UnivariatePolynomial | RationalLike") -> "UnivariatePolynomial":
        if isinstance(other, (int, Fraction)):
            return UnivariatePolynomial(c * other for c in self._coeffs)
        if not isinstance(other, UnivariatePolynomial):
            return NotImplemented
        if not self._coeffs or not other._coeffs:
            return UnivariatePolynomial()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if not a:
                continue
            for j, b in enumerate(other._coeffs):
                if b:
                    out[i + j] += a * b
        return UnivariatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UnivariatePolynomial":
        if k < 0:
            raise ValueError(f"negative exponent {k}")
        result = UnivariatePolynomial((1,))
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, point: RationalLike) -> Fraction:
        """Evaluate at a rational point by Horner's rule."""
        point = Fraction(point)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * point + c
        return acc

    def compose(self, inner: "UnivariatePolynomial") -> "UnivariatePolynomial":
        """Exact symbolic substitution self(inner(x)), expanded by Horner's rule."""
        result = UnivariatePolynomial()
        for c in reversed(self._coeffs):
            result = result * inner + UnivariatePolynomial((c,))
        return result

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for i in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[i]
            if not c:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = abs(c)
                head = "" if mag == 1 else f"{mag}*"
                term = f"{head}x" if i == 1 else f"{head}x^{i}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"UnivariatePolynomial({self._coeffs!r})"


def _as_poly(value: "UnivariatePolynomial | RationalLike"):
    if isinstance(value, UnivariatePolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return UnivariatePolynomial((value,))
    return NotImplemented
