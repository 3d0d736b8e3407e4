"""Exact Euler and Bernoulli numbers/polynomials, classical identities, table caching.

The two number tables are memoized module singletons: sweeps over thousands of
indices reuse one growing table instead of recomputing quadratically.  Tables
are append-only; extension is single-writer, and readers only ever observe a
fully computed prefix.
"""

from __future__ import annotations

import contextlib
import os
import random
import sys
import threading
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exactmath import InternalInconsistencyError, UnivariatePolynomial

__all__ = [
    "EulerNumberTable",
    "BernoulliNumberTable",
    "CacheError",
    "euler_number",
    "bernoulli_number",
    "euler_table",
    "bernoulli_table",
    "euler_polynomial",
    "bernoulli_polynomial",
    "check_raabe",
    "check_euler_bernoulli_relation",
    "check_reflection",
    "secant_series_oracle",
    "save_tables",
    "load_tables",
]


class CacheError(ValueError):
    """A table cache file is malformed or fails validation; the load is refused."""


def _euler_row(values, m: int) -> int:
    """One step of the alternating binomial recurrence, from the entries below m.

    E_m = -sum over k < m with m - k even of C(m, k) E_k.  The binomial
    coefficient is updated incrementally (exact division), so a row costs
    O(m) big-integer multiply-adds.
    """
    if m % 2:
        # the sum ranges over odd k < m, whose entries are all zero
        return 0
    c = 1
    acc = values[0]
    for k in range(2, m, 2):
        c = c * (m - k + 2) * (m - k + 1) // ((k - 1) * k)
        acc += c * values[k]
    return -acc


def _bernoulli_row(values, m: int) -> Fraction:
    """B_m from the entries below it: sum_{k<=m} C(m+1, k) B_k = 0 solved for B_m."""
    acc = Fraction(0)
    c = 1  # C(m+1, 0)
    for k in range(m):
        if k:
            c = c * (m + 2 - k) // k
        b = values[k]
        if b:
            acc += c * b
    return -acc / (m + 1)


class EulerNumberTable:
    """Growable memoized table of Euler numbers E_0, E_1, ... (exact integers).

    Append-only: an index, once filled, never changes.  ``multiplications``
    counts the big-integer multiplications spent extending the table, for
    benchmark reports.
    """

    def __init__(self) -> None:
        self._values: list[int] = [1]
        self.multiplications = 0

    @property
    def computed_up_to(self) -> int:
        return len(self._values) - 1

    def extend_to(self, n: int) -> None:
        while self.computed_up_to < n:
            m = self.computed_up_to + 1
            if m % 2 == 0:
                # one coefficient update and one multiply-add per even k < m
                self.multiplications += 2 * max(m // 2 - 1, 0)
            self._values.append(_euler_row(self._values, m))

    def value(self, n: int) -> int:
        if n < 0:
            raise ValueError(f"index must be >= 0, got {n}")
        self.extend_to(n)
        return self._values[n]

    def snapshot(self) -> tuple[int, ...]:
        """The fully computed prefix, safe to read concurrently."""
        return tuple(self._values)


class BernoulliNumberTable:
    """Growable memoized table of Bernoulli numbers B_0, B_1, ... (exact rationals)."""

    def __init__(self) -> None:
        self._values: list[Fraction] = [Fraction(1)]

    @property
    def computed_up_to(self) -> int:
        return len(self._values) - 1

    def extend_to(self, n: int) -> None:
        while self.computed_up_to < n:
            m = self.computed_up_to + 1
            self._values.append(_bernoulli_row(self._values, m))

    def value(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError(f"index must be >= 0, got {n}")
        self.extend_to(n)
        return self._values[n]

    def snapshot(self) -> tuple[Fraction, ...]:
        return tuple(self._values)


_EULER = EulerNumberTable()
_BERNOULLI = BernoulliNumberTable()


def euler_table() -> EulerNumberTable:
    """The process-wide memoized Euler table."""
    return _EULER


def bernoulli_table() -> BernoulliNumberTable:
    """The process-wide memoized Bernoulli table."""
    return _BERNOULLI


def euler_number(n: int) -> int:
    """Exact E_n from the memoized recurrence table."""
    return _EULER.value(n)


def bernoulli_number(n: int) -> Fraction:
    """Exact B_n (convention B_1 = -1/2) from the memoized recurrence table."""
    return _BERNOULLI.value(n)


# Shared powers of (x - 1/2), grown on demand; guarded for threaded sweeps.
_HALF_SHIFT_POWERS: list[tuple[Fraction, ...]] = [(Fraction(1),)]
_POWERS_LOCK = threading.Lock()


def _half_shift_power(i: int) -> tuple[Fraction, ...]:
    if i >= len(_HALF_SHIFT_POWERS):
        with _POWERS_LOCK:
            while len(_HALF_SHIFT_POWERS) <= i:
                prev = _HALF_SHIFT_POWERS[-1]
                cur = [Fraction(0)] * (len(prev) + 1)
                for j, c in enumerate(prev):
                    cur[j + 1] += c
                    cur[j] -= c / 2
                _HALF_SHIFT_POWERS.append(tuple(cur))
    return _HALF_SHIFT_POWERS[i]


@lru_cache(maxsize=None)
def euler_polynomial(n: int) -> UnivariatePolynomial:
    """E_n(x) = sum_k C(n, k) E_k / 2**k * (x - 1/2)**(n-k): monic, degree n."""
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    _EULER.extend_to(n)
    coeffs = [Fraction(0)] * (n + 1)
    c = 1  # C(n, k), updated over even k
    for k in range(0, n + 1, 2):
        if k:
            c = c * (n - k + 2) * (n - k + 1) // ((k - 1) * k)
        e = _EULER.value(k)
        if not e:
            continue
        scale = Fraction(c * e, 1 << k)
        for j, p in enumerate(_half_shift_power(n - k)):
            if p:
                coeffs[j] += scale * p
    return UnivariatePolynomial(coeffs)


@lru_cache(maxsize=None)
def bernoulli_polynomial(n: int) -> UnivariatePolynomial:
    """B_n(x) = sum_k C(n, k) B_k x**(n-k): monic, degree n."""
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    _BERNOULLI.extend_to(n)
    coeffs = [Fraction(0)] * (n + 1)
    c = 1  # C(n, k)
    for k in range(n + 1):
        if k:
            c = c * (n - k + 1) // k
        coeffs[n - k] = c * _BERNOULLI.value(k)
    return UnivariatePolynomial(coeffs)


def check_raabe(n: int, m: int) -> bool:
    """Multiplication formula: m**(n-1) * sum_r B_n((x+r)/m) equals B_n(x) exactly."""
    if n < 0 or m < 1:
        raise ValueError(f"need n >= 0 and m >= 1, got n={n}, m={m}")
    b = bernoulli_polynomial(n)
    total = UnivariatePolynomial()
    for r in range(m):
        total = total + b.compose(UnivariatePolynomial((Fraction(r, m), Fraction(1, m))))
    return Fraction(m) ** (n - 1) * total == b


def check_euler_bernoulli_relation(n: int) -> bool:
    """Both exact forms tying (n+1)/2 * E_n(x) to B_{n+1} at x/2 and (x+1)/2."""
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    lhs = Fraction(n + 1, 2) * euler_polynomial(n)
    b = bernoulli_polynomial(n + 1)
    two = Fraction(2) ** (n + 1)
    half_x = UnivariatePolynomial((0, Fraction(1, 2)))
    half_x1 = UnivariatePolynomial((Fraction(1, 2), Fraction(1, 2)))
    return lhs == b - two * b.compose(half_x) and lhs == two * b.compose(half_x1) - b


def check_reflection(n: int) -> bool:
    """E_n(x) + E_n(x+1) = 2 x**n as exact polynomials."""
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    e = euler_polynomial(n)
    shifted = e.compose(UnivariatePolynomial((1, 1)))
    return e + shifted == 2 * UnivariatePolynomial.variable() ** n


def secant_series_oracle(count: int) -> list[int]:
    """E_0, E_2, ..., E_{2(count-1)} by exact power-series inversion of cosine.

    Solves cos(x) * s(x) = 1 coefficient by coefficient over the rationals and
    unpacks E_{2n} = (-1)**n (2n)! s_n.  Shares nothing with the recurrence
    table, so it serves as an independent cross-check oracle.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    s = [Fraction(1)]
    for m in range(1, count):
        acc = Fraction(0)
        for i in range(1, m + 1):
            acc += Fraction((-1) ** i, factorial(2 * i)) * s[m - i]
        s.append(-acc)
    out = []
    for n, sn in enumerate(s):
        value = (-1) ** n * factorial(2 * n) * sn
        if value.denominator != 1:
            raise InternalInconsistencyError(
                f"series inversion produced a non-integer at index {2 * n}: {value}"
            )
        out.append(int(value))
    return out


# ---------------------------------------------------------------------------
# Cache file format: one record per line, "<kind> <index> <numerator>[/<den>]"
# in decimal, kinds E and B.  Indices per kind must form a gapless prefix.
# ---------------------------------------------------------------------------


@contextlib.contextmanager
def _unlimited_int_str():
    # exact Euler numbers overflow the default int<->str conversion limit
    get = getattr(sys, "get_int_max_str_digits", None)
    set_ = getattr(sys, "set_int_max_str_digits", None)
    if set_ is None:
        yield
        return
    previous = get()
    set_(0)
    try:
        yield
    finally:
        set_(previous)


def save_tables(path, euler: EulerNumberTable | None = None,
                bernoulli: BernoulliNumberTable | None = None) -> None:
    """Persist every memoized index of both tables to the cache file at path."""
    euler = euler if euler is not None else _EULER
    bernoulli = bernoulli if bernoulli is not None else _BERNOULLI
    lines = []
    with _unlimited_int_str():
        for n, v in enumerate(euler.snapshot()):
            lines.append(f"E {n} {v}\n")
        for n, b in enumerate(bernoulli.snapshot()):
            frac = str(b.numerator) if b.denominator == 1 else f"{b.numerator}/{b.denominator}"
            lines.append(f"B {n} {frac}\n")
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.writelines(lines)
    os.replace(tmp, path)


def _parse_cache(path) -> tuple[list[int], list[Fraction]]:
    records: dict[str, dict[int, Fraction]] = {"E": {}, "B": {}}
    with _unlimited_int_str(), open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3 or parts[0] not in ("E", "B"):
                raise CacheError(f"{path}:{lineno}: malformed record {line!r}")
            kind, index_s, value_s = parts
            try:
                index = int(index_s)
                num, _, den = value_s.partition("/")
                value = Fraction(int(num), int(den) if den else 1)
            except (ValueError, ZeroDivisionError) as exc:
                raise CacheError(f"{path}:{lineno}: {exc}") from None
            if index < 0:
                raise CacheError(f"{path}:{lineno}: negative index {index}")
            if index in records[kind]:
                raise CacheError(f"{path}:{lineno}: duplicate {kind} {index}")
            records[kind][index] = value

    for kind, found in records.items():
        if found and sorted(found) != list(range(len(found))):
            raise CacheError(f"{path}: {kind} records do not form a gapless prefix from 0")

    e_values = []
    for n in range(len(records["E"])):
        v = records["E"][n]
        if v.denominator != 1:
            raise CacheError(f"{path}: E {n} is not an integer: {v}")
        e_values.append(int(v))
    b_values = [records["B"][n] for n in range(len(records["B"]))]
    return e_values, b_values


def _validate_structure(e_values: list[int], b_values: list[Fraction], path) -> None:
    if e_values and e_values[0] != 1:
        raise CacheError(f"{path}: E 0 must be 1, found {e_values[0]}")
    if b_values and b_values[0] != 1:
        raise CacheError(f"{path}: B 0 must be 1, found {b_values[0]}")
    for n, v in enumerate(e_values):
        if n % 2 and v != 0:
            raise CacheError(f"{path}: E {n} must be 0 at odd index, found nonzero")
        if n % 2 == 0 and v % 2 == 0:
            raise CacheError(f"{path}: E {n} must be odd, found even value")
    if len(b_values) > 1 and b_values[1] != Fraction(-1, 2):
        raise CacheError(f"{path}: B 1 must be -1/2, found {b_values[1]}")
    for n, b in enumerate(b_values):
        if n > 1 and n % 2 and b != 0:
            raise CacheError(f"{path}: B {n} must be 0 at odd index > 1")


def load_tables(path, euler: EulerNumberTable | None = None,
                bernoulli: BernoulliNumberTable | None = None,
                rng: random.Random | None = None) -> tuple[int, int]:
    """Load a cache file into the tables after validation and a tamper check.

    Per kind, one random cached index plus the top cached index are re-derived
    from the cached prefix below them and compared against the stored values;
    any mismatch refuses the whole load.  Re-deriving the top row makes the
    check deterministic against single-value corruption: a corrupted entry
    either fails a structural check, feeds the top row and skews it, or is
    the top row itself.  An empty file is a valid empty cache.  Returns the
    highest loaded index per kind (-1 when that kind is absent).
    """
    euler = euler if euler is not None else _EULER
    bernoulli = bernoulli if bernoulli is not None else _BERNOULLI
    chooser = rng if rng is not None else random

    e_values, b_values = _parse_cache(path)
    _validate_structure(e_values, b_values, path)

    if len(e_values) > 1:
        # odd rows are structurally zero, so the top even row covers the prefix
        top_even = (len(e_values) - 1) & ~1
        probes = {chooser.randrange(1, len(e_values)), top_even} - {0}
        for probe in sorted(probes):
            if _euler_row(e_values, probe) != e_values[probe]:
                raise CacheError(f"{path}: tamper check failed re-deriving E {probe}")
    if len(b_values) > 1:
        probes = {chooser.randrange(1, len(b_values)), len(b_values) - 1}
        for probe in sorted(probes):
            if _bernoulli_row(b_values, probe) != b_values[probe]:
                raise CacheError(f"{path}: tamper check failed re-deriving B {probe}")

    overlap = min(euler.computed_up_to, len(e_values) - 1)
    for n in range(overlap + 1):
        if euler._values[n] != e_values[n]:
            raise CacheError(f"{path}: cached E {n} disagrees with the computed table")
    euler._values.extend(e_values[euler.computed_up_to + 1:])

    overlap = min(bernoulli.computed_up_to, len(b_values) - 1)
    for n in range(overlap + 1):
        if bernoulli._values[n] != b_values[n]:
            raise CacheError(f"{path}: cached B {n} disagrees with the computed table")
    bernoulli._values.extend(b_values[bernoulli.computed_up_to + 1:])

    return len(e_values) - 1, len(b_values) - 1
