"""Command-line front end: compute, check, sweep, table, and bench commands.

Every check emits one machine-readable record per parameter tuple with the
stable fields {claim, parameters, holds, modulus, lhs, rhs, witness, detail};
the process exits 0 exactly when every emitted record holds.  Exit codes:
0 all checks hold, 1 some check failed, 2 usage or input error (including a
bad cache file), 3 internal inconsistency (a checker's cross-validation
tripped).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Callable, Sequence

from . import congruences, special
from .exactmath import InternalInconsistencyError, is_prime

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

CACHE_ENV = "EULERMOD_CACHE"

__all__ = [
    "main",
    "bench_report",
    "BenchReport",
    "cache_roundtrip",
    "parse_range",
    "EXIT_OK",
    "EXIT_CHECK_FAILED",
    "EXIT_USAGE",
    "EXIT_INTERNAL",
    "CACHE_ENV",
]


# ---------------------------------------------------------------------------
# parameter ranges
# ---------------------------------------------------------------------------

_RANGE_ITEM = re.compile(r"^(-?\d+)(?:\.\.(-?\d+)(odd|even)?)?$")


def parse_range(spec: str) -> list[int]:
    """Expand a range spec: N, LO..HI, LO..HIodd, LO..HIeven, or a comma list."""
    values: list[int] = []
    for item in spec.split(","):
        item = item.strip()
        match = _RANGE_ITEM.match(item)
        if match is None:
            raise ValueError(
                f"bad range {item!r}; expected N, LO..HI, LO..HIodd or LO..HIeven"
            )
        lo = int(match.group(1))
        if match.group(2) is None:
            values.append(lo)
            continue
        hi = int(match.group(2))
        if hi < lo:
            raise ValueError(f"empty range {item!r}")
        parity = match.group(3)
        for v in range(lo, hi + 1):
            if parity == "odd" and v % 2 == 0:
                continue
            if parity == "even" and v % 2:
                continue
            values.append(v)
    return values


# ---------------------------------------------------------------------------
# record construction
# ---------------------------------------------------------------------------


def _check_record(claim: str, parameters: dict, holds: bool, modulus: int,
                  lhs: str, rhs: str, witness: str | None = None,
                  detail: dict | None = None) -> dict:
    return {
        "claim": claim,
        "parameters": parameters,
        "holds": holds,
        "modulus": modulus,
        "lhs": lhs,
        "rhs": rhs,
        "witness": witness,
        "detail": detail or {},
    }


def _record_from_report(claim: str, parameters: dict, report,
                        holds: bool | None = None, detail: dict | None = None) -> dict:
    return _check_record(
        claim, parameters,
        report.holds if holds is None else holds,
        report.modulus, str(report.lhs), str(report.rhs),
        witness=str(report.quotient_witness), detail=detail,
    )


# ---------------------------------------------------------------------------
# claim registry for `check`
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Claim:
    key: str
    summary: str
    params: tuple[tuple[str, str], ...]  # (flag name, default range spec)
    tuples: Callable[[dict[str, list[int]]], list[tuple]]
    run_one: Callable[[tuple], dict]
    validate: Callable[[dict[str, list[int]]], str | None]
    prepare: Callable[[list[tuple]], None]


def _product_tuples(*names: str) -> Callable[[dict[str, list[int]]], list[tuple]]:
    def build(ranges: dict[str, list[int]]) -> list[tuple]:
        return list(product(*(ranges[name] for name in names)))
    return build


def _validate_each(ranges: dict[str, list[int]],
                   rules: Sequence[tuple[str, str, Callable[[int], bool]]]) -> str | None:
    for name, description, ok in rules:
        bad = [v for v in ranges[name] if not ok(v)]
        if bad:
            return f"--{name}: values must be {description} (offending: {bad[:5]})"
    return None


def _prepare_euler_max(index: int) -> Callable[[list[tuple]], None]:
    def prepare(tuples: list[tuple]) -> None:
        if tuples:
            special.euler_table().extend_to(max(t[index] for t in tuples))
    return prepare


def _prepare_noop(tuples: list[tuple]) -> None:
    return None


_EVEN_NONNEG = ("even and >= 0", lambda v: v >= 0 and v % 2 == 0)
_ODD_POS = ("odd and >= 1", lambda v: v >= 1 and v % 2 == 1)
_POS = (">= 1", lambda v: v >= 1)
_EVEN_POS = ("even and >= 2", lambda v: v >= 2 and v % 2 == 0)


def _run_euler_mod_odd(t: tuple) -> dict:
    k, q = t
    report = congruences.check_euler_mod_odd(k, q)
    return _record_from_report("1.1", {"k": k, "q": q}, report)


def _run_euler_mod_two_power(t: tuple) -> dict:
    k, n, m = t
    report = congruences.check_euler_mod_two_power(k, n, m)
    detail = {"coefficient_v2": congruences.cleared_coefficient_valuation(k, m)}
    return _record_from_report("1.3", {"k": k, "n": n, "m": m}, report, detail=detail)


def _run_euler_bernoulli_relation(t: tuple) -> dict:
    (n,) = t
    holds = special.check_euler_bernoulli_relation(n)
    return _check_record(
        "2.1", {"n": n}, holds, 0,
        "(n+1)/2 * E_n(x)",
        "B_{n+1}(x) - 2^{n+1} B_{n+1}(x/2) and 2^{n+1} B_{n+1}((x+1)/2) - B_{n+1}(x)",
    )


def _run_bernoulli_poly_congruence(t: tuple) -> dict:
    a, k, m, q = t
    holds = congruences.check_bernoulli_poly_congruence(a, k, m, q)
    route = congruences.bernoulli_poly_congruence_route(k, q)
    return _check_record(
        "2.2", {"a": a, "k": k, "m": m, "q": q}, holds, q,
        "1/k (m^k B_k((x+a)/m) - B_k(x))",
        "sum_j (floor((a+jm)/q) + (1-m)/2)(x+a+jm)^(k-1)",
        detail={"route": route},
    )


def _run_euler_poly_congruence(t: tuple) -> dict:
    a, k, m, q = t
    holds = congruences.check_euler_poly_congruence(a, k, m, q)
    return _check_record(
        "2.3", {"a": a, "k": k, "m": m, "q": q}, holds, q,
        "m^{k+1}/2 E_k((x+a)/m) - (-1)^a/2 E_k(x)",
        "sum_j (-1)^{j-1}(floor((a+jm)/q) + (1-m)/2)(x+a+jm)^k",
    )


def _run_signed_floor_sum(t: tuple) -> dict:
    a, m, q = t
    computed, closed = congruences.signed_floor_sum_identity(a, m, q)
    return _check_record(
        "2.4", {"a": a, "m": m, "q": q}, computed == closed, 0,
        str(computed), str(closed),
    )


def _run_kummer(t: tuple) -> dict:
    p, n, k, l = t
    result = congruences.kummer_check(p, n, k, l)
    implied = (not result.exponent_congruent) or result.report.holds
    return _record_from_report(
        "kummer", {"p": p, "n": n, "k": k, "l": l}, result.report, holds=implied,
        detail={
            "congruence_holds": result.report.holds,
            "exponent_congruent": result.exponent_congruent,
        },
    )


def _run_thangadurai(t: tuple) -> dict:
    p, k = t
    n, w = congruences.adams_thangadurai_valuation(p, k)
    holds = w >= n and (n == 0 or w <= n + 1)
    return _check_record(
        "thangadurai", {"p": p, "k": k}, holds, p, str(w), str(n),
        detail={"lower_bound": w >= n, "conjectured_ceiling": n == 0 or w <= n + 1},
    )


def _run_raabe(t: tuple) -> dict:
    n, m = t
    holds = special.check_raabe(n, m)
    return _check_record(
        "raabe", {"n": n, "m": m}, holds, 0,
        "m^{n-1} sum_r B_n((x+r)/m)", "B_n(x)",
    )


def _run_reflection(t: tuple) -> dict:
    (n,) = t
    holds = special.check_reflection(n)
    return _check_record("reflection", {"n": n}, holds, 0, "E_n(x) + E_n(x+1)", "2 x^n")


def _run_power_sum(t: tuple) -> dict:
    k, n = t
    modulus = 1 << (n + 1)
    residue = congruences.alternating_power_sum(1 << n, k, modulus=modulus)
    return _check_record("power-sum", {"k": k, "n": n}, residue == 0, modulus,
                         str(residue), "0")


def _coprime_filter(names: Sequence[str], first: str, second: str):
    idx_m, idx_q = names.index(first), names.index(second)

    def build(ranges: dict[str, list[int]]) -> list[tuple]:
        return [t for t in product(*(ranges[n] for n in names))
                if gcd(t[idx_m], t[idx_q]) == 1]
    return build


def _kummer_tuples(ranges: dict[str, list[int]]) -> list[tuple]:
    out = []
    for p, n, k, l in product(ranges["p"], ranges["n"], ranges["k"], ranges["l"]):
        if k % (p - 1) and l % (p - 1):
            out.append((p, n, k, l))
    return out


def _thangadurai_tuples(ranges: dict[str, list[int]]) -> list[tuple]:
    return [(p, k) for p, k in product(ranges["p"], ranges["k"]) if k % (p - 1)]


def _prepare_bernoulli(index: int) -> Callable[[list[tuple]], None]:
    def prepare(tuples: list[tuple]) -> None:
        if tuples:
            special.bernoulli_table().extend_to(max(t[index] for t in tuples))
    return prepare


def _prepare_kummer(tuples: list[tuple]) -> None:
    if tuples:
        special.bernoulli_table().extend_to(max(max(t[2], t[3]) for t in tuples))


def _prepare_relation(tuples: list[tuple]) -> None:
    if tuples:
        top = max(t[0] for t in tuples)
        special.euler_table().extend_to(top)
        special.bernoulli_table().extend_to(top + 1)


CLAIMS: dict[str, Claim] = {
    "1.1": Claim(
        key="1.1",
        summary="Euler number E_k equals the alternating power sum of odd k-th powers mod odd q",
        params=(("k", "0..60even"), ("q", "1..99odd")),
        tuples=_product_tuples("k", "q"),
        run_one=_run_euler_mod_odd,
        validate=lambda r: _validate_each(r, [("k", *_EVEN_NONNEG), ("q", *_ODD_POS)]),
        prepare=_prepare_euler_max(0),
    ),
    "1.3": Claim(
        key="1.3",
        summary="cleared congruence (m^{k+1}-(-1)^{(m-1)/2}) E_k = 2 m^k S mod 2^{n+2}",
        params=(("k", "0..40even"), ("n", "1..10"), ("m", "1..15odd")),
        tuples=_product_tuples("k", "n", "m"),
        run_one=_run_euler_mod_two_power,
        validate=lambda r: _validate_each(
            r, [("k", *_EVEN_NONNEG), ("n", *_POS), ("m", *_ODD_POS)]),
        prepare=_prepare_euler_max(0),
    ),
    "2.1": Claim(
        key="2.1",
        summary="both exact forms tying Euler polynomials to Bernoulli polynomials",
        params=(("n", "0..30"),),
        tuples=_product_tuples("n"),
        run_one=_run_euler_bernoulli_relation,
        validate=lambda r: _validate_each(r, [("n", ">= 0", lambda v: v >= 0)]),
        prepare=_prepare_relation,
    ),
    "2.2": Claim(
        key="2.2",
        summary="Bernoulli polynomial scaling congruence vs floor-weighted sum mod q",
        params=(("a", "-5..5"), ("k", "1..12"), ("m", "1..7odd"), ("q", "2,4,6,8,16")),
        tuples=_coprime_filter(("a", "k", "m", "q"), "m", "q"),
        run_one=_run_bernoulli_poly_congruence,
        validate=lambda r: _validate_each(
            r, [("k", *_POS), ("m", *_POS), ("q", "> 1", lambda v: v > 1)]),
        prepare=_prepare_bernoulli(1),
    ),
    "2.3": Claim(
        key="2.3",
        summary="Euler polynomial scaling congruence vs alternating floor-weighted sum mod even q",
        params=(("a", "-5..5"), ("k", "0..12"), ("m", "1..7odd"), ("q", "2,4,6,8,16")),
        tuples=_coprime_filter(("a", "k", "m", "q"), "m", "q"),
        run_one=_run_euler_poly_congruence,
        validate=lambda r: _validate_each(
            r, [("k", ">= 0", lambda v: v >= 0), ("m", *_ODD_POS), ("q", *_EVEN_POS)]),
        prepare=_prepare_euler_max(1),
    ),
    "2.4": Claim(
        key="2.4",
        summary="signed floor sum equals (m - (-1)^a)/2 exactly",
        params=(("a", "-10..10"), ("m", "1..15odd"), ("q", "2..32even")),
        tuples=_coprime_filter(("a", "m", "q"), "m", "q"),
        run_one=_run_signed_floor_sum,
        validate=lambda r: _validate_each(r, [("m", *_ODD_POS), ("q", *_EVEN_POS)]),
        prepare=_prepare_noop,
    ),
    "kummer": Claim(
        key="kummer",
        summary="exponent congruence mod phi(p^n) forces B_k/k = B_l/l mod p^n (converse can fail)",
        params=(("p", "13"), ("n", "2"), ("k", "16"), ("l", "4")),
        tuples=_kummer_tuples,
        run_one=_run_kummer,
        validate=lambda r: _validate_each(
            r,
            [("p", "odd primes", lambda v: v > 2 and is_prime(v)),
             ("n", *_POS), ("k", *_EVEN_POS), ("l", *_EVEN_POS)]),
        prepare=_prepare_kummer,
    ),
    "thangadurai": Claim(
        key="thangadurai",
        summary="numerator of B_k carries v_p(k) factors of p, conjecturally at most v_p(k)+1",
        params=(("p", "13"), ("k", "2..60even")),
        tuples=_thangadurai_tuples,
        run_one=_run_thangadurai,
        validate=lambda r: _validate_each(
            r,
            [("p", "odd primes", lambda v: v > 2 and is_prime(v)),
             ("k", *_EVEN_POS)]),
        prepare=_prepare_bernoulli(1),
    ),
    "raabe": Claim(
        key="raabe",
        summary="multiplication formula m^{n-1} sum_r B_n((x+r)/m) = B_n(x), exact",
        params=(("n", "0..30"), ("m", "1..8")),
        tuples=_product_tuples("n", "m"),
        run_one=_run_raabe,
        validate=lambda r: _validate_each(
            r, [("n", ">= 0", lambda v: v >= 0), ("m", *_POS)]),
        prepare=_prepare_bernoulli(0),
    ),
    "reflection": Claim(
        key="reflection",
        summary="E_n(x) + E_n(x+1) = 2 x^n, exact",
        params=(("n", "0..30"),),
        tuples=_product_tuples("n"),
        run_one=_run_reflection,
        validate=lambda r: _validate_each(r, [("n", ">= 0", lambda v: v >= 0)]),
        prepare=_prepare_euler_max(0),
    ),
    "power-sum": Claim(
        key="power-sum",
        summary="2^{n+1} divides the alternating power sum over a full 2^n block",
        params=(("k", "0..40even"), ("n", "1..14")),
        tuples=_product_tuples("k", "n"),
        run_one=_run_power_sum,
        validate=lambda r: _validate_each(r, [("k", *_EVEN_NONNEG), ("n", *_POS)]),
        prepare=_prepare_noop,
    ),
}


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------


def _powering_mult_count(exponent: int) -> int:
    # modular multiplications of a binary square-and-multiply ladder
    if exponent <= 1:
        return 0
    return exponent.bit_length() - 1 + bin(exponent).count("1") - 1


def _fast_path_mult_count(k: int, n: int) -> int:
    # one powering plus one weight multiply per term, plus the coefficient
    # powering, the 3^k powering, and the three final multiplies
    per_term = _powering_mult_count(k) + 1
    return (1 << n) * per_term + _powering_mult_count(k + 1) + _powering_mult_count(k) + 3


@dataclass(frozen=True)
class BenchReport:
    """Timing and multiplication counts for the fast vs exact routes to E_k mod 2**n."""

    k: int
    n: int
    cutoff: int
    fast_residue: int
    fast_seconds: float
    fast_multiplications: int
    exact_residue: int | None
    exact_seconds: float | None
    exact_multiplications: int | None
    agree: bool | None


def bench_report(k: int, n: int, cutoff: int = 5000) -> BenchReport:
    """Run both routes to E_k mod 2**n and compare.

    The exact route uses a fresh table (the memoized singleton would fake
    its timing) and is skipped for k beyond the feasibility cutoff, in which
    case no equality claim is made.
    """
    if k < 0 or k % 2:
        raise ValueError(f"k must be even and >= 0, got {k}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    start = time.perf_counter()
    fast = congruences.euler_mod_2n(k, n)
    fast_seconds = time.perf_counter() - start
    fast_mults = _fast_path_mult_count(k, n)
    if k > cutoff:
        return BenchReport(k, n, cutoff, fast, fast_seconds, fast_mults,
                           None, None, None, None)
    table = special.EulerNumberTable()
    start = time.perf_counter()
    exact = table.value(k) % (1 << n)
    exact_seconds = time.perf_counter() - start
    return BenchReport(k, n, cutoff, fast, fast_seconds, fast_mults,
                       exact, exact_seconds, table.multiplications, exact == fast)


# ---------------------------------------------------------------------------
# cache plumbing
# ---------------------------------------------------------------------------


def cache_roundtrip(path) -> bool:
    """Persist the memoized tables, reload into fresh ones, compare everything."""
    special.save_tables(path)
    fresh_euler = special.EulerNumberTable()
    fresh_bernoulli = special.BernoulliNumberTable()
    special.load_tables(path, euler=fresh_euler, bernoulli=fresh_bernoulli)
    return (fresh_euler.snapshot() == special.euler_table().snapshot()
            and fresh_bernoulli.snapshot() == special.bernoulli_table().snapshot())


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------


def _fmt_params(parameters: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in parameters.items())


def _fmt_detail(detail: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in detail.items())


def _emit_check_records(records: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        for r in records:
            out.write(json.dumps(r) + "\n")
        return
    if fmt == "csv":
        writer = csv.writer(out)
        writer.writerow(["claim", "parameters", "holds", "modulus", "lhs", "rhs",
                         "witness", "detail"])
        for r in records:
            writer.writerow([r["claim"], _fmt_params(r["parameters"]), r["holds"],
                             r["modulus"], r["lhs"], r["rhs"], r["witness"] or "",
                             _fmt_detail(r["detail"])])
        return
    failed = 0
    for r in records:
        if r["holds"]:
            out.write(f"ok   {r['claim']} {_fmt_params(r['parameters'])}\n")
        else:
            failed += 1
            out.write(
                f"FAIL {r['claim']} {_fmt_params(r['parameters'])} "
                f"(mod {r['modulus']}): lhs={r['lhs']} rhs={r['rhs']} "
                f"witness={r['witness']}\n"
            )
    out.write(f"checked {len(records)} record(s): "
              f"{'all hold' if failed == 0 else f'{failed} FAILED'}\n")


def _emit_value_records(command: str, rows: list[tuple[dict, object]], fmt: str, out) -> None:
    if fmt == "json":
        for parameters, value in rows:
            out.write(json.dumps(
                {"command": command, "parameters": parameters, "value": str(value)}) + "\n")
        return
    if fmt == "csv":
        writer = csv.writer(out)
        keys = list(rows[0][0]) if rows else []
        writer.writerow(keys + ["value"])
        for parameters, value in rows:
            writer.writerow([parameters[k] for k in keys] + [str(value)])
        return
    for parameters, value in rows:
        if len(rows) == 1:
            out.write(f"{value}\n")
        else:
            head = " ".join(str(parameters[k]) for k in parameters)
            out.write(f"{head} {value}\n")


# ---------------------------------------------------------------------------
# command dispatch
# ---------------------------------------------------------------------------


def _run_parallel(tuples: list[tuple], worker: Callable[[tuple], dict],
                  parallel: int) -> list[dict]:
    if parallel <= 1:
        return [worker(t) for t in tuples]
    with ThreadPoolExecutor(max_workers=parallel) as pool:
        return list(pool.map(worker, tuples))


def _cmd_check(args, parser: argparse.ArgumentParser, out) -> int:
    claim = CLAIMS[args.claim]
    ranges: dict[str, list[int]] = {}
    provided = {name for name in ("k", "q", "n", "m", "a", "p", "l")
                if getattr(args, name) is not None}
    allowed = {name for name, _ in claim.params}
    extra = provided - allowed
    if extra:
        parser.error(f"claim {claim.key} does not take --{sorted(extra)[0]} "
                     f"(it takes {', '.join('--' + n for n in sorted(allowed))})")
    for name, default in claim.params:
        spec = getattr(args, name) if name in provided else default
        try:
            ranges[name] = parse_range(spec)
        except ValueError as exc:
            parser.error(f"--{name}: {exc}")
    message = claim.validate(ranges)
    if message:
        parser.error(f"claim {claim.key}: {message}")
    tuples = claim.tuples(ranges)
    claim.prepare(tuples)
    records = _run_parallel(tuples, claim.run_one, args.parallel)
    _emit_check_records(records, args.format, out)
    return EXIT_OK if all(r["holds"] for r in records) else EXIT_CHECK_FAILED


def _cmd_sweep(args, parser: argparse.ArgumentParser, out) -> int:
    kmax = args.kmax
    if kmax < 2:
        parser.error("--kmax must be >= 2")
    special.euler_table().extend_to(kmax)

    def run_one(t: tuple) -> dict:
        k, l = t
        record = congruences.stern_valuation(k, l)
        return _check_record(
            "stern", {"k": k, "l": l},
            record.v_value == record.v_index, 0,
            str(record.v_value), str(record.v_index),
        )

    tuples = [(k, l) for k in range(2, kmax + 1, 2) for l in range(0, k, 2)]
    records = _run_parallel(tuples, run_one, args.parallel)
    _emit_check_records(records, args.format, out)
    return EXIT_OK if all(r["holds"] for r in records) else EXIT_CHECK_FAILED


def _cmd_stern_table(args, parser: argparse.ArgumentParser, out) -> int:
    n = args.n
    if n < 1:
        parser.error("--n must be >= 1")
    rows = [({"k": k, "n": n}, congruences.euler_mod_2n(k, n))
            for k in range(0, (1 << n) - 1, 2)]
    _emit_value_records("stern-table", rows, args.format, out)
    return EXIT_OK


def _cmd_bench(args, parser: argparse.ArgumentParser, out) -> int:
    if args.k < 0 or args.k % 2:
        parser.error("--k must be even and >= 0")
    if args.n < 1:
        parser.error("--n must be >= 1")
    report = bench_report(args.k, args.n, cutoff=args.cutoff)
    skipped = report.agree is None
    record = _check_record(
        "bench", {"k": report.k, "n": report.n, "cutoff": report.cutoff},
        True if skipped else report.agree, 1 << report.n,
        str(report.fast_residue),
        "" if skipped else str(report.exact_residue),
        detail={
            "fast_seconds": round(report.fast_seconds, 6),
            "fast_multiplications": report.fast_multiplications,
            "exact_seconds": None if skipped else round(report.exact_seconds, 6),
            "exact_multiplications": report.exact_multiplications,
            "exact_skipped": skipped,
        },
    )
    if args.format == "plain":
        out.write(f"fast path:  E_{report.k} mod 2^{report.n} = {report.fast_residue} "
                  f"in {report.fast_seconds:.4f}s "
                  f"({report.fast_multiplications} modular multiplications)\n")
        if skipped:
            out.write(f"exact path: skipped (k > cutoff {report.cutoff}); "
                      "no equality claim made\n")
        else:
            out.write(f"exact path: E_{report.k} mod 2^{report.n} = {report.exact_residue} "
                      f"in {report.exact_seconds:.4f}s "
                      f"({report.exact_multiplications} big-integer multiplications)\n")
            out.write(f"agree: {report.agree}\n")
    else:
        _emit_check_records([record], args.format, out)
    return EXIT_OK if record["holds"] else EXIT_CHECK_FAILED


def _cmd_euler(args, parser: argparse.ArgumentParser, out) -> int:
    if args.k < 0:
        parser.error("k must be >= 0")
    if args.mod is not None and args.mod < 2:
        parser.error("--mod must be >= 2")
    value = special.euler_number(args.k)
    parameters: dict = {"k": args.k}
    if args.mod is not None:
        parameters["mod"] = args.mod
        value %= args.mod
    _emit_value_records("euler", [(parameters, value)], args.format, out)
    return EXIT_OK


def _cmd_bernoulli(args, parser: argparse.ArgumentParser, out) -> int:
    if args.k < 0:
        parser.error("k must be >= 0")
    value = special.bernoulli_number(args.k)
    _emit_value_records("bernoulli", [({"k": args.k}, value)], args.format, out)
    return EXIT_OK


def _cmd_euler_mod2(args, parser: argparse.ArgumentParser, out) -> int:
    if args.k < 0 or args.k % 2:
        parser.error("k must be even and >= 0")
    if args.n < 1:
        parser.error("n must be >= 1")
    value = congruences.euler_mod_2n(args.k, args.n)
    _emit_value_records("euler-mod2", [({"k": args.k, "n": args.n}, value)],
                        args.format, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eulermod",
        description="Exact Euler/Bernoulli numbers and machine checks of their congruences.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "json", "csv"), default="plain",
                        help="output format (default plain)")
    common.add_argument("--cache", default=None,
                        help=f"table cache file (default from ${CACHE_ENV})")
    common.add_argument("--parallel", type=int, default=1,
                        help="worker threads for sweeps (default 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("euler", parents=[common], help="print E_k exactly (or mod M)")
    p.add_argument("k", type=int)
    p.add_argument("--mod", type=int, default=None, help="reduce modulo this integer >= 2")
    p.set_defaults(handler=_cmd_euler)

    p = sub.add_parser("bernoulli", parents=[common], help="print B_k exactly")
    p.add_argument("k", type=int)
    p.set_defaults(handler=_cmd_bernoulli)

    p = sub.add_parser("euler-mod2", parents=[common],
                       help="E_k mod 2^n via the fast path (never computes E_k exactly)")
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(handler=_cmd_euler_mod2)

    claim_lines = "\n".join(f"  {key:<11} {CLAIMS[key].summary}" for key in CLAIMS)
    p = sub.add_parser(
        "check", parents=[common],
        help="verify one claim over parameter ranges",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        description="Claims:\n" + claim_lines,
    )
    p.add_argument("claim", choices=sorted(CLAIMS), metavar="claim",
                   help="one of: " + ", ".join(sorted(CLAIMS)))
    for flag in ("k", "q", "n", "m", "a", "p", "l"):
        p.add_argument(f"--{flag}", default=None,
                       help=f"range for {flag} (N, LO..HI, LO..HIodd, LO..HIeven, comma list)")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("sweep", parents=[common],
                       help="valuation sweep over all even index pairs")
    p.add_argument("target", choices=("stern",))
    p.add_argument("--kmax", type=int, default=256)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("stern-table", parents=[common],
                       help="table of E_k mod 2^n for even k in [0, 2^n - 2], fast path")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_stern_table)

    p = sub.add_parser("bench", parents=[common],
                       help="time the fast path against the exact recurrence")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cutoff", type=int, default=5000,
                   help="skip the exact path above this k (default 5000)")
    p.set_defaults(handler=_cmd_bench)
    return parser


_RANGE_FLAGS = {"--k", "--q", "--n", "--m", "--a", "--p", "--l"}


def _merge_negative_ranges(argv: Sequence[str]) -> list[str]:
    # argparse reads "-5..5" as an option; fold it into "--a=-5..5" form
    out: list[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if (token in _RANGE_FLAGS and i + 1 < len(argv)
                and re.match(r"^-\d", argv[i + 1])):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_merge_negative_ranges(
        sys.argv[1:] if argv is None else argv))

    # exact Euler numbers exceed the default int -> str conversion limit
    if hasattr(sys, "set_int_max_str_digits") and sys.get_int_max_str_digits():
        sys.set_int_max_str_digits(0)

    cache_path = args.cache or os.environ.get(CACHE_ENV)
    if cache_path and os.path.exists(cache_path):
        try:
            special.load_tables(cache_path)
        except special.CacheError as exc:
            print(f"cache load refused: {exc}", file=sys.stderr)
            return EXIT_USAGE

    try:
        status = args.handler(args, parser, sys.stdout)
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL

    if cache_path:
        special.save_tables(cache_path)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
