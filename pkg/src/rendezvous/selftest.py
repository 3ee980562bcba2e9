"""Invariant suites run by ``rendezvous selftest``."""
from __future__ import annotations

from itertools import combinations, product
from typing import Callable, Optional

from . import coloring, strings
from .coloring import ColorRule
from .schedules import SYMMETRIC_PATTERN, pair_schedule, schedule_cycle_length, two_primes_in
from .simulator import brute_force_optimal_sync, simulate_pair


def _words(m: int):
    return ("".join(w) for w in product("01", repeat=m))


def _check_codewords(max_len: int) -> Optional[dict]:
    for m in range(1, max_len + 1):
        for x in _words(m):
            w = strings.encode_async(x)
            if not (strings.is_balanced(w) and strings.is_strictly_catalan(w)
                    and strings.maximality_count(w) == 2 and strings.minimality_count(w) == 1):
                return {"x": x, "codeword": w}
    return None


def _check_black_diamonds(max_len: int) -> Optional[dict]:
    for m in range(1, max_len + 1):
        code = {x: strings.encode_async(x) for x in _words(m)}
        for x, y in product(code, repeat=2):
            if not strings.black_diamond0(code[x], code[y]):
                return {"x": x, "y": y, "condition": "black_diamond0"}
            if x != y and not strings.black_diamond1(code[x], code[y]):
                return {"x": x, "y": y, "condition": "black_diamond1"}
    return None


def _check_round_trip(max_len: int) -> Optional[dict]:
    for m in range(1, max_len + 1):
        for x in _words(m):
            if strings.decode_async(strings.encode_async(x)) != x:
                return {"x": x}
    return None


def _check_sync_codes(max_len: int) -> Optional[dict]:
    for m in range(1, max_len + 1):
        code = {x: strings.encode_sync(x) for x in _words(m)}
        for x, y in product(code, repeat=2):
            ok = strings.diamond0(code[x], code[y]) if x == y else strings.diamond1(code[x], code[y])
            if not ok:
                return {"x": x, "y": y}
    return None


def _check_ramsey(max_n: int, rule: Optional[ColorRule]) -> Optional[dict]:
    for n in range(2, max_n + 1):
        triple = coloring.find_monochromatic_path(n, rule)
        if triple is not None:
            return {"n": n, "triple": list(triple)}
    return None


def _check_pair_schedules(n: int) -> Optional[dict]:
    L = schedule_cycle_length(n)
    sets = list(combinations(range(1, n + 1), 2))
    for a, b in combinations(sets, 2):
        if not set(a) & set(b):
            continue
        sa, sb = pair_schedule(a, n), pair_schedule(b, n)
        for d in range(L):
            for offsets in ((0, d), (d, 0)):
                out = simulate_pair(sa, sb, *offsets, L)
                if not out.met or out.elapsed >= L:
                    return {"a": list(a), "b": list(b), "offsets": list(offsets)}
    return None


def _check_helpful_epochs(max_prime: int = 13) -> Optional[dict]:
    primes = [p for p in range(2, max_prime + 1) if all(p % d for d in range(2, p))]
    for p, q in product(primes, repeat=2):
        if p == q:
            continue
        for x, y, mu in product(range(p), range(q), range(p * q)):
            if not any(e % p == x and (e - mu) % q == y for e in range(mu, mu + p * q)):
                return {"p": p, "q": q, "x": x, "y": y, "mu": mu}
    for k in range(2, 64):
        p, q = two_primes_in(k)
        if not (k <= p < q <= 3 * k):
            return {"k": k, "primes": [p, q]}
    return None


def _check_symmetric_pattern() -> Optional[dict]:
    word = "".join(str(int(b)) for b in SYMMETRIC_PATTERN[:6])
    return None if strings.black_diamond0(word, word) else {"pattern": word}


def run_selftest(color_rule: Optional[ColorRule] = None, ramsey_max: int = coloring.VERIFY_CAP) -> dict:
    """Run every suite; return ``{"checks": [...], "anchors": {...}, "passed": bool}``.

    ``color_rule`` replaces the edge coloring under test (fault injection).
    """
    suites: list[tuple[str, str, Callable[[], Optional[dict]]]] = [
        ("strings", "async codewords balanced, strictly Catalan, 2-maximal (len <= 6)", lambda: _check_codewords(6)),
        ("strings", "black diamond conditions between codewords (len <= 4)", lambda: _check_black_diamonds(4)),
        ("strings", "async decode round trip (len <= 8)", lambda: _check_round_trip(8)),
        ("strings", "sync codes meet under diamond conditions (len <= 6)", lambda: _check_sync_codes(6)),
        ("coloring", f"no monochromatic directed path, 2 <= n <= {ramsey_max}",
         lambda: _check_ramsey(ramsey_max, color_rule)),
        ("schedules", "pair schedules meet within one cycle, all 2-sets of [6]", lambda: _check_pair_schedules(6)),
        ("schedules", "helpful prime pairs reach every residue pair", _check_helpful_epochs),
        ("schedules", "symmetric pattern satisfies black_diamond0", _check_symmetric_pattern),
    ]
    checks = []
    for module, name, fn in suites:
        counterexample = fn()
        checks.append({"module": module, "invariant": name, "passed": counterexample is None,
                       "counterexample": counterexample})
    sync = brute_force_optimal_sync(3, 2, 4).optimal_t
    checks.append({"module": "simulator", "invariant": "sync oracle R_s(3,2) == 3", "passed": sync == 3,
                   "counterexample": None if sync == 3 else {"optimal_t": sync}})
    return {
        "checks": checks,
        "anchors": {"R_s(3,2)": sync},
        "passed": all(c["passed"] for c in checks),
    }
