"""Acceptance criteria, one test each, with wall-clock limits.

Every test prints and records one PASS/FAIL line; the collected lines are
shown in the terminal summary.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from orbistring.bv import (
    check_bv_identity,
    check_gerstenhaber,
    check_leibniz,
    check_string_lie,
    verify_T_lie_morphism,
)
from orbistring.bv_instances import generate_gysin_instances, generate_instances
from orbistring.goldman import (
    admissible_pairs_general,
    admissible_pairs_two_points,
    bracket_combinations,
    goldman_bracket,
)
from orbistring.hochschild import ALGEBRAS, INFORMATIONAL, verify_chain_identities
from orbistring.loops import LoopCombination
from orbistring.sphere import e, sphere_bracket, verify_grading, verify_sphere_jacobi
from orbistring.words import CyclicWord, OrbifoldSignature, collect, normalize, parse_word


def record(number: int, title: str, passed: bool, elapsed: float, limit: float | None, detail: str = "") -> None:
    within = limit is None or elapsed < limit
    status = "PASS" if passed and within else "FAIL"
    budget = f" (limit {limit:g}s)" if limit is not None else ""
    line = f"[{number}] {status} {title}: {elapsed:.2f}s{budget}"
    if detail:
        line += f"; {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert passed, line
    assert within, line


def words_up_to(sig: OrbifoldSignature, max_len: int) -> list[CyclicWord]:
    """All nontrivial classes with an expanded representative of length at most ``max_len``."""
    found = {collect(u, sig) for n in range(1, max_len + 1)
             for u in itertools.product(range(1, sig.r + 1), repeat=n)}
    return sorted(w for w in found if w.letters)


def word(text: str, sig: OrbifoldSignature) -> CyclicWord:
    return normalize(parse_word(text, sig), sig)


def test_01_worked_example_vanishes():
    sig = OrbifoldSignature((2, 4))
    t0 = time.perf_counter()
    result = goldman_bracket(word("aab", sig), word("abb", sig), sig)
    elapsed = time.perf_counter() - t0
    record(1, "{a^2 b, a b^2} = 0 over (2,4)", not result, elapsed, 1.0, f"result {result}")


def test_02_worked_example_nonzero():
    sig = OrbifoldSignature((3, 4))
    t0 = time.perf_counter()
    result = goldman_bracket(word("aab", sig), word("abb", sig), sig)
    elapsed = time.perf_counter() - t0
    expected = LoopCombination([(word("babbaa", sig), 1), (word("bbabaa", sig), -1)], sig)
    terms_are_integers = all(isinstance(c, int) for _, c in result)
    record(2, "{a^2 b, a b^2} = b a b^2 a^2 - b^2 a b a^2 over (3,4)",
           result == expected and terms_are_integers, elapsed, 1.0, f"result {result}")


def test_03_single_letter_loops_are_central():
    t0 = time.perf_counter()
    checked, witness = 0, None
    for orders in [(2, 3), (3, 4), (2, 2, 2)]:
        sig = OrbifoldSignature(orders)
        singles = [normalize([(g, k)], sig) for g in range(1, sig.r + 1) for k in range(1, orders[g - 1])]
        for w in singles:
            for a in words_up_to(sig, 5):
                checked += 2
                for res in (goldman_bracket(w, a, sig), goldman_bracket(a, w, sig)):
                    if res and witness is None:
                        witness = (orders, str(w), str(a), str(res))
    elapsed = time.perf_counter() - t0
    record(3, "single-letter loops bracket trivially", witness is None, elapsed, None,
           f"{checked} brackets" + (f", witness {witness}" if witness else ""))


def test_04_general_rule_reproduces_two_point_rule():
    t0 = time.perf_counter()
    checked, witness = 0, None
    for orders in [(2, 4), (3, 4)]:
        sig = OrbifoldSignature(orders)
        words = words_up_to(sig, 5)
        for a, b in itertools.product(words, repeat=2):
            checked += 1
            pg, pt = admissible_pairs_general(a, b, sig), admissible_pairs_two_points(a, b, sig)
            same = pg == pt and (goldman_bracket(a, b, sig, method="general")
                                 == goldman_bracket(a, b, sig, method="two_points"))
            if not same and witness is None:
                witness = (orders, str(a), str(b))
    elapsed = time.perf_counter() - t0
    record(4, "general and two-point rules agree for r = 2", witness is None, elapsed, 60.0,
           f"{checked} pairs" + (f", witness {witness}" if witness else ""))


LIE_SIGNATURES = [(2, 3), (3, 4), (5, 5), (2, 2, 2), (2, 3, 5), (3, 4, 5), (2, 3, 4, 5), (5, 4, 3, 2)]


def test_05_goldman_lie_axioms():
    t0 = time.perf_counter()
    antisym, witness = 0, None
    for orders in LIE_SIGNATURES:
        sig = OrbifoldSignature(orders)
        for a, b in itertools.product(words_up_to(sig, 4), repeat=2):
            antisym += 1
            if goldman_bracket(a, b, sig) + goldman_bracket(b, a, sig) and witness is None:
                witness = ("antisymmetry", orders, str(a), str(b))
    rng = random.Random(2024)
    jacobi = 0
    br = bracket_combinations
    while jacobi < 600:
        sig = OrbifoldSignature(rng.choice(LIE_SIGNATURES))
        x, y, z = (LoopCombination.from_word(collect(
            [rng.randint(1, sig.r) for _ in range(rng.randint(1, 6))], sig)) for _ in range(3))
        if not all(any(True for _ in v) for v in (x, y, z)):
            continue
        jacobi += 1
        if (br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))) and witness is None:
            witness = ("Jacobi", sig.orders, str(x), str(y), str(z))
    elapsed = time.perf_counter() - t0
    record(5, "Goldman bracket antisymmetry and Jacobi", witness is None, elapsed, 300.0,
           f"{antisym} antisymmetry pairs, {jacobi} Jacobi triples"
           + (f", witness {witness}" if witness else ""))


def test_06_sphere_example():
    t0 = time.perf_counter()
    problems = []
    for i, j in itertools.product(range(1, 11), repeat=2):
        got = sphere_bracket(e(1, 1), e(i, j))
        want = {e(i, j): Fraction(i - j)} if i != j else {}
        if got != want:
            problems.append(f"[e11, e{i}{j}] = {got}")
    reports = []
    for n in (1, 2):
        reports += [verify_sphere_jacobi(4, n), verify_grading(4, n)]
    problems += [r.line() for r in reports if not r.passed]
    elapsed = time.perf_counter() - t0
    detail = ", ".join(f"{r.name}: {r.checked}" for r in reports)
    record(6, "sphere eigenvalues, graded Jacobi and grading", not problems, elapsed, 60.0,
           detail + ("; " + "; ".join(problems[:3]) if problems else ""))


def test_07_bv_kernel():
    t0 = time.perf_counter()
    instances = generate_instances(seed=0, count=120)
    disagreements, lie_failures, passing = [], [], 0
    for label, A in instances:
        bv, leib = check_bv_identity(A), check_leibniz(A)
        if bv.passed != leib.passed:
            disagreements.append(label)
        if bv.passed:
            passing += 1
            lie_failures += [f"{label}: {r.line()}" for r in check_gerstenhaber(A) if not r.passed]
    elapsed = time.perf_counter() - t0
    ok = len(instances) >= 100 and not disagreements and not lie_failures
    record(7, "BV identity and derivation checks agree; derived bracket is Lie", ok, elapsed, 120.0,
           f"{len(instances)} instances, {passing} BV, {len(instances) - passing} not BV"
           + (f"; disagree {disagreements[:3]}" if disagreements else "")
           + (f"; Lie failures {lie_failures[:3]}" if lie_failures else ""))


def test_08_gysin_construction():
    t0 = time.perf_counter()
    instances = generate_gysin_instances(seed=0, count=40)
    failures = []
    for label, G in instances:
        reports = [G.exactness_report(), G.delta_report(), *check_string_lie(G), verify_T_lie_morphism(G)]
        failures += [f"{label}: {r.line()}" for r in reports if not r.passed]
    elapsed = time.perf_counter() - t0
    record(8, "string bracket Jacobi and T Lie morphism on Gysin data",
           len(instances) >= 20 and not failures, elapsed, None,
           f"{len(instances)} instances" + (f"; {failures[:3]}" if failures else ""))


def test_09_hochschild_identities():
    t0 = time.perf_counter()
    failures, counts = [], []
    for name in ("ground", "dual", "z2"):
        reps = verify_chain_identities(ALGEBRAS[name](), 3)
        counts.append(f"{name}: {sum(1 for k in reps if k not in INFORMATIONAL)} identities")
        failures += [f"{name}: {r.line()}" for k, r in reps.items() if k not in INFORMATIONAL and not r.passed]
    elapsed = time.perf_counter() - t0
    record(9, "Hochschild chain-level identities at N = 3", not failures, elapsed, 120.0,
           ", ".join(counts) + ("; " + "; ".join(failures) if failures else ""))
