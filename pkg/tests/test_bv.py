from __future__ import annotations

import random
from fractions import Fraction

import pytest

from orbistring.bv import (
    GradedBVData,
    check_bv_identity,
    check_gerstenhaber,
    check_leibniz,
    derived_bracket,
    dump_bv,
    load_bv,
)
from orbistring.bv_instances import (
    ExteriorAlgebra,
    chevalley_eilenberg,
    direct_sum,
    exterior_bv,
    generate_instances,
    odd_line_truncated,
    perturb_top,
    tensor_product,
)

ONE = Fraction(1)


def test_degree_bookkeeping_is_enforced():
    with pytest.raises(ValueError):
        GradedBVData((0, 1), {}, {0: {0: 1}})
    with pytest.raises(ValueError):
        GradedBVData((0, 1), {(1, 1): {0: 1}}, {})


def test_zero_operator_gives_zero_bracket():
    A = exterior_bv([-1, 1, 3], {})
    for i in range(A.dim):
        for j in range(A.dim):
            assert derived_bracket(A, {i: ONE}, {j: ONE}) == {}
    assert check_bv_identity(A) and check_leibniz(A)


def test_odd_generator_with_unit_image():
    # Lambda(x), |x| = -1, D(x) = 1: {x; x} = -D(x x) + D(x) x - x D(x) = 0
    A = exterior_bv([-1], {(0,): {(): 1}})
    x = {1: ONE}
    assert A.apply_D(x) == {0: ONE}
    assert derived_bracket(A, x, x) == {}
    # {x; 1} = -D(x) + D(x) - x D(1) = 0 and {1; x} = D(x) - 0 - D(x) = 0
    assert derived_bracket(A, x, {0: ONE}) == {}


def test_chevalley_eilenberg_bracket_is_minus_lie_bracket():
    # hand computation: {x_i; x_j} = (-1)^{-1} D(x_i x_j) = -[x_i, x_j]
    A = chevalley_eilenberg("sl2")
    ext = ExteriorAlgebra((-1, -1, -1))
    x = [{ext.index[(k,)]: ONE} for k in range(3)]
    assert derived_bracket(A, x[0], x[1]) == {ext.index[(1,)]: Fraction(-2)}
    assert derived_bracket(A, x[1], x[2]) == {ext.index[(0,)]: Fraction(-1)}


def test_odd_line_bracket_hand_values():
    # f(a) = 2 + 3a; {xi y^a; y^b} = -f(a+b) y^{a+b} + f(a) y^{a+b} = -3b y^{a+b}
    N = 4
    A = odd_line_truncated(N, lambda a: 2 + 3 * a)
    for a in range(N):
        for b in range(N - a):
            got = derived_bracket(A, {N + a: ONE}, {b: ONE})
            assert got == ({a + b: Fraction(-3 * b)} if b else {})


def test_bracket_of_inhomogeneous_elements_is_bilinear():
    A = chevalley_eilenberg("heisenberg")
    x = {1: Fraction(2), 4: Fraction(-1)}
    y = {2: ONE, 7: Fraction(3)}
    expected = {}
    for i, a in x.items():
        for j, b in y.items():
            for k, c in derived_bracket(A, {i: ONE}, {j: ONE}).items():
                expected[k] = expected.get(k, 0) + a * b * c
    assert derived_bracket(A, x, y) == {k: v for k, v in expected.items() if v}


@pytest.mark.parametrize("name", ["sl2", "heisenberg", "so3", "r3"])
def test_lie_algebra_instances_are_bv(name):
    A = chevalley_eilenberg(name).validate()
    assert check_bv_identity(A) and check_leibniz(A)
    assert all(check_gerstenhaber(A))


def test_odd_line_affine_vs_quadratic():
    assert check_bv_identity(odd_line_truncated(4, lambda a: 1 - a))
    bad = odd_line_truncated(3, lambda a: a * a)
    rep = check_bv_identity(bad)
    assert not rep and rep.residual
    assert not check_leibniz(bad)


def test_perturbation_breaks_both_checks(rng):
    A = chevalley_eilenberg("heisenberg")
    B = perturb_top(A, rng)
    assert B is not None
    assert all(B.structure_reports())
    assert not check_bv_identity(B) and not check_leibniz(B)


def test_sums_and_tensor_products():
    A = chevalley_eilenberg("affine2", character=(1, 0))
    B = odd_line_truncated(2, lambda a: 1)
    for C in (direct_sum(A, B), tensor_product(A, B), tensor_product(B, A)):
        assert all(C.structure_reports())
        assert check_bv_identity(C)
    bad = direct_sum(A, odd_line_truncated(3, lambda a: a * a))
    assert not check_bv_identity(bad)


def test_random_instances_agree_and_satisfy_gerstenhaber():
    instances = generate_instances(seed=3, count=40)
    outcomes = set()
    for label, A in instances:
        assert all(A.structure_reports()), label
        bv, leib = check_bv_identity(A), check_leibniz(A)
        assert bv.passed == leib.passed, label
        outcomes.add(bv.passed)
        if bv:
            assert all(check_gerstenhaber(A)), label
    assert outcomes == {True, False}


def test_json_round_trip():
    A = tensor_product(chevalley_eilenberg("r3"), odd_line_truncated(2, lambda a: 1))
    B = load_bv(dump_bv(A))
    assert B == A


def test_json_errors():
    with pytest.raises(ValueError):
        load_bv('{"schema": 1, "degrees": [0], "product": [[0, 0, 0]], "D": []}')
    with pytest.raises(ValueError):
        load_bv('{"schema": 2, "degrees": []}')


def test_second_order_extension_is_second_order():
    rng = random.Random(5)
    ext = ExteriorAlgebra((-1, 1, -1))
    for _ in range(10):
        vals = {}
        for s in ext.subsets:
            if 1 <= len(s) <= 2:
                target = ext.degrees[ext.index[s]] + 1
                idx = [n for n, d in enumerate(ext.degrees) if d == target]
                vals[s] = {i: Fraction(rng.randint(-2, 2)) for i in idx}
        assert check_bv_identity(ext.bv(vals))
