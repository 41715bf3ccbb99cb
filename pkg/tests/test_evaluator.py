import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from peanokit import evaluator
from peanokit.evaluator import (
    ArityMismatch, EvalBudget, FuelExhausted, TraceEvent, Value, compile as compile_term,
    evaluate, evaluate_trace,
)
from peanokit.library import stdlib
from peanokit.terms import (
    ArityError, Compose, Mu, Name, PrimRec, Proj, Succ, UnresolvedName, Zero, arity_of,
    contains_mu, subterm, term_depth,
)
from termgen import gen_term, rng_draw, terms

ADD = PrimRec(Proj(1, 1), Compose(Succ(), (Proj(2, 3),)))
ONE = Compose(Succ(), (Zero(2),))

needs_cython = pytest.mark.skipif(evaluator._ckernel is None, reason="compiled kernel not built")


class TestArity:
    def test_succ(self):
        assert arity_of(Succ()) == 1

    def test_addition(self):
        assert arity_of(ADD) == 2

    def test_mu(self):
        assert arity_of(Mu(Compose(Succ(), (Proj(1, 2),)))) == 1

    def test_compose_mismatch_reports_path(self):
        bad = Compose(Succ(), (Proj(1, 1), Proj(1, 2)))
        with pytest.raises(ArityError) as info:
            arity_of(bad)
        subterm(bad, info.value.path)  # path is real

    def test_rec_base_step_mismatch(self):
        with pytest.raises(ArityError):
            arity_of(PrimRec(Proj(1, 1), Proj(1, 2)))

    def test_outer_arity_must_match_inner_count(self):
        with pytest.raises(ArityError):
            arity_of(Compose(ADD, (Succ(),)))

    def test_names(self):
        env = {"add": ADD}
        assert arity_of(Compose(Name("add"), (Succ(), Succ())), env) == 1
        with pytest.raises(UnresolvedName):
            arity_of(Name("nope"), env)

    def test_name_cycle(self):
        with pytest.raises(UnresolvedName, match="cyclic"):
            arity_of(Name("a"), {"a": Name("b"), "b": Name("a")})

    def test_depth_and_mu(self):
        assert term_depth(ADD) == 3
        assert not contains_mu(ADD)
        assert contains_mu(Name("f"), {"f": Mu(Proj(1, 1))})

    def test_bad_leaves(self):
        with pytest.raises(ValueError):
            Proj(0, 1)
        with pytest.raises(ValueError):
            Zero(-1)
        with pytest.raises(ValueError):
            Compose(Succ(), ())


class TestEvaluate:
    def test_add(self):
        assert evaluate(ADD, [2, 3], fuel=100).value == 5

    @given(st.integers(0, 200))
    def test_add_base_case(self, y):
        assert evaluate(ADD, [0, y], fuel=10**4).value == y

    def test_isqrt_10(self):
        assert stdlib().evaluate("isqrt", (10,), 10**6) == Value(3, 511)

    def test_constant_one_search_exhausts(self):
        out = evaluate(Mu(ONE), [5], fuel=10**4)
        assert out == FuelExhausted(10**4)

    def test_arity_mismatch_is_a_result(self):
        out = evaluate(ADD, [1], fuel=10)
        assert isinstance(out, ArityMismatch)
        bad = Compose(Succ(), (Proj(1, 1), Proj(1, 1)))
        assert isinstance(evaluate(bad, [1], fuel=10), ArityMismatch)

    def test_non_natural_args(self):
        with pytest.raises(ValueError):
            evaluate(ADD, [1, -1], fuel=10)

    def test_budget_is_charged(self):
        budget = EvalBudget(100)
        first = evaluate(ADD, [2, 3], budget)
        assert budget.consumed == first.consumed
        evaluate(ADD, [2, 3], budget)
        assert budget.consumed == 2 * first.consumed
        assert budget.remaining == 100 - budget.consumed

    def test_budget_exhaustion_spends_everything(self):
        budget = EvalBudget(5)
        assert isinstance(evaluate(ADD, [9, 9], budget), FuelExhausted)
        assert budget.consumed == budget.fuel

    def test_big_numbers_leave_the_fast_path(self):
        big = 2**70
        assert evaluate(ADD, [0, big], fuel=10).value == big
        assert stdlib().evaluate("add", (3, big), 10**6).value == big + 3


class TestTrace:
    def test_add_one_unrolling(self):
        out, log = evaluate_trace(ADD, [1, 1], fuel=100)
        assert out.value == 2
        assert [e.kind for e in log] == ["rec"]
        assert log[0] == TraceEvent("rec", (1, 1), 2)

    def test_fuel_zero(self):
        out, log = evaluate_trace(ADD, [1, 1], fuel=0)
        assert out == FuelExhausted(0)
        assert log == []

    def test_isqrt_probes(self):
        prog = stdlib()
        out, log = evaluate_trace(Name("isqrt"), [4], env=prog.env, fuel=10**6)
        assert out.value == 2
        probes = [e for e in log if e.kind == "mu"]
        assert [e.args[-1] for e in probes] == [0, 1, 2]
        assert [e.value == 0 for e in probes] == [False, False, True]

    def test_trace_agrees_with_run(self):
        prog = stdlib()
        f = prog.compiled("isqrt")
        out, _ = f.trace((10,), 10**6)
        assert out == f.run((10,), 10**6)


@settings(max_examples=200, deadline=None)
@given(terms(depth=4, mu=False), st.data())
def test_mu_free_terms_are_total(case, data):
    arity, term = case
    args = data.draw(st.lists(st.integers(0, 10), min_size=arity, max_size=arity))
    out = evaluate(term, args, fuel=10**7)
    assert isinstance(out, Value)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_mu_minimality(seed):
    draw = rng_draw(seed)
    arity = draw(0, 2)
    body = gen_term(draw, arity + 1, 3)
    args = tuple(draw(0, 4) for _ in range(arity))
    out = evaluate(Mu(body), args, fuel=10**5)
    if isinstance(out, Value):
        f = compile_term(body)
        assert f.run(args + (out.value,), 10**6).value == 0
        for y in range(out.value):
            assert f.run(args + (y,), 10**6).value != 0


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 10))
def test_fuel_monotone(seed, factor):
    draw = rng_draw(seed)
    arity = draw(0, 2)
    f = compile_term(gen_term(draw, arity, 4))
    args = tuple(draw(0, 5) for _ in range(arity))
    out = f.run(args, 10**5)
    if isinstance(out, Value):
        assert f.run(args, out.consumed * factor) == out
        if out.consumed > 0:
            assert f.run(args, out.consumed - 1) == FuelExhausted(out.consumed - 1)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_determinism(seed):
    draw = rng_draw(seed)
    arity = draw(0, 2)
    term = gen_term(draw, arity, 4)
    args = [draw(0, 5) for _ in range(arity)]
    assert evaluate_trace(term, args, fuel=5000) == evaluate_trace(term, args, fuel=5000)
    assert evaluate(term, args, fuel=5000) == evaluate(term, args, fuel=5000)


@needs_cython
@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 20000), st.booleans())
def test_kernels_agree(seed, fuel, jets):
    draw = rng_draw(seed)
    arity = draw(0, 2)
    f = compile_term(gen_term(draw, arity, 5, names={2: ["add", "mul"], 1: ["pred"]}),
                     stdlib().env)
    args = tuple(draw(0, 6) for _ in range(arity))
    assert (f.run(args, fuel, jets=jets, backend="cython")
            == f.run(args, fuel, jets=jets, backend="python"))


@needs_cython
def test_compiled_kernel_threads():
    f = stdlib().compiled("mul")
    results = []

    def work():
        results.extend(f.run((x, 7), 10**6).value for x in range(200))

    threads = [threading.Thread(target=work) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert sorted(results) == sorted(x * 7 for x in range(200) for _ in range(4))


def test_trace_event_kinds_on_mu_terms():
    out, log = evaluate_trace(Mu(ONE), [0], fuel=50)
    assert isinstance(out, FuelExhausted)
    assert log and all(e.kind == "mu" and e.value == 1 for e in log)
