import json
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from peanokit.models import (
    BINARY, DECIMAL, FIXTURES, UNARY, AxiomsRefused, IterationError, IterationSpec, ModelError,
    ModelFormatError, PointedStructure, build_iso, chain_of, check_axioms, dump_model, iterate,
    iterate_indexed, load_model, trajectory,
)

LINEAR, CYCLE, NONSTANDARD = FIXTURES["linear"], FIXTURES["cycle"], FIXTURES["nonstandard"]


class TestChain:
    def test_linear(self):
        assert list(chain_of(LINEAR, "0", 10)) == ["0", "1", "2", "3"]

    def test_cycle_stops_at_repeat(self):
        assert list(chain_of(CYCLE, "0", 10)) == ["0", "1", "2"]

    def test_two_components(self):
        s = PointedStructure(("0", "1", "2", "a", "b"), "0",
                             {"0": "1", "1": "2", "a": "b", "b": "a"}, frozenset({"2"}))
        chain = chain_of(s, "0", 10)
        assert list(chain) == ["0", "1", "2"]
        assert "a" not in chain and "b" not in chain

    def test_depth_counts_steps(self):
        assert list(chain_of(LINEAR, "0", 1)) == ["0", "1"]
        assert list(chain_of(LINEAR, "0", 0)) == ["0"]

    def test_unknown_seed(self):
        with pytest.raises(ModelError):
            chain_of(LINEAR, "9", 3)


class TestStructure:
    def test_partial_successor_needs_frontier(self):
        with pytest.raises(ModelError):
            PointedStructure(("0", "1"), "0", {"0": "1"})

    def test_zero_must_be_element(self):
        with pytest.raises(ModelError):
            PointedStructure(("0",), "z", {"0": "0"})

    def test_successor_is_read_only(self):
        with pytest.raises(TypeError):
            CYCLE.succ["0"] = "2"


class TestAxioms:
    def test_linear(self):
        r = check_axioms(LINEAR)
        assert r.ok and r.fragment_depth == 4

    def test_cycle(self):
        r = check_axioms(CYCLE)
        assert not r.d1_holds and r.d1_counterexample == "2"
        assert r.d2_holds and r.d3_holds

    def test_nonstandard(self):
        r = check_axioms(NONSTANDARD)
        assert r.d1_holds and r.d2_holds
        assert not r.d3_holds and r.d3_counterexample == "a"

    def test_injectivity_failure(self):
        s = PointedStructure(("0", "1", "2"), "0", {"0": "1", "1": "2", "2": "1"})
        r = check_axioms(s)
        assert not r.d2_holds
        x, y = r.d2_counterexample
        assert x != y and s.succ[x] == s.succ[y]

    def test_strict_agrees_on_fixtures(self):
        for s in FIXTURES.values():
            assert check_axioms(s, strict=True) == check_axioms(s)

    def test_strict_limit(self):
        with pytest.raises(ModelError):
            check_axioms(UNARY.fragment(13), strict=True)

    def test_json(self):
        d = json.loads(check_axioms(NONSTANDARD).to_json())
        assert set(d) == {"d1", "d2", "d3", "counterexamples", "fragment_depth"}
        assert d["counterexamples"]["d3"] == "a"


@st.composite
def structures(draw, max_size=8):
    n = draw(st.integers(1, max_size))
    elements = tuple(str(i) for i in range(n))
    succ = {}
    frontier = set()
    for x in elements:
        if draw(st.booleans()) or draw(st.booleans()):
            succ[x] = elements[draw(st.integers(0, n - 1))]
        else:
            frontier.add(x)
    return PointedStructure(elements, elements[0], succ, frozenset(frontier))


def _stable_subsets(s, seed):
    others = [x for x in s.elements if x != seed]
    for r in range(len(others) + 1):
        for combo in combinations(others, r):
            m = {seed, *combo}
            if all(s.succ[x] in m for x in m if x in s.succ):
                yield m


@settings(max_examples=200, deadline=None)
@given(structures(), st.data())
def test_chain_is_least_stable_subset(s, data):
    seed = data.draw(st.sampled_from(s.elements))
    chain = set(chain_of(s, seed, len(s)))
    for m in _stable_subsets(s, seed):
        assert chain <= m
    assert all(s.succ[x] in chain for x in chain if x in s.succ)


@settings(max_examples=300, deadline=None)
@given(structures())
def test_counterexamples_reproduce(s):
    r = check_axioms(s)
    if not r.d1_holds:
        assert s.succ[r.d1_counterexample] == s.zero
    if not r.d2_holds:
        x, y = r.d2_counterexample
        assert x != y and s.succ[x] == s.succ[y]
    if not r.d3_holds:
        cx = r.d3_counterexample
        assert cx not in s.frontier and cx not in chain_of(s, s.zero, len(s))
    assert check_axioms(s, strict=True).d3_holds == r.d3_holds


class TestIteration:
    def test_successor_is_identity_embedding(self):
        assert iterate(IterationSpec(0, lambda v: v + 1), 7) == 7

    def test_doubling(self):
        assert iterate(IterationSpec(1, lambda v: 2 * v), 10) == 1024

    def test_strings(self):
        assert iterate(IterationSpec("", lambda v: v + "a"), 3) == "aaa"

    def test_factorial(self):
        assert iterate_indexed(IterationSpec(1, lambda x, v: v * (x + 1), True), 5) == 120

    def test_constant_step(self):
        assert iterate_indexed(IterationSpec("w", lambda x, v: v, True), 9) == "w"

    def test_odd_sums(self):
        assert iterate_indexed(IterationSpec(0, lambda x, v: v + 2 * x + 1, True), 6) == 36

    def test_step_failure_carries_index(self):
        table = {0: 1, 1: 2}
        with pytest.raises(IterationError) as info:
            iterate(IterationSpec(0, table.__getitem__), 5)
        assert info.value.index == 2

    def test_wrong_variant(self):
        with pytest.raises(ValueError):
            iterate(IterationSpec(0, lambda x, v: v, True), 1)

    @given(st.lists(st.integers(0, 15), min_size=16, max_size=16), st.integers(0, 15),
           st.integers(0, 200))
    def test_trajectory_satisfies_recursion(self, table, omega, n):
        psi = trajectory(IterationSpec(omega, table.__getitem__), n)
        assert psi[0] == omega
        assert all(psi[k + 1] == table[psi[k]] for k in range(n))
        assert psi[n] == iterate(IterationSpec(omega, table.__getitem__), n)


class TestIso:
    def test_unary_binary(self):
        assert build_iso(UNARY, BINARY, 4).pairs == (
            ("", "0"), ("|", "1"), ("||", "10"), ("|||", "11"))

    def test_unary_decimal(self):
        assert build_iso(UNARY, DECIMAL, 3).pairs == (("", "0"), ("|", "1"), ("||", "2"))

    @pytest.mark.parametrize("model", [UNARY, BINARY, DECIMAL, LINEAR])
    def test_self_is_identity(self, model):
        assert all(a == b for a, b in build_iso(model, model, 4).pairs)

    def test_decimal_carries(self):
        pairs = build_iso(BINARY, DECIMAL, 120).pairs
        assert all(int(a, 2) == int(b) for a, b in pairs)

    def test_refuses_bad_models(self):
        with pytest.raises(AxiomsRefused) as info:
            build_iso(UNARY, CYCLE, 3)
        assert not info.value.report.d1_holds

    def test_fragment_too_short(self):
        with pytest.raises(ModelError):
            build_iso(LINEAR, UNARY, 10)


class TestFormat:
    def test_round_trip(self):
        for s in FIXTURES.values():
            assert load_model(dump_model(s)) == s

    def test_sample_files(self, samples_dir):
        for name in ("linear", "cycle", "nonstandard"):
            with open(f"{samples_dir}/{name}.model") as fh:
                assert load_model(fh.read()) == FIXTURES[name]

    @pytest.mark.parametrize("text", [
        "", "0 -> 1\nzero: 0", "zero: 0\n0 -> 1\n0 -> 2\nfrontier: 1,2",
        "zero: x-y", "zero: 0\n0 => 1", "zero: 0\n0 -> 1",
    ])
    def test_bad_files(self, text):
        with pytest.raises(ModelFormatError):
            load_model(text)
