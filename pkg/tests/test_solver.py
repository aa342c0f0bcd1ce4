from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zassenhaus import constraints as cs
from zassenhaus import groups, library, solver
from zassenhaus.characters import help_characters
from zassenhaus.constraints import EQ, GE, INT, ConstraintSystem
from zassenhaus.solver import EngineMismatch, SearchBudgetExceeded


def system(variables, cons, n=None):
    return ConstraintSystem(tuple(variables), list(cons), nclasses=n or (max(variables, default=-1) + 1))


def help_system(G, m, chain):
    cd = groups.conjugacy_data(G)
    vs = cs.var_layout(cd, m)
    cons = [cs.augmentation_one(vs)]
    for chi in help_characters(G):
        cons += cs.multiplicity_constraints(chi, chain, vs)
    return system(vs, cons, len(cd))


def test_propagation_examples():
    box = solver.propagate_bounds(system([0], [cs.augmentation_one([0])]))
    assert (box.lo, box.hi, box.exhaustive) == ([1], [1], True)
    two = system([0, 1], [cs.augmentation_one([0, 1]),
                          cs.make_constraint({0: 1}, 0, GE, "a"), cs.make_constraint({1: 1}, 0, GE, "b")])
    box = solver.propagate_bounds(two)
    assert (box.lo, box.hi, box.exhaustive, box.volume) == ([0, 0], [1, 1], True, 4)


def test_fallback_box_clears_exhaustive_flag():
    loose = system([0, 1], [cs.augmentation_one([0, 1])])
    box = solver.propagate_bounds(loose, box_bound=4)
    assert not box.exhaustive and box.clamped == [0, 1]
    assert box.lo == [-3, -3] and box.hi == [4, 4]
    sols = solver.solve(loose, box_bound=4)
    assert not sols.exhaustive
    assert sols.solutions == [(k, 1 - k) for k in range(-3, 5)]


def test_infeasible_box():
    bad = system([0], [cs.augmentation_one([0]), cs.make_constraint({0: -1}, 0, GE, "x<=0")])
    assert solver.propagate_bounds(bad).empty
    for engine in ("bnb", "naive", "both"):
        got = solver.solve(bad, engine)
        assert got.solutions == [] and got.exhaustive
    # no variables at all: augmentation one cannot hold
    assert solver.solve(system([], [cs.augmentation_one([])], 3)).solutions == []


def test_s3_examples():
    G = library.symmetric3()
    cd = groups.conjugacy_data(G)
    t, c = cd.rep_order.index(2), cd.rep_order.index(3)
    two = help_system(G, 2, cs.trivial_chain(G, cd.classes[t][0]))
    assert solver.propagate_bounds(two).exhaustive
    three = help_system(G, 3, cs.trivial_chain(G, cd.classes[c][0]))
    assert solver.propagate_bounds(three).exhaustive
    six = help_system(G, 6, cs.PAChain(6, ((2, cs.indicator(3, c)), (3, cs.indicator(3, t)),
                                           (6, cs.indicator(3, 0)))))
    for engine in ("bnb", "naive", "both"):
        assert solver.solve(two, engine).solutions == [(1,)]
        assert solver.solve(three, engine).solutions == [(1,)]
        assert solver.solve(six, engine).solutions == []


def test_integrality_rows():
    half = system([0], [cs.make_constraint({0: Fraction(1, 2)}, 0, INT, "x/2 integral"),
                        cs.make_constraint({0: 1}, 3, GE, ""), cs.make_constraint({0: -1}, 3, GE, "")])
    assert solver.solve(half, "both").solutions == [(-2,), (0,), (2,)]


def test_budgets():
    wide = system([0, 1, 2], [cs.augmentation_one([0, 1, 2])])
    with pytest.raises(SearchBudgetExceeded):
        solver.enumerate_naive(wide, box_bound=50, budget=1000)
    with pytest.raises(SearchBudgetExceeded):
        solver.enumerate_bnb(wide, box_bound=50, node_budget=100)
    huge = system([0], [cs.make_constraint({0: 1 << 41}, 0, GE, "")])
    with pytest.raises(OverflowError):
        solver.solve(huge)
    with pytest.raises(ValueError):
        solver.solve(wide, engine="simplex")


def test_engine_mismatch_is_reported(monkeypatch):
    sys1 = system([0], [cs.augmentation_one([0])])
    real = solver.enumerate_naive

    def broken(*a, **k):
        out = real(*a, **k)
        out.solutions = []
        return out

    monkeypatch.setattr(solver, "enumerate_naive", broken)
    with pytest.raises(EngineMismatch):
        solver.solve(sys1, "both")


def test_exact_recheck_rejects_bad_points():
    sys1 = system([0], [cs.augmentation_one([0])])
    with pytest.raises(AssertionError):
        solver._finish(sys1, [(2,)], True, "test", 0, solver.propagate_bounds(sys1))


@st.composite
def small_system(draw):
    nv = draw(st.integers(1, 3))
    vs = list(range(nv))
    cons = [cs.augmentation_one(vs)]
    for i in vs:
        cons.append(cs.make_constraint({i: 1}, 3, GE, ""))
        cons.append(cs.make_constraint({i: -1}, 3, GE, ""))
    coef = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    for _ in range(draw(st.integers(0, 4))):
        rel = draw(st.sampled_from([GE, GE, INT, EQ]))
        co = {i: draw(coef) for i in vs}
        cons.append(cs.make_constraint(co, draw(coef), rel, ""))
    return system(vs, cons)


@settings(max_examples=120, deadline=None)
@given(small_system())
def test_engines_agree_with_brute_force(sys1):
    ref = solver.brute_force(sys1, 3)
    a = solver.enumerate_bnb(sys1)
    b = solver.enumerate_naive(sys1)
    assert a.exhaustive and b.exhaustive
    assert a.solutions == b.solutions == ref


def test_engines_agree_on_corpus_systems(corpus):
    for name in ("D8", "Q8", "C4:C4", "D12"):
        G = corpus[name]
        cd = groups.conjugacy_data(G)
        for C in range(1, len(cd)):
            sys1 = help_system(G, cd.rep_order[C], cs.trivial_chain(G, cd.classes[C][0]))
            a, b = solver.enumerate_bnb(sys1), solver.enumerate_naive(sys1)
            assert a.solutions == b.solutions
            assert tuple(int(C == v) for v in sys1.variables) in a.solutions
