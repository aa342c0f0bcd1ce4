from __future__ import annotations

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zassenhaus.cyclotomic import (ONE, ZERO, CycNumber, cyclotomic_poly, dense_trace, mobius,
                                   parse_cyc, ramanujan_sum, root_of_unity, totient, trace_in,
                                   trace_to_Q)


@st.composite
def cyc(draw, conductors=(1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 20, 24)):
    n = draw(st.sampled_from(conductors))
    dense = draw(st.lists(st.integers(-4, 4), min_size=n, max_size=n))
    return CycNumber.from_dense(n, dense), n, dense


def close(a, b, tol=1e-9):
    return abs(complex(a) - complex(b)) < tol


def test_number_theory():
    assert [totient(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    # c_n(k) is the sum of primitive n-th roots raised to k
    for n in range(1, 25):
        for k in range(n):
            direct = sum(cmath.exp(2j * math.pi * a * k / n) for a in range(1, n + 1)
                         if math.gcd(a, n) == 1)
            assert abs(direct - ramanujan_sum(n, k)) < 1e-9
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_canonical_forms():
    # z4^2 = -1, z6^3 = -1, z3 + z3^2 = -1
    assert root_of_unity(4, 2) == CycNumber.rational(-1)
    assert root_of_unity(6, 3) == -ONE
    assert root_of_unity(3, 1) + root_of_unity(3, 2) == -ONE
    # z8 + z8^-1 = sqrt 2 is real but irrational; it lives at conductor 8
    s2 = root_of_unity(8, 1) + root_of_unity(8, 7)
    assert s2.conductor == 8 and close(s2, math.sqrt(2))
    assert s2 * s2 == CycNumber.rational(2)
    # z6 = -z3^2 descends to conductor 3
    assert root_of_unity(6, 1).conductor == 3
    assert sum((root_of_unity(12, k) for k in range(12)), ZERO) == ZERO


def test_traces():
    assert trace_to_Q(root_of_unity(5)) == -1
    assert trace_to_Q(root_of_unity(4)) == 0
    assert trace_to_Q(CycNumber.rational(Fraction(3, 2))) == Fraction(3, 2)
    # absolute trace over a bigger field scales by the degree
    z3 = root_of_unity(3)
    assert trace_in(z3, 3) == -1
    assert trace_in(z3, 12) == -2
    with pytest.raises(ValueError):
        trace_in(z3, 8)


def test_parse_cyc():
    assert parse_cyc(3) == CycNumber.rational(3)
    assert parse_cyc({"n": 4, "coeffs": [[0, 1], [1, 2]]}) == root_of_unity(4).scale(Fraction(1, 2))
    for bad in ({"n": 0, "coeffs": []}, {"coeffs": [[1, 1]]}, {"n": 3, "coeffs": [[1, 0]]}, True):
        with pytest.raises(ValueError):
            parse_cyc(bad)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        CycNumber(5, [1, 2])
    with pytest.raises(ValueError):
        root_of_unity(4).galois(2)
    with pytest.raises(ValueError):
        root_of_unity(6).to_fraction()
    with pytest.raises(ValueError):
        root_of_unity(5).lift(12)


@settings(max_examples=150, deadline=None)
@given(cyc())
def test_canonical_form_keeps_the_value(x):
    v, n, dense = x
    direct = sum(c * cmath.exp(2j * math.pi * k / n) for k, c in enumerate(dense))
    assert close(v, direct)
    assert n % v.conductor == 0
    # canonical form is unique: lifting and re-reading is a fixed point
    assert CycNumber.from_dense(n, v.lift(n)) == v
    assert hash(CycNumber.from_dense(n, v.lift(n))) == hash(v)


@settings(max_examples=100, deadline=None)
@given(cyc(), cyc())
def test_ring_operations_match_complex_embedding(a, b):
    x, y = a[0], b[0]
    assert close(x + y, complex(x) + complex(y))
    assert close(x - y, complex(x) - complex(y))
    assert close(x * y, complex(x) * complex(y), 1e-7)
    assert x * y == y * x
    assert (x + y) - y == x


@settings(max_examples=100, deadline=None)
@given(cyc(), st.integers(1, 60))
def test_galois_is_a_ring_automorphism(a, j):
    x = a[0]
    n = x.conductor
    j = next(k for k in range(j, j + 2 * n + 2) if math.gcd(k, n) == 1)
    y = x * x + ONE
    assert y.galois(j) == x.galois(j) * x.galois(j) + ONE
    assert close(x.conjugate(), complex(x).conjugate())


@settings(max_examples=100, deadline=None)
@given(cyc())
def test_trace_routes_agree(a):
    x, n, dense = a
    # Galois sum at the canonical conductor vs Ramanujan sums at any multiple
    t = trace_to_Q(x)
    assert trace_in(x, n) == t * (totient(n) // totient(x.conductor))
    assert dense_trace(dense, n) == trace_in(x, n)
    assert t.denominator == 1
    embedded = sum(complex(x.galois(j)) for j in range(1, x.conductor + 1)
                   if math.gcd(j, x.conductor) == 1)
    assert abs(embedded - float(t)) < 1e-7
