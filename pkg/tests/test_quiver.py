from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverlab.quiver import (IllegalType, Quiver, all_dynkin_orientations, coxeter_number, euler_form,
                              exponents, make_dynkin, noncrossing_count, parse_type, positive_roots,
                              root_count_formula, tits_form)

from oracles import brute_roots, reflection_roots

TYPES = [("A", 1), ("A", 2), ("A", 3), ("A", 5), ("D", 4), ("D", 5), ("E", 6), ("E", 7)]


def test_make_dynkin_examples():
    q = make_dynkin("A", 2, ["→"])
    assert q.vertices == (1, 2) and q.arrows == ((1, 2),)
    assert make_dynkin("A", 3).arrows == ((1, 2), (2, 3))
    with pytest.raises(IllegalType):
        make_dynkin("E", 9)
    with pytest.raises(IllegalType):
        make_dynkin("D", 3)
    with pytest.raises(IllegalType):
        make_dynkin("A", 0)
    with pytest.raises(ValueError):
        make_dynkin("A", 3, "+")


def test_quiver_rejects_wrong_graph():
    with pytest.raises(IllegalType):
        Quiver("A", 3, ((1, 2), (1, 3)))
    with pytest.raises(IllegalType):
        Quiver("A", 2, ((1, 2), (2, 1)))


def test_json_round_trip():
    q = make_dynkin("D", 4, "+-+")
    assert Quiver.from_json(q.to_json()) == q
    assert make_dynkin("A", 3).to_json() == '{"type": "A", "rank": 3, "arrows": [[1, 2], [2, 3]]}'


def test_parse_type():
    assert parse_type("d4") == ("D", 4)
    with pytest.raises(IllegalType):
        parse_type("X")


@pytest.mark.parametrize("t,n", TYPES)
def test_roots_match_oracles(t, n):
    q = make_dynkin(t, n)
    roots = positive_roots(q)
    assert roots == brute_roots(t, n)
    assert roots == reflection_roots(t, n)
    assert len(roots) == root_count_formula(t, n)


def test_a2_roots_and_order():
    assert positive_roots(make_dynkin("A", 2)) == [(0, 1), (1, 0), (1, 1)]


def test_d4_highest_root():
    assert positive_roots(make_dynkin("D", 4))[-1] == (1, 1, 1, 2)


@pytest.mark.parametrize("t,n", [("A", 3), ("D", 4)])
def test_roots_orientation_free(t, n):
    ref = positive_roots(make_dynkin(t, n))
    for q in all_dynkin_orientations(t, n):
        assert positive_roots(q) == ref


def test_euler_form_examples():
    q = make_dynkin("A", 2)
    assert euler_form(q, (1, 0), (0, 1)) == -1
    assert euler_form(q, (1, 1), (0, 0)) == 0
    assert euler_form(q, (1, 1), (1, 1)) == 1
    with pytest.raises(ValueError):
        euler_form(q, (1,), (1, 0))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=4, max_size=4), st.sampled_from(["+++", "-+-", "--+"]))
def test_root_iff_tits_one(d, orient):
    q = make_dynkin("D", 4, orient)
    d = tuple(d)
    assert (d in positive_roots(q)) == (tits_form(q, d) == 1 and any(d))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_euler_bilinear(d, e, f):
    q = make_dynkin("A", 3, "+-")
    s = [x + y for x, y in zip(d, e)]
    assert euler_form(q, s, f) == euler_form(q, d, f) + euler_form(q, e, f)


@pytest.mark.parametrize("t,n,h,exps,nc", [
    ("A", 2, 3, [1, 2], 5), ("A", 3, 4, [1, 2, 3], 14), ("D", 4, 6, [1, 3, 3, 5], 50),
    ("D", 5, 8, [1, 3, 4, 5, 7], 182), ("E", 6, 12, [1, 4, 5, 7, 8, 11], 833),
])
def test_coxeter_data(t, n, h, exps, nc):
    q = make_dynkin(t, n)
    assert coxeter_number(q) == h
    assert exponents(q) == exps
    assert noncrossing_count(q) == nc
