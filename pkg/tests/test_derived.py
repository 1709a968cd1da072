from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverlab.derived import (DObject, Filtration, WindowTooSmall, aisle_perp, enumerate_filtrations,
                               filt_to_susp, filtration_lattice, hom_degrees, hom_shifted, is_suspended_chain,
                               standard_aisle, susp_closure, susp_to_filt)
from quiverlab.quiver import make_dynkin
from quiverlab.reps import hom_table
from quiverlab.subcat import Subcat, closures, nc_lattice

from oracles import multichains

A2 = make_dynkin("A", 2)
P2, S1, P1 = 0, 1, 2
FULL = Subcat.full(3)


def test_hom_shifted_examples():
    t = hom_table(A2, 2)
    assert hom_shifted(P2, 0, P1, 0, t) == 1
    assert hom_shifted(S1, 0, P2, 1, t) == 1
    assert hom_shifted(P2, 0, P1, 5, t) == 0
    for m in range(3):
        for l in range(3):
            for a in range(-2, 3):
                for b in range(-2, 4):
                    if b - a not in (0, 1):
                        assert hom_shifted(m, a, l, b, t) == 0
                    assert hom_degrees(m, a, l, b, t) == hom_shifted(m, -a, l, -b, t)


def test_dobject():
    X = DObject.of({0: [P1], 1: [S1, P2]})
    assert X.cohomology(1) == (P2, S1)
    assert X.shift(1).cohomology(0) == (P2, S1)
    assert DObject.of({}).is_zero()


def test_susp_closure_examples():
    S = susp_closure(A2, [(S1, 0)], (-3, 3))
    assert S.level(0) == Subcat.of(3, [S1]) and S.level(-7) == Subcat.of(3, [S1])
    assert S.level(1) == Subcat(3, 0)
    std = susp_closure(A2, [(r, 0) for r in range(3)], (-3, 3))
    assert std.level(0) == FULL and std.level(-2) == FULL and std.level(1) == Subcat(3, 0)
    zero = susp_closure(A2, [], (-3, 3))
    assert all(zero.level(n) == Subcat(3, 0) for n in range(-5, 5))
    assert std.contains(DObject.of({0: [P1], -4: [S1]}))
    assert not std.contains(DObject.of({1: [P1]}))


def test_window_errors():
    with pytest.raises(WindowTooSmall):
        susp_closure(A2, [(S1, 4)], (0, 2))


def test_susp_to_filt_examples():
    L = nc_lattice(A2)
    std = susp_closure(A2, [(r, 0) for r in range(3)], (-3, 3))
    F = susp_to_filt(std, L)
    assert F == standard_aisle(A2) and F.jumps == ((1, L.bottom),)
    G = susp_to_filt(susp_closure(A2, [(S1, 0)], (-3, 3)), L)
    assert L.subcat(G.low) == Subcat.of(3, [S1]) and G.jumps == ((1, L.bottom),)
    zero = susp_to_filt(susp_closure(A2, [], (0, 0)), L)
    assert zero.low == L.bottom and zero.jumps == ()


def test_filt_to_susp_examples():
    L = nc_lattice(A2)
    assert filt_to_susp(standard_aisle(A2)).level(0) == FULL
    assert filt_to_susp(Filtration(L, L.bottom)).level(3) == Subcat(3, 0)
    w1 = L.elements.index(Subcat.of(3, [P1]))
    F = Filtration(L, L.top, ((1, w1), (2, L.bottom)))
    assert filt_to_susp(F).level(1) == Subcat.of(3, [P1, S1])


def test_filtration_counts_against_brute_force():
    L = nc_lattice(A2)
    for w, n in ((1, 5), (2, 12), (3, 22)):
        assert len(enumerate_filtrations(L, w)) == n
        assert n == len(multichains(len(L), L.leq, w))
    assert len(filtration_lattice(L, 2)) == 12


def test_filtration_validation():
    L = nc_lattice(A2)
    with pytest.raises(ValueError):
        Filtration(L, L.bottom, ((1, L.top),))
    with pytest.raises(ValueError):
        Filtration(L, L.top, ((1, L.top),))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 13), min_size=1, max_size=6), st.integers(-4, 4))
def test_jump_encoding_round_trip(raw, start):
    L = nc_lattice(make_dynkin("A", 3))
    # force a non-increasing chain by taking running meets
    vals = [raw[0]]
    for v in raw[1:]:
        vals.append(L.meet(vals[-1], v))
    F = Filtration.from_values(L, start, vals)
    assert F.dense(start, start + len(vals) - 1) == tuple(vals)
    assert F.value(start - 10) == vals[0] and F.value(start + 50) == vals[-1]
    assert Filtration.from_json(F.to_json(), L) == F
    assert all(a != b for (_, a), (_, b) in zip(((0, F.low),) + F.jumps, F.jumps))


def test_round_trip_filtrations():
    for q in (A2, make_dynkin("A", 3)):
        L = nc_lattice(q)
        for F in enumerate_filtrations(L, 3 if q is A2 else 2):
            assert susp_to_filt(filt_to_susp(F), L) == F


def test_round_trip_suspended():
    L = nc_lattice(A2)
    cl = closures(A2)
    gens = [(r, d) for r in range(3) for d in range(3)]
    seen = set()
    for k in range(1 << 9):
        S = susp_closure(A2, [gens[i] for i in range(9) if k >> i & 1], (0, 2))
        if S in seen:
            continue
        seen.add(S)
        assert filt_to_susp(susp_to_filt(S, L)) == S
        assert is_suspended_chain(cl, S)
        lo, hi = S.span()
        for n in range(lo - 1, hi + 1):
            assert cl.is_ice(S.level(n))
            assert S.level(n + 1).issubset(S.level(n))


def test_aisle_perp():
    L = nc_lattice(A2)
    std = aisle_perp(standard_aisle(A2), (-2, 2))
    assert std == {(r, b) for r in range(3) for b in (1, 2)}
    assert aisle_perp(Filtration(L, L.bottom), (-2, 2)) == {(r, b) for r in range(3) for b in range(-2, 3)}
    assert aisle_perp(Filtration(L, L.top), (-2, 2)) == set()
