from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverlab import reps
from quiverlab.quiver import euler_form, make_dynkin, positive_roots
from quiverlab.reps import (CharacteristicMismatch, NotARoot, catalog, direct_sum, ext_dim, ext_dim_direct,
                            hom_basis, hom_dim, hom_table, indecomposable_for_root, is_intertwiner)

A2 = make_dynkin("A", 2)


def _a2(p=2):
    P2, S1, P1 = catalog(A2, p)
    return P2, S1, P1


def test_a2_catalog_entries():
    P2, S1, P1 = _a2()
    assert P2.dims == (0, 1) and P2.maps == (((),),)
    assert P1.maps == (((1,),),)
    assert S1.dims == (1, 0)


def test_d4_highest_root_zero_one():
    X = indecomposable_for_root(make_dynkin("D", 4), (1, 1, 1, 2), 2)
    assert X.is_zero_one()
    assert all(len(m) == 2 and len(m[0]) == 1 for m in X.maps)
    assert hom_dim(X, X) == 1 and ext_dim_direct(X, X) == 0


def test_not_a_root():
    with pytest.raises(NotARoot):
        indecomposable_for_root(A2, (2, 1))


def test_hom_examples():
    P2, S1, P1 = _a2()
    assert hom_dim(P2, P1) == 1
    assert hom_dim(P1, P2) == 0
    assert ext_dim(S1, P2) == 1
    assert ext_dim(P2, S1) == 0
    for X in (P2, S1, P1):
        assert hom_dim(X, X) == 1 and ext_dim(X, X) == 0


def test_hom_basis_are_intertwiners():
    P2, S1, P1 = _a2(3)
    for X in (P2, S1, P1):
        for Y in (P2, S1, P1):
            for f in hom_basis(X, Y):
                assert is_intertwiner(f, X, Y)


def test_characteristic_mismatch():
    with pytest.raises(CharacteristicMismatch):
        hom_dim(catalog(A2, 2)[0], catalog(A2, 3)[0])


@pytest.mark.parametrize("t,n", [("A", 3), ("D", 4), ("D", 5), ("E", 6)])
def test_catalog_bricks_rigid(t, n):
    q = make_dynkin(t, n)
    for X in catalog(q, 3):
        assert hom_dim(X, X) == 1
        assert ext_dim_direct(X, X) == 0


@pytest.mark.parametrize("t,n", [("A", 3), ("A", 4), ("D", 4), ("D", 5), ("E", 6)])
def test_zero_one_normal_form(t, n):
    assert all(X.is_zero_one() for X in catalog(make_dynkin(t, n), 0))


def test_e7_fallback_recorded():
    q = make_dynkin("E", 7)
    cat = catalog(q, 0)
    odd = {X.dims for X in cat if not X.is_zero_one()}
    assert odd == {d for (qq, d) in reps.UNNORMALIZED if qq == q}
    assert len(odd) <= 2
    for X in cat:
        if X.dims in odd:
            assert hom_dim(X, X) == 1 and ext_dim_direct(X, X) == 0


@pytest.mark.parametrize("t,n,orient", [("A", 3, "+-"), ("D", 4, "-+-"), ("A", 4, "-+-")])
def test_euler_identity_and_direct_ext(t, n, orient):
    q = make_dynkin(t, n, orient)
    cat = catalog(q, 2)
    for X in cat:
        for Y in cat:
            h = hom_dim(X, Y)
            assert h - ext_dim_direct(X, Y) == euler_form(q, X.dims, Y.dims)


@pytest.mark.parametrize("t,n", [("A", 2), ("A", 3), ("D", 4)])
def test_field_independence(t, n):
    q = make_dynkin(t, n)
    t2, t3, t0 = (hom_table(q, c) for c in (2, 3, 0))
    assert t2.same_tables(t3) and t2.same_tables(t0)


def test_a2_table():
    t = hom_table(A2, 2)
    assert t.catalog == ((0, 1), (1, 0), (1, 1))
    assert t.hom == ((1, 0, 1), (0, 1, 0), (0, 1, 1))
    assert t.ext == ((0, 0, 0), (1, 0, 0), (0, 0, 0))


def test_cache_byte_identical(tmp_path):
    q = make_dynkin("A", 3, "-+")
    first = hom_table(q, 3, cache_dir=tmp_path)
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    raw = files[0].read_bytes()
    again = hom_table(q, 3, cache_dir=tmp_path)
    assert again == first
    assert raw == first.to_json().encode()
    other = hom_table(q, 2, cache_dir=tmp_path)
    assert len(list(tmp_path.iterdir())) == 2 and other.same_tables(first)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=3))
def test_hom_additive(idx):
    q = make_dynkin("A", 3, "-+")
    cat = catalog(q, 3)
    X = direct_sum([cat[i] for i in idx])
    for Z in cat:
        assert hom_dim(Z, X) == sum(hom_dim(Z, cat[i]) for i in idx)
