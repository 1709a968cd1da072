from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverlab import linalg
from quiverlab.morphisms import (NotAnIntertwiner, batched_rank, calculus, decompose, extension_middles,
                                 map_kernel_cokernel, multisets, projective_points)
from quiverlab.quiver import make_dynkin
from quiverlab.reps import Representation, catalog, direct_sum, hom_dim

A2 = make_dynkin("A", 2)
P2, S1, P1 = 0, 1, 2


def test_kernel_cokernel_examples():
    # P2 -> P1 is the identity at vertex 2
    assert map_kernel_cokernel(A2, (P2,), (P1,), [np.zeros((0, 0)), np.array([[1]])]) == ((), (P2,), (S1,))
    assert map_kernel_cokernel(A2, (P1,), (P1,), [np.array([[1]]), np.array([[1]])]) == ((), (P1,), ())
    assert map_kernel_cokernel(A2, (P1,), (S1,), [np.array([[1]]), np.zeros((0, 1))]) == ((P2,), (S1,), ())


def test_non_intertwiner_rejected():
    with pytest.raises(NotAnIntertwiner):
        map_kernel_cokernel(A2, (P1,), (P1,), [np.array([[1]]), np.array([[0]])])


def test_extension_examples():
    assert extension_middles(A2, (S1,), (P2,)) == {(P2, S1), (P1,)}
    assert extension_middles(A2, (P2,), (S1,)) == {(P2, S1)}
    assert extension_middles(A2, (), (P1,)) == {(P1,)}


def _explicit_cokernel(q, B, X, f, p):
    """Quotient representation of an injective map, built vertexwise."""
    dims, maps, comps = [], [], []
    for v in range(q.rank):
        fv = f[v] % p
        dimx = X.dims[v]
        left = linalg.left_nullspace(fv.tolist(), p, dimx) if fv.size else linalg.identity(dimx)
        comps.append(np.array(left, dtype=np.int64).reshape(len(left), dimx))
        dims.append(len(left))
    for a, (s, t) in enumerate(q.arrows):
        xa = np.array(X.maps[a], dtype=np.int64).reshape(X.dims[t - 1], X.dims[s - 1])
        # quotient map: solve W_t xa = m W_s on a section of W_s
        ws, wt = comps[s - 1], comps[t - 1]
        img = (wt @ xa) % p
        if ws.shape[0] == 0:
            maps.append(np.zeros((dims[t - 1], 0), dtype=np.int64))
            continue
        # ws has full row rank; pick columns forming an invertible block
        red, piv = linalg.rref(ws.tolist(), p)
        sub = ws[:, piv] % p
        inv = _inv_mod(sub, p)
        maps.append((img[:, piv] @ inv) % p)
    return Representation(q, tuple(dims), tuple(tuple(tuple(int(x) for x in r) for r in m) for m in maps), p)


def _inv_mod(m, p):
    n = m.shape[0]
    aug = np.concatenate([m % p, np.eye(n, dtype=np.int64)], axis=1).tolist()
    red, _ = linalg.rref(aug, p)
    return np.array([row[n:] for row in red], dtype=np.int64)


def candidate_middles(q, A, B, p=3):
    """The search described for extension middles: candidates X with the
    right dimension vector admitting an injection B -> X with cokernel A."""
    calc = calculus(q, p)
    cat = catalog(q, p)
    target = tuple(x + y for x, y in zip(calc.dims(A), calc.dims(B)))
    Arep = direct_sum([cat[i] for i in A])
    out = set()
    for k in range(1, len(A) + len(B) + 1):
        for X in itertools.combinations_with_replacement(range(calc.n), k):
            if calc.dims(X) != target:
                continue
            basis = calc.sum_basis(tuple(B), X)
            Xrep = direct_sum([cat[i] for i in X])
            h = basis[0].shape[0]
            for c in projective_points(h, p):
                f = [np.tensordot(c, basis[v], axes=1) % p for v in range(q.rank)]
                if any(linalg.rank_mod_p(f[v], p) < calc.dims(B)[v] for v in range(q.rank) if f[v].size):
                    continue
                C = _explicit_cokernel(q, B, Xrep, f, p)
                if all(hom_dim(Z, C) == hom_dim(Z, Arep) for Z in cat):
                    out.add(X)
                    break
    return out


@pytest.mark.parametrize("t,n,orient", [("A", 2, "+"), ("A", 3, "+-"), ("A", 3, "++")])
def test_extension_middles_match_candidate_search(t, n, orient):
    q = make_dynkin(t, n, orient)
    calc = calculus(q, 3)
    ms = list(multisets(range(calc.n), 1)) + [(0, 1)]
    for A in ms:
        for B in ms:
            assert calc.extension_middles(A, B) == candidate_middles(q, A, B), (A, B)


def test_ext_middles_split_iff_ext_zero():
    q = make_dynkin("A", 3, "+-")
    calc = calculus(q, 3)
    for a in range(calc.n):
        for b in range(calc.n):
            mids = calc.extension_middles((a,), (b,))
            assert tuple(sorted((a, b))) in mids
            assert (len(mids) >= 2) == bool(calc.E[a, b])


@pytest.mark.parametrize("t,n", [("A", 3), ("D", 4)])
def test_dimension_bookkeeping(t, n):
    q = make_dynkin(t, n)
    calc = calculus(q, 3)
    ms = list(multisets(range(calc.n), 2))[:40]
    for X in ms:
        for Y in ms[:15]:
            for k, i, c in calc.outcomes(X, Y, image=True):
                dk, di, dc = calc.dims(k), calc.dims(i), calc.dims(c)
                assert tuple(a + b for a, b in zip(dk, di)) == calc.dims(X)
                assert tuple(a + b for a, b in zip(di, dc)) == calc.dims(Y)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 11), min_size=1, max_size=3))
def test_decompose_direct_sum(idx):
    q = make_dynkin("D", 4)
    cat = catalog(q, 3)
    X = direct_sum([cat[i] for i in idx])
    assert decompose(X) == tuple(sorted(idx))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(1, 5), st.integers(1, 5), st.sampled_from([2, 3, 5]), st.randoms())
def test_batched_rank_matches_single(m, r, c, p, rnd):
    stack = np.array([[[rnd.randrange(p) for _ in range(c)] for _ in range(r)] for _ in range(m)])
    got = batched_rank(stack, p)
    assert list(got) == [linalg.rank_mod_p(a, p) for a in stack]


def test_projective_points_count():
    assert projective_points(3, 3).shape == (13, 3)
    assert projective_points(0, 3).shape == (0, 0)
