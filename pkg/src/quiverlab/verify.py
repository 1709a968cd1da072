"""Verification suites: batteries of checks emitting one record per check."""

from __future__ import annotations

from .derived import enumerate_filtrations, filt_to_susp, susp_closure, susp_to_filt
from .quiver import Quiver, make_dynkin, positive_roots
from .specmap import chain, example_maps, fan, map_lattice, monotone_maps, phi_psi_roundtrip, point
from .subcat import nc_lattice
from .zlattice import (KoszulComplex, derived_hom_z, esigma_instance, koszul_homology_mod, lift_root,
                       orthoprop_records)

SUITES = ("orthoprop", "filtwide", "main", "wide-example", "koszul")


def _rec(suite, check, expected, actual, **extra):
    r = {"suite": suite, "check": check, "expected": expected, "actual": actual,
         "pass": expected == actual}
    r.update(extra)
    return r


def suite_orthoprop(q: Quiver, **_) -> list[dict]:
    out = []
    for r in orthoprop_records(q):
        r = dict(r)
        r["suite"] = "orthoprop"
        out.append(r)
    roots = positive_roots(q)
    lifts = [lift_root(q, d) for d in roots]
    outside = [n for n in range(-3, 5) if n not in (0, 1)]
    bad = [(list(roots[i]), list(roots[j]), n) for i, M in enumerate(lifts) for j, L in enumerate(lifts)
           for n in outside if derived_hom_z(M, L, n) != (0, [])]
    out.append(_rec("orthoprop", "derived-hom-window", [], bad, quiver=q.name))
    return out


def suite_filtwide(q: Quiver, window: int = 3, **_) -> list[dict]:
    L = nc_lattice(q)
    fs = enumerate_filtrations(L, window)
    bad_a = [f.to_json() for f in fs if susp_to_filt(filt_to_susp(f), L) != f]
    out = [_rec("filtwide", "round-trip-filt", [], bad_a, quiver=q.name, instances=len(fs))]
    n = len(L.table.catalog)
    gens = [(r, d) for r in range(n) for d in range(window)]
    seen, bad_b = set(), 0
    if len(gens) <= 12:
        for k in range(1 << len(gens)):
            g = [gens[i] for i in range(len(gens)) if k >> i & 1]
            S = susp_closure(q, g, (0, window - 1))
            if S in seen:
                continue
            seen.add(S)
            if filt_to_susp(susp_to_filt(S, L)) != S:
                bad_b += 1
        out.append(_rec("filtwide", "round-trip-susp", 0, bad_b, quiver=q.name, instances=len(seen)))
    return out


def suite_main(q: Quiver, **_) -> list[dict]:
    L = nc_lattice(q)
    out = []
    for P in (point(), chain(2), chain(3), fan(3)):
        maps = monotone_maps(P, L)
        ok = sum(phi_psi_roundtrip(m) for m in maps)
        out.append(_rec("main", f"phi-psi {P.name}", len(maps), ok, quiver=q.name))
    for k in (1, 2, 3):
        out.append(_rec("main", f"maps chain({k}) = multichains", len(enumerate_filtrations(L, k)),
                        len(monotone_maps(chain(k), L)), quiver=q.name))
    return out


def suite_wide_example(q: Quiver = None, **_) -> list[dict]:
    a2 = make_dynkin("A", 2)
    L = nc_lattice(a2)
    maps = example_maps(L)
    ML = map_lattice(maps)
    return [
        _rec("wide-example", "Wide(A2) nodes", 5, len(L)),
        _rec("wide-example", "Wide(A2) covers", 6, len(L.covers())),
        _rec("wide-example", "Hom(chain(2), Nc(A2)) nodes", 12, len(ML)),
        _rec("wide-example", "Hom(chain(2), Nc(A2)) covers", 18, len(ML.covers())),
        _rec("wide-example", "labels assigned", 12, len({m.note for m in maps if m.note})),
    ]


def suite_koszul(q: Quiver, **_) -> list[dict]:
    out = []
    for p in (2, 3, 5, 7):
        for n in range(1, 13):
            exp = {-1: 1, 0: 1} if n % p == 0 else {}
            got = koszul_homology_mod(KoszulComplex(n), p)
            out.append(_rec("koszul", f"K(({n})) mod {p}", _keys(exp), _keys(got)))
    roots = positive_roots(q)
    for p in (2, 3, 5):
        for qp in (0, p):
            for M in roots:
                for Lr in roots:
                    a, b = esigma_instance(q, p, qp, M, Lr)
                    out.append(_rec("koszul", f"esigma p={p} q'={qp} {M} {Lr}", b, a, quiver=q.name))
    return out


def _keys(d):
    return {str(k): v for k, v in sorted(d.items())}


RUNNERS = {
    "orthoprop": suite_orthoprop,
    "filtwide": suite_filtwide,
    "main": suite_main,
    "wide-example": suite_wide_example,
    "koszul": suite_koszul,
}


def run_suite(name: str, q: Quiver, window: int = 3) -> list[dict]:
    if name not in RUNNERS:
        raise KeyError(f"unknown suite {name!r}")
    return RUNNERS[name](q, window=window)
