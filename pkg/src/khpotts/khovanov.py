"""Khovanov chain complex of a link diagram, and the de Rham-style DR(K) complex.

Basis elements are ``(choices, labels)`` pairs: a 0/1 smoothing vector and a
+1/-1 label per loop (+1 is the algebra unit 1, -1 is X). The partial
differential at an A-site multiplies labels when two loops merge and
comultiplies when one loop splits, in k[X]/(X^2).

Integral signs: a state whose B-sites are i_1 < ... < i_k is read as
s dx_{i_1} ^ ... ^ dx_{i_k}; the partial at site t contributes
dx_t ^ dx_{i_1} ^ ..., i.e. the sign (-1)^#{i_m < t}.
"""
from __future__ import annotations

import itertools

from . import config
from .diagram import LinkDiagram, Merge, _check_cap, iter_states, resmooth
from .homology import GF2, BigradedComplex, HomologySummary, SparseMatrix, homology, normalize_ring


def _j(element) -> int:
    choices, labels = element
    return sum(choices) + sum(labels)


def _partials(d: LinkDiagram):
    """For every smoothing state and A-site: (new choices, loop map data)."""
    states = {s.choices: s for s in iter_states(d)}
    table = {}
    for choices, s in states.items():
        for site, bit in enumerate(choices):
            if bit:
                continue
            new, tag = resmooth(d, s, site)
            table[(choices, site)] = (new, tag)
    return states, table


def partial(element, site: int, table) -> list:
    """Terms (coefficient, element) of the unsigned partial differential at ``site``."""
    choices, labels = element
    if choices[site]:
        return []
    new, tag = table[(choices, site)]
    base = [0] * new.n_loops
    for old, nw in tag.correspondence.items():
        base[nw] = labels[old]
    if isinstance(tag, Merge):
        a, b = tag.sources
        la, lb = labels[a], labels[b]
        if la == -1 and lb == -1:
            return []
        base[tag.target] = -1 if (la == -1 or lb == -1) else 1
        return [(1, (new.choices, tuple(base)))]
    t1, t2 = tag.targets
    if labels[tag.source] == -1:
        base[t1] = base[t2] = -1
        return [(1, (new.choices, tuple(base)))]
    out = []
    for x, y in ((1, -1), (-1, 1)):
        lab = list(base)
        lab[t1], lab[t2] = x, y
        out.append((1, (new.choices, tuple(lab))))
    return out


def _wedge_sign(site: int, wedge) -> int:
    """Sign of dx_site ^ dx_wedge after sorting, 0 when site is already in wedge."""
    if site in wedge:
        return 0
    return -1 if sum(1 for i in wedge if i < site) % 2 else 1


def build_complex(d: LinkDiagram, ring="Z", cap: int | None = None) -> BigradedComplex:
    ring = normalize_ring(ring)
    _check_cap(d, cap if cap is not None else config.cap("max_homology_crossings"))
    states, table = _partials(d)
    bases: dict = {}
    for choices in sorted(states):
        s = states[choices]
        for labels in itertools.product((1, -1), repeat=s.n_loops):
            el = (choices, labels)
            bases.setdefault((sum(choices), _j(el)), []).append(el)
    index = {key: {el: n for n, el in enumerate(b)} for key, b in bases.items()}
    differentials = {}
    for (i, j), basis in bases.items():
        target = index.get((i + 1, j))
        m = SparseMatrix(len(bases.get((i + 1, j), ())), len(basis))
        for col, el in enumerate(basis):
            choices = el[0]
            b_sites = [k for k, bit in enumerate(choices) if bit]
            for site, bit in enumerate(choices):
                if bit:
                    continue
                sign = 1 if ring == GF2 else _wedge_sign(site, b_sites)
                for coeff, out in partial(el, site, table):
                    if _j(out) != j:
                        raise AssertionError(f"differential changed j: {el} -> {out}")
                    m.add(target[out], col, sign * coeff)
        if ring == GF2:
            m = m.mod2()
        if m.n_rows:
            differentials[(i, j)] = m
    return BigradedComplex(ring, bases, differentials)


def khovanov_homology(d: LinkDiagram, ring="Z") -> HomologySummary:
    return homology(build_complex(d, ring))


def orientation_shift(d: LinkDiagram) -> tuple:
    """(homological, quantum) shift (-n_-, n_+ - 2 n_-) making homology an invariant."""
    return -d.n_negative, d.n_positive - 2 * d.n_negative


def shifted_homology(d: LinkDiagram, ring="Z") -> HomologySummary:
    di, dj = orientation_shift(d)
    return khovanov_homology(d, ring).shifted(di, dj)


def build_de_rham_complex(d: LinkDiagram, ring="Z", cap: int | None = None) -> BigradedComplex:
    """DR(K): basis s dx_I over all enhanced states s and all crossing subsets I.

    Graded by (k, j) = (|I|, j(s)). Elements are ``((choices, labels), I)``.
    """
    ring = normalize_ring(ring)
    _check_cap(d, cap if cap is not None else config.cap("max_dr_crossings"))
    states, table = _partials(d)
    c = d.n_crossings
    subsets = [tuple(I) for k in range(c + 1) for I in itertools.combinations(range(c), k)]
    bases: dict = {}
    for choices in sorted(states):
        s = states[choices]
        for labels in itertools.product((1, -1), repeat=s.n_loops):
            el = (choices, labels)
            for I in subsets:
                bases.setdefault((len(I), _j(el)), []).append((el, I))
    index = {key: {el: n for n, el in enumerate(b)} for key, b in bases.items()}
    differentials = {}
    for (k, j), basis in bases.items():
        target = index.get((k + 1, j))
        m = SparseMatrix(len(bases.get((k + 1, j), ())), len(basis))
        for col, (el, I) in enumerate(basis):
            for site in range(c):
                sign = _wedge_sign(site, I)
                if not sign or el[0][site]:
                    continue
                J = tuple(sorted(I + (site,)))
                if ring == GF2:
                    sign = 1
                for coeff, out in partial(el, site, table):
                    m.add(target[(out, J)], col, sign * coeff)
        if ring == GF2:
            m = m.mod2()
        if m.n_rows:
            differentials[(k, j)] = m
    return BigradedComplex(ring, bases, differentials)


def de_rham_grading(element) -> int:
    return _j(element[0])


khovanov_grading = _j
