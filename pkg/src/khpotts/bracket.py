"""Bracket state sums: the A-bracket, the Khovanov q-bracket, the rho-bracket
and the Potts bracket in (S, v) with S**2 = Q, plus Jones normalization.

All four are sums over smoothing states of (site weight)**n_B times
(loop value)**loops, so each is assembled from one histogram of
(n_B, loop count) pairs. The loop counts come from the compiled kernel.
"""
from __future__ import annotations

import enum
from collections import Counter

import numpy as np

from . import config, kernels
from .diagram import LinkDiagram, _check_cap, enumerate_enhanced_states, writhe
from .poly import Laurent, substitute


class BracketFlavor(enum.Enum):
    A = "a"
    KHOVANOV_Q = "q"
    RHO = "rho"
    POTTS_Q = "potts"

    @property
    def variables(self) -> tuple:
        return {"a": ("A",), "q": ("q",), "rho": ("q", "rho"), "potts": ("S", "v")}[self.value]


def state_histogram(d: LinkDiagram, threads: int = 1, backend=None, cap: int | None = None) -> Counter:
    """Counter mapping (n_B, number of loops) to the number of smoothing states."""
    _check_cap(d, cap if cap is not None else config.cap("max_crossings"))
    c = d.n_crossings
    counts = kernels.loop_counts(d.indexed_tuples(), d.arc_count, c, d.free_loops,
                                 threads=threads, backend=backend)
    masks = np.arange(1 << c, dtype=np.uint64)
    n_b = np.bitwise_count(masks).astype(np.int64)
    pairs, freq = np.unique(np.stack([n_b, counts.astype(np.int64)]), axis=1, return_counts=True)
    return Counter({(int(i), int(l)): int(f) for (i, l), f in zip(pairs.T, freq)})


def _state_sum(hist: Counter, site: Laurent, loop: Laurent, base: Laurent) -> Laurent:
    site_pows: dict = {}
    loop_pows: dict = {}
    total = Laurent({}, base.variables)
    for (n_b, loops), count in sorted(hist.items()):
        if n_b not in site_pows:
            site_pows[n_b] = site ** n_b
        if loops not in loop_pows:
            loop_pows[loops] = loop ** loops
        total = total + base * site_pows[n_b] * loop_pows[loops] * count
    return total


_q = Laurent.var("q")
_qinv = Laurent.monomial({"q": -1})
_A = Laurent.var("A")


def khovanov_bracket(d: LinkDiagram, threads: int = 1, hist: Counter | None = None) -> Laurent:
    """sum over enhanced states of (-1)**n_B q**j, computed state by state."""
    hist = hist if hist is not None else state_histogram(d, threads)
    return _state_sum(hist, -_q, _q + _qinv, Laurent.const(1, ("q",)))


def khovanov_bracket_enhanced(d: LinkDiagram) -> Laurent:
    """Same value summed literally over enhanced states (slow oracle)."""
    exps: Counter = Counter()
    for s in enumerate_enhanced_states(d):
        exps[s.j] += -1 if s.n_B % 2 else 1
    return Laurent({(j,): c for j, c in exps.items()}, ("q",))


def a_bracket(d: LinkDiagram, threads: int = 1, hist: Counter | None = None) -> Laurent:
    """Unreduced bracket polynomial: a k-loop crossingless diagram gives (-A^2-A^-2)**k."""
    hist = hist if hist is not None else state_histogram(d, threads)
    delta = -(_A ** 2) - Laurent.monomial({"A": -2})
    c = d.n_crossings
    return _state_sum(hist, Laurent.monomial({"A": -2}), delta, Laurent.monomial({"A": c}))


def cross_check_brackets(d: LinkDiagram, threads: int = 1) -> bool:
    """A^{-c} <K> with A^2 -> -q^{-1} must reproduce the Khovanov bracket."""
    hist = state_histogram(d, threads)
    scaled = a_bracket(d, hist=hist) * Laurent.monomial({"A": -d.n_crossings})
    converted = substitute(scaled, "A", -_qinv, square=True)
    return converted == khovanov_bracket(d, hist=hist)


def rho_bracket(d: LinkDiagram, threads: int = 1, hist: Counter | None = None) -> Laurent:
    hist = hist if hist is not None else state_histogram(d, threads)
    rho = Laurent.var("rho")
    return _state_sum(hist, -(_q * rho), _q + _qinv, Laurent.const(1, ("q", "rho")))


def potts_bracket(d: LinkDiagram, threads: int = 1, hist: Counter | None = None) -> Laurent:
    """Sum over states of (S^-1 v)**n_B * S**loops, with S standing for Q^(1/2)."""
    hist = hist if hist is not None else state_histogram(d, threads)
    site = Laurent.monomial({"S": -1, "v": 1})
    return _state_sum(hist, site, Laurent.var("S"), Laurent.const(1, ("S", "v")))


def collapse_sqrt(p: Laurent, sqrt_var: str = "S", square_var: str = "Q") -> Laurent:
    """Rewrite even powers of ``S`` as powers of ``Q``; odd powers raise MalformedParity."""
    return substitute(p, sqrt_var, Laurent.var(square_var), square=True)


def jones(d: LinkDiagram, threads: int = 1) -> Laurent:
    """Writhe-normalized bracket (-A^3)^(-w) <K>, unreduced."""
    w = writhe(d)
    factor = Laurent.monomial({"A": -3 * w}, -1 if w % 2 else 1)
    return factor * a_bracket(d, threads)


def bracket(d: LinkDiagram, flavor, threads: int = 1) -> Laurent:
    flavor = BracketFlavor(flavor)
    fn = {
        BracketFlavor.A: a_bracket,
        BracketFlavor.KHOVANOV_Q: khovanov_bracket,
        BracketFlavor.RHO: rho_bracket,
        BracketFlavor.POTTS_Q: potts_bracket,
    }[flavor]
    return fn(d, threads)
