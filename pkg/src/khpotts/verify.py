"""Cross-verification driver: every identity suite, one pass/fail per criterion."""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field

from . import fixtures
from .bracket import cross_check_brackets, jones, khovanov_bracket, rho_bracket, state_histogram
from .diagram import iter_states
from .graphs import (SpanningSubgraph, dichromatic_dc, dichromatic_subgraph_sum, dichromatic_via_bracket,
                     medial_link, random_multigraph, random_planar_graph, state_loop_count_formula)
from .homology import GF2, Z, graded_euler_characteristic, homology
from .khovanov import _j, build_complex, build_de_rham_complex, de_rham_grading, shifted_homology
from .numeric import close
from .poly import Laurent, evaluate, substitute
from .potts import (PottsParameters, khovanov_euler_series, partition_spin_sum, partition_via_dichromatic,
                    potts_via_khovanov, rho_one_points)
from .quantum import bracket_amplitude, hadamard_test_sim, potts_amplitude, potts_quantum_check
from .stosic import build_stosic_complex, literal_grading_violations, stosic_euler_identity, stosic_grading

HOPF_CHI = Laurent({(-2,): 1, (0,): 1, (2,): 1, (4,): 1}, ("q",))
NUMERIC_TOL = 1e-9
AMPLITUDE_TOL = 1e-12

TITLES = {
    1: "Euler characteristic of Khovanov homology equals the Khovanov bracket",
    2: "differentials square to zero and preserve j",
    3: "bracket conversions",
    4: "Jones polynomial and shifted homology invariant under Reidemeister moves",
    5: "dichromatic polynomial three ways and the loop-count formula",
    6: "Potts spin sum equals the dichromatic evaluation",
    7: "rho = 1 special points",
    8: "Khovanov-valued Potts function at rho = 1",
    9: "graph homology Euler identity with corrected grading",
    10: "quantum amplitudes and Hadamard test",
}


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checks > 0 and not self.failures

    def check(self, ok: bool, what: str):
        self.checks += 1
        if not ok:
            self.failures.append(what)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"; {len(self.failures)} failed: {self.failures[:3]}" if self.failures else ""
        return f"criterion {self.number:2d} {status}  {self.title} ({self.checks} checks{extra})"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "checks": self.checks, "failures": self.failures, "notes": self.notes}


@dataclass
class Corpus:
    diagrams: dict
    graphs: dict
    multigraphs: dict

    @classmethod
    def builtin(cls, seed: int = 0, n_random: int = 50) -> "Corpus":
        diagrams = dict(fixtures.diagrams())
        for k, d in enumerate(fixtures.random_diagrams(n_random, seed=seed, max_crossings=5)):
            diagrams[f"random_{k}"] = d
        graphs = dict(fixtures.graphs())
        rng = random.Random(seed)
        for k in range(n_random):
            graphs[f"random_plane_{k}"] = random_planar_graph(rng, max_edges=8)
        multigraphs = dict(fixtures.graphs())
        for k in range(30):
            multigraphs[f"random_multi_{k}"] = random_multigraph(rng, max_nodes=5, max_edges=7)
        return cls(diagrams, graphs, multigraphs)

    @classmethod
    def fixtures_only(cls) -> "Corpus":
        return cls(fixtures.diagrams(), fixtures.graphs(), fixtures.graphs())


def criterion_1(corpus: Corpus) -> CriterionResult:
    r = CriterionResult(1, TITLES[1])
    for name, d in corpus.diagrams.items():
        chi = graded_euler_characteristic(homology(build_complex(d, Z)))
        r.check(chi == khovanov_bracket(d), name)
    hopf = fixtures.diagrams()["hopf"]
    r.check(graded_euler_characteristic(homology(build_complex(hopf, Z))) == HOPF_CHI, "hopf pinned value")
    return r


def criterion_2(corpus: Corpus) -> CriterionResult:
    r = CriterionResult(2, TITLES[2])
    for name, d in corpus.diagrams.items():
        for ring in (Z, GF2):
            cx = build_complex(d, ring)
            r.check(cx.d_squared_is_zero(), f"{name} Kh {ring}")
            r.check(cx.preserves_grading(_j), f"{name} Kh j {ring}")
            if d.n_crossings <= 4:
                dr = build_de_rham_complex(d, ring)
                r.check(dr.d_squared_is_zero(), f"{name} DR {ring}")
                r.check(dr.preserves_grading(de_rham_grading), f"{name} DR j {ring}")
    for name, g in corpus.multigraphs.items():
        for n in (1, 2, 3):
            for ring in (Z, GF2):
                cx = build_stosic_complex(g, n, ring)
                r.check(cx.d_squared_is_zero(), f"{name} stosic n={n} {ring}")
                r.check(cx.preserves_grading(stosic_grading), f"{name} stosic j n={n} {ring}")
    return r


def criterion_3(corpus: Corpus) -> CriterionResult:
    r = CriterionResult(3, TITLES[3])
    for name, d in corpus.diagrams.items():
        hist = state_histogram(d)
        r.check(cross_check_brackets(d), f"{name} A -> q")
        at_one = substitute(rho_bracket(d, hist=hist), "rho", Laurent.const(1))
        r.check(at_one == khovanov_bracket(d, hist=hist), f"{name} rho = 1")
    return r


def criterion_4(corpus: Corpus) -> CriterionResult:
    r = CriterionResult(4, TITLES[4])
    for move, a, b, da, db in fixtures.reidemeister_pairs():
        r.check(jones(da) == jones(db), f"{move} {a}/{b} jones")
        for ring in (Z, GF2):
            r.check(shifted_homology(da, ring).table() == shifted_homology(db, ring).table(),
                    f"{move} {a}/{b} homology {ring}")
    return r


def criterion_5(corpus: Corpus) -> CriterionResult:
    r = CriterionResult(5, TITLES[5])
    for name, g in corpus.graphs.items():
        dc = dichromatic_dc(g)
        r.check(dc == dichromatic_subgraph_sum(g), f"{name} dc = sum")
        r.check(dc == dichromatic_via_bracket(g), f"{name} dc = bracket")
        if g.is_connected():
            d = medial_link(g)
            for s in iter_states(d):
                h = SpanningSubgraph.of(g, s.choices)
                r.check(s.n_loops == state_loop_count_formula(g, h), f"{name} loops {s.choices}")
    return r


def _couplings(Q: int) -> list:
    return [0, 1, -1, 1j, 1j * math.pi / 2] + [cmath.log(z) for z in rho_one_points(Q)]


def criterion_6(corpus: Corpus) -> CriterionResult:
    r = CriterionResult(6, TITLES[6])
    for name, g in fixtures.graphs().items():
        for Q in (2, 3, 4):
            if Q ** g.n_nodes > 10 ** 7:
                continue
            for K in _couplings(Q):
                p = PottsParameters(Q, K)
                r.check(close(partition_spin_sum(g, p), partition_via_dichromatic(g, p), NUMERIC_TOL),
                        f"{name} Q={Q} K={K}")
    return r


def criterion_7(corpus: Corpus) -> CriterionResult:
    r = CriterionResult(7, TITLES[7])
    s3 = math.sqrt(3) / 2
    expected = {2: {1j, -1j}, 3: {complex(-0.5, s3), complex(-0.5, -s3)}, 4: {complex(-1)}}
    for Q, want in expected.items():
        r.check(set(rho_one_points(Q)) == want, f"Q={Q}")
    for Q in (5, 6):
        pts = rho_one_points(Q)
        r.check(len(pts) == 2 and all(z.imag == 0 and z.real < 0 for z in pts), f"Q={Q} real negative")
    return r


def criterion_8(corpus: Corpus) -> CriterionResult:
    r = CriterionResult(8, TITLES[8])
    graphs = fixtures.graphs()
    for name in ("single_edge", "triangle", "square"):
        g = graphs[name]
        series = khovanov_euler_series(g)
        for Q in (2, 3, 4):
            for z in rho_one_points(Q):
                spin = partition_spin_sum(g, PottsParameters.from_boltzmann(Q, z))
                for sign in (1, -1):
                    kh = potts_via_khovanov(g, Q, z, sign, series)
                    r.check(close(kh, spin, NUMERIC_TOL), f"{name} Q={Q} e^K={z} sqrt sign {sign}")
    return r


def criterion_9(corpus: Corpus) -> CriterionResult:
    r = CriterionResult(9, TITLES[9])
    for name, g in corpus.multigraphs.items():
        for n in (1, 2, 3):
            r.check(stosic_euler_identity(g, n).equal, f"{name} n={n}")
            if g.n_edges:
                r.check(bool(literal_grading_violations(g, n, limit=1)), f"{name} n={n} literal grading")
    single = fixtures.graphs()["single_edge"]
    betti = homology(build_stosic_complex(single, 1)).nonzero_betti()
    r.check(betti == {(0, 1): 1, (0, 0): 1}, "single edge n=1 table")
    return r


def hadamard_trials(n_trials: int = 100, shots: int = 10 ** 4) -> tuple:
    """(trials within 5 standard errors on both parts, total trials)."""
    pool = fixtures.diagrams()
    names = ["hopf", "trefoil", "figure_eight", "unknot", "r3_left"]
    hits = 0
    for seed in range(n_trials):
        d = pool[names[seed % len(names)]]
        theta = 0.3 + 0.7 * seed
        est = hadamard_test_sim(d, theta, shots, seed)
        exact = bracket_amplitude(d, theta) / est.basis_size
        ok_re = abs(est.re_estimate - exact.real) <= 5 * est.re_stderr
        ok_im = abs(est.im_estimate - exact.imag) <= 5 * est.im_stderr
        hits += ok_re and ok_im
    return hits, n_trials


def criterion_10(corpus: Corpus) -> CriterionResult:
    r = CriterionResult(10, TITLES[10])
    thetas = [2 * math.pi * k / 8 + 0.1 for k in range(8)]
    for name, d in fixtures.diagrams().items():
        kb = khovanov_bracket(d)
        for theta in thetas:
            exact = evaluate(kb, {"q": cmath.exp(1j * theta)})
            r.check(abs(bracket_amplitude(d, theta) - exact) <= AMPLITUDE_TOL * max(1.0, abs(exact)),
                    f"{name} theta={theta:.3f}")
    for name, g in fixtures.graphs().items():
        for Q in (2, 3, 4):
            if Q ** g.n_nodes > 10 ** 7:
                continue
            for t in (0.0, 0.4, math.pi / 2, 2 * math.pi / 3, math.pi):
                spin = partition_spin_sum(g, PottsParameters(Q, 1j * t))
                r.check(close(potts_amplitude(g, Q, t), spin, NUMERIC_TOL), f"{name} Q={Q} t={t:.3f}")
    hits, total = hadamard_trials()
    r.check(hits >= 0.99 * total, f"hadamard {hits}/{total}")
    r.notes.append(f"hadamard trials within 5 stderr: {hits}/{total}")
    for name in ("single_edge", "triangle"):
        rows = potts_quantum_check(fixtures.graphs()[name], 3)
        at_rho_one = [row for row in rows if row.source == "rho_one"]
        listed = [row for row in rows if row.source == "listed"]
        r.check(all(row.agree for row in at_rho_one), f"{name} Q=3 agreement at 2pi/3")
        r.check(any(abs(abs(row.t) - 2 * math.pi / 3) < 1e-12 for row in at_rho_one), f"{name} Q=3 t value")
        r.check(not any(row.agree for row in listed), f"{name} Q=3 listed pi/6 flagged")
    r.notes.append("Q=3: agreement at t=2pi/3 (arg of the rho=1 point); the listed t=pi/6 does not agree")
    return r


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 11)}


def run_all(corpus: Corpus | None = None, only=None) -> list:
    corpus = corpus or Corpus.builtin()
    return [CRITERIA[k](corpus) for k in sorted(only or CRITERIA)]
