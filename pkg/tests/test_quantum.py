import cmath
import math

from khpotts import fixtures
from khpotts.bracket import khovanov_bracket
from khpotts.diagram import enhanced_state_count
from khpotts.graphs import dichromatic_dc
from khpotts.numeric import close
from khpotts.poly import evaluate
from khpotts.potts import PottsParameters, partition_spin_sum
from khpotts.quantum import (bracket_amplitude, bracket_setup, hadamard_test_sim, hilbert_dimension,
                             inverse_wick_map, potts_amplitude, potts_quantum_check, wick_map)

D = fixtures.diagrams()
G = fixtures.graphs()
THETAS = [2 * math.pi * k / 8 + 0.1 for k in range(8)]


def test_wick_map():
    assert wick_map(1j * math.pi) == math.pi
    assert wick_map(1j * math.pi / 2) == math.pi / 2
    assert wick_map(1) == -1j
    for K in (0.3j, 1 + 2j, -4j):
        assert inverse_wick_map(wick_map(K)) == K


def test_potts_amplitude():
    for g in G.values():
        assert potts_amplitude(g, 2, 0) == 2 ** g.n_nodes
    assert close(potts_amplitude(G["single_edge"], 2, math.pi / 2), 2 + 2j)
    for name, g in G.items():
        for Q in (2, 3):
            for t in (0.4, 1.9, math.pi):
                amp = potts_amplitude(g, Q, t)
                assert close(amp, partition_spin_sum(g, PottsParameters(Q, 1j * t)))
                z = evaluate(dichromatic_dc(g), {"Q": Q, "v": cmath.exp(1j * t) - 1})
                assert close(amp, z), name


def test_bracket_amplitude_examples():
    assert abs(bracket_amplitude(D["unknot"], math.pi / 4) - math.sqrt(2)) < 1e-12
    assert bracket_amplitude(D["unknot"], 0) == 2
    hopf = evaluate(khovanov_bracket(D["hopf"]), {"q": cmath.exp(1j * math.pi / 4)})
    assert abs(bracket_amplitude(D["hopf"], math.pi / 4) - hopf) < 1e-12


def test_bracket_amplitude_matches_polynomial_and_explicit_diagonal():
    for name, d in D.items():
        kb = khovanov_bracket(d)
        D_ = hilbert_dimension(d)
        assert D_ == enhanced_state_count(d)
        for theta in THETAS:
            amp = bracket_amplitude(d, theta)
            exact = evaluate(kb, {"q": cmath.exp(1j * theta)})
            assert abs(amp - exact) <= 1e-12 * max(1, abs(exact)), name
            assert abs(amp) <= D_ + 1e-9
            setup = bracket_setup(d, theta)
            assert setup.basis_size == D_
            assert all(abs(abs(p) - 1) <= 1e-12 for p in setup.phases)
            assert abs(setup.amplitude() - amp) <= 1e-9 * max(1, abs(amp))


def test_hadamard_examples():
    est = hadamard_test_sim(D["unknot"], 0, 1000, 0)
    assert est.re_estimate * est.basis_size == 2 and est.re_stderr == 0
    est = hadamard_test_sim(D["unknot"], math.pi / 2, 10 ** 5, 1)
    assert abs(est.re_estimate) <= 5 * est.re_stderr


def test_hadamard_is_deterministic_per_seed():
    a = hadamard_test_sim(D["hopf"], 0.7, 5000, 42)
    b = hadamard_test_sim(D["hopf"], 0.7, 5000, 42)
    c = hadamard_test_sim(D["hopf"], 0.7, 5000, 43)
    assert a == b
    assert a != c


def test_hadamard_converges():
    d = D["trefoil"]
    exact = bracket_amplitude(d, 1.1) / hilbert_dimension(d)
    est = hadamard_test_sim(d, 1.1, 10 ** 7, 5)
    assert abs(est.estimate - exact) < 2e-3


def test_hadamard_coverage():
    names = ["hopf", "trefoil", "figure_eight", "unknot", "r3_left"]
    hits = 0
    for seed in range(100):
        d = D[names[seed % len(names)]]
        theta = 0.3 + 0.7 * seed
        est = hadamard_test_sim(d, theta, 10 ** 4, seed)
        exact = bracket_amplitude(d, theta) / est.basis_size
        hits += (abs(est.re_estimate - exact.real) <= 5 * est.re_stderr
                 and abs(est.im_estimate - exact.imag) <= 5 * est.im_stderr)
    assert hits >= 99


def test_potts_quantum_check():
    for Q, listed_agrees in ((2, True), (3, False), (4, True)):
        rows = potts_quantum_check(G["triangle"], Q)
        assert all(r.agree for r in rows if r.source == "rho_one")
        listed = [r for r in rows if r.source == "listed"]
        assert listed and all(r.agree == listed_agrees for r in listed)
    rows = potts_quantum_check(G["single_edge"], 3)
    ts = sorted(abs(r.t) for r in rows if r.source == "rho_one")
    assert all(abs(t - 2 * math.pi / 3) < 1e-12 for t in ts)
