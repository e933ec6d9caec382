"""Potts amplitudes under t = -iK, the bracket as a diagonal-unitary
expectation value, and a distribution-level Hadamard test simulation.

Units: hbar = k = 1. The uniform state psi is left unnormalized in the
amplitudes; Hadamard estimates are of <psi|U|psi> / D, with D reported.
"""
from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import config
from .bracket import state_histogram
from .diagram import LinkDiagram, enumerate_enhanced_states
from .errors import TooLarge
from .graphs import PlanarMultigraph
from .numeric import close, fsum_complex
from .potts import PottsParameters, khovanov_euler_series, partition_spin_sum, rho_one_branches
from .poly import evaluate

# t values attached to Q = 2, 3, 4 in the literature on this construction
LISTED_T = {2: math.pi / 2, 3: math.pi / 6, 4: math.pi}


def wick_map(K: complex) -> complex:
    """t = -iK; real exactly when K is imaginary."""
    return -1j * complex(K)


def inverse_wick_map(t: complex) -> complex:
    return 1j * complex(t)


def potts_amplitude(g: PlanarMultigraph, Q: int, t: float, threads: int = 1) -> complex:
    """sum over spin states of e^(i t E(sigma))."""
    return partition_spin_sum(g, PottsParameters(Q, inverse_wick_map(t)), threads)


@dataclass(frozen=True)
class AmplitudeSetup:
    basis_size: int
    phases: np.ndarray  # diagonal of U, one entry per enhanced state

    @property
    def normalization(self) -> float:
        return 1.0 / self.basis_size

    def amplitude(self) -> complex:
        return fsum_complex(self.phases)


def _check_dim(D: int):
    limit = config.cap("max_hilbert_dim")
    if D > limit:
        raise TooLarge(f"Hilbert space dimension {D} exceeds the cap of {limit}", required=D, cap=limit)


def bracket_setup(d: LinkDiagram, theta: float) -> AmplitudeSetup:
    """Explicit diagonal of U: (-1)^n_B e^(i theta j) for every enhanced state."""
    _check_dim(hilbert_dimension(d))
    phases = [(-1) ** s.n_B * cmath.exp(1j * theta * s.j) for s in enumerate_enhanced_states(d)]
    return AmplitudeSetup(len(phases), np.array(phases, dtype=complex))


def hilbert_dimension(d: LinkDiagram, hist: Counter | None = None) -> int:
    hist = hist if hist is not None else state_histogram(d)
    return sum(count << loops for (_, loops), count in hist.items())


def bracket_amplitude(d: LinkDiagram, theta: float, hist: Counter | None = None) -> complex:
    """<psi|U|psi> for psi the sum of all enhanced states, grouped by equal phase.

    A state with L loops and k labels X has j = n_B + L - 2k, and there are
    C(L, k) of them, so the diagonal is summed by multiplicity.
    """
    hist = hist if hist is not None else state_histogram(d)
    _check_dim(hilbert_dimension(d, hist))
    by_j: Counter = Counter()
    for (n_b, loops), count in hist.items():
        sign = -1 if n_b % 2 else 1
        for k in range(loops + 1):
            by_j[n_b + loops - 2 * k] += sign * count * math.comb(loops, k)
    return fsum_complex(c * cmath.exp(1j * theta * j) for j, c in sorted(by_j.items()) if c)


@dataclass(frozen=True)
class HadamardEstimate:
    re_estimate: float
    im_estimate: float
    re_stderr: float
    im_stderr: float
    basis_size: int
    shots: int
    seed: int

    @property
    def stderr(self) -> tuple:
        return self.re_stderr, self.im_stderr

    @property
    def estimate(self) -> complex:
        """Estimate of <psi|U|psi> / D."""
        return complex(self.re_estimate, self.im_estimate)

    def to_json(self) -> dict:
        return {
            "re_estimate": self.re_estimate,
            "im_estimate": self.im_estimate,
            "stderr": [self.re_stderr, self.im_stderr],
            "basis_size": self.basis_size,
            "shots": self.shots,
            "seed": self.seed,
        }


def _measure(rng, p0: float, shots: int) -> tuple:
    p0 = min(1.0, max(0.0, p0))
    zeros = int(rng.binomial(shots, p0))
    p_hat = zeros / shots
    return 2 * p_hat - 1, 2 * math.sqrt(p_hat * (1 - p_hat) / shots)


def hadamard_test_sim(d: LinkDiagram, theta: float, shots: int, seed: int) -> HadamardEstimate:
    """Sample ancilla outcomes of the Hadamard test for U on the normalized uniform state.

    P(0) = (1 + Re a) / 2 for the plain circuit and (1 + Im a) / 2 with the
    phase gate on the ancilla, where a = <psi|U|psi> / D.
    """
    if shots < 1:
        raise ValueError("shots must be positive")
    hist = state_histogram(d)
    D = hilbert_dimension(d, hist)
    a = bracket_amplitude(d, theta, hist) / D
    rng = np.random.default_rng(seed)
    re, re_err = _measure(rng, (1 + a.real) / 2, shots)
    im, im_err = _measure(rng, (1 + a.imag) / 2, shots)
    return HadamardEstimate(re, im, re_err, im_err, D, shots, seed)


@dataclass(frozen=True)
class QuantumCheckRow:
    source: str  # "rho_one" or "listed"
    sqrt_sign: int
    e_k: complex
    t: float
    amplitude: complex
    khovanov_value: complex
    agree: bool

    def to_json(self) -> dict:
        from .numeric import complex_to_json

        return {
            "source": self.source,
            "sqrt_sign": self.sqrt_sign,
            "e_K": complex_to_json(self.e_k),
            "t": self.t,
            "amplitude": complex_to_json(self.amplitude),
            "khovanov_value": complex_to_json(self.khovanov_value),
            "agree": self.agree,
        }


def potts_quantum_check(g: PlanarMultigraph, Q: int, rel_tol: float = 1e-9) -> list:
    """Compare A_G(Q, t) with Q^(N/2) sum_j q^j chi(Kh^{*,j}(K(G))) at q = (1 - e^(it)) / sqrt(Q).

    Rows cover t = arg(e^K) for each unit-modulus rho = 1 point and the
    listed t for Q; both roots of Q are tried.
    """
    series = khovanov_euler_series(g)
    ts = [("rho_one", cmath.phase(z)) for _, z in rho_one_branches(Q) if abs(abs(z) - 1) < 1e-12]
    if Q in LISTED_T:
        ts.append(("listed", LISTED_T[Q]))
    rows = []
    for source, t in ts:
        amp = potts_amplitude(g, Q, t)
        for sign in (1, -1):
            s = sign * math.sqrt(Q)
            q = (1 - cmath.exp(1j * t)) / s
            kh = s ** g.n_nodes * evaluate(series, {"q": q})
            rows.append(QuantumCheckRow(source, sign, cmath.exp(1j * t), t, amp, kh, close(amp, kh, rel_tol)))
    return rows
