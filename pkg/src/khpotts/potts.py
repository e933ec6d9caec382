"""Potts partition function: spin enumeration, the dichromatic route, the
rho = 1 complex temperatures and the Khovanov-valued evaluation there.

Square roots of Q are double valued, so functions that need one take a
``sqrt_sign`` (+1 for the positive root, -1 for the negative root) and
report it alongside the result.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import config, kernels
from .errors import DomainError, TooLarge
from .graphs import PlanarMultigraph, dichromatic_dc, medial_link
from .homology import graded_euler_characteristic
from .khovanov import khovanov_homology
from .numeric import close, fsum_complex
from .poly import evaluate

_RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class PottsParameters:
    Q: int
    K: complex

    def __post_init__(self):
        if int(self.Q) != self.Q or self.Q < 1:
            raise DomainError(f"Q must be a positive integer, got {self.Q}")
        object.__setattr__(self, "Q", int(self.Q))
        object.__setattr__(self, "K", complex(self.K))

    @property
    def boltzmann(self) -> complex:
        """e^K."""
        return cmath.exp(self.K)

    @property
    def v(self) -> complex:
        return cmath.exp(self.K) - 1

    @classmethod
    def from_boltzmann(cls, Q: int, e_k: complex) -> "PottsParameters":
        e_k = complex(e_k)
        if e_k == 0:
            raise DomainError("e^K = 0 has no logarithm")
        return cls(Q, cmath.log(e_k))


@dataclass(frozen=True)
class SpinState:
    assignment: tuple  # values in 1..Q, one per node

    def energy(self, g: PlanarMultigraph) -> int:
        return sum(1 for u, v in g.edges if self.assignment[u] == self.assignment[v])


def _check_spins(g: PlanarMultigraph, Q: int):
    limit = config.cap("max_spin_states")
    size = Q ** g.n_nodes
    if size > limit:
        raise TooLarge(f"Q^N = {size} spin states exceed the cap of {limit}", required=size, cap=limit)


def energy_histogram(g: PlanarMultigraph, Q: int, threads: int = 1, backend=None) -> np.ndarray:
    """counts[E] = number of spin assignments with E monochromatic edges."""
    _check_spins(g, Q)
    eu = [u for u, _ in g.edges]
    ev = [v for _, v in g.edges]
    return kernels.energy_histogram(Q, g.n_nodes, eu, ev, threads=threads, backend=backend)


def partition_spin_sum(g: PlanarMultigraph, p: PottsParameters, threads: int = 1, backend=None) -> complex:
    """sum over spin states of e^(K E(sigma))."""
    hist = energy_histogram(g, p.Q, threads, backend)
    e_k = p.boltzmann
    return fsum_complex(int(n) * e_k ** E for E, n in enumerate(hist) if n)


def partition_via_dichromatic(g: PlanarMultigraph, p: PottsParameters) -> complex:
    return evaluate(dichromatic_dc(g), {"Q": p.Q, "v": p.v})


def rho_one_branches(Q: int) -> list:
    """[(sign, e^K)] for e^K = (2 - Q -/+ sqrt(Q) sqrt(Q - 4)) / 2.

    Evaluated in closed form so the Q = 2, 3, 4 values come out exact
    rather than through complex square roots of negative floats.
    """
    if int(Q) != Q or Q < 2:
        raise DomainError(f"Q must be an integer >= 2, got {Q}")
    Q = int(Q)
    centre = (2 - Q) / 2
    if Q == 4:
        return [("double", complex(-1.0, 0.0))]
    if Q < 4:
        if Q == 2:
            half = 1.0
        else:
            half = math.sqrt(Q * (4 - Q)) / 2
        return [("-", complex(centre, -half)), ("+", complex(centre, half))]
    half = math.sqrt(Q * (Q - 4)) / 2
    return [("-", complex(centre - half, 0.0)), ("+", complex(centre + half, 0.0))]


def rho_one_points(Q: int) -> list:
    """Admissible e^K values where the Potts bracket becomes the Khovanov bracket."""
    return [z for _, z in rho_one_branches(Q)]


@dataclass(frozen=True)
class ParametrizationBranch:
    sqrt_Q: float  # the chosen square root of Q, either sign
    q: complex
    rho: complex
    tag: str

    def residual(self, Q: int) -> float:
        return abs(self.q * self.q - self.sqrt_Q * self.q + 1)


def potts_parametrization(Q: int, v: complex) -> list:
    """All (q, rho) with q + 1/q = sqrt(Q) and -q rho = v / sqrt(Q), every branch tagged."""
    out = []
    for sign in (1, -1):
        s = sign * math.sqrt(Q)
        disc = cmath.sqrt(complex(Q - 4))
        roots = [(s + disc) / 2, (s - disc) / 2]
        if roots[0] == roots[1]:
            roots = roots[:1]
        for k, q in enumerate(roots):
            rho = -complex(v) / (s * q)
            tag = f"sqrtQ={'+' if sign > 0 else '-'},root={k}"
            out.append(ParametrizationBranch(s, q, rho, tag))
    return out


@dataclass(frozen=True)
class CriticalityReport:
    critical: bool
    critical_branches: tuple  # sqrt signs on which Q^(-1/2) v = 1
    rho_one: bool
    rho_one_and_critical_implies_q4: bool

    def to_json(self) -> dict:
        return {
            "critical": self.critical,
            "critical_branches": list(self.critical_branches),
            "rho_one": self.rho_one,
            "rho_one_and_critical_implies_q4": self.rho_one_and_critical_implies_q4,
        }


def criticality_check(Q: int, p: PottsParameters, tol: float = 1e-9) -> CriticalityReport:
    v = p.v
    branches = tuple(sign for sign in (1, -1) if abs(v / (sign * math.sqrt(Q)) - 1) <= tol)
    # rho = 1 on some branch iff v^2 + Q v + Q = 0, whichever root of Q is used
    rho_one = abs(v * v + Q * v + Q) <= tol * max(1.0, abs(v) ** 2, Q)
    implied = True
    if branches and rho_one:
        implied = Q == 4 and abs(p.boltzmann + 1) <= tol
    return CriticalityReport(bool(branches), branches, rho_one, implied)


def khovanov_euler_series(g: PlanarMultigraph, ring="Z"):
    """sum_j q^j chi(Kh^{*,j}) of the medial link, from homology."""
    return graded_euler_characteristic(khovanov_homology(medial_link(g), ring))


def potts_via_khovanov(g: PlanarMultigraph, Q: int, e_k: complex, sqrt_sign: int = 1,
                       series=None) -> complex:
    """Q^(N/2) sum_j q^j chi(Kh^{*,j}(K(G))) at q = -v / sqrt(Q).

    Only meaningful at a rho = 1 point, where that q solves
    q + 1/q = sqrt(Q) on the given root; anything else raises DomainError.
    """
    v = complex(e_k) - 1
    s = sqrt_sign * math.sqrt(Q)
    q = -v / s
    if not close(q + 1 / q, s, _RESIDUAL_TOL * 1e3):
        raise DomainError(f"e^K = {e_k} is not a rho = 1 point for Q = {Q}")
    series = series if series is not None else khovanov_euler_series(g)
    return s ** g.n_nodes * evaluate(series, {"q": q})
