"""Khovanov homology, bracket state sums and the Potts model on plane graphs."""
from .bracket import (BracketFlavor, a_bracket, bracket, jones, khovanov_bracket, potts_bracket,
                      rho_bracket)
from .diagram import LinkDiagram, parse_pd
from .errors import KhPottsError
from .graphs import (PlanarMultigraph, SpanningSubgraph, dichromatic_dc, dichromatic_subgraph_sum,
                     dichromatic_via_bracket, medial_link)
from .homology import HomologySummary, graded_euler_characteristic
from .kernels import BACKEND
from .khovanov import build_complex, khovanov_homology, shifted_homology
from .poly import Laurent, MultivariateLaurent, parse, render
from .potts import PottsParameters, partition_spin_sum, partition_via_dichromatic, rho_one_points

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BracketFlavor", "HomologySummary", "KhPottsError", "Laurent", "LinkDiagram",
    "MultivariateLaurent", "PlanarMultigraph", "PottsParameters", "SpanningSubgraph", "a_bracket",
    "bracket", "build_complex", "dichromatic_dc", "dichromatic_subgraph_sum", "dichromatic_via_bracket",
    "graded_euler_characteristic", "jones", "khovanov_bracket", "khovanov_homology", "medial_link",
    "parse", "parse_pd", "partition_spin_sum", "partition_via_dichromatic", "potts_bracket", "render",
    "rho_bracket", "rho_one_points", "shifted_homology",
]
