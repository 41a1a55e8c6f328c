"""Few-edge n-uniform hypergraphs with positive discrepancy, and exact checks for them."""

from .builder import amplify, build_auto, build_example19, build_main, build_single_odd, build_three
from .hypergraph import AtomSystem, Color, Hypergraph, atomize, discrepancy_of_coloring
from .numtheory import eta_decompose, snd
from .solver import atom_min_discrepancy, atom_zero_feasible, brute_force_min_discrepancy

__version__ = "0.1.0"
