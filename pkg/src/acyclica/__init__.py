"""Exact and Monte Carlo tools for the homology of random cell complexes.

Covers cell complexes with integer boundary matrices, persistence of the
Bernoulli cell process, higher Tutte polynomials and the ``ell``-random
cluster model with its Potts coupling.
"""

from .complex import (
    CellComplex,
    ComplexError,
    cubical_face_census,
    cubical_lattice,
    cycle_graph,
    dump_complex,
    load_complex,
    simplicial_skeleton,
    spanning_acycle_size_cubical,
)
from .enumeration import CapExceededError, enumerate_betti_profile
from .filtration import (
    Barcode,
    Filtration,
    HypothesisError,
    barcode,
    lifetime_integral,
    mc_expected_lifetime,
    min_spanning_acycle,
    msa_lifetime,
    sample_process,
)
from .homology import betti
from .linalg import GF, QQ, Field, rank
from .random_cluster import RCParams, rc_distribution
from .tutte import expected_lifetime_exact, spanning_acycle_count, tutte_polynomial

__version__ = "0.1.0"
