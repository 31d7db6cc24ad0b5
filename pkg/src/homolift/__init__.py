"""Elementary abelian regular covers of graphs via invariant subspaces over Z_p."""

from .cover import (
    DerivedGraph,
    VoltageAssignment,
    derive,
    equivalent,
    explicit_lift,
    isomorphic,
    lifts_by_criterion,
    naive_aut,
    subspace_of,
    voltage_for_subspace,
)
from .graphcore import Graph, HomologyRep, TreeData, gp_graph, homology_matrix, mk_tree
from .invariant import full_lattice, minimal_common, orbit_reduce
from .linalg import FpMatrix, Subspace, span
from .mkcensus import full_census, paper_matrices, verify_formula
from .permgrp import Perm, PermGroup

__version__ = "0.1.0"
