"""Half-duplex routing on general digraphs and its 3SAT hardness reduction."""

from .cnf import Cnf, parse_dimacs, random_cnf
from .graph import (
    CapGraph,
    best_hd_path,
    find_hd_path,
    hd_path_decision,
    path_hd_capacity,
    simple_paths_at_least,
)
from .reduction import (
    ReductionArtifacts,
    build_gadget_chain,
    expand_forbidden,
    merge_and_capacitate,
    reduce_3sat,
    verify_reduction,
)
