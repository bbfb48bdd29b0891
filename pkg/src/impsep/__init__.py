"""Important separators in directed graphs and the algorithms built on them."""

from .balanced import (BalancedAnswer, BalancedQuery, brute_balanced, build_skew_from_blocks,
                       extract_prefix_bisection, solve_balanced)
from .digraph import DiGraph, GraphFormatError, parse_graph, reach_set, scc_decompose
from .generators import FIG1_NAMES, gen_corestar, gen_fig1, gen_random, gen_random_dag, gen_star
from .sampling import (CheckReport, brute_reach_profile, is_detection_set, is_net,
                       is_sample_set, is_shattered, reach_profile)
from .separators import (brute_all_subsets, brute_important, enum_all_subsets, enum_important,
                         is_important, reduce_witness)
from .skew import SkewInstance, brute_skew, solve_skew, validate_skew, vertex_to_edge
from .sparsifier import SparsifierResult, build_sparsifier, close_vertices, verify_sparsifier
from .vertex_flow import InvalidQuery, closest_witness, is_closest, max_vertex_flow, min_vertex_cut

__version__ = "0.1.0"
