"""Exact computations with chromatic symmetric functions of trees.

The library computes connected-partition counts, power-sum and elementary
expansions of X_T, acyclic-orientation sink counts, and a battery of
necessary conditions for e-positivity, plus an exhaustive resumable scan
over isomorphism classes of trees.  All arithmetic is exact (integers and
rationals); no floating point is used anywhere.
"""

from .criteria import (
    CriteriaVerdict,
    CriterionResult,
    caterpillar_sink2,
    check_cpet,
    check_n22,
    check_sink2,
    check_structural,
    run_all,
    sink2_lower_bound,
)
from .csf import (
    BTable,
    EposReport,
    SinkTable,
    b_table,
    b_table_bruteforce,
    coefficient_stk,
    e_coefficient,
    e_expansion,
    p_expansion,
    reduced_stk_sum,
    sink_counts,
    sink_counts_bruteforce,
)
from .fixtures import FIXTURE_NAMES, all_fixtures, fixture_tree
from .partition import (
    Partition,
    coarsenings,
    enumerate_partitions,
    format_partition,
    parse_partition,
    partition_count,
    refinements,
    refines,
    z_value,
)
from .scan import ScanConfig, ScanError, ScanResumeError, analyze_tree, probe_problems, resume, run_scan
from .sympoly import SymPoly, e_to_p, p_to_e, specialize_ones, warm_transition_cache
from .tabloid import (
    BrickTabloid,
    enumerate_brick_tabloids,
    ordered_count,
    weight_sum,
    weight_sum_by_enumeration,
)
from .tree import (
    DegreeStats,
    Tree,
    canonical_code,
    centers,
    degree_stats,
    enumerate_free_trees,
    free_tree_count,
    from_edges,
    isomorphic,
    make_caterpillar,
    make_path,
    make_spider,
    make_star,
    pendent_count,
    rooted_tree_count,
    tree_from_code,
)

__version__ = "0.1.0"
