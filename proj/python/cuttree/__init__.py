"""Cutting, shuffling and continuum limits of weighted random trees."""

from cuttree._cuttree import (  # noqa: F401
    CompleteCutRecord,
    KCutRecord,
    OneCutRecord,
    ProbWeights,
    RealTree,
    Rng,
    RootedTree,
    ThetaParam,
    build_pn,
    canonical_order,
    coupled_cut_family,
    cut_complete,
    cut_k,
    cut_one,
    depths,
    distance_matrix,
    draw_vertex,
    enumerate_rooted_trees,
    exact_span_law,
    exact_tree_law,
    genealogy_matrix,
    graph_distance,
    is_tree_metric,
    ks_test,
    ks_two_sample,
    line_break,
    ptree_pmf,
    r1_length_survival,
    repeat_times,
    reroot,
    reverse_complete,
    reverse_k,
    reverse_one,
    rewire,
    run_verify_suite,
    sample_marks,
    sample_ptree,
    shuff_complete,
    shuff_k,
    shuff_one,
    shuffle_walk,
    span,
    subtree_above,
    tree_key,
    validate,
    verify_suite_names,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
