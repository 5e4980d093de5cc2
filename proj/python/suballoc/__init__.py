from ._suballoc import (
    Digraph,
    Problem,
    circle_graph,
    complete_graph,
    degree_stats,
    integrate,
    laplacian,
    make_instance,
    normalize_laplacian,
    random_balanced_graph,
    run_cell,
    solve_centralized,
    solve_equilibrium,
    solve_lcp,
)

__all__ = [
    "Digraph",
    "Problem",
    "circle_graph",
    "complete_graph",
    "degree_stats",
    "integrate",
    "laplacian",
    "make_instance",
    "normalize_laplacian",
    "random_balanced_graph",
    "run_cell",
    "solve_centralized",
    "solve_equilibrium",
    "solve_lcp",
]
