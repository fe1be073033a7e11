"""pplsolve: single-loop primal-dual solvers for non-convex constrained problems."""
