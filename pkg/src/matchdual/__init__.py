"""Minimum matchings on finite pseudometric spaces and their tree-like duals."""

from .calibration import (Chain2, MetricGraph, PLFunction, chain_action,
                          cut_z, cut_z2, extend_to_tree, fill_z2, lev_z,
                          lev_z2, orientation_rho, pullback_orientation,
                          shortest_path_metric)
from .dimension import (CombTree, ScalingSeries, comb_tree, cube_experiment,
                        fit_dimension, m_eps, m_k)
from .dual import DualResult, dual_via_descent, minimize_dual, verify_dual
from .errors import InputError, MatchDualError, SolverError
from .matching import (Matching, MatchingResult, Partition2,
                       enumerate_min_matchings, is_locally_minimal_2swap,
                       kantorovich_potential, min_matching,
                       min_matching_oracle, minimal_pairs,
                       oriented_min_connection)
from .metric import (TOL_EXACT, TOL_GEOM, FiniteMetric, from_points,
                      interval_contains, is_tree_like, metric_delta, restrict,
                      validate_metric)
from .tree import (DualCertificate, MetricTree, PathSet, build_certificate,
                   matching_paths, realize_tree, tree_total_length,
                   verify_certificate)

__all__ = [name for name in dir() if not name.startswith("_")]
