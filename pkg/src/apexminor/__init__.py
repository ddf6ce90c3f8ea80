"""Certified graph-minor extraction: grid models, apex and K_{3,t} extractors, oracles."""

from .apex import (ApexExtraction, ApexInstance, SubgridScheme, apex_exact_threshold, apex_grid_threshold,
                   bars_and_cross, block_size, extract_apex, simple_threshold)
from .certify import (MinorModel, TreeDecomposition, Violation, build_model, verify_decomposition,
                      verify_minor_model)
from .constructions import LowerBoundWitness, apex_lb_params, check_witness, lower_bound_graph, lower_bound_params_genus
from .decomposition import contracted_layer_graph, layered_path_decomposition, ttw_upper
from .errors import (ExtractionFailure, InvalidArgument, InvalidModel, MinorToolkitError, OracleLimitError,
                     PreconditionError)
from .graph import (Graph, GridSpec, bfs_layering, centre_paths, complete_bipartite, complete_graph,
                    contract_partition, make_grid, path_graph, radius_and_centre)
from .k3t import (extract_k3t, genus_grid_threshold, genus_to_k3t, greedy_independent_set, k3t_grid_threshold,
                  k3t_guarantee)
from .models import (DoubledModel, contract_subgrids, double_model, identity_grid_model, k2t_model,
                     shrink_grid_model_avoiding)
from .oracles import OracleLimits, exact_treewidth, minor_test, planarity_test

__all__ = [name for name in dir() if not name.startswith("_")]
