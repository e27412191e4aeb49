"""Depth-bounded epistemic planning via canonical bounded contractions."""

from .logic import (Atom, Top, Bottom, Not, And, Or, Implies, Believes,
                    Possible, TOP, BOTTOM, conj, disj, Formula, FormulaError,
                    ModelError, EpistemicModel, EpistemicState, holds,
                    satisfies, modal_depth, normalize, depth_map, restrict)
from .contraction import (Partition, bounded_partition_refinement,
                          full_partition_refinement, b_bisimilar, bisimilar,
                          standard_contraction, standard_b_contraction)
from .signatures import (Signature, make_signature, compute_signatures,
                         canonical_signature, canonical_contraction,
                         rooted_contraction, encode_state, ContractionError)
from .actions import (Event, Action, UpdateError, public_announcement,
                      applicable, product_update)
from .planner import (PlanningTask, SearchResult, SearchStats,
                      bounded_tree_search, bounded_graph_search,
                      iter_bound_search, baseline_bfs, verify_plan)
from .domains import (DocumentError, load_task, print_task, load_state,
                      print_state, gen_switches, gen_consecutive_numbers,
                      bundled_dir, bundled_tasks)

__version__ = "0.1.0"
