"""Forward-model game-tree workbench.

Generates random game trees whose internal values are sampled top-down
under the negamax constraint, runs instrumented solving algorithms on
them, and computes exact average-case complexities and asymptotic
branching factors from the associated recursive systems, cross-validated
by seeded Monte-Carlo simulation.
"""

from .core import (AllZeroError, BinaryParam, FgamesError, InvalidHeightError,
                   InvalidThresholdError, InvalidWindowError, ParseError, Pmf,
                   ScaledVector, SpecError, StateIndex, StructureError,
                   Threshold, TruncatedPmf, ValueRange, Window, WrongModeError,
                   index_states, scaled_renormalize, truncate)
from .montecarlo import (McConfig, McResult, ValidationReport, exact_complexity,
                         mc_estimate, validate_against_oracle)
from .recursion import (BranchingFactorEstimate, ComplexityTable, LevelOperator,
                        MetaComplexities, SolveComplexity, ab_table,
                        ab_level_operator, all_test_tables, branching_factor,
                        meta_complexities, r_ab, r_scout, r_solve,
                        r_solve_standard, r_test, r_test_global,
                        r_test_standard, root_marginal, saks_bound,
                        scout_level_operator, scout_table, solve_branching,
                        solve_complexity, solve_complexity_log,
                        solve_level_operator, t_coeff, test_level_operator,
                        test_table, xi_root)
from .rng import RngStream, mix64
from .solvers import (AlgorithmResult, AlphaBeta, Scout, Solve, Test,
                      TestBisection, TestBruteforce, TestHardest, alphabeta,
                      run_algorithm, scout, solve, test, test_bisection,
                      test_bruteforce)
from .trees import (GameTree, check_negamax_consistency, forward_sample,
                    forward_sample_binary, generate_binary_tree,
                    generate_binary_trees_batch, generate_tree,
                    generate_trees_batch, negamax_value, read_tree,
                    tree_from_values, write_tree)

__version__ = "0.1.0"
