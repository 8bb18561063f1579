"""Solver, verifier and exhaustive oracle for filling k-row grids with
infinitely many columns from prescribed candidate sets."""

from .model import (Assignment, DimensionError, FormatError, Instance, parse_assignment,
                    parse_instance, prefix_set, serialize_assignment, serialize_instance,
                    stabilization_column)
from .oracle import (GenConfig, OracleConfig, OracleOutcome, brute_force, conjecture_search,
                     gen_instance, hard_instance)
from .solvers import (CaseTrace, SolveOutcome, fill_row, sdr_first_column, solve,
                      solve_equal_sets, solve_n3k4, solve_wide)
from .verifier import VerificationReport, explain_pair, p_holds, q_holds, verify

__all__ = [
    "Assignment", "CaseTrace", "DimensionError", "FormatError", "GenConfig", "Instance",
    "OracleConfig", "OracleOutcome", "SolveOutcome", "VerificationReport", "brute_force",
    "conjecture_search", "explain_pair", "fill_row", "gen_instance", "hard_instance",
    "p_holds", "parse_assignment", "parse_instance", "prefix_set", "q_holds", "sdr_first_column",
    "serialize_assignment", "serialize_instance", "solve", "solve_equal_sets", "solve_n3k4",
    "solve_wide", "stabilization_column", "verify",
]
