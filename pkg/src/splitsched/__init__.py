"""Scheduling identical machines with job splitting and a uniform setup time.

Minimises the total (or weighted total) completion time. Everything is
computed in exact rational arithmetic.
"""
from .approx import ApproxConfig, BoundsReport, approx_schedule, lower_bounds, split_bound
from .hardness import (SubsetSumInput, ThreePartitionInput, build_3partition_instance, build_subsetsum_instance,
                       unsplit_weighted_value)
from .lp import FixedStructureProgram, LpSolution, balanced_forward_timing, solve_fixed_structure
from .model import (Instance, InvalidInstance, InvalidSchedule, Job, ObjectiveReport, Schedule, Segment,
                    SplitStructure, canonicalize, evaluate, spt_order, validate)
from .oracle import CapExceeded, OracleQuery, OracleResult, list_optimal_structures, oracle_optimum
from .ptas import Guess, PtasConfig, prefix_list_schedule, ptas_solve
from .two_machine import TwoMachineSolution, f_threshold, objective_of_prefix_split, solve_two_machines

__version__ = "0.1.0"

__all__ = [
    "ApproxConfig", "BoundsReport", "approx_schedule", "lower_bounds", "split_bound",
    "SubsetSumInput", "ThreePartitionInput", "build_3partition_instance", "build_subsetsum_instance",
    "unsplit_weighted_value",
    "FixedStructureProgram", "LpSolution", "balanced_forward_timing", "solve_fixed_structure",
    "Instance", "InvalidInstance", "InvalidSchedule", "Job", "ObjectiveReport", "Schedule", "Segment",
    "SplitStructure", "canonicalize", "evaluate", "spt_order", "validate",
    "CapExceeded", "OracleQuery", "OracleResult", "list_optimal_structures", "oracle_optimum",
    "Guess", "PtasConfig", "prefix_list_schedule", "ptas_solve",
    "TwoMachineSolution", "f_threshold", "objective_of_prefix_split", "solve_two_machines",
]
