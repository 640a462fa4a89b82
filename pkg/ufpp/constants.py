from . import logging as ufpp_logging

NAME = "ufpp"
"""Software name"""

LOGGER = ufpp_logging.get_logger(NAME)
"""Global logger"""

REPAIR_LOGGER = ufpp_logging.get_repair_logger(LOGGER)
"""Logger for activations of the tiny-task feasibility repair"""

INSTANCE_HEADER = "ufpp v1"
GRAPH_HEADER = "graph v1"
SOLUTION_SCHEMA = "ufpp-solution v1"
BENCH_SCHEMA = "v1"

INTEGER_BITS = 64
"""Checked arithmetic refuses any intermediate outside the signed range"""

DEFAULT_STATE_BUDGET = 2_000_000
STATE_BUDGET_ENVIRONMENT_VARIABLE = "UFPP_STATE_BUDGET"

BRUTE_FORCE_TASK_CAP = 24
MIS_VERTEX_CAP = 24

ALGORITHM_TUPLE = ("main", "fast", "large", "small", "ra", "exact")
EXACT_METHOD_TUPLE = ("brute", "sweep", "its")
