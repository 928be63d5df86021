"""Exhaustive segment search, transcript verification and lower-bound
constructions for size Ramsey numbers of cycles versus paths."""
from .config import HAS_BLUE, NOT_RRR_RRB, EndpointPredicate, SearchConfig
from .core import Color, PowerPathGraph, UpColoring, edge_color, edge_count
from .search import SearchBudgetExceeded, SearchOutcome, segment_search
from .verify import VerificationReport, check_counterexample, verify_file

__all__ = [
    "Color", "EndpointPredicate", "HAS_BLUE", "NOT_RRR_RRB", "PowerPathGraph",
    "SearchBudgetExceeded", "SearchConfig", "SearchOutcome", "UpColoring",
    "VerificationReport", "check_counterexample", "edge_color", "edge_count",
    "segment_search", "verify_file",
]
