"""Reachability analysis of the scheduling automaton."""

from .engines import ENGINES, acbf_reach, bf_reach
from .levels import acbf_levels, bf_levels
from .lockstep import LockstepResult, engine_lockstep_verify, lockstep_verify
from .report import ReachReport, SearchOptions, Verdict, report_to_json

__all__ = [
    "ENGINES",
    "LockstepResult",
    "ReachReport",
    "SearchOptions",
    "Verdict",
    "acbf_levels",
    "acbf_reach",
    "bf_levels",
    "bf_reach",
    "engine_lockstep_verify",
    "lockstep_verify",
    "report_to_json",
]
