"""Blind rendezvous channel-hopping schedules, simulation and oracles."""
from .coloring import color_edge, verify_ramsey
from .schedules import Schedule, general_schedule, pair_schedule, symmetric_wrap
from .simulator import simulate_pair, sweep_shifts
from .strings import decode_async, encode_async, encode_sync

__all__ = [
    "Schedule",
    "color_edge",
    "decode_async",
    "encode_async",
    "encode_sync",
    "general_schedule",
    "pair_schedule",
    "simulate_pair",
    "sweep_shifts",
    "symmetric_wrap",
    "verify_ramsey",
]
__version__ = "0.1.0"
