"""Cosmic-photon random number generation, randomness testing and Bell-test planning."""

import json

from ._cosmicrng import *  # noqa: F401,F403
from ._cosmicrng import Error, reference_feasibility as _reference_feasibility, run_battery as _run_battery


def battery(data: bytes, sequences: int, seq_len: int, threads: int = 0) -> dict:
    """Run the randomness battery and return the parsed report."""
    return json.loads(_run_battery(data, sequences, seq_len, threads))


def feasibility() -> dict:
    """Feasibility report for the built-in two-source configuration."""
    return json.loads(_reference_feasibility())


__version__ = "0.1.0"
