"""Certified speed and entropy bounds for one-tape Turing machines."""

import json
from fractions import Fraction

from ._tmdyn import (
    BudgetExceeded,
    Machine,
    ParseError,
    __version__,
    bk_graph as _bk_graph,
    entropy_lower as _entropy_lower,
    entropy_upper as _entropy_upper,
    spectral_enclosure,
)
from . import _tmdyn

__all__ = [
    "BudgetExceeded",
    "Machine",
    "ParseError",
    "__version__",
    "approximate_entropy",
    "approximate_speed",
    "bk_graph",
    "crossing_graph",
    "entropy_lower",
    "entropy_upper",
    "spectral_enclosure",
    "speed_lower",
    "speed_upper",
]

NODES = 200_000_000
SECONDS = 120.0


def speed_upper(machine, n, nodes=NODES, seconds=SECONDS):
    return Fraction(*_tmdyn.speed_upper_raw(machine, n, nodes, seconds))


def entropy_upper(machine, n, nodes=NODES, seconds=SECONDS):
    return _entropy_upper(machine, n, nodes, seconds)


def speed_lower(machine, k, nodes=NODES, seconds=SECONDS):
    return Fraction(*_tmdyn.speed_lower_raw(machine, k, nodes, seconds))


def entropy_lower(machine, k, delta=1e-3, nodes=NODES, seconds=SECONDS):
    return _entropy_lower(machine, k, delta, nodes, seconds)


def crossing_graph(machine, k, nodes=NODES, seconds=SECONDS):
    return json.loads(_tmdyn.crossing_graph_json(machine, k, nodes, seconds))


def bk_graph(machine, k, nodes=NODES, seconds=SECONDS):
    """(vertex count, [(from, to), ...]) of the B_k follower graph."""
    return _bk_graph(machine, k, nodes, seconds)


def _approximate(machine, quantity, eps, nodes, seconds, max_n, max_k):
    return json.loads(_tmdyn.approximate_json(machine, quantity, eps, nodes, seconds, max_n, max_k))


def approximate_speed(machine, eps=0.1, nodes=NODES, seconds=SECONDS, max_n=1024, max_k=31):
    return _approximate(machine, "speed", eps, nodes, seconds, max_n, max_k)


def approximate_entropy(machine, eps=0.1, nodes=NODES, seconds=SECONDS, max_n=1024, max_k=31):
    return _approximate(machine, "entropy", eps, nodes, seconds, max_n, max_k)
