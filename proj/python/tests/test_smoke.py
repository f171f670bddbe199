import math
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

import tmdyn

MACHINES = Path(__file__).resolve().parents[2] / "machines"


def load(name):
    return tmdyn.Machine.load(str(MACHINES / name))


def log2_spectral_radius(n, edges):
    a = np.zeros((n, n))
    for u, v in edges:
        a[u, v] += 1
    return math.log2(max(abs(np.linalg.eigvals(a)))) if n else 0.0


def test_parse_round_trip():
    m = load("ticker.tm")
    assert tmdyn.Machine.parse(m.serialize()) == m
    assert m.mirror().mirror() == m
    assert len(m.digest()) == 16


def test_parse_error():
    with pytest.raises(ValueError):
        tmdyn.Machine.parse("states: q\nalphabet: a\n")


def test_ticker_speed_bounds_sandwich():
    m = load("ticker.tm")
    lo = tmdyn.speed_lower(m, 1)
    assert lo == Fraction(1, 2)
    for n in (1, 2, 4, 8):
        assert tmdyn.speed_upper(m, n) >= lo


def test_zigzag_speed_converges_exactly():
    r = tmdyn.approximate_speed(load("zigzag.tm"), eps=0.1)
    assert r["status"] == "converged"
    assert r["lower"] == r["upper"] == "1/1"


def test_ticker_entropy_interval():
    r = tmdyn.approximate_entropy(load("ticker.tm"), eps=0.1)
    assert r["status"] == "converged"
    assert r["lower_value"] <= r["upper_value"] <= r["lower_value"] + 0.1


@pytest.mark.parametrize("name", sorted(p.name for p in MACHINES.glob("*.tm")))
def test_bk_entropy_matches_eigenvalues(name):
    m = load(name)
    n, edges = tmdyn.bk_graph(m, 1)
    lo, hi = tmdyn.spectral_enclosure(n, edges, 1e-6)
    ref = max(0.0, log2_spectral_radius(n, edges))
    assert lo - 1e-7 <= ref <= hi + 1e-7


def test_spectral_enclosure_golden_mean():
    lo, hi = tmdyn.spectral_enclosure(2, [(0, 0), (0, 1), (1, 0)], 1e-9)
    assert lo <= math.log2((1 + 5 ** 0.5) / 2) <= hi


def test_crossing_graph_shape():
    g = tmdyn.crossing_graph(load("zigzag.tm"), 1)
    assert g["k"] == 1
    assert all(0 <= e["source"] < len(g["vertices"]) for e in g["edges"])


def test_budget_exceeded():
    with pytest.raises(RuntimeError):
        tmdyn.speed_upper(load("ticker.tm"), 30, nodes=100)
