"""Exact inertia counts, floating spectra, and the median-eigenvalue index.

Counts were frozen from an independent oracle (exact characteristic
polynomial via sympy, Sturm-isolated real roots, exact comparisons); the
same oracle runs live on seeded random graphs as a property check.
"""

import math
import random
from fractions import Fraction

import pytest
import sympy

from hlspec.graph_core import Graph
from hlspec.named import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    heawood_graph,
    path_graph,
    paw_graph,
    petersen_graph,
    prism_graph,
    star_graph,
)
from hlspec.spectra import (
    CERTIFIED_GT_ONE,
    CERTIFIED_LE_ONE,
    FLOAT_ONLY,
    SQRT2,
    Sqrt2Rational,
    certify_R_le,
    check_edge_partition_bounds,
    check_interlacing,
    count_at_threshold,
    hl_index,
    median_positions,
    parse_threshold,
    spectrum,
    threshold_token,
)
from hlspec.graph_core import EdgeSet


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


_X = sympy.Symbol("x")


def oracle_counts(g: Graph, t) -> tuple[int, int, int]:
    """Independent route: exact charpoly real roots, exact comparisons."""
    p = sympy.Matrix(g.adjacency_rows()).charpoly(_X)
    roots = sympy.Poly(p.as_expr(), _X).real_roots()
    above = sum(1 for r in roots if (r - t).is_positive)
    at = sum(1 for r in roots if (r - t).is_zero)
    below = sum(1 for r in roots if (r - t).is_negative)
    return (above, at, below)


NAMED = {
    "paw": paw_graph,
    "petersen": petersen_graph,
    "heawood": heawood_graph,
    "c5": lambda: cycle_graph(5),
    "c6": lambda: cycle_graph(6),
    "k23": lambda: complete_bipartite(2, 3),
    "k33": lambda: complete_bipartite(3, 3),
    "k4": lambda: complete_graph(4),
    "p7": lambda: path_graph(7),
    "prism": prism_graph,
    "star6": lambda: star_graph(6),
}

# frozen from the exact-root oracle: (above, at, below) per threshold token
ORACLE_COUNTS = {
    "paw": {"0": (2, 0, 2), "1": (1, 0, 3), "-1": (2, 1, 1), "sqrt2": (1, 0, 3), "-sqrt2": (3, 0, 1)},
    "petersen": {"0": (6, 0, 4), "1": (1, 5, 4), "-1": (6, 0, 4), "sqrt2": (1, 0, 9), "-sqrt2": (6, 0, 4)},
    "heawood": {"0": (7, 0, 7), "1": (7, 0, 7), "-1": (7, 0, 7), "sqrt2": (1, 6, 7), "-sqrt2": (7, 6, 1)},
    "c5": {"0": (3, 0, 2), "1": (1, 0, 4), "-1": (3, 0, 2), "sqrt2": (1, 0, 4), "-sqrt2": (3, 0, 2)},
    "c6": {"0": (3, 0, 3), "1": (1, 2, 3), "-1": (3, 2, 1), "sqrt2": (1, 0, 5), "-sqrt2": (5, 0, 1)},
    "k23": {"0": (1, 3, 1), "1": (1, 0, 4), "-1": (4, 0, 1), "sqrt2": (1, 0, 4), "-sqrt2": (4, 0, 1)},
    "k33": {"0": (1, 4, 1), "1": (1, 0, 5), "-1": (5, 0, 1), "sqrt2": (1, 0, 5), "-sqrt2": (5, 0, 1)},
    "k4": {"0": (1, 0, 3), "1": (1, 0, 3), "-1": (1, 3, 0), "sqrt2": (1, 0, 3), "-sqrt2": (4, 0, 0)},
    "p7": {"0": (3, 1, 3), "1": (2, 0, 5), "-1": (5, 0, 2), "sqrt2": (1, 1, 5), "-sqrt2": (5, 1, 1)},
    "prism": {"0": (2, 2, 2), "1": (1, 1, 4), "-1": (4, 0, 2), "sqrt2": (1, 0, 5), "-sqrt2": (4, 0, 2)},
    "star6": {"0": (1, 5, 1), "1": (1, 0, 6), "-1": (6, 0, 1), "sqrt2": (1, 0, 6), "-sqrt2": (6, 0, 1)},
}

# frozen from the exact-root oracle: the index value per named graph
ORACLE_R = {
    "paw": 1.0,
    "petersen": 1.0,
    "heawood": 1.414213562373,
    "c5": 0.618033988750,
    "c6": 1.0,
    "k23": 0.0,
    "k33": 0.0,
    "k4": 1.0,
    "p7": 0.0,
    "prism": 0.0,
    "star6": 0.0,
}


# ---------------------------------------------------------------------------
# exact ring with sqrt(2)
# ---------------------------------------------------------------------------

def test_sqrt2_rational_arithmetic():
    a = Sqrt2Rational.make(1, 2)  # 1 + 2*sqrt2
    b = Sqrt2Rational.make(3, -1)  # 3 - sqrt2
    assert a + b == Sqrt2Rational.make(4, 1)
    assert a - b == Sqrt2Rational.make(-2, 3)
    # (1 + 2s)(3 - s) = 3 - s + 6s - 2*2 = -1 + 5s
    assert a * b == Sqrt2Rational.make(-1, 5)
    assert a * 0 == Sqrt2Rational.make(0, 0)
    assert (a / a) == Sqrt2Rational.make(1, 0)
    assert float(SQRT2) == pytest.approx(math.sqrt(2), abs=1e-15)


def test_sqrt2_rational_division_inverse():
    a = Sqrt2Rational.make(Fraction(5, 3), Fraction(-7, 2))
    assert a / a == Sqrt2Rational.make(1, 0)
    assert (a * 2) / 2 == a
    one = Sqrt2Rational.make(1, 0)
    assert one / SQRT2 == Sqrt2Rational.make(0, Fraction(1, 2))


def test_sqrt2_rational_exact_sign_near_zero():
    # continued-fraction convergents of sqrt2 sit on alternating sides,
    # so these are within 1e-2 of zero but have known exact signs
    assert Sqrt2Rational.make(-99, 70).sign() == -1  # 70*sqrt2 = 98.9949...
    assert Sqrt2Rational.make(-140, 99).sign() == 1  # 99*sqrt2 = 140.0071...
    assert Sqrt2Rational.make(0, 0).sign() == 0
    assert not Sqrt2Rational.make(0, 0)
    assert Sqrt2Rational.make(0, -1).sign() == -1


def test_threshold_token_round_trip():
    for t in (Fraction(1), Fraction(-1), Fraction(0), Fraction(7, 5), SQRT2, -SQRT2):
        token = threshold_token(t)
        back = parse_threshold(token)
        assert float(back) == pytest.approx(float(t), abs=1e-15)
    assert threshold_token(SQRT2) == "sqrt2"
    assert threshold_token(-SQRT2) == "-sqrt2"
    assert parse_threshold("3/2") == Fraction(3, 2)


# ---------------------------------------------------------------------------
# exact inertia counts
# ---------------------------------------------------------------------------

TOKENS = {"0": Fraction(0), "1": Fraction(1), "-1": Fraction(-1), "sqrt2": SQRT2, "-sqrt2": -SQRT2}


@pytest.mark.parametrize("tag", sorted(NAMED))
def test_counts_match_frozen_oracle(tag):
    g = NAMED[tag]()
    for token, t in TOKENS.items():
        count = count_at_threshold(g, t)
        assert (count.above, count.at, count.below) == ORACLE_COUNTS[tag][token], (tag, token)
        assert count.total == g.n


@pytest.mark.parametrize("seed", range(24))
def test_counts_match_live_oracle_random(seed):
    rng = random.Random(seed)
    g = random_graph(rng.randint(1, 8), rng.uniform(0.2, 0.7), seed=seed + 4000)
    pairs = [
        (Fraction(0), sympy.Integer(0)),
        (Fraction(1), sympy.Integer(1)),
        (Fraction(-1), sympy.Integer(-1)),
        (SQRT2, sympy.sqrt(2)),
        (Fraction(1, 2), sympy.Rational(1, 2)),
    ]
    for ours_t, oracle_t in pairs:
        count = count_at_threshold(g, ours_t)
        assert (count.above, count.at, count.below) == oracle_counts(g, oracle_t)


@pytest.mark.parametrize("seed", range(12))
def test_counts_invariant_under_relabeling(seed):
    rng = random.Random(seed + 7777)
    g = random_graph(rng.randint(2, 9), 0.45, seed=seed + 300)
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    for t in (Fraction(0), Fraction(1), SQRT2):
        a, b = count_at_threshold(g, t), count_at_threshold(h, t)
        assert (a.above, a.at, a.below) == (b.above, b.at, b.below)


def test_counts_agree_with_floating_spectrum_away_from_threshold():
    for seed in range(10):
        g = random_graph(8, 0.5, seed=seed + 2000)
        s = spectrum(g)
        for t in (Fraction(1, 3), Fraction(-3, 4)):
            tf = float(t)
            if any(abs(v - tf) < 1e-6 for v in s.values):
                continue
            count = count_at_threshold(g, t)
            assert count.above == sum(1 for v in s.values if v > tf)
            assert count.at == 0


# ---------------------------------------------------------------------------
# floating spectrum
# ---------------------------------------------------------------------------

def test_paw_spectrum_frozen():
    # eigenvalues of the triangle-with-pendant graph, oracle-computed
    vals = spectrum(paw_graph()).values
    expected = (2.17008648663, 0.311107817466, -1.0, -1.48119430410)
    assert vals == pytest.approx(expected, abs=1e-9)


def test_cycle_spectrum_closed_form():
    n = 9
    vals = sorted(spectrum(cycle_graph(n)).values)
    expected = sorted(2 * math.cos(2 * math.pi * k / n) for k in range(n))
    assert vals == pytest.approx(expected, abs=1e-9)


def test_complete_bipartite_spectrum_closed_form():
    vals = spectrum(complete_bipartite(2, 3)).values
    root6 = math.sqrt(6)
    assert vals == pytest.approx((root6, 0.0, 0.0, 0.0, -root6), abs=1e-9)


def test_spectrum_empty_and_indexing():
    assert spectrum(empty_graph(0)).values == ()
    s = spectrum(path_graph(3))
    with pytest.raises(ValueError):
        s.value(0)
    with pytest.raises(ValueError):
        s.value(4)
    assert s.value(1) == pytest.approx(math.sqrt(2))


# ---------------------------------------------------------------------------
# median positions and the index
# ---------------------------------------------------------------------------

def test_median_positions():
    assert median_positions(1) == (1, 1)
    assert median_positions(2) == (1, 2)
    assert median_positions(5) == (3, 3)
    assert median_positions(14) == (7, 8)
    with pytest.raises(ValueError):
        median_positions(0)


@pytest.mark.parametrize("tag", sorted(NAMED))
def test_hl_index_matches_frozen_oracle(tag):
    g = NAMED[tag]()
    idx = hl_index(g)
    assert idx.value == pytest.approx(ORACLE_R[tag], abs=1e-9)
    h, l = median_positions(g.n)
    assert (idx.h, idx.l) == (h, l)
    expected_tag = CERTIFIED_LE_ONE if ORACLE_R[tag] <= 1.0 else CERTIFIED_GT_ONE
    assert idx.exact_le_one == expected_tag


def test_hl_index_float_only_mode():
    assert hl_index(paw_graph(), exact=False).exact_le_one == FLOAT_ONLY


def test_hl_index_rejects_empty():
    with pytest.raises(ValueError):
        hl_index(empty_graph(0))


# ---------------------------------------------------------------------------
# bound certificates
# ---------------------------------------------------------------------------

def test_certificate_at_boundary_counts_as_satisfying():
    # C6 has median eigenvalues exactly +1 and -1
    cert = certify_R_le(cycle_graph(6), 1)
    assert cert.holds
    assert cert.at_upper.at == 2 and cert.at_lower.at == 2


def test_certificate_heawood():
    g = heawood_graph()
    assert not certify_R_le(g, 1).holds
    assert certify_R_le(g, SQRT2).holds
    # strictly below sqrt2 must fail: the median pair sits exactly at it
    assert not certify_R_le(g, Fraction(14142135, 10000000)).holds


def test_certificate_zero_bound_means_zero_median_pair():
    assert certify_R_le(complete_bipartite(3, 3), 0).holds
    assert not certify_R_le(cycle_graph(5), 0).holds


@pytest.mark.parametrize("seed", range(15))
def test_certificate_consistent_with_floating_r(seed):
    g = random_graph(random.Random(seed).randint(1, 9), 0.4, seed=seed + 600)
    idx = hl_index(g, exact=False)
    if certify_R_le(g, 1).holds:
        assert idx.value <= 1.0 + 1e-6
    else:
        assert idx.value > 1.0 - 1e-6


# ---------------------------------------------------------------------------
# interlacing and edge-partition bounds
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(30))
def test_interlacing_random_instances(seed):
    rng = random.Random(seed + 31337)
    g = random_graph(rng.randint(2, 10), rng.uniform(0.2, 0.8), seed=seed + 800)
    k = rng.randint(1, max(1, g.n - 1))
    deleted = set(rng.sample(range(g.n), k))
    check = check_interlacing(g, deleted)
    assert check.passed, (sorted(g.edges()), deleted, check.worst_slack)
    assert check.k == len(deleted)


def test_interlacing_known_case():
    check = check_interlacing(petersen_graph(), {0})
    assert check.passed and check.k == 1


@pytest.mark.parametrize("seed", range(25))
def test_edge_partition_bounds_random(seed):
    rng = random.Random(seed + 99)
    g = random_graph(rng.randint(2, 9), rng.uniform(0.3, 0.8), seed=seed + 1500)
    edges = list(g.edges())
    if not edges:
        return
    chosen = [e for e in edges if rng.random() < 0.5]
    part = EdgeSet.of(g, chosen)
    i = rng.randint(1, g.n)
    j = rng.randint(1, g.n)
    check = check_edge_partition_bounds(g, part, i, j)
    assert check.passed, (sorted(g.edges()), chosen, i, j)
    assert (check.upper is not None) == (i >= j)
    assert (check.lower is not None) == (i <= j)


def test_edge_partition_rejects_bad_indices():
    g = cycle_graph(4)
    part = EdgeSet.of(g, [(0, 1)])
    with pytest.raises(ValueError):
        check_edge_partition_bounds(g, part, 0, 1)
    with pytest.raises(ValueError):
        check_edge_partition_bounds(g, part, 1, 5)
