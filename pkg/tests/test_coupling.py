from __future__ import annotations

import json
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from acyclica.complex import cycle_graph, simplicial_skeleton
from acyclica.coupling import (
    GibbsKernel,
    all_cochains,
    es_gibbs_sampler,
    es_joint_distribution,
    es_marginal_check,
    potts_hamiltonian,
    rc_marginal,
    sampler_csv,
)
from acyclica.homology import betti
from acyclica.random_cluster import RCParams, rc_distribution

F = Fraction


def batch_mean(values: np.ndarray, batches: int = 100) -> tuple[float, float]:
    chunks = np.array_split(np.asarray(values, dtype=float), batches)
    means = np.array([c.mean() for c in chunks])
    return means.mean(), means.std(ddof=1) / np.sqrt(batches)


def test_single_edge_table(edge):
    J = es_joint_distribution(edge, F(1, 2), 2, 1)
    assert len(J.sat) * 2 == 8
    constant = [i for i, s in enumerate(J.cochains) if s[0] == s[1]]
    other = [i for i in range(4) if i not in constant]
    for i in constant:
        assert J.weight(i, 1) == F(1, 2) and J.weight(i, 0) == F(1, 2)
    for i in other:
        assert J.weight(i, 1) == 0 and J.weight(i, 0) == F(1, 2)
    assert J.Z == 3
    assert rc_marginal(J)[1] == F(1, 3)
    assert sum(pr for *_, pr in J.support()) == 1


def test_cochain_indexing():
    S = all_cochains(3, 2)
    assert S[1].tolist() == [1, 0, 0] and S[4].tolist() == [0, 0, 1]
    assert all_cochains(0, 3).shape == (1, 0)


def test_degenerate_p(edge):
    X = cycle_graph(3)
    J0 = es_joint_distribution(X, 0, 3, 1)
    probs = {(s, m): pr for s, m, pr in J0.support()}
    assert set(m for _, m in probs) == {0}
    assert set(probs.values()) == {F(1, 27)}
    J1 = es_joint_distribution(X, 1, 3, 1)
    supp = list(J1.support())
    # the cocycles of a connected graph are the constant cochains
    assert len(supp) == 3 and all(m == 7 and pr == F(1, 3) for _, m, pr in supp)


def test_rejects_non_prime_and_cap():
    with pytest.raises(ValueError):
        es_joint_distribution(cycle_graph(3), F(1, 2), 4, 1)
    with pytest.raises(ValueError, match="cap"):
        es_joint_distribution(simplicial_skeleton(6, 1), F(1, 2), 5, 1, cap=1000)


def test_potts_hamiltonian(edge):
    X = cycle_graph(5)
    assert potts_hamiltonian(X, 1, [2] * 5, 3) == -5
    assert potts_hamiltonian(edge, 1, [0, 1], 2) == 0
    D = simplicial_skeleton(4, 2)
    # a coboundary is a cocycle, so it satisfies every 2-cell
    s = np.array([1, 0, 2, 0]) @ D.boundary_matrix(1).toarray() % 3
    assert potts_hamiltonian(D, 2, s, 3) == -4


@pytest.mark.parametrize(
    "X,ell,p,q",
    [
        (None, 1, F(1, 2), 2),
        (cycle_graph(4), 1, F(1, 3), 2),
        (cycle_graph(4), 1, F(2, 7), 3),
        (simplicial_skeleton(4, 1), 1, F(1, 2), 5),
        (simplicial_skeleton(4, 2), 2, F(1, 2), 3),
        (simplicial_skeleton(4, 2), 2, F(1, 5), 2),
    ],
)
def test_marginals_exact(X, ell, p, q, edge):
    X = X if X is not None else edge
    assert es_marginal_check(X, p, q, ell) == (0, 0)


def test_rc_marginal_is_random_cluster_for_graphs():
    X = cycle_graph(4)
    J = es_joint_distribution(X, F(1, 3), 2, 1)
    assert rc_marginal(J) == rc_distribution(X, RCParams(F(1, 3), 2, 1)).probabilities()


def test_sampler_reproducible_and_validated(edge):
    a = list(es_gibbs_sampler(cycle_graph(4), F(1, 2), 2, 1, 50, seed=9))
    b = list(es_gibbs_sampler(cycle_graph(4), F(1, 2), 2, 1, 50, seed=9))
    assert a == b
    for bad in (0, 1):
        with pytest.raises(ValueError):
            next(es_gibbs_sampler(edge, bad, 2, 1, 1, 0))


def test_sampler_states_are_consistent():
    X = simplicial_skeleton(4, 2)
    for s, mask in es_gibbs_sampler(X, F(1, 2), 3, 2, 200, seed=2):
        # the cochain must be a cocycle on every open cell
        assert potts_hamiltonian(X, 2, s, 3) <= -bin(mask).count("1")


def test_single_edge_open_frequency(edge):
    exact = float(rc_marginal(es_joint_distribution(edge, F(1, 2), 2, 1))[1])
    opens = np.array([m for _, m in es_gibbs_sampler(edge, F(1, 2), 2, 1, 10**5, seed=4)])
    mean, se = batch_mean(opens)
    assert abs(mean - exact) < 3 * se


def test_cycle_beta_histogram():
    X = cycle_graph(4)
    exact = rc_distribution(X, RCParams(F(1, 2), 2, 1))
    hist_exact = {}
    for m, pr in enumerate(exact.probabilities()):
        hist_exact[exact.betti[m]] = hist_exact.get(exact.betti[m], 0) + pr
    beta = np.array([exact.betti[m] for _, m in es_gibbs_sampler(X, F(1, 2), 2, 1, 10**5, seed=6)])
    for b, pr in hist_exact.items():
        mean, se = batch_mean(beta == b)
        assert abs(mean - float(pr)) < 3 * se


def test_one_sweep_preserves_the_joint_law():
    X = cycle_graph(4)
    J = es_joint_distribution(X, F(1, 2), 2, 1)
    states = list(J.support())
    probs = np.array([float(pr) for *_, pr in states])
    index = {(si, m): i for i, (si, m, _) in enumerate(states)}
    rng = np.random.default_rng(12)
    n = 10**5
    draws = rng.choice(len(states), size=n, p=probs / probs.sum())
    kernel = GibbsKernel(X, F(1, 2), 2, 1)
    weights = 2 ** np.arange(4)
    counts = np.zeros(len(states))
    for d in draws:
        si, _, _ = states[d]
        s, mask = kernel.sweep(J.cochains[si], rng)
        counts[index[(int(s @ weights), mask)]] += 1
    pvalue = stats.chisquare(counts, probs * n).pvalue
    assert pvalue > 1e-3


def test_sampler_csv():
    text = sampler_csv(cycle_graph(4), F(1, 2), 2, 1, 5, seed=1)
    lines = text.splitlines()
    assert json.loads(lines[0]) == {"p": "1/2", "q": 2, "l": 1, "seed": 1}
    assert lines[1] == "sweep,mask,beta" and len(lines) == 7
    X = cycle_graph(4)
    for row in lines[2:]:
        _, mask, beta = map(int, row.split(","))
        assert beta == betti(X, 0, ell=1, cells=mask)
