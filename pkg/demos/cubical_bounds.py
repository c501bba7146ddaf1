"""Finite-size bounds for the mean lifetime sum on cubical lattices.

For the box [0, n]^(l+1) the mean lifetime sum sits between
N (N + 1) / (2 (m + 1)), with N the spanning acycle size and m the number
of l-cells, and the number of (l-1)-cells.
"""

from acyclica.experiments import experiment_cubical_bounds

for ell, n in ((1, 1), (1, 4), (1, 8), (2, 2)):
    rep = experiment_cubical_bounds(ell, n, trials=2000, seed=n)
    exact = f" exact={rep.exact}" if rep.exact is not None else ""
    print(
        f"l={ell} n={n}: {float(rep.lower):8.3f} <= {rep.mean:8.3f} +/- {rep.stderr:.3f} <= {rep.upper:4d}"
        f"  passed={rep.passed}{exact}"
    )
