"""The random-cluster measure on a 4-cycle and its Potts coupling."""

from fractions import Fraction

import numpy as np

from acyclica import cycle_graph, simplicial_skeleton
from acyclica.coupling import es_gibbs_sampler, es_marginal_check
from acyclica.random_cluster import (
    RCParams,
    fkg_lattice_check,
    geometric_schedule,
    rc_distribution,
    rc_partition_identity_check,
    uniform_sa_limit_check,
)

X = cycle_graph(4)
params = RCParams(Fraction(1, 2), 2, 1)
dist = rc_distribution(X, params)
print("Z =", dist.Z)
print("Tutte identity residual:", rc_partition_identity_check(X, params))

# distribution of the number of components
hist = {}
for m, pr in enumerate(dist.probabilities()):
    hist[dist.betti[m]] = hist.get(dist.betti[m], 0) + pr
print({b: str(p) for b, p in sorted(hist.items())})

print("FKG violations at q=2:", len(fkg_lattice_check(X, params)))
print("FKG violations at q=1/4:", len(fkg_lattice_check(X, RCParams(Fraction(1, 2), Fraction(1, 4), 1))))

# both marginals of the coupling are exact
print("marginal residuals:", es_marginal_check(X, Fraction(1, 2), 2, 1))

# a short run of the block Gibbs chain
masks = np.array([m for _, m in es_gibbs_sampler(X, Fraction(1, 2), 2, 1, 20000, seed=3)])
beta = np.array(dist.betti)[masks]
print("sampled:", {int(b): round(float(np.mean(beta == b)), 3) for b in np.unique(beta)})

# p -> 0 with q/p -> 0 concentrates on spanning acycles
tv = uniform_sa_limit_check(simplicial_skeleton(4, 2), 2, geometric_schedule(4))
print("TV to uniform spanning acycles:", [f"{float(v):.1e}" for v in tv])
