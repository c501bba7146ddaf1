"""One filtration, three lifetime sums.

Samples birth times on a small cubical complex and computes the total bar
length of the barcode, the area under the Betti curve and the weight of the
minimum spanning acycle. All three agree exactly.
"""

from acyclica import barcode, cubical_lattice, lifetime_integral, min_spanning_acycle, msa_lifetime, sample_process
from acyclica.filtration import betti_curve

X = cubical_lattice((2, 2), 1)          # 3x3 grid graph
f = sample_process(X, 1, seed=7, exact=True)

bars = barcode(f)
for b, d in bars.pairs[:4]:
    print(f"[{b}, {float(d):.4f})")
print("...", len(bars.pairs), "bars in total")

print("bar sum     ", float(bars.lifetime_sum()))
print("curve area  ", float(lifetime_integral(f)))
print("MSA formula ", float(msa_lifetime(f)))

msa = min_spanning_acycle(f)
print("MSA uses", len(msa.cells), "of", X.n(1), "edges")

# step function of reduced beta_0
for t, beta in betti_curve(f)[:5]:
    print(f"  t >= {float(t):.3f}: beta = {beta}")
