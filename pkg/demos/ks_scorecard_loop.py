"""Pick a scorecard cutoff by the two-sample Kolmogorov-Smirnov distance.

A toy credit-scoring loop: for each candidate cutoff the accepted good
applicants are compared with everyone else, and the cutoff whose groups
separate most (largest Dn) wins.
"""

import numpy as np

from npst import ks_two_sample

rng = np.random.default_rng(11)
scores = rng.normal(600, 50, size=200)
good = scores + rng.normal(0, 40, size=200) > 600

best = None
for cut in np.arange(520, 681, 20):
    accepted = scores[good & (scores >= cut)]
    rest = scores[~good | (scores < cut)]
    out = ks_two_sample(accepted, rest)
    print(f"cutoff {cut:5.0f}  Dn {out['Dn']:.4f}  p {out.asymptotic_double_p:.2e}")
    if best is None or out["Dn"] > best[1]:
        best = (cut, out["Dn"])

print(f"\nbest cutoff {best[0]:.0f} with Dn {best[1]:.4f}")
