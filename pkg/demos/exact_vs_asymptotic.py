"""Show where the normal and chi-square approximations drift from the exact laws.

For small samples the exact null law is available, and the gap between the
exact and asymptotic tails can be large.
"""

import numpy as np

from npst import friedman, kruskal_wallis, wilcoxon_rank_sum

rng = np.random.default_rng(3)

print("Wilcoxon rank sum, shift of 1.0")
for m in (3, 5, 8):
    out = wilcoxon_rank_sum(rng.normal(size=m), rng.normal(1.0, size=m))
    print(f"  m = n = {m}: exact {out.exact_double_p:.4f}  normal {out.asymptotic_double_p:.4f}")

print("Kruskal-Wallis, three groups")
for size in (2, 3, 4):
    out = kruskal_wallis([rng.normal(d, size=size) for d in (0.0, 0.5, 1.0)])
    print(f"  {size} per group: exact {out.exact_right_p:.4f}  chi-square {out.asymptotic_right_p:.4f}")

print("Friedman, four treatments")
for blocks in (2, 4, 6):
    out = friedman(rng.normal(size=(blocks, 4)) + np.arange(4) * 0.4)
    print(f"  {blocks} blocks: exact {out.exact_right_p:.4f}  chi-square {out.asymptotic_right_p:.4f}")
