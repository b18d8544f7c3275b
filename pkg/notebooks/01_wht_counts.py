# %% [markdown]
# # Counting a Walsh-Hadamard transform
#
# Three fast WHTs compute the same vector. They differ in how many
# additions, halvings and power-of-2 scalings they spend.

# %%
import numpy as np

from whufft import with_tally, wht_folklore, wht_h4, wht_h8, wht_naive
from whufft.predictors import crossover, predict

x = np.arange(8.0)
print(wht_naive(x))
print(wht_h8(x))

# %% [markdown]
# Run each kernel under a tally. The folklore butterfly costs exactly
# N log2 N additions. H8 spends 22 additions and one halving per 8-point block.

# %%
for t in (3, 6, 12):
    n = 1 << t
    for fn in (wht_folklore, wht_h4, wht_h8):
        tally = with_tally(fn, np.ones(n))[1]
        print(f"N=2^{t:<2} {fn.__name__:13} {tally}  total/(N log N) = {tally.total() / (n * t):.4f}")

# %% [markdown]
# The lower leading constant of H8 (23/24) only pays off once it covers
# the N extra scalings.

# %%
print("h8 beats folklore from log2 N =", crossover("h8", "folklore", 40))
print(predict("h8", 24).total, predict("folklore", 24).total)
