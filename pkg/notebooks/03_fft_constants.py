# %% [markdown]
# # Leading constants of three FFTs
#
# Split-radix, the modified split-radix, and the version that pulls all
# pre-recursion additions into H' and runs them through H8.

# %%
from fractions import Fraction

import numpy as np

from whufft import fft_sr, msr, whufft, with_tally
from whufft.predictors import predict, reduction_constant

rng = np.random.default_rng(0)
z = rng.standard_normal(1024) + 1j * rng.standard_normal(1024)
ref = np.fft.fft(z)
for fn in (fft_sr, msr, whufft):
    print(fn.__name__, np.max(np.abs(fn(z) - ref)))

# %% [markdown]
# Counts per N log2 N. Convergence is slow because the second-order terms
# are of order N.

# %%
for t in (10, 14, 18):
    n = 1 << t
    row = [with_tally(fn, np.ones(n, dtype=complex))[1].total() / (n * t) for fn in (fft_sr, msr, whufft)]
    print(t, ["%.4f" % r for r in row], float(predict("whufft", t).value) / (n * t))

# %% [markdown]
# A WHT with constant c yields an FFT with constant 2c/3 + 28/9.

# %%
print(reduction_constant(1), reduction_constant(Fraction(23, 24)))
