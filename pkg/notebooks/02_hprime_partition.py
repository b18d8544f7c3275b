# %% [markdown]
# # H' as a direct sum of WHT blocks
#
# The additions split-radix performs before recursing form a matrix H'.
# In block layout it breaks into independent Walsh-Hadamard blocks.

# %%
import numpy as np

from whufft import apply_hprime, butterfly_permutation, hprime_matrix, lemma_checks, partition
from whufft.hprime import f_table

print(hprime_matrix(8))
print(partition(8).to_lists())
print(butterfly_permutation(16))

# %% [markdown]
# Block sizes follow F(N, M) = F(N/2, M) + F(N/4, M/2).

# %%
for t in range(2, 11, 2):
    print(t, partition(1 << t).sizes(), f_table(t))

# %% [markdown]
# One WHT per block reproduces the matrix exactly.

# %%
rng = np.random.default_rng(1)
z = rng.standard_normal(256) + 1j * rng.standard_normal(256)
print(np.max(np.abs(apply_hprime(z) - hprime_matrix(256) @ z)))

rep = lemma_checks(30)
print(rep.sizes_pass, rep.weighted_pass, round(rep.max_c, 4))
