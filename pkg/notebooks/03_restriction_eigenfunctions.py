# %% [markdown]
# # Eigenfunctions of the restriction operator
#
# The Gram matrix of the monomials on the image boundary equals W^*W.  Its
# eigenvalues above 1 are isolated; the map (z + 0.11 z^8)/1.11 has a long
# wiggly boundary touching the circle seven times and shows several of them.

# %%
import numpy as np

from hspec import count_zeros, eval_eigenfunction, gram_matrix, top_eigenpairs
from hspec import compare_moduli, semigroup_deformation
from hspec import corpus

wavy = corpus.get("wavy").map
print("modulus identity defect:", compare_moduli(wavy, 128, 1024, trusted_only=False))
pairs = top_eigenpairs(gram_matrix(wavy, 512))
for p in pairs:
    zc = count_zeros(p.coeffs, 0.999).count
    print(f"n={p.index} lambda={p.lam:.6f} trusted={p.trusted} zeros={zc}")

# %% [markdown]
# The eigenfunction satisfies an integral equation over the image boundary;
# evaluating that integral reproduces the polynomial.

# %%
d, b = eval_eigenfunction(pairs[0], 0.5 + 0.2j, wavy, 4096)
print("direct", d, " via boundary integral", b)

# %% [markdown]
# Shrinking the map to phi(t z) makes the image compact in the disk; the
# n-th eigenfunction then has exactly n zeros, and singular values grow with t.

# %%
res = semigroup_deformation(corpus.get("quadratic").map, [0.5, 0.8, 0.95, 1.0], 128, max_index=5)
for r in res.rows:
    print(r)
print(res.checks)
