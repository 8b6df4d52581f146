# %% [markdown]
# # Exterior powers and the second quantization
#
# The norm of the n-th exterior power of a matrix is the product of its n
# largest singular values.  For W the products of max(1, s_n) decide whether
# the induced operator on the antisymmetric Fock space is bounded.

# %%
import numpy as np

from hspec import exterior_power, fock_norm, lambda_norm_formula_check, singular_values
from hspec import build_wco, split_contraction_trace
from hspec.fock import modulus
from hspec import corpus

rng = np.random.default_rng(0)
a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
for n in range(1, 6):
    print(n, lambda_norm_formula_check(a, n))
b = rng.normal(size=(5, 5))
print("Cauchy-Binet defect:",
      np.abs(exterior_power(a @ b, 2) - exterior_power(a, 2) @ exterior_power(b, 2)).max())

# %% [markdown]
# |W| splits into a contraction plus a positive trace-class part carrying
# the excess of the singular values over 1.

# %%
W = build_wco(corpus.get("wavy").map, 256)
A, X = split_contraction_trace(modulus(W))
print("||A|| =", np.linalg.norm(A, 2), " trace X =", np.trace(X).real)
rep = fock_norm(singular_values(W), trusted_only=False)
print(rep.verdict, rep.lambda_norm_estimate, "vs exp(trace X) =", np.exp(np.trace(X).real))
