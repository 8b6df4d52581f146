# %% [markdown]
# # Self-maps of the disk and their weighted composition operators
#
# A map is a chain of primitives (scalings, disk automorphisms, polynomials)
# applied left to right.  The operator W f = sqrt(phi') (f o phi) is
# represented by its action on monomials, read off from boundary samples.

# %%
import numpy as np

from hspec import HoloMap, Mobius, Poly, build_wco, compose_check, adjoint_kernel_action
from hspec import corpus

quad = corpus.get("quadratic").map
print(quad.to_json())
print("phi(1) =", quad(1.0), " contact:", quad.has_contact())

# %% [markdown]
# The square root of the derivative is continued along radii from the
# chosen value at the origin, so it stays continuous even when phi' winds.

# %%
wavy = corpus.get("wavy").map
z = 0.99 * np.exp(2j * np.pi * np.arange(8) / 8)
print(np.round(wavy.sqrt_derivative(z), 4))

# %% [markdown]
# Automorphisms give unitary operators, and composition is respected once
# the branches are matched.

# %%
mob = HoloMap((Mobius(0.4 - 0.2j, 1.0),))
W = build_wco(mob, 16)
print("||W^*W - I|| =", np.abs(W.conj().T @ W - np.eye(16)).max())
print("composition defect:", compose_check(mob, quad, 32))

# %% [markdown]
# The adjoint sends reproducing kernels to multiples of reproducing kernels.

# %%
pred, comp = adjoint_kernel_action(quad, 0.6 + 0.3j, 64)
print("kernel identity defect:", np.abs(pred - comp).max())
