# %% [markdown]
# # Singular values and the essential norm
#
# Without boundary contact the operator is compact and its singular values
# decay geometrically.  With contact the essential norm is 1 and the values
# accumulate there from below at a rate like 1/n.

# %%
import numpy as np

from hspec import build_wco, essential_norm_estimate, fit_K, singular_values
from hspec import corpus

for name in ("affine", "half_disk", "quadratic", "wavy"):
    spec = singular_values(build_wco(corpus.get(name).map, 128))
    print(f"{name:10s} s_1..s_4 = {np.round(spec.values[:4], 5)}  trusted {spec.n_trusted:3d}"
          f"  K_hat {fit_K(spec):.3g}")

# %% [markdown]
# The essential norm is read from the norm of W on the tail columns, which
# converges from below; a linear extrapolation in 1/N removes most of the bias.

# %%
for name in ("affine", "half_disk", "quadratic"):
    est = essential_norm_estimate(corpus.get(name).map, (64, 128, 256))
    tails = [round(p["tail_norm"], 4) for p in est.profile]
    print(f"{name:10s} tail norms {tails} -> {est.estimate:.4f}")
