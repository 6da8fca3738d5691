# %% [markdown]
# # Kirchhoff's frame on S^7
#
# From an almost complex structure on `S^6` one builds, on `S^7`, the map
# `sigma~_x = alpha Id + beta J~_y` for `x = alpha e + beta y`.  Its columns
# (minus the first) are seven tangent vector fields, linearly independent
# everywhere.  For the octonionic structure the construction is right
# multiplication.

# %%
import numpy as np

from kirchlab import algebra
from kirchlab.acs import DeformedAcs, octonionic_acs, rotated_octonionic_acs
from kirchlab.geometry import gram_determinant, pole, sample_sphere
from kirchlab.kirchhoff import frame_field, kirchhoff_frame, sigma_tilde_matrices

J = octonionic_acs()
xs = sample_sphere(np.random.default_rng(42), 500, 8)
S = sigma_tilde_matrices(J, xs)
print("sigma~_x(e) = x:", np.abs(S @ pole(8) - xs).max())
print("sigma~_x = R_x:  ", np.abs(S - algebra.right_matrix(xs)).max())

# %% [markdown]
# A rotated copy of the structure gives an orthogonal frame as well; a
# non-hermitian deformation gives a frame that is still a frame but no longer
# orthonormal.

# %%
for name, Jm in [("rotated", rotated_octonionic_acs(42)),
                 ("deformed", DeformedAcs(J, np.arange(1.0, 8.0), 0.5))]:
    F = kirchhoff_frame(Jm)
    grams = [gram_determinant(F(x)) for x in xs[:200]]
    orth = max(np.abs(F(x).T @ F(x) - np.eye(7)).max() for x in xs[:200])
    print(f"{name:<9} min Gram det {min(grams):.3e}  max |F^T F - I| {orth:.2e}")

# %% [markdown]
# The explicit formula for the fields agrees with the columns of `sigma~_x`.

# %%
x = xs[0]
print(max(np.abs(frame_field(J, i, x) - S[0, :, i]).max() for i in range(1, 8)))
