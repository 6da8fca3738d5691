# %% [markdown]
# # Are the structure functions constant?
#
# A global frame defines a flat connection whose torsion has components
# `T^i_jk = -theta^i([X_j, X_k])`.  On a Lie group with a left-invariant frame
# they are constant.  On `S^3` the Kirchhoff frame is such a frame; on `S^7`
# the octonionic frame is not.

# %%
import numpy as np

from kirchlab import algebra
from kirchlab.acs import quaternionic_acs
from kirchlab.geometry import pole
from kirchlab.kirchhoff import kirchhoff_frame
from kirchlab.parallelism import classical_frame, classical_structure_functions, constancy_scan

s3 = constancy_scan(kirchhoff_frame(quaternionic_acs()), 200, seed=42)
s7 = constancy_scan(classical_frame(3), 200, seed=42)
print(f"S^3 max deviation {s3.max_deviation:.2e}")
print(f"S^7 max deviation {s7.max_deviation:.3f}  (flagged samples: {s7.flagged})")

# %% [markdown]
# At the poles `+-1` the octonionic structure functions reduce to `2 a_ijk`.

# %%
a = algebra.structure_constants(3)
print(np.array_equal(classical_structure_functions(pole(8)), 2 * np.einsum("ijk->kij", a)))

# %% [markdown]
# The components that move the most across the sphere:

# %%
comps = sorted(s7.components(), key=lambda c: -c["max_dev"])[:8]
for c in comps:
    print(f"T^{c['i']}_{c['j']}{c['k']}: mean {c['mean']:+.3f}  spread {c['max_dev']:.3f}")
