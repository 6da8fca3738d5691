# %% [markdown]
# # Multiplications on S^3 and S^7
#
# The frame map gives a product `m^(x, y) = sigma~_x(y)` with two-sided unit
# `e`.  For the octonionic structure it is `y x`.  We sample how far it is from
# associative and from satisfying the Moufang identity.  A zero defect is
# only evidence of strict associativity on the sample; it decides nothing
# about associativity up to homotopy.

# %%
from kirchlab.acs import octonionic_acs, quaternionic_acs, rotated_octonionic_acs
from kirchlab.hspace import HMultiplication, associativity_defect, moufang_defect

for name, J in [("quaternion", quaternionic_acs()), ("octonion", octonionic_acs()),
                ("rotated", rotated_octonionic_acs(42))]:
    m = HMultiplication(J, normalize=False)
    a = associativity_defect(m, 10_000, seed=42)
    mo = moufang_defect(m, 10_000, seed=42)
    print(f"{name:<11} assoc max {a.max:.3e} mean {a.mean:.3e}   Moufang max {mo.max:.1e}")

# %% [markdown]
# Histogram of the octonionic associativity defect.

# %%
rep = associativity_defect(HMultiplication(octonionic_acs(), normalize=False), 10_000, seed=42)
width = max(rep.hist)
for lo, count in zip(rep.bin_edges, rep.hist):
    print(f"{lo:5.2f} {'#' * int(50 * count / width)}")
