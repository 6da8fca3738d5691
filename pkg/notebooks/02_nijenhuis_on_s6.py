# %% [markdown]
# # The almost complex structure on S^6
#
# Right multiplication by a unit imaginary octonion `y` preserves the tangent
# space of `S^6` at `y` and squares to `-1` there.  Its Nijenhuis tensor is
# measured with finite differences and compared against twice the associator.

# %%
import numpy as np

from kirchlab.acs import (calabi_defect, chart_matrix, contract_j, nijenhuis_chart, nijenhuis_fd,
                          octonionic_acs, quaternionic_acs, sample_chart_points, tau_chart)
from kirchlab.geometry import Chart, sample_sphere, sample_tangent
from kirchlab import algebra

J6, J2 = octonionic_acs(), quaternionic_acs()
print(J6.check(500, seed=1))

# %%
rng = np.random.default_rng(42)
errs, sizes = [], []
for a in sample_sphere(rng, 200, 7):
    b, c = sample_tangent(rng, a), sample_tangent(rng, a)
    exact = 2 * algebra.imag_part(algebra.associator(*(algebra.from_imag(v) for v in (a, b, c))))
    N = nijenhuis_fd(J6, a, b, c)
    errs.append(np.linalg.norm(N - exact))
    sizes.append(np.linalg.norm(N))
print(f"|N| ranges over [{min(sizes):.3f}, {max(sizes):.3f}], max error {max(errs):.2e}")

# %% [markdown]
# The same structure on `S^2` comes from the quaternions and is integrable.

# %%
rng = np.random.default_rng(42)
worst = 0.0
for a in sample_sphere(rng, 200, 3):
    worst = max(worst, np.linalg.norm(nijenhuis_fd(J2, a, sample_tangent(rng, a), sample_tangent(rng, a))))
print(f"max |N| on S^2: {worst:.2e}")

# %% [markdown]
# In a stereographic chart the torsion-type tensor `tau` is `-J.N`, and the
# operator `dJdJ - JdJd` applied to a coordinate function picks out one
# component of `tau`.

# %%
chart = Chart(np.eye(7)[-1])
for u in sample_chart_points(np.random.default_rng(0), 3, 6):
    N = nijenhuis_chart(J6, chart, u)
    tau = tau_chart(J6, chart, u)
    cal = calabi_defect(J6, lambda v: v[0], chart, u)
    print(f"|tau + J.N| = {np.abs(tau + contract_j(chart_matrix(J6, chart, u), N)).max():.1e}   "
          f"|calabi - tau^0| = {np.abs(cal - tau[0]).max():.1e}   |calabi| = {np.abs(cal).max():.3f}")
