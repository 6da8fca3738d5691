# %% [markdown]
# # Multiplication tables from doubling
#
# The quaternions and octonions are produced by repeatedly doubling the reals.
# Here we look at the resulting structure constants `a_ijk`, where
# `e_i e_j = -delta_ij + a_ijk e_k`, and check the identities that single out
# the octonions: alternative but not associative.

# %%
import numpy as np

from kirchlab import algebra

# %%
for level in algebra.LEVELS:
    triples = algebra.structure_constant_triples(level)
    print(f"{algebra.NAMES[level]:<10} dim {algebra.dimension(level)}  nonzero a_ijk: {len(triples)}")

# %% [markdown]
# Each octonionic triple `(i, j, k)` with `a_ijk = +1` lies on one of seven
# oriented lines; every pair of imaginary units appears on exactly one.

# %%
lines = sorted({tuple(sorted(t[:3])) for t in algebra.structure_constant_triples(3)})
for line in lines:
    print(line)

# %% [markdown]
# The full table of `e_i e_j` (row `i`, column `j`; `1` is `e_0`).

# %%
for i in range(8):
    row = []
    for j in range(8):
        sign, k = algebra.basis_product(3, i, j)
        row.append(f"{'+' if sign > 0 else '-'}{'e' + str(k) if k else '1'}")
    print(" ".join(f"{r:>4}" for r in row))

# %% [markdown]
# Associativity fails, alternativity holds.  With integer inputs every
# comparison is exact.

# %%
rng = np.random.default_rng(0)
x, y, z = rng.integers(-5, 6, (3, 8))
print("associator [x,y,z]:", algebra.associator(x, y, z))
print("[x,x,y]:", algebra.associator(x, x, y))
print("[x,y,y]:", algebra.associator(x, y, y))
m = algebra.multiply
print("Moufang residual:", m(m(x, y), m(z, x)) - m(m(x, m(y, z)), x))
print("|xy|^2 - |x|^2|y|^2 =", m(x, y) @ m(x, y) - (x @ x) * (y @ y))
