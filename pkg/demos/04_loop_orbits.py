# Rational matrix functions, their orbit invariants and boundary slopes

import numpy as np

from spectral_pencil import act_K, boundary_data, from_rational_map, gq, orbit_invariants, to_exact, to_rational_map
from spectral_pencil.cli.generate import random_invertible, random_quadruple

rng = np.random.default_rng(11)

# With X diagonalizable, R(zeta) = Y + G (zeta - X)^-1 F has simple poles at the
# eigenvalues of X and residues G_i F_i of rank k_i.
q = random_quadruple(rng, 2, 3, x_mults=[1, 1], y_mults=[2, 1])
r = to_rational_map(q)
print("poles:", [str(z) for z in r.poles], " residue ranks:", r.ranks())

# Rebuilding a quadruple from R and taking its rational map again gives R back.
back = to_rational_map(from_rational_map(r))
z = gq(1, 2) / 3
print(f"round trip exact at zeta = {z}:", bool(np.all(back(z) == r(z))))

# Conjugating by GL_k x GL_l changes every matrix but not the orbit invariants.
spec = orbit_invariants(r)
moved = act_K(q, random_invertible(rng, 2, "exact"), random_invertible(rng, 3, "exact"))
print("same orbit after a random gauge:", spec.same_orbit(orbit_invariants(to_rational_map(moved))))

# Where the curve meets eta = infinity, the slopes are the diagonal entries of FG
# in the eigenbasis of X.
x = to_exact(np.diag([1, -2]))
q = random_quadruple(rng, 2, 2).replace(X=x)
b = boundary_data(q, "eta")
fg = dict(zip(np.diag(x), np.diag(q.F @ q.G)))
for (point, _), (slope,) in zip(b.points, b.slopes):
    print(f"zeta = {point}: slope {slope}, (FG)_ii = {fg[point]}")
