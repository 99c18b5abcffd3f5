# Rank of F and G read off from cohomology of twisted sheaves

import numpy as np

from spectral_pencil import rank_theorem_check, theorem1_check
from spectral_pencil.cli.generate import random_quadruple

rng = np.random.default_rng(3)

# h0(F(-1, 1)) counts the rank defect of G and h1(F(1, -1)) the defect of F,
# so both vanish exactly when F and G have full rank k.
print(" k  l  rank F  rank G  h0(-1,1)  h1(1,-1)  full rank  vanishing")
for rank_f, rank_g in [(2, 2), (1, 2), (2, 0), (0, 1)]:
    q = random_quadruple(rng, 2, 3, rank_f=rank_f, rank_g=rank_g)
    r = rank_theorem_check(q)
    print(f" {q.k}  {q.l}  {r.rankF:6d}  {r.rankG:6d}  {r.h0_m11:8d}  {r.h1_1m1:8d}  {str(r.ranks_full):9s}  {r.vanishing}")

# The same statement phrased with the line bundle L = F(0, 1): four vanishings
# that hold together exactly when both ranks are full.
q = random_quadruple(rng, 2, 3)
t = theorem1_check(q)
print("\nL = F(0,1): chi(L) =", t.chi_L, " deg L =", t.degree_L, " all vanish:", t.all_vanish)
