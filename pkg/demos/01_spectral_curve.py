# Spectral curves of matrix pencils: determinant, Hilbert polynomial and cohomology

import numpy as np

from spectral_pencil import (Quadruple, bipurity_check, hilbert_polynomial, sheaf_cohomology, spectral_curve,
                             to_exact)

# A quadruple (X, Y, F, G) sits in the block pencil M = [[X - zeta, F], [G, Y - eta]].
# The smallest interesting case has k = l = 1 and all entries 0 or 1.
e1 = Quadruple(to_exact([[0]]), to_exact([[0]]), to_exact([[1]]), to_exact([[1]]))
curve = spectral_curve(e1)
print("det M for E1:", curve.det_poly)

# The cokernel sheaf lives on the curve det M = 0 and has no cohomology at all,
# while its twists count sections like a line bundle of degree -1 on a conic.
print("h(F)          =", sheaf_cohomology(e1))
for twist in [(1, 0), (0, 1), (-1, -1), (2, 1)]:
    print(f"h(F{twist}) =", sheaf_cohomology(e1, twist))

# The Euler characteristic is linear in the twist: chi(F(x, y)) = l x + k y.
print("Hilbert polynomial:", hilbert_polynomial(e1))

# A k = 1, l = 2 example. Its determinant factors, and the horizontal line eta = 1
# carries a subsheaf, which the bipurity check reports with a witness vector.
q = Quadruple(to_exact([[0]]), to_exact(np.diag([0, 1])), to_exact([[1, 0]]), to_exact([[1], [0]]))
print("\ndet M for k=1, l=2:", spectral_curve(q).det_poly)
report = bipurity_check(q)
print("vertical ok:", report.vertical_ok, " horizontal ok:", report.horizontal_ok)
for w in report.witnesses:
    print("  witness:", w["direction"], "line at", w["point"], "vector", [str(v) for v in w["vector"]])
