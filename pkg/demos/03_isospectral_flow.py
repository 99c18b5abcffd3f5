# Hamiltonian flows that keep the spectral curve fixed

import numpy as np

from spectral_pencil import FLOAT, Quadruple, flow, spectral_combination, spectral_hamiltonian
from spectral_pencil.cli.generate import random_quadruple

# For k = l = 1 with X = Y = 0 the constant coefficient of det M is -fg, and its
# flow on the symplectic leaf is f(t) = exp(-t), g(t) = exp(t).
q0 = Quadruple(np.zeros((1, 1), complex), np.zeros((1, 1), complex), np.ones((1, 1), complex),
               np.ones((1, 1), complex))
traj = flow(q0, spectral_hamiltonian(0, 0), dt=1e-3, horizon=1.0, mode="leaf")
err = max(abs(q.F[0, 0] - np.exp(-t)) for t, q in zip(traj.times, traj.states))
print(f"closed form: f(1) = {traj.final.F[0, 0].real:.12f}, exp(-1) = {np.exp(-1):.12f}, max error {err:.1e}")

# A random 2 x 3 quadruple flowing under a random combination of the det M coefficients.
rng = np.random.default_rng(5)
q = random_quadruple(rng, 2, 3, FLOAT)
h = spectral_combination(0.2 * (rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))))
traj = flow(q, h, dt=1e-3, horizon=1.0, mode="leaf")
drift = traj.drift()
worst = max(v for name, v in drift.items() if name.startswith("H["))
print(f"random leaf flow: {len(traj.times) - 1} RK4 steps, worst det M coefficient drift {worst:.1e}")
print(f"|F| went from {np.linalg.norm(q.F):.3f} to {np.linalg.norm(traj.final.F):.3f} while the curve stood still")
