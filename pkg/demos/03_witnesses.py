"""
Witnessing the entanglement with an up/down question
=====================================================

The two witnesses only see the up and down weights of Alice's memory.
"""

import numpy as np

from wignerfriend import build_witnesses, negativity, ud_projectors, wigner_state, witness_expectation, witness_violation

d = 4
up, down = ud_projectors(d)
w1, w2 = build_witnesses(d, up, down)
print("Tr W1 =", np.trace(w1.op).real)

# records with different up weights: one witness goes negative
tau = np.diag([0.5, 0.3, 0.1, 0.1])
ups = np.diag([0.1, 0.1, 0.4, 0.4])
rho = wigner_state(0.5, tau, ups)
print(witness_expectation(rho, w1), witness_expectation(rho, w2), witness_violation(rho, w1, w2))
print("negativity", negativity(rho, "a|tA"))

# same up/down weights but different coherences: entangled, not detected
plus = np.full((2, 2), 0.5)
tau = np.kron(np.diag([0.5, 0.5]), plus)
ups = np.kron(np.diag([0.5, 0.5]), np.diag([1.0, 0.0]))
rho = wigner_state(0.5, tau, ups)
print(witness_violation(rho, w1, w2), negativity(rho, "a|tA"))
