"""
What Wigner loses by ignoring Alice
===================================

With Alice traced out the two qubits keep only |1/2 - p| of negativity.
"""

import numpy as np

from wignerfriend import make_rng, negativity, random_density, traced_negativity, wigner_state

rng = make_rng(3)
tau, ups = random_density(3, rng), random_density(3, rng)
for p in np.linspace(0, 1, 11):
    full = negativity(wigner_state(p, tau, ups), "a|tA")
    print(f"p={p:.1f}  with Alice {full:.4f}  without {traced_negativity(p, tau, ups):.4f}")
