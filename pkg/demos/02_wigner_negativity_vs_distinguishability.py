"""
Wigner's view: negativity tracks how well Alice's records can be told apart
===========================================================================
"""

import numpy as np

from wignerfriend import (
    AliceModel,
    alice_state_pair,
    make_rng,
    negativity,
    random_density,
    schatten1,
    trace_distance,
    wigner_state,
)

# overlap eps between the two memory records
for eps in np.linspace(0, 1, 6):
    tau, ups = alice_state_pair(AliceModel(d_A=2, epsilon=float(eps)))
    rho = wigner_state(0.5, tau, ups)
    print(f"eps={eps:.1f}  D={trace_distance(tau, ups):.4f}  "
          f"N(a|tA)={negativity(rho, 'a|tA'):.4f}  N(aA|t)={negativity(rho, 'aA|t'):.4f}")

# random memories of any size obey N = ||tau - ups||_1 / 4
rng = make_rng(7)
for d in (2, 3, 5, 8):
    tau, ups = random_density(d, rng), random_density(d, rng)
    rho = wigner_state(0.5, tau, ups)
    print(d, negativity(rho, "a|tA"), schatten1(tau.mat - ups.mat) / 4)

# away from p = 1/2 the same holds with weights: N = ||p tau - (1-p) ups||_1 / 2
p = 0.3
print(negativity(wigner_state(p, tau, ups), "a|tA"), schatten1(p * tau.mat - (1 - p) * ups.mat) / 2)
