"""
Private states and the key hidden in Alice's memory
===================================================
"""

import numpy as np

from wignerfriend import (
    POVM,
    AliceModel,
    alice_state_pair,
    helstrom_povm,
    key_security,
    private_blocks,
    schatten1,
    semiclassical_bound,
    ud_povm,
    wigner_state,
)

tau, ups = alice_state_pair(AliceModel(d_A=2, epsilon=0.0))
blocks = private_blocks(wigner_state(0.5, tau, ups))
print("xi block\n", blocks.xi_block.real)
print("zeta block\n", blocks.zeta_block.real, "norm", schatten1(blocks.zeta_block))

# overlap and decoherence both eat into the key
for eps in (0.0, 0.6, 1.0):
    for channel in (None, {"type": "depolarizing", "strength": 0.5}, {"type": "dephasing", "strength": 1.0}):
        tau, ups = alice_state_pair(AliceModel(2, eps, channel))
        kind = channel["type"] if channel else "none"
        print(f"eps={eps} {kind:12s} key={key_security(wigner_state(0.5, tau, ups)):.4f}  "
              f"up/down bound={semiclassical_bound(tau, ups, ud_povm(2)):.4f}")

# a measuring analyst only gets a lower bound unless they pick the Helstrom measurement
tau = np.diag([1.0, 0.0])
ups = np.full((2, 2), 0.5)
print(key_security(wigner_state(0.5, tau, ups)),
      semiclassical_bound(tau, ups, POVM((np.diag([1.0, 0]), np.diag([0, 1.0])))),
      semiclassical_bound(tau, ups, helstrom_povm(tau, ups)))
