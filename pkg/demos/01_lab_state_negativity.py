"""
Entanglement inside Alice's lab
===============================

Alice's two qubits ``a, t`` and her measurement record ``m``. Taken
together the three are entangled, yet every pair looks classical.
"""

from wignerfriend import alice_lab_state, circuit_lab_state, negativity, partial_trace

rho = alice_lab_state(0.5)

# grouping m with either qubit exposes the entanglement
for bip in ("am|t", "a|tm"):
    print(f"N({bip}) = {negativity(rho, bip):.6f}")

# pairs alone are PPT
for bip in ("a|t", "a|m", "t|m"):
    print(f"N({bip}) = {negativity(rho, bip):.6f}")

# single qubits are maximally mixed
for label in ("a", "t", "m"):
    print(label, partial_trace(rho, [label]).mat.real.diagonal())

# at p = 1 only one branch survives and a|t is a Bell pair
print("p=1, N(a|t) =", negativity(partial_trace(alice_lab_state(1.0), ["a", "t"]), "a|t"))

# the gate-by-gate construction (GHZ, H on a, CNOT a->t, drop e)
# lands on a different second branch, so compare entrywise
for p in (0.0, 0.5, 1.0):
    gap = abs(circuit_lab_state(p).mat - alice_lab_state(p).mat).max()
    print(f"p={p}: max |circuit - lab state| = {gap:.3f}")
