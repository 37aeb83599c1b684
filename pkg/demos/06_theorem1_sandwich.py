"""
Shielded ensembles: bounds on the assisted entanglement
=======================================================

Negativity across XZ|Y and X|YZ for ensembles sum_i p_i sigma_XY;i (x) sigma_Z;i.
"""

from wignerfriend import make_rng, random_theorem1_instance, theorem1_bounds

rng = make_rng(11)
for _ in range(5):
    res = theorem1_bounds(random_theorem1_instance(rng))
    print(f"{res.lower:.4f} <= {res.value_xz_y:.4f}, {res.value_x_yz:.4f} <= {res.upper:.4f}  "
          f"ok={res.sandwich_ok} equal={res.partitions_equal}")

# shields with disjoint supports saturate the upper bound
for _ in range(3):
    res = theorem1_bounds(random_theorem1_instance(rng, (2, 2, 4), disjoint=True))
    print(res.value_xz_y, res.upper, res.saturated)
