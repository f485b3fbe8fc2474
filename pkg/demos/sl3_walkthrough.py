"""SL3 walkthrough: seed, mutation, valuations and one polytope.

Run with ``python3 demos/sl3_walkthrough.py``.
"""

from __future__ import annotations

from clusterbody import cartan, word_data
from clusterbody.cluster import apply_sequence, initial_seed, seq_left, seq_right_vee
from clusterbody.exchange import build_epsilon, mutate_sequence, quiver_dot
from clusterbody.okounkov import ValuationSpec, matrix_M, no_polytope
from clusterbody.polyhedra import pl_image, tropical_sequence_map

cd = cartan("A", 2)
wd = word_data((1, 2, 1), cd, require_reduced=True)

# The exchange matrix of the word; vertex 1 is mutable, 2 and 3 are frozen.
eps = build_epsilon(wd, cd)
print(quiver_dot(eps, "sl3"))

# Cluster variables are generalized minors in the torus coordinates t1, t2, t3.
seed = initial_seed(wd, cd)
print("initial cluster:", [str(x) for x in seed.cluster])

# The two named sweeps coincide for this short word; both are a single mutation.
print("left sweep:", seq_left(wd).composition_text(), " dual sweep:", seq_right_vee(wd).composition_text())
mutated = apply_sequence(seed, seq_left(wd))
print("after mutation:", [str(x) for x in mutated.cluster])

# Lowest-term valuations of the degree-one space at lambda = rho give the
# string polytope; the seed valuation gives a unimodularly equivalent copy.
lam = cd.rho()
string = no_polytope(lam, wd, cd, ValuationSpec.v_tilde_low(3))
seed_side = no_polytope(lam, wd, cd, ValuationSpec.v_seed(wd, cd))
print("string polytope vertices:", sorted(tuple(int(x) for x in v) for v in string.vertices))
print("lattice points:", len(string.lattice_points()))
print("M =", matrix_M(wd, cd))

# Moving the seed polytope along a mutation with the tropicalized rule lands on
# the polytope of the mutated seed.
moved = pl_image(seed_side, tropical_sequence_map(eps, [1]))
direct = no_polytope(lam, wd, cd, ValuationSpec.v_seed(wd, cd, (1,)))
print("transport agrees:", moved.same_set(direct))
print("mutated quiver arrows:", mutate_sequence(eps, [1]).arrows())
