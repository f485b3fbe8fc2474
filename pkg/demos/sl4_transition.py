"""SL4 with the word 1,2,1,3,2,1: transition matrices and the polytopes they relate.

Run with ``python3 demos/sl4_transition.py``.
"""

from __future__ import annotations

from clusterbody import cartan, word_data
from clusterbody import reference as ref
from clusterbody.cluster import apply_sequence, initial_seed, seq_right_vee
from clusterbody.okounkov import ValuationSpec, no_polytope, transition_matrices
from clusterbody.polyhedra import linear_image


def show(name, mat):
    print(name)
    for row in mat:
        print("   ", " ".join(f"{x:2d}" for x in row))


cd = cartan("A", 3)
wd = word_data((1, 2, 1, 3, 2, 1), cd, require_reduced=True)
V = tuple(seq_right_vee(wd))
print("dual sweep:", seq_right_vee(wd).composition_text())

# After the dual sweep every cluster variable is a monomial in t1..t6.
mutated = apply_sequence(initial_seed(wd, cd), V)
for s, x in zip(wd.J, mutated.cluster):
    print(f"  D^mut({s}) = {x}")

tm = transition_matrices(wd, cd)
show("M (seed -> string):", tm.M)
show("N (mutated seed -> lowest term):", tm.N)
print("rows differing from the literature values:", [s for s in wd.J if tm.N[s - 1] != ref.N_SL4_REF[s - 1]])

lam = cd.rho()
string = no_polytope(lam, wd, cd, ValuationSpec.v_tilde_low(6))
seed_side = no_polytope(lam, wd, cd, ValuationSpec.v_seed(wd, cd))
nz = no_polytope(lam, wd, cd, ValuationSpec.v_low(6))
mut_side = no_polytope(lam, wd, cd, ValuationSpec.v_seed(wd, cd, V))
print("lattice points:", len(string.lattice_points()))
print("seed * M == string:", linear_image(seed_side, tm.M).same_set(string))
print("mutated seed * N == lowest term:", linear_image(mut_side, tm.N).same_set(nz))
