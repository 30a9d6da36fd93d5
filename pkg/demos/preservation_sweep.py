"""
Which reductions keep a generalized eigenvector?
================================================

For an eigenvector u at l0 and a structural set S, each kept vertex i gets
the number

    L_i = sum over eliminated l of R_il(l0) / (l0 - w(l,l)(l0)) * u_l .

The generalized eigenvector survives the reduction when L = c u_S for a
single constant c (with c != -1); the reduced matrix then satisfies
R_S(l0) v_S - l0 v_S = (1 + c) u_S.
"""

from isored import I, Network, check_all, check_entrywise, reconstruct_vector, structural_sets, vertex_depths
from isored.literals import format_vector

net = Network(4, {(1, 2): 1, (2, 3): 1, (3, 4): 1, (4, 1): -1, (4, 3): -2})

# a chain at i: u is the eigenvector, v the generalized eigenvector
u = [I, -1, -I, 1]
v = [-3, -2 * I, 1, 0]

for size in (2, 3):
    for S in structural_sets(net, size):
        verdict = check_entrywise(net, S, I, u, v)
        rows = ", ".join(f"L_{k}={x}" for k, x, _ in verdict.rows)
        print(f"{S.keep}: {verdict.status:<14} c={verdict.c}  [{rows}]  chain ok: {verdict.chain_verified}")

# the block, single-vertex and disconnected forms of the criterion agree
verdicts, agree = check_all(net, [1, 2, 4], I, u)
print({name: x.status for name, x in verdicts.items()}, "agree:", agree)

# Going back: depths order the eliminated vertices, so the full vectors can
# be rebuilt from their restriction to S = {1,4}.
print(vertex_depths(net, [1, 4]))
u_full = reconstruct_vector(net, [1, 4], I, [I, 1])
print("u =", format_vector(u_full))
v_full = reconstruct_vector(net, [1, 4], I, [-3, 0], prev=u_full)
print("v =", format_vector(v_full))
