"""
Reducing a four-vertex network
==============================

A small directed network with two cycles, (1 2 3 4) and (3 4), whose
adjacency matrix has the double eigenvalues i and -i.  We reduce it onto
structural sets of size three and two and watch what happens to the
generalized eigenvectors.
"""

import numpy as np

from isored import Network, RatMatrix, I, char_function, reduce_graph, spectrum, structural_sets
from isored.errors import ChainTerminated
from isored.spectra import generalized_chain

# edges are (from, to): weight; weights may be rational functions of l
net = Network(4, {(1, 2): 1, (2, 3): 1, (3, 4): 1, (4, 1): -1, (4, 3): -2})
A = net.adjacency()
print(A.table())

# the characteristic function and the exact spectrum
print("det(A - l I) =", char_function(A))
print("spectrum:", spectrum(A))

# numpy agrees (the eigenvalues are defective, so only to ~1e-8)
print("numpy:", np.round(np.linalg.eigvals(A.to_numpy()), 6))

# every structural set meets both cycles
print("size 2:", [S.keep for S in structural_sets(net, 2)])
print("size 3:", [S.keep for S in structural_sets(net, 3)])

# reduce onto {1,2,4}: entries become rational functions of l
R3 = reduce_graph(net, [1, 2, 4]).adjacency()
print(R3.table())
print("det(R - l I) =", char_function(R3), " spectrum:", spectrum(R3))

# ...and onto {1,4}
R2 = reduce_graph(net, [1, 4]).adjacency()
print(R2.table())
print("det(R - l I) =", char_function(R2), " spectrum:", spectrum(R2))

# A Jordan chain of length two at i
print(generalized_chain(A, I, 2))

# Evaluate the three-vertex reduction at l = i.  i stays an eigenvalue but
# its algebraic multiplicity drops to one: the chain is lost.  The two
# other roots, (1 +- sqrt 5)/2 i, are irrational and reported numerically.
R3_i = RatMatrix(R3.evaluate(I))
print("spectrum of R3(i):", spectrum(R3_i))
try:
    generalized_chain(R3_i, I, 2)
except ChainTerminated as exc:
    print("chain terminated:", exc)

# Reducing further onto {1,4} brings the chain back.
R2_i = RatMatrix(R2.evaluate(I))
print("spectrum of R2(i):", spectrum(R2_i))
print(generalized_chain(R2_i, I, 2))
