"""
Multiplicities under reduction, on random matrices
==================================================

Build M = P J P^-1 with a chosen Jordan form J and a random Gaussian-integer
P.  When the eliminated block shares no eigenvalue with M, the reduced
matrix keeps every eigenvalue together with its geometric multiplicity.
"""

import random

import numpy as np

from isored import GaussianRational as G
from isored import Partition, RatMatrix, multiplicities, reduce_matrix, spectrum
from isored.equivalence import seq_condition
from isored.linalg import inverse, matmul

rng = random.Random(1)

# a 5x5 Jordan form: a 2-block and a 1-block at i, a 2-block at 2
J = [[G(0)] * 5 for _ in range(5)]
for k, z in enumerate([G(0, 1), G(0, 1), G(0, 1), G(2), G(2)]):
    J[k][k] = z
J[0][1] = J[3][4] = G(1)

while True:
    P = [[G(rng.randint(-2, 2), rng.randint(-1, 1)) for _ in range(5)] for _ in range(5)]
    try:
        P_inv = inverse(P)
        break
    except ArithmeticError:
        pass
M = RatMatrix(matmul(matmul(P, J), P_inv))
print(M.table())

# pick a kept set whose complement shares no eigenvalue with M
for keep in [(1, 2), (1, 3), (2, 4), (1, 2, 3), (2, 3, 5)]:
    part = Partition(5, keep)
    if seq_condition(M, part):
        break
print("keep", keep)

R = reduce_matrix(M, part)
print("spectrum M:", spectrum(M))
print("spectrum R:", spectrum(R))
for z in (G(0, 1), G(2)):
    print(z, "before:", multiplicities(M, z), "\n   after:", multiplicities(R, z))

# numpy on the evaluated reduction: each eigenvalue z of M solves det(R(z) - z I) = 0
for z in (1j, 2):
    Rz = R.evaluate_numeric(z)
    print(z, "smallest singular value of R(z) - zI:", np.linalg.svd(Rz - z * np.eye(len(keep)), compute_uv=False)[-1])
