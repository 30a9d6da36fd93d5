"""
Spectrally equivalent matrices
==============================

Two constant matrices are compared through all their reductions onto two
coordinates.  A and B below share their spectrum but none of their
two-dimensional reductions coincide.  A1 and A2 share spectrum and
eigenvectors yet have different Jordan forms.
"""

from fractions import Fraction

import numpy as np

from isored import RatMatrix, eigenvectors_at, jordan_data, matrix_spectrally_equivalent, multiplicities, spectrum
from isored.equivalence import seq_report
from isored.literals import format_vector
from isored.reconstruct import rebuild_matrix
from isored.reduction import Partition

A = RatMatrix([[Fraction(x, 17) for x in r] for r in [[148, 206, 256], [-13, -5, -28], [-33, -48, -41]]])
B = RatMatrix([[Fraction(x, 27) for x in r] for r in [[1, -39, -10], [52, 105, 20], [43, 24, 56]]])

print("spectrum A:", spectrum(A), " numpy:", np.round(np.linalg.eigvals(A.to_numpy()), 8))
print("spectrum B:", spectrum(B), " numpy:", np.round(np.linalg.eigvals(B.to_numpy()), 8))

res = matrix_spectrally_equivalent(A, B, 2)
for keep, R in res.reductions_a.items():
    print("A onto", keep)
    print(R.table())
for keep, R in res.reductions_b.items():
    print("B onto", keep)
    print(R.table())
print("equivalent:", res.equivalent)

# the eliminated entry shares no eigenvalue with A, so each reduction keeps the spectrum
for keep in [(1, 2), (1, 3), (2, 3)]:
    print(keep, seq_report(A, Partition(3, keep)))

A1 = RatMatrix([[5, 1, 0, 0], [0, 5, 0, 0], [0, 0, 5, 1], [0, 0, 0, 5]])
A2 = RatMatrix([[5, 0, 0, 0], [0, 5, 0, 1], [0, 1, 5, 0], [0, 0, 0, 5]])
for name, M in (("A1", A1), ("A2", A2)):
    jd = jordan_data(M)
    print(name, multiplicities(M, 5), "eigenvectors:", [format_vector(e) for e in eigenvectors_at(M, 5)])
    print("   blocks:", jd.block_sizes(5), " rebuilt exactly:", rebuild_matrix(jd) == M)
