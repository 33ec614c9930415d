"""
Discrete Coulomb gas on a ring
==============================

Q_beta(L, N) normalizes the vertex-operator ansatz with beta = 8 alpha.
beta = 2 (free fermions) and beta = 4 have closed forms; the odd/even ratio
of normalizations tends to sqrt(e).
"""

import numpy as np

from vertex_oddity.exact_points import coulomb_q, coulomb_q_bruteforce, z_ratio, z_ratio_limit_form

L = 8
print(f"L = {L}")
print(" N   Q_2 (enumerated)   Q_4 (closed)   Q_4 (enumerated)")
for N in range(L + 1):
    print(f"{N:2d}   {coulomb_q_bruteforce(2, L, N):.12f}     {str(coulomb_q(4, L, N)):>10s}   {coulomb_q_bruteforce(4, L, N):.12f}")

print("\nN       Z_odd/Z_even (alpha=1/3, enumerated)   ((2N+1)/2N)^N")
for N in (2, 4, 6, 8):
    print(f"{N:<7d} {z_ratio(1 / 3, N):.8f}                            {z_ratio_limit_form(N):.8f}")
print(f"\nN = 10^4: {z_ratio_limit_form(10**4):.6f}  vs  sqrt(e) = {np.exp(0.5):.6f}")
