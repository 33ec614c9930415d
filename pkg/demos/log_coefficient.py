"""
Log coefficient b(Delta) from exact diagonalization and from the ansatz
=======================================================================

Fits S_inf(L) = a L + b log L + c over odd L and compares b with
alpha = arccos(-Delta) / (2 pi).  Pass a larger maximum size as the first
argument (23 takes about ten minutes).
"""

import sys

from vertex_oddity.scaling import b_curve, default_delta_grid

L_max = int(sys.argv[1]) if len(sys.argv) > 1 else 15
sizes = list(range(7, L_max + 1, 2))
grid = default_delta_grid()

ed = b_curve(grid, sizes, source="ed")
mps = b_curve(grid, sizes, source="imps")

print(f"odd L = {sizes[0]}..{sizes[-1]}")
print(" Delta   alpha    b_ed     b_imps   b_ed - alpha")
for e, m in zip(ed, mps):
    print(f"{e.delta:+.2f}   {e.alpha_theory:.4f}   {e.b:.4f}   {m.b:.4f}   {e.b - e.alpha_theory:+.4f}")
