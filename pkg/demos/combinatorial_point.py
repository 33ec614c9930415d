"""
The combinatorial point Delta = 1/2
===================================

For odd L the largest ground-state probability is a ratio of products of
integers.  Exact diagonalization reproduces it to machine precision, and the
large-L formula approaches it from above.
"""

from vertex_oddity.basis import Sector
from vertex_oddity.exact_points import asm_count, rs_asymptotic_entropy, rs_log_pmax, rs_pmax
from vertex_oddity.xxz import ground_state, min_entropy

print(" L   A(N)      p_max (exact)          ED S_inf    exact S_inf   asymptotic - exact")
for L in range(5, 22, 2):
    N = (L - 1) // 2
    exact = -rs_log_pmax(N)
    ed = min_entropy(ground_state(Sector.canonical(L), 0.5))[0] if L <= 17 else float("nan")
    print(
        f"{L:2d}   {asm_count(N):<8d}  {str(rs_pmax(N)):>20s}   {ed:.10f}  {exact:.10f}"
        f"  {rs_asymptotic_entropy(L) - exact:.5f}"
    )
