"""Run the brute-force oracle on a few groups and print JSON lines.

Run:  python3 demos/05_brute_force_checks.py
"""

from mggs import construct, gupta_sidki
from mggs import oracle

gs3 = gupta_sidki(3)
sym5 = construct(5, [[1, 2, 2, 1]])
results = [
    oracle.check_global_equations(gs3, 3),
    oracle.check_global_equations(gs3, 3, mutate=True),  # must fail
    oracle.check_kappa_closure(sym5, 3),
    oracle.check_contraction(sym5, 500, seed=1),
    oracle.check_centralizer_normalizer_A(2),
    oracle.check_normalizers(gs3, 3),
]
for r in results:
    print(r.to_json())
