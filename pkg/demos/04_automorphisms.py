"""U, V, W and the Aut(G) structure for the worked examples, with diagonal normalizers.

Run:  python3 demos/04_automorphisms.py
"""

from mggs.autgrp import aut_structure, diagonal_normalizers, normalizer_conjugation_check
from mggs.catalog import catalog, example3

for exp in catalog():
    r = aut_structure(exp.group)
    print(f"{exp.name:<12} |U|={len(r.U):<2} |V|={len(r.V):<2} |W|={len(r.W):<2}  Aut(G) = {r.structure}")

G = example3()
print("\ndiagonal normalizers of example 3 (first ten):")
for d0, w, seq in diagonal_normalizers(G)[:10]:
    ok = normalizer_conjugation_check(seq, G, 2).passed
    print(f"  d0={d0:<2} w={w:<2} d = {seq.terms(6)} ...  period {seq.period}  normalizes: {ok}")
