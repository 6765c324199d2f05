"""B-coordinates, forced A-coordinates and residues of stabilizer elements.

For a word g in Stab(1) every section has the shape a^(s_k) b^(n_k) y_k with
y_k in the derived subgroup, and s_k is determined by the n's.

Run:  python3 demos/02_coordinates.py
"""

import numpy as np

from mggs import construct, b_coordinates, forced_a_coords
from mggs.words import abelianize, random_word, sections_of_word

G = construct(5, [[1, 2, 2, 1]])
rng = np.random.default_rng(2)
w = random_word(G, 8, rng, stabilizer=True)
co = b_coordinates(w, G)
print(f"{G}\nw = {w}\n")
print("k  n_k    s_k  abelianized section")
for k, sec in enumerate(sections_of_word(w, G)):
    print(f"{k}  {co.n[k]!s:<6} {co.s[k]:<4} {abelianize(sec, G)}")

print("\nthe s_k follow from the n_k alone:", forced_a_coords(co.n, G) == co.s)
