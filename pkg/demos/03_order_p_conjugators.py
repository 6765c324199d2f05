"""Order-p elements a*g are conjugate to a, inside the regularisation.

Also shows the symmetric obstruction: for E = <(1,2,2,1)> the element a^c
is not reached by any conjugator from Stab_G(1) at depth 3.

Run:  python3 demos/03_order_p_conjugators.py   (about 20 s)
"""

from mggs import construct, gupta_sidki, order_p_conjugator
from mggs.groups import a_portrait
from mggs.oracle import conjugator_search
from mggs.words import A, B, Word, evaluate

G = gupta_sidki(3)
a = Word(3, [A(1)])
x = Word(3, [B((1,)), A(2), B((1,))])
g = a.inverse() * x.inverse() * a * x
h = order_p_conjugator(g, G, 4)
hp = h.portrait(G, 4)
ap = a_portrait(1, 3, 4)
print(f"g = {g}")
print(f"h sections: {[str(s) for s in h.sections]}")
print("a^h == a*g at depth 4:", ap.conj(hp) == ap * evaluate(g, G, 4))

S = construct(5, [[1, 2, 2, 1]])
print(f"\nsearching Stab_G(1) of {S} for a conjugator of a onto a^c ...")
res = conjugator_search(S, 3)
print({k: v for k, v in res.items() if k != "witness"})
