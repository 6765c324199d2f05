"""Portraits, words and sections for the Gupta-Sidki group at p = 3.

Run:  python3 demos/01_portraits_and_words.py
"""

from mggs import gupta_sidki, parse_word, evaluate
from mggs.cli import format_portrait
from mggs.words import sections_of_word

G = gupta_sidki(3)
print(f"group: {G}, classification: {G.classification}")

# b fixes the spine 0, 00, ... and hangs a and a^2 off it
b = evaluate(parse_word("b", G), G, 3)
print("\nportrait of b at depth 3:")
print(format_portrait(b))

# right actions: v^(gh) = (v^g)^h
w = parse_word("b * a * b^2 * a^2", G)
g = evaluate(w, G, 3)
print(f"\nw = {w}; vertex 01 goes to {g.apply((0, 1))}")

# sections computed symbolically agree with the portrait
for k, s in enumerate(sections_of_word(w, G)):
    same = evaluate(s, G, 2) == g.section((k,))
    print(f"  w|_{k} = {s!s:<30} matches portrait: {same}")
