"""Temperley-Lieb words: planar evaluation, Jones normal form and D-move paths."""

from ftwhittle import TLWord, catalan, d_move_reduce, enumerate_jnf, evaluate, reduce_to_jnf
from ftwhittle.tl import d_move_type

w = TLWord(4, (3, 1, 3))
path = reduce_to_jnf(w)
for word, move in zip(path.words, (None,) + path.moves):
    print(f"{str(word):12s} {move or ''}")
print("same diagram:", evaluate(w).pairing == evaluate(path.final).pairing)

# one JNF word per diagram: the counts add up to the Catalan numbers
for n in range(2, 6):
    total = sum(len(enumerate_jnf(n, h)) for h in range(n * n))
    print(f"n={n}: {total} JNF words, Catalan {catalan(n)}")

restricted = d_move_reduce(TLWord(3, (2, 2, 1, 2)))
print("D-moves:", [d_move_type(m) for m in restricted.moves], "->", restricted.final)
print("e1 e2 e1 e1 on 3 strands:", d_move_reduce(TLWord(3, (1, 2, 1, 1))))
