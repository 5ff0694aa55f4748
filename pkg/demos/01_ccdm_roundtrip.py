"""Rank-based constant-composition matching on a small codebook.

Every output sequence uses each amplitude exactly as often as the
composition says; the input bits select one permutation by its
lexicographic rank.
"""

import numpy as np

from paslab.ccdm import (
    Composition,
    ccdm_decode,
    ccdm_encode,
    max_input_length,
    multiset_count,
    unrank,
)

comp = Composition(symbols=(1, 3, 5, 7), counts=(4, 3, 2, 1))
k = max_input_length(comp)
total = multiset_count(comp.counts)

print(f"composition {comp.counts} over {comp.symbols}")
print(f"codebook holds {total} sequences, so k = {k} input bits fit")
print()

for value in (0, 1, 2, 3, (1 << k) - 1):
    bits = np.array([int(c) for c in format(value, f"0{k}b")], dtype=np.uint8)
    word = ccdm_encode(bits, comp)
    back = ccdm_decode(word, comp, k)
    assert np.array_equal(bits, back)
    print(f"input {value:6d} -> {''.join(str(s) for s in word)}")

print()
print("first codeword", "".join(map(str, unrank(0, comp))))
print("last codeword ", "".join(map(str, unrank(total - 1, comp))))
