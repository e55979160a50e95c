"""Walk through the rule-based sentence augmentation operations.

Each operation takes a token list and a seeded random stream, so every
run of this script prints the same outputs.
"""
import random

from softaug import (
    EdaParams,
    aeda,
    detokenize,
    eda,
    load_bundled_lexicon,
    random_deletion,
    random_insertion,
    random_swap,
    synonym_replacement,
    tokenize,
)

lex = load_bundled_lexicon()
sentence = "the movie was great and the acting felt wonderful throughout"
tokens = tokenize(sentence)
print("original:          ", sentence)

# Synonym replacement: swaps eligible words (non-stopword, has synonyms)
# for a random synonym. alpha controls how many positions are touched.
rng = random.Random(0)
print("synonym replace:   ", detokenize(synonym_replacement(tokens, 0.3, lex, rng)))

# Random insertion: inserts synonyms of existing words at random spots.
rng = random.Random(0)
print("random insertion:  ", detokenize(random_insertion(tokens, 0.2, lex, rng)))

# Random swap: exchanges word positions, keeping the token multiset.
rng = random.Random(0)
print("random swap:       ", detokenize(random_swap(tokens, 0.2, rng)))

# Random deletion: drops each word with probability alpha (never all).
rng = random.Random(0)
print("random deletion:   ", detokenize(random_deletion(tokens, 0.2, rng)))

# The dispatcher picks one of the four according to a probability vector.
params = EdaParams(0.3, 0.2, 0.2, 0.2, (0.25, 0.25, 0.25, 0.25))
for seed in range(3):
    out = eda(tokens, params, lex, random.Random(seed))
    print(f"eda (seed {seed}):      ", detokenize(out))

# AEDA only inserts punctuation marks; stripping them recovers the input.
rng = random.Random(1)
print("aeda:              ", detokenize(aeda(tokens, rng)))
