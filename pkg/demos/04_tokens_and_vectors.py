"""
Token streams and per-layer vectors for mining
==============================================

"""

# Downstream consumers rarely want raw text. The vectorizer offers two
# machine-friendly views: a reversible token stream and a fixed-width
# numeric vector per line.
from arctext import (
    ConvSpec, FullSpec, MFSpec, build_graph,
    render_description, description_from_text,
)

nodes = [
    ("conv", ConvSpec((28, 28, 1), (28, 28, 4), (3, 3), (1, 1),
                      padding=((0, 1), (0, 1), (0, 1), (0, 1)))),
    ("drop", MFSpec("Dropout", (28, 28, 4), (28, 28, 4), ("0.5",))),
    ("head", FullSpec(3136, 10, "Sigmoid")),
]
graph = build_graph(nodes, [("conv", "drop"), ("drop", "head")])
description = render_description(graph)
print(description.text)
print()

# Tokenization assigns ids from a vocabulary. Separators and field names
# are pre-seeded; words like operation names are learned on first sight,
# and numbers ride a dedicated token that carries their value.
from arctext import Vocabulary, tokenize, detokenize

vocab = Vocabulary.default()
stream = tokenize(description, vocab)
print("tokens in line 1:", len(stream.units[0]))
print("vocabulary size: ", len(vocab))
print("lossless:        ", detokenize(stream, vocab) == description.text)
print()

# A closed vocabulary is for frozen models: unseen words raise instead of
# growing the table.
from arctext import UnknownTokenError

frozen = Vocabulary.default(closed=True)
try:
    tokenize(description, frozen)
except UnknownTokenError as err:
    print("closed vocabulary said no:", err)
print()

# unit_vector flattens each line into 24 numeric slots (kind one-hot,
# shapes, kernel geometry, flags), padding absent fields with zeros. That
# is the representation to hand to numpy or a model.
import numpy as np

from arctext import unit_vector
from arctext.vectorize import VECTOR_SLOTS

matrix = np.stack([unit_vector(line) for line in description.lines])
print("matrix shape:", matrix.shape)
for name, column in zip(VECTOR_SLOTS, matrix.T):
    if column.any():
        print(f"{name:>9}: {column}")
