"""
Describing a small residual network as canonical text
======================================================

"""

# Build the graph with one spec object per node. Names are free-form;
# they only exist on the Python side and never reach the text format.
from arctext import ConvSpec, MFSpec, PoolSpec, FullSpec, build_graph

conv3 = ConvSpec(
    in_size=(56, 56, 64), out_size=(56, 56, 64),
    kernel=(3, 3), stride=(1, 1),
    padding=((0, 1), (0, 1), (0, 1), (0, 1)),
)

nodes = [
    ("stem", ConvSpec((224, 224, 3), (112, 112, 64), (7, 7), (2, 2),
                      padding=((0, 3), (0, 3), (0, 3), (0, 3)))),
    ("pool", PoolSpec("Max", (112, 112, 64), (56, 56, 64), (3, 3), (2, 2),
                      (1, 1, 1, 1))),
    ("block_a", conv3),
    ("relu", MFSpec("ReLU", (56, 56, 64), (56, 56, 64))),
    ("block_b", conv3),
    ("merge", MFSpec("Addition", (56, 56, 64), (56, 56, 64))),
    ("head", FullSpec(64, 1000, "ReLU")),
]

# The skip edge from the pool into the merge node is what makes this
# residual: an ordinary DAG edge, nothing special.
edges = [
    ("stem", "pool"),
    ("pool", "block_a"), ("block_a", "relu"), ("relu", "block_b"),
    ("block_b", "merge"), ("pool", "merge"),
    ("merge", "head"),
]

graph = build_graph(nodes, edges)

# Render: nodes get positions 1..n by iterated longest-path extraction,
# then one line per node, joined by newlines.
from arctext import render_description

description = render_description(graph)
print(description.text)
print()

# The numbering is a property of the architecture, not of how we typed it
# in: feeding the nodes and edges in any other order changes nothing.
shuffled = build_graph(list(reversed(nodes)), list(reversed(edges)))
print("order-independent:", render_description(shuffled).text == description.text)
