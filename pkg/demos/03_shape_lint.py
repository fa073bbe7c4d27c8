"""
Checking declared shapes against layer parameters
=================================================

"""

# Every conv and pool line declares both its input and output shape, and
# kernel, stride, padding and dilation imply what the output ought to be.
# The extent helpers expose that arithmetic directly.
from arctext import conv_output_extent, pool_output_extent

# A 7x7 kernel sliding at stride 2 over 224 pixels with 3 pixels of padding
# on each side lands on 112 positions.
print("conv 224 -> ", conv_output_extent(224, 7, 2, 6, 1))
print("pool 112 -> ", pool_output_extent(112, 3, 2, 2, 1))

# Dilation spreads the kernel taps apart; a dilated 3x3 behaves like a 5x5.
print("dilated    ", conv_output_extent(32, 3, 1, 2, 2))
print()

# lint_shapes walks a whole graph and compares every declared out_size
# with the implied one. Here block "mid" claims 30x30 where its own
# parameters give 32x32.
from arctext import ConvSpec, MFSpec, build_graph, lint_shapes

nodes = [
    ("in", ConvSpec((32, 32, 3), (32, 32, 8), (3, 3), (1, 1),
                    padding=((0, 1), (0, 1), (0, 1), (0, 1)))),
    ("mid", ConvSpec((32, 32, 8), (30, 30, 8), (3, 3), (1, 1),
                     padding=((0, 1), (0, 1), (0, 1), (0, 1)))),
    ("act", MFSpec("ReLU", (30, 30, 8), (30, 30, 8))),
]
graph = build_graph(nodes, [("in", "mid"), ("mid", "act")])

report = lint_shapes(graph)
for entry in report.entries:
    print(f"{entry.node:>4}: {entry.status}", end="")
    if entry.status == "mismatch":
        print(f"  (expected {entry.expected}, declared {entry.declared})", end="")
    print()

# Findings are warnings, not errors: a description renders either way,
# because shapes are copied from the source network verbatim.
from arctext import render_description

print()
print("still renders:", len(render_description(graph).lines), "lines")
