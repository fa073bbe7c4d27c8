"""Warn-only consistency checks of declared shapes.

Descriptions copy shapes verbatim from the source network, so disagreement
between a node's declared output and what its own parameters imply is worth
flagging but never blocks rendering. Fully-connected nodes are never
checked (nothing in the line constrains them), and multi-function nodes are
checked for shape preservation unless their operation is expected to change
shape (concatenation, interpolation).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidSpecError, NonPositiveOutputError
from .model import ArchGraph, ConvSpec, FullSpec, MFSpec, PoolSpec
from .unitformat import join_multi

STATUS_OK = "ok"
STATUS_MISMATCH = "mismatch"
STATUS_UNCHECKED = "unchecked"

DEFAULT_SHAPE_CHANGE_OPS = ("Concatenation", "Interpolation")


def _extent(in_: int, kernel: int, stride: int, pad_total: int, dilation: int) -> int:
    if min(in_, kernel, stride, dilation) < 1:
        raise InvalidSpecError("in, kernel, stride and dilation must be >= 1")
    if pad_total < 0:
        raise InvalidSpecError("pad_total must be >= 0")
    out = (in_ + pad_total - dilation * (kernel - 1) - 1) // stride + 1
    if out < 1:
        raise NonPositiveOutputError(
            f"kernel {kernel} (dilation {dilation}) does not fit into "
            f"extent {in_} with padding {pad_total}"
        )
    return out


def conv_output_extent(in_: int, kernel: int, stride: int, pad_total: int, dilation: int) -> int:
    """Output extent of a convolution along one axis."""
    return _extent(in_, kernel, stride, pad_total, dilation)


def pool_output_extent(in_: int, kernel: int, stride: int, pad_total: int, dilation: int) -> int:
    """Output extent of a pooling window along one axis; same arithmetic."""
    return _extent(in_, kernel, stride, pad_total, dilation)


@dataclass(frozen=True)
class ShapeEntry:
    node: str
    expected: tuple[int, ...] | None
    declared: tuple[int, ...]
    status: str
    note: str = ""


@dataclass(frozen=True)
class ShapeReport:
    """Per-node verdicts plus merge-shape warnings that belong to no single node."""

    entries: tuple[ShapeEntry, ...]
    addition_warnings: tuple[str, ...]

    def mismatches(self) -> tuple[ShapeEntry, ...]:
        return tuple(e for e in self.entries if e.status == STATUS_MISMATCH)

    @property
    def clean(self) -> bool:
        return not self.mismatches() and not self.addition_warnings


def _conv_expected(spec: ConvSpec) -> tuple[tuple[int, int], str]:
    pad = spec.padding  # (value, count) per direction: up, down, left, right
    width = conv_output_extent(
        spec.in_size[0], spec.kernel[0], spec.stride[1],
        pad[2][1] + pad[3][1], spec.dilation,
    )
    height = conv_output_extent(
        spec.in_size[1], spec.kernel[1], spec.stride[0],
        pad[0][1] + pad[1][1], spec.dilation,
    )
    note = ""
    if spec.in_size[2] % spec.groups:
        note = f"groups {spec.groups} does not divide input channels {spec.in_size[2]}"
    return (width, height), note


def _pool_expected(spec: PoolSpec) -> tuple[int, int]:
    pad = spec.padding  # counts: up, down, left, right
    width = pool_output_extent(
        spec.in_size[0], spec.kernel[0], spec.stride[1],
        pad[2] + pad[3], spec.dilation,
    )
    height = pool_output_extent(
        spec.in_size[1], spec.kernel[1], spec.stride[0],
        pad[0] + pad[1], spec.dilation,
    )
    return width, height


def lint_shapes(
    g: ArchGraph,
    *,
    shape_change_ops=DEFAULT_SHAPE_CHANGE_OPS,
) -> ShapeReport:
    """Check every node's declared out_size against its own parameters."""
    allow = set(shape_change_ops)
    entries: list[ShapeEntry] = []
    for name in g.names():
        spec = g.spec(name)
        if isinstance(spec, ConvSpec):
            try:
                (width, height), note = _conv_expected(spec)
            except NonPositiveOutputError as exc:
                entries.append(
                    ShapeEntry(name, None, spec.out_size, STATUS_MISMATCH, str(exc))
                )
                continue
            expected = (width, height, spec.out_size[2])  # channels free up to groups
            ok = expected[:2] == spec.out_size[:2] and not note
            entries.append(
                ShapeEntry(
                    name, expected, spec.out_size,
                    STATUS_OK if ok else STATUS_MISMATCH, note,
                )
            )
        elif isinstance(spec, PoolSpec):
            try:
                width, height = _pool_expected(spec)
            except NonPositiveOutputError as exc:
                entries.append(
                    ShapeEntry(name, None, spec.out_size, STATUS_MISMATCH, str(exc))
                )
                continue
            expected = (width, height, spec.in_size[2])
            ok = expected == spec.out_size
            entries.append(
                ShapeEntry(
                    name, expected, spec.out_size,
                    STATUS_OK if ok else STATUS_MISMATCH,
                )
            )
        elif isinstance(spec, FullSpec):
            entries.append(
                ShapeEntry(name, None, (spec.out_size,), STATUS_UNCHECKED)
            )
        elif isinstance(spec, MFSpec):
            if spec.op_name in allow:
                entries.append(
                    ShapeEntry(name, None, spec.out_size, STATUS_UNCHECKED)
                )
            else:
                ok = spec.in_size == spec.out_size
                entries.append(
                    ShapeEntry(
                        name, spec.in_size, spec.out_size,
                        STATUS_OK if ok else STATUS_MISMATCH,
                    )
                )

    warnings = []
    for name in g.names():
        spec = g.spec(name)
        if isinstance(spec, MFSpec) and spec.op_name == "Addition":
            shapes = {_declared_out(g.spec(p)) for p in g.predecessors(name)}
            if len(shapes) > 1:
                warnings.append(
                    f"addition node {name!r} merges unequal shapes: "
                    + ", ".join(sorted(shapes))
                )
    return ShapeReport(tuple(entries), tuple(warnings))


def _declared_out(spec) -> str:
    if isinstance(spec, FullSpec):
        return str(spec.out_size)
    return join_multi(spec.out_size)
