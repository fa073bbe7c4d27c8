"""Text rendering and strict parsing of architecture descriptions.

One node becomes one line of ``key:value`` fields joined by ``;``; lines are
joined by a single LF with no trailing newline. The grammar is deliberately
rigid -- fixed field order per kind, canonical integer spelling, sorted
multi-values, ascending connect_to -- so each architecture has exactly one
spelling and byte equality coincides with architectural equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .canonical import DEFAULT_MAX_PATHS, CanonicalOrder, assign_positions
from .errors import (
    DanglingConnectError,
    DuplicateIdError,
    EmptyInputError,
    InvalidSpecError,
    MalformedLineError,
    MultipleSinksError,
    NonCanonicalSinkError,
    NonContiguousIdsError,
    UnclassifiableLineError,
)
from .model import (
    ArchGraph,
    ConvSpec,
    FullSpec,
    MFSpec,
    NodeSpec,
    PoolSpec,
    build_graph,
)
from .unitformat import basic_fields, join_multi, kind_of

_INT_RE = re.compile(r"^(0|[1-9][0-9]*)$")

_CONV_KEYS = ("id", "in_size", "out_size", "kernel", "stride", "padding",
              "dilation", "groups", "bias_used", "connect_to")
_POOL_KEYS = ("id", "type", "in_size", "out_size", "kernel", "stride",
              "padding", "dilation", "bias_used", "connect_to")
_FULL_KEYS = ("id", "in_size", "out_size", "act_fun", "connect_to")
_FULL_KEYS_BARE = ("id", "in_size", "out_size", "connect_to")
_MF_KEYS = ("id", "name", "in_size", "out_size", "value", "connect_to")


@dataclass(frozen=True)
class UnitLine:
    """One rendered unit: kind, id, its basic fields, and its successors.

    ``connect_to`` is None for the sink (rendered as the literal "Null").
    """

    unit_kind: str
    id: int
    fields: tuple[tuple[str, str], ...]
    connect_to: tuple[int, ...] | None

    @property
    def text(self) -> str:
        body = ";".join(f"{k}:{v}" for k, v in self.fields)
        tail = "Null" if self.connect_to is None else join_multi(self.connect_to)
        return f"id:{self.id};{body};connect_to:{tail}"


@dataclass(frozen=True)
class Description:
    """A complete rendered architecture: lines ascending by id."""

    lines: tuple[UnitLine, ...]
    text: str


def render_unit(spec: NodeSpec, id: int, connect_to) -> UnitLine:
    if not isinstance(id, int) or isinstance(id, bool) or id < 1:
        raise InvalidSpecError(f"id must be a positive integer, got {id!r}")
    targets: tuple[int, ...] | None
    if connect_to is None:
        targets = None
    else:
        targets = tuple(connect_to)
        for t in targets:
            if not isinstance(t, int) or isinstance(t, bool) or t < 1:
                raise InvalidSpecError(f"connect_to entries must be positive integers, got {t!r}")
        if any(a >= b for a, b in zip(targets, targets[1:])):
            raise InvalidSpecError(f"connect_to must be strictly ascending, got {targets}")
        if not targets:
            targets = None  # outdegree 0 is the sink
    return UnitLine(kind_of(spec), id, tuple(basic_fields(spec)), targets)


def render_description(g: ArchGraph, *, max_paths: int = DEFAULT_MAX_PATHS) -> Description:
    """Canonicalize and render a whole graph.

    Node ids are canonical positions; each connect_to lists the positions of
    the node's successors in ascending order.
    """
    order = assign_positions(g, max_paths=max_paths)
    lines = []
    for pos, name in enumerate(order.by_position, start=1):
        succ = sorted(order.position_of(s) for s in g.successors(name))
        lines.append(render_unit(g.spec(name), pos, succ or None))
    text = "\n".join(line.text for line in lines)
    return Description(tuple(lines), text)


def classify_line(line: str) -> str:
    """Decide a line's unit kind from its distinguishing keys."""
    keys = [part.partition(":")[0] for part in line.split(";")]
    if "type" in keys:
        return "pool"
    if "name" in keys:
        return "mf"
    if "kernel" in keys:
        return "conv"
    parts_ok = all(":" in part for part in line.split(";"))
    if parts_ok and set(keys) <= set(_FULL_KEYS):
        return "full"
    raise UnclassifiableLineError(
        f"line matches no unit kind: {line!r}", subject=line
    )


def _fail(lineno: int, msg: str):
    raise MalformedLineError(f"line {lineno}: {msg}", subject=lineno)


def _int(token: str, lineno: int, what: str) -> int:
    if not _INT_RE.match(token):
        _fail(lineno, f"{what} must be a non-negative integer, got {token!r}")
    return int(token)


def _ints(value: str, lineno: int, what: str, arity: int) -> tuple[int, ...]:
    tokens = value.split("-")
    if len(tokens) != arity:
        _fail(lineno, f"{what} needs {arity} values, got {len(tokens)}")
    return tuple(_int(t, lineno, what) for t in tokens)


def _split_fields(line: str, lineno: int) -> list[tuple[str, str]]:
    pairs = []
    for part in line.split(";"):
        key, sep, value = part.partition(":")
        if not sep or not key or not value:
            _fail(lineno, f"field {part!r} is not key:value")
        pairs.append((key, value))
    return pairs


def _match_keys(pairs, expected, lineno):
    got = tuple(k for k, _ in pairs)
    if got != expected:
        _fail(lineno, f"expected fields {expected}, got {got}")


def _parse_connect(value: str, lineno: int) -> tuple[int, ...] | None:
    if value == "Null":
        return None
    targets = tuple(_int(t, lineno, "connect_to") for t in value.split("-"))
    if any(t < 1 for t in targets):
        _fail(lineno, "connect_to ids must be >= 1")
    if any(a >= b for a, b in zip(targets, targets[1:])):
        _fail(lineno, f"connect_to must be strictly ascending, got {targets}")
    return targets


def parse_line(line: str, lineno: int = 1) -> tuple[int, NodeSpec, tuple[int, ...] | None]:
    """Parse one line into (id, spec, connect_to); strict on everything."""
    kind = classify_line(line)
    pairs = _split_fields(line, lineno)
    values = dict(pairs)  # safe after key-sequence check: schemas repeat no key

    if kind == "conv":
        _match_keys(pairs, _CONV_KEYS, lineno)
    elif kind == "pool":
        _match_keys(pairs, _POOL_KEYS, lineno)
    elif kind == "full":
        expected = _FULL_KEYS if len(pairs) == 5 else _FULL_KEYS_BARE
        _match_keys(pairs, expected, lineno)
    else:
        _match_keys(pairs, _MF_KEYS, lineno)

    uid = _int(values["id"], lineno, "id")
    if uid < 1:
        _fail(lineno, "id must be >= 1")
    connect = _parse_connect(values["connect_to"], lineno)

    try:
        if kind == "conv":
            flat = _ints(values["padding"], lineno, "padding", 8)
            spec: NodeSpec = ConvSpec(
                in_size=_ints(values["in_size"], lineno, "in_size", 3),
                out_size=_ints(values["out_size"], lineno, "out_size", 3),
                kernel=_ints(values["kernel"], lineno, "kernel", 2),
                stride=_ints(values["stride"], lineno, "stride", 2),
                padding=tuple(zip(flat[0::2], flat[1::2])),
                dilation=_int(values["dilation"], lineno, "dilation"),
                groups=_int(values["groups"], lineno, "groups"),
                bias_used=_parse_bool(values["bias_used"], lineno),
            )
        elif kind == "pool":
            spec = PoolSpec(
                pool_type=values["type"],
                in_size=_ints(values["in_size"], lineno, "in_size", 3),
                out_size=_ints(values["out_size"], lineno, "out_size", 3),
                kernel=_ints(values["kernel"], lineno, "kernel", 2),
                stride=_ints(values["stride"], lineno, "stride", 2),
                padding=_ints(values["padding"], lineno, "padding", 4),
                dilation=_int(values["dilation"], lineno, "dilation"),
                bias_used=_parse_bool(values["bias_used"], lineno),
            )
        elif kind == "full":
            spec = FullSpec(
                in_size=_int(values["in_size"], lineno, "in_size"),
                out_size=_int(values["out_size"], lineno, "out_size"),
                act_fun=values.get("act_fun"),
            )
        else:
            spec = MFSpec(
                op_name=values["name"],
                in_size=_parse_shape(values["in_size"], lineno, "in_size"),
                out_size=_parse_shape(values["out_size"], lineno, "out_size"),
                values=_parse_mf_values(values["value"], lineno),
            )
    except InvalidSpecError as exc:
        _fail(lineno, str(exc))
    return uid, spec, connect


def _parse_bool(value: str, lineno: int) -> bool:
    if value == "Yes":
        return True
    if value == "No":
        return False
    _fail(lineno, f'bias_used must be "Yes" or "No", got {value!r}')


def _parse_shape(value: str, lineno: int, what: str) -> tuple[int, ...]:
    tokens = value.split("-")
    if len(tokens) not in (1, 3):
        _fail(lineno, f"{what} needs 1 or 3 values, got {len(tokens)}")
    return tuple(_int(t, lineno, what) for t in tokens)


def _parse_mf_values(value: str, lineno: int) -> tuple[str, ...]:
    if value == "Null":
        return ()
    tokens = value.split("-")
    if any(not t for t in tokens):
        _fail(lineno, "empty parameter value")
    encoded = [t.encode("utf-8") for t in tokens]
    if any(a > b for a, b in zip(encoded, encoded[1:])):
        _fail(lineno, f"parameter values must be sorted ascending, got {tokens}")
    return tuple(tokens)


def _parse_lines(text: str) -> list[tuple[int, NodeSpec, tuple[int, ...] | None]]:
    if text.endswith("\n"):
        text = text[:-1]  # tolerate one trailing newline, nothing more
    if not text:
        raise EmptyInputError("no content to parse")
    parsed = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        if not line:
            _fail(lineno, "blank line")
        parsed.append(parse_line(line, lineno))
    return parsed


def _check_ids(parsed) -> int:
    seen: set[int] = set()
    prev = 0
    for lineno, (uid, _, _) in enumerate(parsed, start=1):
        if uid in seen:
            raise DuplicateIdError(f"line {lineno}: id {uid} repeats", subject=uid)
        seen.add(uid)
        if uid != prev + 1:
            raise NonContiguousIdsError(
                f"line {lineno}: expected id {prev + 1}, got {uid}", subject=uid
            )
        prev = uid
    return prev


def parse_description(text: str) -> tuple[ArchGraph, CanonicalOrder]:
    """Parse a full description back into a graph.

    Node names are synthesized as "n1".."nN" from the ids; the returned
    order maps each name to its id. Rendering the result reproduces the
    input bytes whenever the input was itself canonically rendered.
    """
    parsed = _parse_lines(text)
    n = _check_ids(parsed)

    sinks = [uid for uid, _, connect in parsed if connect is None]
    if len(sinks) > 1:
        raise MultipleSinksError(
            f"connect_to:Null on ids {sinks}; only the last unit may be the sink",
            subject=tuple(sinks),
        )
    if sinks and sinks[0] != n:
        raise NonCanonicalSinkError(
            f"connect_to:Null on id {sinks[0]}, but the highest id is {n}",
            subject=sinks[0],
        )

    for uid, _, connect in parsed:
        for target in connect or ():
            if target > n:
                raise DanglingConnectError(
                    f"id {uid} connects to missing id {target}", subject=target
                )

    nodes = [(f"n{uid}", spec) for uid, spec, _ in parsed]
    edges = [
        (f"n{uid}", f"n{target}")
        for uid, _, connect in parsed
        for target in connect or ()
    ]
    graph = build_graph(nodes, edges)  # cycles surface here when no unit is Null
    order = CanonicalOrder({f"n{uid}": uid for uid, _, _ in parsed}, n)
    return graph, order


def description_from_text(text: str) -> Description:
    """Validate text and repackage it as a Description (used by diffing)."""
    parsed = _parse_lines(text)
    _check_ids(parsed)
    lines = tuple(render_unit(spec, uid, connect) for uid, spec, connect in parsed)
    return Description(lines, "\n".join(line.text for line in lines))
