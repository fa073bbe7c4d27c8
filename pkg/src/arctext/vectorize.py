"""Token streams and fixed-width unit vectors for downstream mining.

Tokenization is reversible: every separator is its own token, numbers ride
on a dedicated NUM token carrying their value, and everything else (operation
names, activation names, non-numeric parameters) is a vocabulary word. A
number is only encoded by value when its lexeme is the canonical spelling of
that value; oddly spelled numbers ("007", "1e3") stay words so detokenize
can always reproduce the source bytes.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass

import numpy as np

from .codec import Description, UnitLine
from .errors import IoError, SchemaError, UnknownTokenError

PAD_ID = 0
UNK_ID = 1
PAD_TOKEN = "<pad>"
UNK_TOKEN = "<unk>"
NUM_TOKEN = "<num>"

_STRUCTURAL = (
    ":", ";", "-", NUM_TOKEN,
    "id", "in_size", "out_size", "kernel", "stride", "padding",
    "dilation", "groups", "bias_used", "type", "name", "value",
    "act_fun", "connect_to",
    "Max", "Avg", "Yes", "No", "Null",
)

_INT_RE = re.compile(r"^(0|[1-9][0-9]*)$")


class Vocabulary:
    """Injective token <-> id map with reserved padding/unknown slots.

    The default vocabulary is open: unseen words are assigned fresh ids.
    A closed vocabulary refuses unseen words with UnknownTokenError, which
    is what a model trained on a frozen token set needs.
    """

    def __init__(self, ids: dict[str, int], closed: bool = False):
        lexemes: dict[int, str] = {}
        for lexeme, tid in ids.items():
            if tid in lexemes:
                raise SchemaError(f"token id {tid} assigned twice")
            lexemes[tid] = lexeme
        for tid, expected in ((PAD_ID, PAD_TOKEN), (UNK_ID, UNK_TOKEN)):
            if lexemes.get(tid) != expected:
                raise SchemaError(f"id {tid} is reserved for {expected!r}")
        self._ids = dict(ids)
        self._lexemes = lexemes
        self.closed = closed

    @classmethod
    def default(cls, closed: bool = False) -> "Vocabulary":
        ids = {PAD_TOKEN: PAD_ID, UNK_TOKEN: UNK_ID}
        ids.update({tok: i for i, tok in enumerate(_STRUCTURAL, start=2)})
        return cls(ids, closed=closed)

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, lexeme: str) -> bool:
        return lexeme in self._ids

    def token_id(self, lexeme: str) -> int:
        tid = self._ids.get(lexeme)
        if tid is not None:
            return tid
        if self.closed:
            raise UnknownTokenError(
                f"{lexeme!r} is not in the closed vocabulary", subject=lexeme
            )
        tid = max(self._lexemes) + 1
        self._ids[lexeme] = tid
        self._lexemes[tid] = lexeme
        return tid

    def lexeme(self, token_id: int) -> str:
        try:
            return self._lexemes[token_id]
        except KeyError:
            raise UnknownTokenError(f"no token with id {token_id}", subject=token_id)

    def to_json(self) -> str:
        doc = {"closed": self.closed, "tokens": self._ids}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Vocabulary":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"vocabulary is not valid JSON: {exc}") from exc
        if (
            not isinstance(doc, dict)
            or set(doc) != {"closed", "tokens"}
            or not isinstance(doc["closed"], bool)
            or not isinstance(doc["tokens"], dict)
        ):
            raise SchemaError('vocabulary must be {"closed": bool, "tokens": {...}}')
        tokens = doc["tokens"]
        for lexeme, tid in tokens.items():
            if not isinstance(tid, int) or isinstance(tid, bool) or tid < 0:
                raise SchemaError(f"token {lexeme!r} has invalid id {tid!r}")
        return cls(tokens, closed=doc["closed"])

    def save(self, path) -> None:
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(self.to_json())
        except OSError as exc:
            raise IoError(f"cannot write {path}: {exc}") from exc

    @classmethod
    def load(cls, path) -> "Vocabulary":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read())


@dataclass(frozen=True)
class Token:
    token_id: int
    value: int | float | None = None


@dataclass(frozen=True)
class TokenStream:
    """Token sequences, one tuple per unit line."""

    units: tuple[tuple[Token, ...], ...]


def _numeric(atom: str) -> int | float | None:
    if _INT_RE.match(atom):
        return int(atom)
    try:
        val = float(atom)
    except ValueError:
        return None
    # only when the lexeme is the value's canonical spelling
    if math.isfinite(val) and repr(val) == atom:
        return val
    return None


def _emit_atom(atom: str, v: Vocabulary, out: list[Token]) -> None:
    num = _numeric(atom)
    if num is not None:
        out.append(Token(v.token_id(NUM_TOKEN), num))
    else:
        out.append(Token(v.token_id(atom)))


def tokenize(d: Description, v: Vocabulary) -> TokenStream:
    units = []
    sep = Token(v.token_id(";"))
    colon = Token(v.token_id(":"))
    dash = Token(v.token_id("-"))
    for line in d.lines:
        tokens: list[Token] = []
        for part in line.text.split(";"):
            if tokens:
                tokens.append(sep)
            key, _, value = part.partition(":")
            tokens.append(Token(v.token_id(key)))
            tokens.append(colon)
            for i, atom in enumerate(value.split("-")):
                if i:
                    tokens.append(dash)
                _emit_atom(atom, v, tokens)
        units.append(tuple(tokens))
    return TokenStream(tuple(units))


def detokenize(stream: TokenStream, v: Vocabulary) -> str:
    num_id = v.token_id(NUM_TOKEN)
    lines = []
    for unit in stream.units:
        pieces = []
        for token in unit:
            if token.token_id == num_id and token.value is not None:
                pieces.append(
                    str(token.value) if isinstance(token.value, int)
                    else repr(token.value)
                )
            else:
                pieces.append(v.lexeme(token.token_id))
        lines.append("".join(pieces))
    return "\n".join(lines)


# --- fixed-width per-unit vectors ---------------------------------------------

VECTOR_SLOTS = (
    "kind_conv", "kind_pool", "kind_full", "kind_mf",
    "id",
    "in_w", "in_h", "in_c",
    "out_w", "out_h", "out_c",
    "kernel_w", "kernel_h",
    "stride_v", "stride_h",
    "pad_up", "pad_down", "pad_left", "pad_right",
    "dilation", "groups", "bias", "pool_max", "mf_value",
)

_KIND_SLOT = {"conv": 0, "pool": 1, "full": 2, "mf": 3}


def _shape3(text: str) -> list[float]:
    parts = [float(p) for p in text.split("-")]
    return parts + [0.0] * (3 - len(parts))


def unit_vector(line: UnitLine) -> np.ndarray:
    """A 24-slot numeric summary of one line; absent fields stay 0."""
    vec = np.zeros(len(VECTOR_SLOTS))
    vec[_KIND_SLOT[line.unit_kind]] = 1.0
    vec[4] = line.id
    fields = dict(line.fields)
    if "in_size" in fields:
        vec[5:8] = _shape3(fields["in_size"])
    if "out_size" in fields:
        vec[8:11] = _shape3(fields["out_size"])
    if "kernel" in fields:
        vec[11:13] = [float(p) for p in fields["kernel"].split("-")]
    if "stride" in fields:
        vec[13:15] = [float(p) for p in fields["stride"].split("-")]
    if "padding" in fields:
        pads = [float(p) for p in fields["padding"].split("-")]
        if line.unit_kind == "conv":
            pads = pads[1::2]  # counts only; pad values do not affect geometry
        vec[15:19] = pads
    if "dilation" in fields:
        vec[19] = float(fields["dilation"])
    if "groups" in fields:
        vec[20] = float(fields["groups"])
    if fields.get("bias_used") == "Yes":
        vec[21] = 1.0
    if fields.get("type") == "Max":
        vec[22] = 1.0
    if line.unit_kind == "mf" and fields.get("value", "Null") != "Null":
        for atom in fields["value"].split("-"):
            num = _numeric(atom)
            if num is not None:
                vec[23] = float(num)
                break
    return vec


def _format_number(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def vectors_csv(d: Description) -> str:
    """One unit per row, comma-separated, with a slot-name header."""
    rows = [",".join(VECTOR_SLOTS)]
    for line in d.lines:
        rows.append(",".join(_format_number(x) for x in unit_vector(line)))
    return "\n".join(rows) + "\n"
