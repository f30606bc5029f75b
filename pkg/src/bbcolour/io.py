"""Line-oriented text formats for instances, colourings and exact results.

Instance::

    c <comment>
    p bbc <n> <mG> <mH> <q>
    e <u> <v>        host-only edge
    b <u> <v>        backbone edge (also a host edge)

Colouring::

    s bbc <k>
    v <vertex> <colour>
"""
from __future__ import annotations

from typing import IO, Iterable

from .graph import BackboneInstance, Colouring, Graph, norm_edge


class FormatError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


def _lines(text: str | bytes | IO) -> Iterable[tuple[int, str]]:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    if isinstance(text, str):
        text = text.splitlines()
    for lineno, line in enumerate(text, start=1):
        if isinstance(line, bytes):
            line = line.decode("ascii")
        line = line.strip()
        if line:
            yield lineno, line


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_instance(text: str | bytes | IO) -> BackboneInstance:
    header = None
    comments: list[str] = []
    host: set[tuple[int, int]] = set()
    backbone: set[tuple[int, int]] = set()
    explicit_host: set[tuple[int, int]] = set()
    for lineno, line in _lines(text):
        tag, *rest = line.split()
        if tag == "c":
            comments.append(line[1:].strip())
            continue
        if header is None:
            if tag != "p" or len(rest) != 5 or rest[0] != "bbc":
                raise FormatError("expected header 'p bbc <n> <mG> <mH> <q>'", lineno)
            header = _ints(rest[1:], lineno)
            if header[0] < 0 or header[3] < 1:
                raise FormatError("need n >= 0 and q >= 1", lineno)
            continue
        if tag == "p":
            raise FormatError("duplicate header", lineno)
        if tag not in ("e", "b") or len(rest) != 2:
            raise FormatError(f"unrecognised line {line!r}", lineno)
        u, v = _ints(rest, lineno)
        n = header[0]
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"vertex out of range 1..{n}", lineno)
        if u == v:
            raise FormatError("self-loop", lineno)
        e = norm_edge(u, v)
        if tag == "e":
            if e in explicit_host:
                raise FormatError(f"duplicate edge {u} {v}", lineno)
            explicit_host.add(e)
        else:
            if e in backbone:
                raise FormatError(f"duplicate backbone edge {u} {v}", lineno)
            backbone.add(e)
        host.add(e)
    if header is None:
        raise FormatError("missing header")
    n, m_g, m_h, q = header
    if len(host) != m_g or len(backbone) != m_h:
        raise FormatError(
            f"header declares {m_g} host / {m_h} backbone edges, found {len(host)} / {len(backbone)}"
        )
    return BackboneInstance(Graph.from_edges(n, host), frozenset(backbone), q, tuple(comments))


def serialize_instance(inst: BackboneInstance) -> str:
    out = [f"c {c}" if c else "c" for c in inst.comments]
    out.append(f"p bbc {inst.n} {inst.host.m} {len(inst.backbone_edges)} {inst.q}")
    for u, v in sorted(inst.host.edges):
        tag = "b" if (u, v) in inst.backbone_edges else "e"
        out.append(f"{tag} {u} {v}")
    return "\n".join(out) + "\n"


def serialize_colouring(col: Colouring, tag: str = "bbc", k: int | None = None) -> str:
    """``k`` defaults to the span; circular colourings may declare a larger modulus."""
    lines = [f"s {tag} {col.span if k is None else k}"]
    lines += [f"v {v} {c}" for v, c in sorted(col.assignment.items())]
    return "\n".join(lines) + "\n"


def read_colouring(text: str | bytes | IO) -> tuple[Colouring, str, int]:
    """Colouring plus its ``s`` tag and declared k.  For ``bbc`` the declared k
    must equal the largest colour; for ``cbc`` it is the modulus and only
    bounds the colours from above."""
    assignment: dict[int, int] = {}
    declared = None
    tag_seen = "bbc"
    for lineno, line in _lines(text):
        tag, *rest = line.split()
        if tag in ("c", "x"):
            continue
        if tag == "s":
            if len(rest) != 2 or rest[0] not in ("bbc", "cbc"):
                raise FormatError("expected 's bbc <k>' or 's cbc <k>'", lineno)
            if declared is not None:
                raise FormatError("second 's' line", lineno)
            tag_seen = rest[0]
            declared = _ints(rest[1:], lineno)[0]
        elif tag == "v":
            if len(rest) != 2:
                raise FormatError("expected 'v <vertex> <colour>'", lineno)
            v, c = _ints(rest, lineno)
            if v in assignment:
                raise FormatError(f"vertex {v} coloured twice", lineno)
            assignment[v] = c
        else:
            raise FormatError(f"unrecognised line {line!r}", lineno)
    col = Colouring(assignment)
    if declared is None:
        declared = col.span
    if tag_seen == "bbc" and declared != col.span:
        raise FormatError(f"declared span {declared} but maximum colour is {col.span}")
    if tag_seen == "cbc" and declared < col.span:
        raise FormatError(f"declared k = {declared} below maximum colour {col.span}")
    return col, tag_seen, declared


def parse_colouring(text: str | bytes | IO) -> Colouring:
    return read_colouring(text)[0]
