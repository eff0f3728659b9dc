"""Text syntax for segments and multisegments.

Grammar::

    Source := (Decl (NEWLINE | ";"))* Mult
    Decl   := "@line" Ident ("dim=" Int)? ("dual=" Ident)?
    Mult   := "0" | Seg ("+" Seg)*
    Seg    := "[" Int ("," Int)? "]" ("_" Ident)?

``[a]`` abbreviates ``[a,a]``; a segment without ``_Ident`` lives on the
default self-dual line of dimension 1.  Whitespace between tokens is ignored.
"""

from __future__ import annotations

import re
from collections import Counter
from typing import Iterable, Mapping, Optional

from .core import DEFAULT_LINE, CuspidalLine, CuspidalPoint, Multisegment, Segment


class NotationError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}")

    def pointer(self) -> str:
        """The offending line of input with a caret under ``pos``."""
        return f"{self.text}\n{' ' * self.pos}^"


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_INT = re.compile(r"[+-]?\d+")
_DECL = re.compile(
    r"@line\s+(?P<name>[A-Za-z_][A-Za-z0-9_']*)"
    r"(?:\s+dim=(?P<dim>\d+))?(?:\s+dual=(?P<dual>[A-Za-z_][A-Za-z0-9_']*))?\s*$"
)


class LineTable(dict):
    """Maps identifiers to lines.  Always knows the default line."""

    def __init__(self, lines: Iterable[CuspidalLine] = ()):
        super().__init__()
        self[DEFAULT_LINE.id] = DEFAULT_LINE
        for line in lines:
            self.declare(line)

    def declare(self, line: CuspidalLine) -> None:
        for ln in (line, line.dual()):
            known = self.get(ln.id)
            if known is not None and known != ln:
                raise NotationError(f"line {ln.id!r} redeclared inconsistently")
            self[ln.id] = ln

    @classmethod
    def for_multisegments(cls, *ms: Multisegment) -> "LineTable":
        return cls(line for m in ms for line in m.lines())


def _parse_preamble(text: str, table: LineTable) -> tuple[str, int]:
    """Consume declaration lines; return the remaining body and its offset."""
    offset = 0
    chunks = re.split(r"(\n|;)", text)
    body_start = 0
    consumed = 0
    for i in range(0, len(chunks), 2):
        chunk = chunks[i]
        sep = chunks[i + 1] if i + 1 < len(chunks) else ""
        stripped = chunk.strip()
        if stripped.startswith("@"):
            match = _DECL.match(stripped)
            if not match:
                raise NotationError("malformed line declaration", text, consumed + chunk.find("@"))
            name = match["name"]
            dim = int(match["dim"]) if match["dim"] else 1
            if dim < 1:
                raise NotationError("line dimension must be positive", text, consumed)
            table.declare(CuspidalLine(name, dim, match["dual"]))
            consumed += len(chunk) + len(sep)
            body_start = consumed
        elif not stripped and sep:
            consumed += len(chunk) + len(sep)
            body_start = consumed
        else:
            break
    offset = body_start
    return text[body_start:], offset


class _Scanner:
    def __init__(self, text: str, full: str, offset: int):
        self.text = text
        self.full = full
        self.offset = offset
        self.i = 0

    def error(self, msg: str, at: Optional[int] = None) -> NotationError:
        pos = self.offset + (self.i if at is None else at)
        return NotationError(msg, self.full, pos)

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")
        self.i += 1

    def integer(self) -> int:
        self.skip()
        m = _INT.match(self.text, self.i)
        if not m:
            raise self.error("expected an integer")
        self.i = m.end()
        return int(m.group())

    def ident(self) -> tuple[str, int]:
        self.skip()
        m = _IDENT.match(self.text, self.i)
        if not m:
            raise self.error("expected a line identifier")
        start = self.i
        self.i = m.end()
        return m.group(), start


def parse_segment(text: str, table: Optional[Mapping[str, CuspidalLine]] = None) -> Segment:
    m = parse_multisegment(text, table)
    if len(m) != 1:
        raise NotationError("expected exactly one segment", text, 0)
    return m.entries[0]


def parse_multisegment(text: str, table: Optional[Mapping[str, CuspidalLine]] = None) -> Multisegment:
    table = LineTable(table.values()) if table is not None else LineTable()
    body, offset = _parse_preamble(text, table)
    sc = _Scanner(body, text, offset)
    if sc.peek() == "":
        raise sc.error("empty input")
    if sc.peek() == "0":
        sc.i += 1
        if sc.peek() != "":
            raise sc.error("unexpected input after '0'")
        return Multisegment()
    segs = [_segment(sc, table)]
    while sc.peek() == "+":
        sc.i += 1
        segs.append(_segment(sc, table))
    if sc.peek() != "":
        raise sc.error(f"unexpected character {sc.peek()!r}")
    return Multisegment(segs)


def _segment(sc: _Scanner, table: Mapping[str, CuspidalLine]) -> Segment:
    sc.skip()
    start = sc.i
    sc.expect("[")
    a = sc.integer()
    b = a
    if sc.peek() == ",":
        sc.i += 1
        b = sc.integer()
    sc.expect("]")
    line = DEFAULT_LINE
    if sc.i < len(sc.text) and sc.text[sc.i] == "_":
        sc.i += 1
        name, at = sc.ident()
        if name not in table:
            raise sc.error(f"unknown line {name!r}", at)
        line = table[name]
    if b < a:
        raise sc.error(f"empty segments not writable: [{a},{b}]", start)
    return Segment(line, a, b)


def print_segment(seg: Segment) -> str:
    return str(seg)


def print_multisegment(m: Multisegment) -> str:
    if not m:
        return "0"
    return "+".join(print_segment(s) for s in m)


def print_preamble(lines: Iterable[CuspidalLine]) -> list[str]:
    out, seen = [], set()
    for line in sorted(set(lines)):
        if line == DEFAULT_LINE or line.id in seen:
            continue
        seen.update({line.id, line.dual().id})
        decl = f"@line {line.id} dim={line.dim}"
        if line.dual_id is not None:
            decl += f" dual={line.dual_id}"
        out.append(decl)
    return out


def print_source(m: Multisegment) -> str:
    """Self-contained text: declarations for every non-default line, then the body."""
    return "\n".join(print_preamble(m.lines()) + [print_multisegment(m)])


def print_point(p: CuspidalPoint) -> str:
    return f"{p.exp}" if p.line == DEFAULT_LINE else f"{p.exp}_{p.line.id}"


def parse_point(text: str, table: Optional[Mapping[str, CuspidalLine]] = None) -> CuspidalPoint:
    """``"2"`` or ``"2_rho"``: the point nu^2 rho."""
    table = LineTable(table.values()) if table is not None else LineTable()
    match = re.fullmatch(r"\s*([+-]?\d+)(?:_([A-Za-z_][A-Za-z0-9_']*))?\s*", text)
    if not match:
        raise NotationError("expected a point such as 2 or 2_rho", text, 0)
    name = match.group(2) or DEFAULT_LINE.id
    if name not in table:
        raise NotationError(f"unknown line {name!r}", text, match.start(2))
    return CuspidalPoint(table[name], int(match.group(1)))


# JSON mirror ---------------------------------------------------------------

def line_to_json(line: CuspidalLine) -> dict:
    return {"id": line.id, "dim": line.dim, "dual": line.dual().id}


def segment_to_json(seg: Segment) -> dict:
    return {"line": seg.line.id, "a": seg.a, "b": seg.b}


def multisegment_to_json(m: Multisegment) -> list[dict]:
    return [
        {"line": s.line.id, "a": s.a, "b": s.b, "mult": k}
        for s, k in sorted(Counter(m.entries).items())
    ]


def multisegment_from_json(data: list[dict], lines: Iterable[dict] = ()) -> Multisegment:
    table = LineTable(CuspidalLine(d["id"], d.get("dim", 1), d.get("dual")) for d in lines)
    segs = []
    for item in data:
        name = item.get("line", DEFAULT_LINE.id)
        if name not in table:
            raise NotationError(f"unknown line {name!r}")
        if item["b"] < item["a"]:
            raise NotationError(f"empty segments not writable: [{item['a']},{item['b']}]")
        segs.extend([Segment(table[name], item["a"], item["b"])] * item.get("mult", 1))
    return Multisegment(segs)
