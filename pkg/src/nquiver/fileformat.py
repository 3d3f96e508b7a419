"""Text format for quivers, representations, and their morphisms.

The grammar is free-form over whitespace with `#` line comments:

    field QQ                      # or GF(p)
    quiver Q { vertices: 1 2; arrows: a: 1 -> 2; }
    rep V on Q { dim 1 = 1; dim 2 = 2; map a = [[1], [0]]; }
    nrep X on (Q, P) { component 1 = V; component 2 = W;
                       connector 2 (a, b) = [[1]]; }
    morphism f : V -> W { at 1 = [[1]]; }
    morphism g : X -> Y { at 1.1 = [[1]]; at 2.3 = [[0, 1]]; }

Matrix rows are rows of the target space: a map acts on column vectors
from the left.  Names must be declared before they are referenced.  A
`dim` line may be omitted (defaults to 0); a `map` or `at` line may be
omitted only when one of its end spaces is zero-dimensional; absent
connectors are zero.  Scalars are integers or fractions like -3/4.

Emission is the inverse: declaration order is preserved, every `dim` is
explicit, forced (zero-sided) matrices and all-zero connectors are
omitted, and rationals print in lowest terms, so parse(emit(d)) == d.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (
    NonCommutingSquare,
    ParseError,
    QuiverRepError,
    UnresolvedName,
)
from .linalg import FieldSpec, Matrix
from .nrep import NRep, NRepMorphism
from .quiver import Quiver, arrow_pairs
from .rep import Rep, RepMorphism


@dataclass
class Document:
    """Named values parsed from one file; insertion order is declaration order."""

    field: FieldSpec
    quivers: dict[str, Quiver] = dc_field(default_factory=dict)
    reps: dict[str, Rep] = dc_field(default_factory=dict)
    nreps: dict[str, NRep] = dc_field(default_factory=dict)
    morphisms: dict = dc_field(default_factory=dict)
    # morphism name -> (source name, target name), needed to emit headers
    morphism_refs: dict = dc_field(default_factory=dict)


# ------------------------------------------------------------------- tokenizer


@dataclass(frozen=True)
class _Token:
    kind: str  # "name" | "punct" | "end"
    text: str
    line: int
    col: int


_TWO_CHAR = ("->",)
_ONE_CHAR = set("{}()[],;:=./-")


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if text.startswith(_TWO_CHAR[0], i):
            toks.append(_Token("punct", "->", start_line, start_col))
            i += 2
            col += 2
            continue
        if ch in _ONE_CHAR:
            toks.append(_Token("punct", ch, start_line, start_col))
            i += 1
            col += 1
            continue
        if ch.isalnum() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("name", text[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(_Token("end", "", line, col))
    return toks


# --------------------------------------------------------------------- parser


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def advance(self) -> _Token:
        t = self.toks[self.pos]
        if t.kind != "end":
            self.pos += 1
        return t

    def fail(self, message: str, tok: _Token | None = None):
        t = tok or self.peek()
        raise ParseError(message, t.line, t.col)

    def expect_punct(self, text: str) -> _Token:
        t = self.peek()
        if t.kind != "punct" or t.text != text:
            shown = t.text if t.kind != "end" else "end of input"
            self.fail(f"expected {text!r}, found {shown!r}")
        return self.advance()

    def expect_name(self, what: str = "a name") -> _Token:
        t = self.peek()
        if t.kind != "name":
            shown = t.text if t.kind != "end" else "end of input"
            self.fail(f"expected {what}, found {shown!r}")
        return self.advance()

    def expect_keyword(self, word: str) -> _Token:
        t = self.peek()
        if t.kind != "name" or t.text != word:
            shown = t.text if t.kind != "end" else "end of input"
            self.fail(f"expected {word!r}, found {shown!r}")
        return self.advance()

    def at_keyword(self, word: str) -> bool:
        t = self.peek()
        return t.kind == "name" and t.text == word

    # scalars / matrices

    def parse_int(self, what: str = "an integer") -> int:
        t = self.expect_name(what)
        if not t.text.isdigit():
            self.fail(f"expected {what}, found {t.text!r}", t)
        return int(t.text)

    def parse_scalar(self):
        neg = False
        if self.peek().kind == "punct" and self.peek().text == "-":
            self.advance()
            neg = True
        num = self.parse_int("a number")
        if self.peek().kind == "punct" and self.peek().text == "/":
            self.advance()
            den = self.parse_int("a denominator")
            if den == 0:
                self.fail("zero denominator")
            value = Fraction(num, den)
        else:
            value = num
        return -value if neg else value

    def parse_matrix(self) -> list[list]:
        self.expect_punct("[")
        rows = [self.parse_row()]
        while self.peek().text == ",":
            self.advance()
            rows.append(self.parse_row())
        self.expect_punct("]")
        return rows

    def parse_row(self) -> list:
        self.expect_punct("[")
        row = [self.parse_scalar()]
        while self.peek().text == ",":
            self.advance()
            row.append(self.parse_scalar())
        self.expect_punct("]")
        return row


def _wrap_build(parser: _Parser, tok: _Token, build):
    """Run a constructor, translating math-layer rejections to located errors.

    Non-commuting squares pass through untouched: they are validation
    failures of a well-formed file, not parse errors.
    """
    try:
        return build()
    except NonCommutingSquare:
        raise
    except QuiverRepError as exc:
        raise ParseError(str(exc), tok.line, tok.col) from exc


def parse(text: str) -> Document:
    p = _Parser(text)
    if not p.at_keyword("field"):
        p.fail("expected 'field' declaration")
    p.advance()
    ftok = p.expect_name("a field ('QQ' or 'GF')")
    if ftok.text == "QQ":
        fieldspec = FieldSpec.rationals()
    elif ftok.text == "GF":
        p.expect_punct("(")
        prime = p.parse_int("a prime")
        p.expect_punct(")")
        try:
            fieldspec = FieldSpec.gf(prime)
        except ValueError as exc:
            raise ParseError(str(exc), ftok.line, ftok.col) from exc
    else:
        p.fail(f"unknown field {ftok.text!r}", ftok)
    doc = Document(field=fieldspec)
    while p.peek().kind != "end":
        t = p.peek()
        if p.at_keyword("quiver"):
            _parse_quiver(p, doc)
        elif p.at_keyword("rep"):
            _parse_rep(p, doc)
        elif p.at_keyword("nrep"):
            _parse_nrep(p, doc)
        elif p.at_keyword("morphism"):
            _parse_morphism(p, doc)
        else:
            p.fail(
                f"expected 'quiver', 'rep', 'nrep', or 'morphism', "
                f"found {t.text!r}"
            )
    return doc


def _declare(p: _Parser, table: dict, name_tok: _Token, kind: str):
    if name_tok.text in table:
        p.fail(f"duplicate {kind} name {name_tok.text!r}", name_tok)


def _parse_quiver(p: _Parser, doc: Document):
    p.expect_keyword("quiver")
    name_tok = p.expect_name("a quiver name")
    _declare(p, doc.quivers, name_tok, "quiver")
    p.expect_punct("{")
    vertices: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    while p.peek().text != "}":
        if p.at_keyword("vertices"):
            p.advance()
            p.expect_punct(":")
            while p.peek().kind == "name":
                vertices.append(p.advance().text)
            p.expect_punct(";")
        elif p.at_keyword("arrows"):
            p.advance()
            p.expect_punct(":")
            # arrows run to the end of the block
            while p.peek().kind == "name":
                aname = p.advance().text
                p.expect_punct(":")
                src = p.expect_name("a source vertex").text
                p.expect_punct("->")
                tgt = p.expect_name("a target vertex").text
                p.expect_punct(";")
                arrows.append((aname, src, tgt))
        else:
            p.fail("expected 'vertices:' or 'arrows:'")
    p.expect_punct("}")
    q = _wrap_build(p, name_tok, lambda: Quiver(vertices, arrows))
    doc.quivers[name_tok.text] = q


def _resolve(p: _Parser, table: dict, tok: _Token, kind: str):
    if tok.text not in table:
        raise UnresolvedName(f"unknown {kind} {tok.text!r}", tok.line, tok.col)
    return table[tok.text]


def _parse_rep(p: _Parser, doc: Document):
    p.expect_keyword("rep")
    name_tok = p.expect_name("a rep name")
    _declare(p, doc.reps, name_tok, "rep")
    p.expect_keyword("on")
    qtok = p.expect_name("a quiver name")
    quiver = _resolve(p, doc.quivers, qtok, "quiver")
    p.expect_punct("{")
    dims: dict[str, int] = {}
    maps: dict[str, list] = {}
    while p.peek().text != "}":
        if p.at_keyword("dim"):
            p.advance()
            v = p.expect_name("a vertex").text
            p.expect_punct("=")
            dims[v] = p.parse_int("a dimension")
            p.expect_punct(";")
        elif p.at_keyword("map"):
            p.advance()
            a = p.expect_name("an arrow").text
            p.expect_punct("=")
            maps[a] = p.parse_matrix()
            p.expect_punct(";")
        else:
            p.fail("expected 'dim' or 'map'")
    p.expect_punct("}")
    full_dims = {v: dims.get(v, 0) for v in quiver.vertices}
    for ar in quiver.arrows:
        if ar.name not in maps and full_dims[ar.source] and full_dims[ar.target]:
            p.fail(
                f"missing map for arrow {ar.name!r} "
                f"(both end spaces are nonzero)",
                name_tok,
            )
    rep = _wrap_build(p, name_tok, lambda: Rep(quiver, doc.field, dims, maps))
    doc.reps[name_tok.text] = rep


def _parse_nrep(p: _Parser, doc: Document):
    p.expect_keyword("nrep")
    name_tok = p.expect_name("an nrep name")
    _declare(p, doc.nreps, name_tok, "nrep")
    p.expect_keyword("on")
    p.expect_punct("(")
    qtoks = [p.expect_name("a quiver name")]
    while p.peek().text == ",":
        p.advance()
        qtoks.append(p.expect_name("a quiver name"))
    p.expect_punct(")")
    quivers = [_resolve(p, doc.quivers, t, "quiver") for t in qtoks]
    n = len(quivers)
    p.expect_punct("{")
    comps: dict[int, Rep] = {}
    connectors: list[dict] = [dict() for _ in range(n - 1)]
    while p.peek().text != "}":
        if p.at_keyword("component"):
            p.advance()
            ltok = p.peek()
            level = p.parse_int("a level number")
            if not 1 <= level <= n:
                p.fail(f"component level {level} outside 1..{n}", ltok)
            if level in comps:
                p.fail(f"duplicate component for level {level}", ltok)
            p.expect_punct("=")
            rtok = p.expect_name("a rep name")
            comps[level] = _resolve(p, doc.reps, rtok, "rep")
            p.expect_punct(";")
        elif p.at_keyword("connector"):
            p.advance()
            ltok = p.peek()
            level = p.parse_int("a level number")
            if not 2 <= level <= n:
                p.fail(f"connector level {level} outside 2..{n}", ltok)
            p.expect_punct("(")
            lo = p.expect_name("an arrow name").text
            p.expect_punct(",")
            hi = p.expect_name("an arrow name").text
            p.expect_punct(")")
            p.expect_punct("=")
            mat = p.parse_matrix()
            p.expect_punct(";")
            if (lo, hi) in connectors[level - 2]:
                p.fail(f"duplicate connector ({lo}, {hi}) at level {level}", ltok)
            connectors[level - 2][(lo, hi)] = mat
        else:
            p.fail("expected 'component' or 'connector'")
    p.expect_punct("}")
    missing = [str(m) for m in range(1, n + 1) if m not in comps]
    if missing:
        p.fail(f"missing component for level(s) {', '.join(missing)}", name_tok)
    ordered = [comps[m] for m in range(1, n + 1)]
    nrep = _wrap_build(
        p, name_tok, lambda: NRep(quivers, ordered, connectors)
    )
    doc.nreps[name_tok.text] = nrep


def _parse_morphism(p: _Parser, doc: Document):
    p.expect_keyword("morphism")
    name_tok = p.expect_name("a morphism name")
    _declare(p, doc.morphisms, name_tok, "morphism")
    p.expect_punct(":")
    stok = p.expect_name("a source name")
    p.expect_punct("->")
    ttok = p.expect_name("a target name")
    if stok.text in doc.reps and stok.text in doc.nreps:
        p.fail(
            f"name {stok.text!r} is both a rep and an nrep; "
            f"morphism endpoints must be unambiguous",
            stok,
        )
    if stok.text in doc.reps:
        source = doc.reps[stok.text]
        target = _resolve(p, doc.reps, ttok, "rep")
        n_level = None
    elif stok.text in doc.nreps:
        source = doc.nreps[stok.text]
        target = _resolve(p, doc.nreps, ttok, "nrep")
        n_level = source.n
    else:
        raise UnresolvedName(
            f"unknown rep or nrep {stok.text!r}", stok.line, stok.col
        )
    p.expect_punct("{")
    flat: dict[str, list] = {}
    leveled: dict[int, dict[str, list]] = {}
    while p.peek().text != "}":
        if not p.at_keyword("at"):
            p.fail("expected 'at'")
        p.advance()
        head = p.expect_name("a vertex")
        if p.peek().text == ".":
            if n_level is None:
                p.fail("level.vertex form on a morphism between reps", head)
            if not head.text.isdigit():
                p.fail(f"expected a level number, found {head.text!r}", head)
            level = int(head.text)
            if not 1 <= level <= n_level:
                p.fail(f"level {level} outside 1..{n_level}", head)
            p.advance()
            v = p.expect_name("a vertex").text
            store = leveled.setdefault(level, {})
        else:
            if n_level is not None:
                p.fail("morphisms between nreps need 'at LEVEL.VERTEX'", head)
            v = head.text
            store = flat
        if v in store:
            p.fail(f"duplicate 'at' for {v!r}", head)
        p.expect_punct("=")
        store[v] = p.parse_matrix()
        p.expect_punct(";")
    p.expect_punct("}")
    if n_level is None:
        built = _wrap_build(
            p, name_tok, lambda: RepMorphism(source, target, flat)
        )
    else:
        comps = [leveled.get(m, {}) for m in range(1, n_level + 1)]
        built = _wrap_build(
            p, name_tok, lambda: NRepMorphism(source, target, comps)
        )
    doc.morphisms[name_tok.text] = built
    doc.morphism_refs[name_tok.text] = (stok.text, ttok.text)


# -------------------------------------------------------------------- emitter


def _fmt_scalar(x) -> str:
    return str(x)


def _fmt_matrix(m: Matrix) -> str:
    rows = m.to_rows()
    inner = ", ".join(
        "[" + ", ".join(_fmt_scalar(x) for x in row) + "]" for row in rows
    )
    return "[" + inner + "]"


def _name_of(table: dict, obj, kind: str) -> str:
    for name, candidate in table.items():
        if candidate is obj:
            return name
    for name, candidate in table.items():
        if candidate == obj:
            return name
    raise ValueError(f"{kind} is not named in the document")


def emit_quiver(name: str, q: Quiver) -> str:
    lines = [f"quiver {name} {{"]
    if q.vertices:
        lines.append("  vertices: " + " ".join(q.vertices) + ";")
    if q.arrows:
        lines.append("  arrows:")
        for a in q.arrows:
            lines.append(f"    {a.name}: {a.source} -> {a.target};")
    lines.append("}")
    return "\n".join(lines)


def emit_rep(name: str, rep: Rep, quiver_name: str) -> str:
    lines = [f"rep {name} on {quiver_name} {{"]
    for v in rep.quiver.vertices:
        lines.append(f"  dim {v} = {rep.dims[v]};")
    for a in rep.quiver.arrows:
        m = rep.maps[a.name]
        if m.nrows and m.ncols:
            lines.append(f"  map {a.name} = {_fmt_matrix(m)};")
    lines.append("}")
    return "\n".join(lines)


def emit_nrep(name: str, x: NRep, quiver_names: list, component_names: list) -> str:
    lines = [f"nrep {name} on (" + ", ".join(quiver_names) + ") {"]
    for m, comp_name in enumerate(component_names, start=1):
        lines.append(f"  component {m} = {comp_name};")
    for li in range(x.n - 1):
        for key, mat in x.connectors[li].items():
            if not mat.is_zero():
                lines.append(
                    f"  connector {li + 2} ({key[0]}, {key[1]}) = "
                    f"{_fmt_matrix(mat)};"
                )
    lines.append("}")
    return "\n".join(lines)


def emit_morphism(name: str, f, source_name: str, target_name: str) -> str:
    lines = [f"morphism {name} : {source_name} -> {target_name} {{"]
    if isinstance(f, RepMorphism):
        for v in f.source.quiver.vertices:
            m = f.comps[v]
            if m.nrows and m.ncols:
                lines.append(f"  at {v} = {_fmt_matrix(m)};")
    else:
        for li, fm in enumerate(f.comps):
            for v in fm.source.quiver.vertices:
                m = fm.comps[v]
                if m.nrows and m.ncols:
                    lines.append(f"  at {li + 1}.{v} = {_fmt_matrix(m)};")
    lines.append("}")
    return "\n".join(lines)


def emit(doc: Document) -> str:
    """Render a document; parse(emit(doc)) reproduces it exactly."""
    parts = [f"field {doc.field}"]
    for name, q in doc.quivers.items():
        parts.append(emit_quiver(name, q))
    for name, rep in doc.reps.items():
        parts.append(emit_rep(name, rep, _name_of(doc.quivers, rep.quiver, "quiver")))
    for name, x in doc.nreps.items():
        qnames = [_name_of(doc.quivers, q, "quiver") for q in x.quivers]
        cnames = [_name_of(doc.reps, c, "rep") for c in x.components]
        parts.append(emit_nrep(name, x, qnames, cnames))
    for name, f in doc.morphisms.items():
        src_name, tgt_name = doc.morphism_refs[name]
        parts.append(emit_morphism(name, f, src_name, tgt_name))
    return "\n\n".join(parts) + "\n"
