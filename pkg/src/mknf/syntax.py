"""Ground disjunctive hybrid MKNF knowledge bases: AST, parser, renderer.

Text format::

    % comment
    #ont c -> (b & d).
    a ; b :- c.
    x ; y :- p, not q.
    z.

Ontology formulas use ``~ & | -> <->`` (tightest first, ``->`` right
associative) plus the constants ``true`` and ``false``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Union

Atom = str

ATOM_RE = re.compile(r"[a-z][A-Za-z0-9_]*")
KEYWORDS = frozenset({"not", "true", "false"})


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        where = f"{line}:{col}: " if line else ""
        super().__init__(where + msg)


# ---------------------------------------------------------------------------
# propositional formulas

@dataclass(frozen=True)
class Var:
    name: Atom


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Neg:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


Formula = Union[Var, Const, Neg, And, Or, Implies, Iff]


def atoms_of(f: Formula) -> Iterator[Atom]:
    """Atoms of ``f`` in left-to-right order of first occurrence (with repeats)."""
    if isinstance(f, Var):
        yield f.name
    elif isinstance(f, Neg):
        yield from atoms_of(f.arg)
    elif isinstance(f, (And, Or, Implies, Iff)):
        yield from atoms_of(f.left)
        yield from atoms_of(f.right)


def evaluate(f: Formula, true_atoms) -> bool:
    """Classical value of ``f`` when exactly ``true_atoms`` hold."""
    if isinstance(f, Var):
        return f.name in true_atoms
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Neg):
        return not evaluate(f.arg, true_atoms)
    l, r = evaluate(f.left, true_atoms), evaluate(f.right, true_atoms)
    if isinstance(f, And):
        return l and r
    if isinstance(f, Or):
        return l or r
    if isinstance(f, Implies):
        return (not l) or r
    return l == r


def conj(formulas: Iterable[Formula]) -> Formula:
    out = None
    for f in formulas:
        out = f if out is None else And(out, f)
    return Const(True) if out is None else out


# ---------------------------------------------------------------------------
# rules and knowledge bases

def _unique(xs: Iterable[Atom]) -> tuple[Atom, ...]:
    return tuple(dict.fromkeys(xs))


@dataclass(frozen=True)
class Rule:
    id: int
    head: tuple[Atom, ...]
    body_pos: tuple[Atom, ...] = ()
    body_neg: tuple[Atom, ...] = ()

    def __post_init__(self):
        if not self.head:
            raise ValueError(f"rule {self.id}: empty head")
        for part in ("head", "body_pos", "body_neg"):
            xs = getattr(self, part)
            if len(set(xs)) != len(xs):
                raise ValueError(f"rule {self.id}: duplicate atom in {part}")

    @property
    def is_normal(self) -> bool:
        return len(self.head) == 1

    def atoms(self) -> Iterator[Atom]:
        yield from self.head
        yield from self.body_pos
        yield from self.body_neg

    def __str__(self):
        head = " ; ".join(self.head)
        body = list(self.body_pos) + [f"not {c}" for c in self.body_neg]
        return f"{head} :- {', '.join(body)}." if body else f"{head}."


@dataclass(frozen=True)
class KnowledgeBase:
    ontology: tuple[Formula, ...] = ()
    program: tuple[Rule, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ontology", tuple(self.ontology))
        object.__setattr__(self, "program", tuple(self.program))
        for i, r in enumerate(self.program, 1):
            if r.id != i:
                raise ValueError(f"rule ids must be 1..n in order, got {r.id} at position {i}")

    @cached_property
    def ka(self) -> tuple[Atom, ...]:
        """Atoms under K or not in some rule, by first occurrence."""
        return _unique(a for r in self.program for a in r.atoms())

    @cached_property
    def signature(self) -> tuple[Atom, ...]:
        onto = (a for f in self.ontology for a in atoms_of(f))
        return _unique([*self.ka, *onto])

    @property
    def is_normal(self) -> bool:
        return all(r.is_normal for r in self.program)

    def rule(self, rid: int) -> Rule:
        return self.program[rid - 1]


def make_kb(rules: Iterable[tuple], ontology: Iterable[Formula] = ()) -> KnowledgeBase:
    """Build a KB from ``(head, body_pos, body_neg)`` triples, numbering rules from 1."""
    prog = []
    for i, spec in enumerate(rules, 1):
        head, pos, neg = (tuple(spec) + ((), ()))[:3]
        prog.append(Rule(i, tuple(head), tuple(pos), tuple(neg)))
    return KnowledgeBase(tuple(ontology), tuple(prog))


def compute_ka(kb: KnowledgeBase) -> frozenset[Atom]:
    return frozenset(kb.ka)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r\n]+)
      | (?P<comment>%[^\n]*)
      | (?P<ont>\#ont\b)
      | (?P<op><->|->|:-|[~&|();,.])
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks, pos, line, line_start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line, line_start = line + 1, pos + i + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.cur
        return ParseError(msg, tok.line, tok.col)

    def take(self, text=None, kind=None) -> _Tok:
        tok = self.cur
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            want = text or kind
            got = tok.text or "end of input"
            raise self.error(f"expected {want!r}, got {got!r}")
        self.i += 1
        return tok

    def accept(self, text) -> bool:
        if self.cur.text == text and self.cur.kind in ("op", "ident"):
            self.i += 1
            return True
        return False

    def atom(self) -> Atom:
        tok = self.take(kind="ident")
        if not ATOM_RE.fullmatch(tok.text) or tok.text in KEYWORDS:
            raise self.error(f"invalid atom {tok.text!r}", tok)
        return tok.text

    # formulas, loosest first
    def iff(self):
        f = self.implies()
        while self.accept("<->"):
            f = Iff(f, self.implies())
        return f

    def implies(self):
        f = self.disj()
        if self.accept("->"):
            return Implies(f, self.implies())
        return f

    def disj(self):
        f = self.conj()
        while self.accept("|"):
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.accept("&"):
            f = And(f, self.unary())
        return f

    def unary(self):
        if self.accept("~"):
            return Neg(self.unary())
        if self.accept("("):
            f = self.iff()
            self.take(")")
            return f
        if self.cur.kind == "ident" and self.cur.text in ("true", "false"):
            return Const(self.take().text == "true")
        return Var(self.atom())

    def rule_part(self, what, rid, tok, items):
        if len(set(items)) != len(items):
            raise self.error(f"duplicate atom in rule {what}", tok)
        return tuple(items)

    def rule(self, rid: int) -> Rule:
        start = self.cur
        if start.text == ":-":
            raise self.error("empty rule head (constraints are not supported)")
        head = [self.atom()]
        while self.accept(";"):
            head.append(self.atom())
        pos, neg = [], []
        if self.accept(":-"):
            while True:
                if self.cur.text == "not" and self.cur.kind == "ident":
                    self.take()
                    neg.append(self.atom())
                else:
                    pos.append(self.atom())
                if not self.accept(","):
                    break
        self.take(".")
        return Rule(
            rid,
            self.rule_part("head", rid, start, head),
            self.rule_part("positive body", rid, start, pos),
            self.rule_part("negative body", rid, start, neg),
        )

    def kb(self) -> KnowledgeBase:
        onto, prog = [], []
        while self.cur.kind != "eof":
            if self.cur.kind == "ont":
                self.take()
                onto.append(self.iff())
                self.take(".")
            else:
                prog.append(self.rule(len(prog) + 1))
        return KnowledgeBase(tuple(onto), tuple(prog))


def parse_kb(text: str) -> KnowledgeBase:
    return _Parser(text).kb()


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.iff()
    p.take(kind="eof")
    return f


# ---------------------------------------------------------------------------
# rendering

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_SYM = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def render_formula(f: Formula, ctx: int = 0) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Neg):
        return "~" + render_formula(f.arg, 5)
    prec = _PREC[type(f)]
    if isinstance(f, Implies):  # right associative
        lp, rp = prec + 1, prec
    else:
        lp, rp = prec, prec + 1
    s = f"{render_formula(f.left, lp)} {_SYM[type(f)]} {render_formula(f.right, rp)}"
    return f"({s})" if prec < ctx else s


HEADER = "% hybrid MKNF knowledge base"


def render_kb(kb: KnowledgeBase) -> str:
    lines = [HEADER]
    lines += [f"#ont {render_formula(f)}." for f in kb.ontology]
    lines += [str(r) for r in kb.program]
    return "\n".join(lines) + "\n"
