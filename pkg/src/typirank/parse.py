"""Textual KB format: tokenizer, recursive-descent parser, serializer.

Statements end with a period, `#` starts a line comment, whitespace is
insignificant. The dialect is set by a `mode plain.` / `mode alctp.` /
`mode tcl.` directive; without one the KB is plain, auto-upgraded to alctp
when a probability annotation appears.

    SmartWorker <= Worker.
    T(Worker) <= ReachableAtOffice.
    0.8 :: T(Fish) <= ~Affectionate.      # probabilistic (alctp or tcl)
    paola : Worker.
    paola : T(Worker).
    (fabrizio, paola) : HasColleague.

Concept syntax: `Top`, `Bot`, atoms, `~C`, `C & D`, `C | D`, `some R. C`,
`all R. C`, parentheses. `~` and the quantifiers bind tightest, then `&`,
then `|`; a quantifier applies to the unary-level concept after its dot, so
`some R. A & B` reads as `(some R. A) & B`.

Probabilities are decimal literals or `num/den` fractions, kept exact.
"""

from __future__ import annotations

from fractions import Fraction

from .model import (
    And,
    Atom,
    BOT,
    Bottom,
    Concept,
    ConceptAssertion,
    Exists,
    Forall,
    Inclusion,
    KnowledgeBase,
    LeftConcept,
    Not,
    Or,
    Plain,
    RoleAssertion,
    TOP,
    Top,
    Typical,
    format_probability,
)


class ParseError(Exception):
    """Syntax or dialect error, with 1-based line and column of the offence."""

    def __init__(self, line, column, expected, found):
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found
        super().__init__(f"{line}:{column}: expected {expected}, found {found}")


KEYWORDS = {"mode", "plain", "alctp", "tcl", "some", "all", "Top", "Bot", "T"}

_PUNCT = ("::", "<=", "(", ")", ":", ",", ".", "&", "|", "~")


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind  # 'ident', 'number', 'punct', 'eof'
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"Token({self.kind},{self.text!r}@{self.line}:{self.col})"


def _tokenize(text):
    toks = []
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
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            elif j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            toks.append(_Token("number", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                toks.append(_Token("punct", p, line, col))
                i += len(p)
                col += len(p)
                break
        else:
            raise ParseError(line, col, "a token", repr(ch))
    toks.append(_Token("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, expected, tok=None):
        tok = tok or self.peek()
        found = repr(tok.text) if tok.kind != "eof" else "end of input"
        raise ParseError(tok.line, tok.col, expected, found)

    def eat_punct(self, p):
        t = self.peek()
        if t.kind == "punct" and t.text == p:
            return self.next()
        self.fail(f"'{p}'")

    def at_punct(self, p):
        t = self.peek()
        return t.kind == "punct" and t.text == p

    def eat_name(self, what="a name"):
        t = self.peek()
        if t.kind == "ident" and t.text not in KEYWORDS:
            return self.next().text
        self.fail(what)

    # concept := disj ; disj := conj ('|' conj)* ; conj := unary ('&' unary)*
    # unary := '~' unary | 'some' R '.' unary | 'all' R '.' unary | atomic

    def concept(self) -> Concept:
        c = self.conj()
        while self.at_punct("|"):
            self.next()
            c = Or(c, self.conj())
        return c

    def conj(self) -> Concept:
        c = self.unary()
        while self.at_punct("&"):
            self.next()
            c = And(c, self.unary())
        return c

    def unary(self) -> Concept:
        t = self.peek()
        if t.kind == "punct" and t.text == "~":
            self.next()
            return Not(self.unary())
        if t.kind == "ident" and t.text in ("some", "all"):
            self.next()
            role = self.eat_name("a role name")
            self.eat_punct(".")
            body = self.unary()
            return Exists(role, body) if t.text == "some" else Forall(role, body)
        return self.atomic()

    def atomic(self) -> Concept:
        t = self.peek()
        if t.kind == "punct" and t.text == "(":
            self.next()
            c = self.concept()
            self.eat_punct(")")
            return c
        if t.kind == "ident":
            if t.text == "Top":
                self.next()
                return TOP
            if t.text == "Bot":
                self.next()
                return BOT
            if t.text not in KEYWORDS:
                self.next()
                return Atom(t.text)
        self.fail("a concept")

    def left_concept(self) -> LeftConcept:
        t = self.peek()
        if t.kind == "ident" and t.text == "T":
            nxt = self.toks[self.pos + 1]
            if nxt.kind == "punct" and nxt.text == "(":
                self.next()
                self.next()
                c = self.concept()
                self.eat_punct(")")
                return Typical(c)
        return Plain(self.concept())

    def probability(self) -> Fraction:
        t = self.next()
        if t.kind != "number":
            self.fail("a probability", t)
        try:
            if "/" in t.text:
                num, den = t.text.split("/")
                p = Fraction(int(num), int(den))
            else:
                p = Fraction(t.text)
        except (ValueError, ZeroDivisionError):
            self.fail("a probability", t)
        if not (0 < p < 1):
            raise ParseError(t.line, t.col, "a probability strictly between 0 and 1", t.text)
        return p


def _parse_statement(p: _Parser):
    """One statement, period already pending. Returns one of
    ('mode', name), ('inclusion', Inclusion), ('assertion', Assertion)."""
    t = p.peek()
    if t.kind == "ident" and t.text == "mode":
        p.next()
        m = p.next()
        if m.kind != "ident" or m.text not in ("plain", "alctp", "tcl"):
            p.fail("'plain', 'alctp' or 'tcl'", m)
        return ("mode", m.text, t)
    if t.kind == "punct" and t.text == "(":
        # role assertion: ( a , b ) : R
        p.next()
        a = p.eat_name("an individual")
        p.eat_punct(",")
        b = p.eat_name("an individual")
        p.eat_punct(")")
        p.eat_punct(":")
        r = p.eat_name("a role name")
        return ("assertion", RoleAssertion(r, a, b), t)
    if t.kind == "number":
        prob = p.probability()
        p.eat_punct("::")
        left = p.left_concept()
        if not left.typical:
            raise ParseError(t.line, t.col, "T(...) after a probability", str(left))
        p.eat_punct("<=")
        right = p.concept()
        return ("inclusion", Inclusion(left, right, prob), t)
    # either `ident : ...` (assertion) or an inclusion
    if t.kind == "ident" and t.text not in KEYWORDS:
        nxt = p.toks[p.pos + 1]
        if nxt.kind == "punct" and nxt.text == ":":
            p.next()
            p.next()
            left = p.left_concept()
            return ("assertion", ConceptAssertion(left, t.text), t)
    left = p.left_concept()
    p.eat_punct("<=")
    right = p.concept()
    return ("inclusion", Inclusion(left, right), t)


def parse_kb(text: str) -> KnowledgeBase:
    """Parse the textual format into a KnowledgeBase.

    The dialect comes from the `mode` directive when present; otherwise it is
    plain, upgraded to alctp if any probability annotation occurs. Dialect
    range violations (such as 0.3 in tcl mode) raise ParseError at the
    offending statement.
    """
    p = _Parser(text)
    dialect = None
    strict, defeasible, abox = [], [], []
    prob_sites = []
    while p.peek().kind != "eof":
        kind, value, at = _parse_statement(p)
        p.eat_punct(".")
        if kind == "mode":
            if dialect is not None and dialect != value:
                raise ParseError(at.line, at.col, "a single mode directive", value)
            dialect = value
        elif kind == "inclusion":
            if value.left.typical:
                defeasible.append(value)
                if value.probability is not None:
                    prob_sites.append((value, at))
            else:
                strict.append(value)
        else:
            abox.append(value)
    if dialect is None:
        dialect = "alctp" if prob_sites else "plain"
    for inc, at in prob_sites:
        low = Fraction(1, 2) if dialect == "tcl" else Fraction(0)
        if not (low < inc.probability < 1):
            raise ParseError(
                at.line,
                at.col,
                f"a probability in ({low}, 1) in {dialect} mode",
                format_probability(inc.probability),
            )
    if dialect == "plain" and prob_sites:
        raise ParseError(
            prob_sites[0][1].line,
            prob_sites[0][1].col,
            "no probability annotation in plain mode",
            format_probability(prob_sites[0][0].probability),
        )
    try:
        return KnowledgeBase(dialect, tuple(strict), tuple(defeasible), tuple(abox))
    except ValueError as e:
        raise ParseError(1, 1, "a well-formed knowledge base", str(e)) from e


def parse_concept(text: str) -> Concept:
    p = _Parser(text)
    c = p.concept()
    if p.peek().kind != "eof":
        p.fail("end of input")
    return c


def parse_query(text: str):
    """Parse a query: an inclusion `C <= D` / `T(C) <= D`, a concept or
    typicality assertion `a : C` / `a : T(C)`, or a role assertion
    `(a, b) : R`. A trailing period is allowed."""
    p = _Parser(text)
    kind, value, _ = _parse_statement(p)
    if kind == "mode":
        p.fail("a query, not a directive")
    if p.at_punct("."):
        p.next()
    if p.peek().kind != "eof":
        p.fail("end of input")
    if kind == "inclusion" and value.probability is not None:
        raise ParseError(1, 1, "a query without probability", str(value))
    return value


def serialize_kb(kb: KnowledgeBase) -> str:
    """Emit the textual format; parse_kb(serialize_kb(kb)) is structurally
    equal to kb. Plain KBs get no mode directive."""
    lines = []
    if kb.dialect != "plain":
        lines.append(f"mode {kb.dialect}.")
    for inc in kb.strict:
        lines.append(f"{inc}.")
    for inc in kb.defeasible:
        lines.append(f"{inc}.")
    for a in kb.abox:
        lines.append(f"{a}.")
    return "\n".join(lines) + ("\n" if lines else "")
