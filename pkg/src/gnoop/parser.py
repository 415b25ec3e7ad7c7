"""Reader and writer for the ``.gnoop`` declaration format.

Grammar::

    env         ::= constructor*
    constructor ::= "constructor" IDENT "<" tvarlist? ">" "extends" "{" typelist? "}" "{" member* "}"
    tvarlist    ::= tvar ("," tvar)*        tvar ::= IDENT ("extends" type)?
    typelist    ::= type ("," type)*
    type        ::= IDENT ("<" typelist? ">")?
    member      ::= "field" IDENT ":" type ";"
                  | "method" IDENT ("<" tvarlist? ">")? "(" typelist? ")" ":" type ";"

``//`` starts a comment that runs to the end of the line.  A bare identifier
is a type variable when one of that name is in scope, otherwise a zeroary
application when a constructor of that name exists, otherwise a variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Collection, Iterable, Optional, Union

from gnoop.diagnostics import Diagnostic, GnoopError, SourceSpan, error
from gnoop.syntax import (
    App,
    BoundedVar,
    ConstructorEnvironment,
    FieldSig,
    MethodSig,
    SignatureConstructor,
    TypeName,
    Var,
)

KEYWORDS = frozenset({"constructor", "extends", "field", "method"})
IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>//[^\n]*)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[<>,{}():;])")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "sym", "kw", "eof"
    text: str
    line: int
    column: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.line, self.column, max(len(self.text), 1))


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise GnoopError(
                error("E000", f"unexpected character {source[pos]!r}", SourceSpan(line, pos - line_start + 1))
            )
        kind = m.lastgroup
        text = m.group()
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "ident":
            tokens.append(Token("kw" if text in KEYWORDS else "ident", text, line, col))
        elif kind == "sym":
            tokens.append(Token("sym", text, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def _constructor_names(tokens: list[Token]) -> set[str]:
    return {
        tokens[i + 1].text
        for i, tok in enumerate(tokens[:-1])
        if tok.kind == "kw" and tok.text == "constructor" and tokens[i + 1].kind == "ident"
    }


class _Parser:
    def __init__(self, tokens: list[Token], known: Collection[str]):
        self.tokens = tokens
        self.pos = 0
        self.known = known
        self.problems: list[Diagnostic] = []

    # token plumbing

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def fail(self, expected: str) -> GnoopError:
        tok = self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return GnoopError(error("E000", f"expected {expected}, found {found}", tok.span))

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "kw") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.fail(repr(text))
        return self.advance()

    def advance(self) -> Token:
        tok = self.tok
        self.pos += 1
        return tok

    def ident(self, what: str = "identifier") -> Token:
        if self.tok.kind != "ident":
            raise self.fail(what)
        return self.advance()

    # grammar

    def type_name(self, scope: Collection[str]) -> TypeName:
        tok = self.ident("type name")
        if self.at("<"):
            self.advance()
            args: list[TypeName] = []
            if not self.at(">"):
                args = self.type_list(scope, ">")
            self.expect(">")
            return App(tok.text, tuple(args))
        if tok.text in scope:
            return Var(tok.text)
        if tok.text in self.known:
            return App(tok.text, ())
        return Var(tok.text)

    def type_list(self, scope: Collection[str], closer: str) -> list[TypeName]:
        items = [self.type_name(scope)]
        while self.at(","):
            self.advance()
            items.append(self.type_name(scope))
        return items

    def tvar_list(self, outer: Collection[str]) -> list[BoundedVar]:
        # Names are collected first: any variable of the list may appear in a sibling's bound.
        start = self.pos
        names: list[Token] = []
        depth = 0
        while not (depth == 0 and self.at(">")) and self.tok.kind != "eof":
            if self.at("<"):
                depth += 1
            elif self.at(">"):
                depth -= 1
            elif self.tok.kind == "ident" and depth == 0 and self.tokens[self.pos - 1].text in ("<", ","):
                names.append(self.tok)
            self.advance()
        self.pos = start
        scope = set(outer) | {t.text for t in names}

        out: list[BoundedVar] = []
        seen: set[str] = set()
        while True:
            tok = self.ident("type variable")
            bound: Optional[TypeName] = None
            if self.at("extends"):
                self.advance()
                bound = self.type_name(scope)
            if tok.text in seen:
                self.problems.append(error("E002", f"duplicate type variable {tok.text}", tok.span, [tok.text]))
            seen.add(tok.text)
            out.append(BoundedVar(tok.text, bound, tok.span))  # type: ignore[arg-type]
            if not self.at(","):
                break
            self.advance()
        return out

    def member(self, scope: Collection[str]) -> Union[FieldSig, MethodSig]:
        if self.at("field"):
            start = self.advance()
            label = self.ident("field label")
            self.expect(":")
            ty = self.type_name(scope)
            self.expect(";")
            return FieldSig(label.text, ty, SourceSpan(start.line, start.column, len(label.text)))
        if self.at("method"):
            start = self.advance()
            label = self.ident("method label")
            mtvars: list[BoundedVar] = []
            if self.at("<"):
                self.advance()
                if not self.at(">"):
                    mtvars = self.tvar_list(scope)
                self.expect(">")
            inner = set(scope) | {b.var for b in mtvars}
            self.expect("(")
            params: list[TypeName] = []
            if not self.at(")"):
                params = self.type_list(inner, ")")
            self.expect(")")
            self.expect(":")
            ret = self.type_name(inner)
            self.expect(";")
            return MethodSig(label.text, tuple(params), ret, tuple(mtvars), SourceSpan(start.line, start.column, len(label.text)))
        raise self.fail("'field', 'method' or '}'")

    def constructor(self) -> SignatureConstructor:
        self.expect("constructor")
        name = self.ident("constructor name")
        self.expect("<")
        tvars: list[BoundedVar] = []
        if not self.at(">"):
            tvars = self.tvar_list(())
        self.expect(">")
        scope = {b.var for b in tvars}
        self.expect("extends")
        self.expect("{")
        supers: list[TypeName] = []
        super_spans: list[SourceSpan] = []
        if not self.at("}"):
            while True:
                super_spans.append(self.tok.span)
                supers.append(self.type_name(scope))
                if not self.at(","):
                    break
                self.advance()
        self.expect("}")
        self.expect("{")
        fields: list[FieldSig] = []
        methods: list[MethodSig] = []
        while not self.at("}"):
            m = self.member(scope)
            (fields if isinstance(m, FieldSig) else methods).append(m)  # type: ignore[arg-type]
        self.expect("}")
        return SignatureConstructor(
            name.text, tuple(tvars), tuple(supers), tuple(fields), tuple(methods), name.span, tuple(super_spans)
        )

    def env(self) -> ConstructorEnvironment:
        constructors: list[SignatureConstructor] = []
        seen: set[str] = set()
        while self.tok.kind != "eof":
            sc = self.constructor()
            if sc.name in seen:
                self.problems.append(error("E001", f"duplicate constructor name {sc.name}", sc.span, [sc.name]))
                continue
            seen.add(sc.name)
            constructors.append(sc)
        return ConstructorEnvironment.of(constructors)


def parse_env(source: str) -> ConstructorEnvironment:
    """Parse a whole ``.gnoop`` source; raises :class:`GnoopError` with E000/E001/E002."""
    tokens = tokenize(source)
    p = _Parser(tokens, _constructor_names(tokens))
    env = p.env()
    if p.problems:
        raise GnoopError(p.problems)
    return env


def parse_type_name(source: str, env: ConstructorEnvironment | Collection[str], scope: Collection[str] = ()) -> TypeName:
    tokens = tokenize(source)
    known = set(env.names()) if isinstance(env, ConstructorEnvironment) else set(env)
    p = _Parser(tokens, known)
    t = p.type_name(scope)
    if p.tok.kind != "eof":
        raise p.fail("end of input")
    return t


# -- rendering ------------------------------------------------------------------------


def render_type(t: TypeName, scope: Collection[str] = ()) -> str:
    """Render a type name; a zeroary application shadowed by a variable in scope keeps its ``<>``."""
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return f"{t.head}<>" if t.head in scope else t.head
    return f"{t.head}<{','.join(render_type(a, scope) for a in t.args)}>"


def _render_tvars(tvars: Iterable[BoundedVar], scope: Collection[str]) -> str:
    parts = []
    for b in tvars:
        if b.bound is None:
            parts.append(b.var)
        else:
            parts.append(f"{b.var} extends {render_type(b.bound, scope)}")
    return ",".join(parts)


def render_constructor(sc: SignatureConstructor) -> str:
    scope = set(sc.tvar_names)
    supers = ", ".join(render_type(s, scope) for s in sc.supers)
    head = f"constructor {sc.name}<{_render_tvars(sc.tvars, scope)}> extends {{{' ' + supers + ' ' if supers else ''}}}"
    lines = []
    for f in sc.fields:
        lines.append(f"  field {f.label}: {render_type(f.ty, scope)};")
    for m in sc.methods:
        inner = scope | set(m.mtvar_names)
        tv = f"<{_render_tvars(m.mtvars, inner)}>" if m.mtvars else ""
        params = ", ".join(render_type(p, inner) for p in m.params)
        lines.append(f"  method {m.label}{tv}({params}): {render_type(m.ret, inner)};")
    if not lines:
        return head + " {}"
    return head + " {\n" + "\n".join(lines) + "\n}"


def render_env(env: ConstructorEnvironment) -> str:
    return "\n".join(render_constructor(sc) for sc in env.constructors()) + ("\n" if len(env) else "")


def render(value: Union[TypeName, SignatureConstructor, ConstructorEnvironment]) -> str:
    if isinstance(value, ConstructorEnvironment):
        return render_env(value)
    if isinstance(value, SignatureConstructor):
        return render_constructor(value)
    return render_type(value)
