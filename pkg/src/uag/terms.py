"""Signatures, terms, equations and systems.

Terms are immutable trees of :class:`Var` and :class:`App` nodes.  The concrete
syntax accepted by :func:`parse_term` is functional notation ``f(t, s)`` plus a
small amount of sugar for the common algebraic symbols:

* ``t * s`` is ``mul(t, s)``, ``t + s`` is ``add(t, s)``, both left-associative,
  ``*`` binding tighter than ``+``;
* ``t - s`` is ``add(t, neg(s))`` and ``-t`` is ``neg(t)``;
* ``t^-1`` is ``inv(t)`` and ``t^k`` is a ``k``-fold ``mul`` power;
* ``0`` and ``1`` name the constants ``zero`` and ``one``; an integer ``k`` in
  front of a factor (``3x``) is a ``k``-fold ``add`` multiple.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .errors import (
    ArityMismatch,
    DuplicateSymbol,
    LanguageMismatch,
    MissingBinding,
    ParseError,
    UnknownSymbol,
)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


@dataclass(frozen=True, eq=False)
class Language:
    """A functional signature; symbols keep their declaration order."""

    symbols: tuple

    def __post_init__(self):
        seen = {}
        for name, arity in self.symbols:
            if not _IDENT.fullmatch(name):
                raise ParseError(f"invalid symbol name {name!r}")
            if not isinstance(arity, int) or arity < 0:
                raise ParseError(f"invalid arity {arity!r} for {name!r}")
            if name in seen:
                raise DuplicateSymbol(f"duplicate symbol {name!r}")
            seen[name] = arity
        object.__setattr__(self, "_arity", seen)

    @classmethod
    def of(cls, **arities):
        return cls(tuple(arities.items()))

    def arity(self, name):
        return self._arity[name]

    def __contains__(self, name):
        return name in self._arity

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __eq__(self, other):
        return isinstance(other, Language) and self._arity == other._arity

    def __hash__(self):
        return hash(frozenset(self._arity.items()))

    @property
    def constants(self):
        return tuple(n for n, a in self.symbols if a == 0)

    @property
    def operations(self):
        return tuple((n, a) for n, a in self.symbols if a > 0)

    def extend(self, more):
        return Language(self.symbols + tuple(more))

    def to_text(self):
        parts = [f"const {n}" if a == 0 else f"op {n}/{a}" for n, a in self.symbols]
        return "; ".join(parts)

    def __repr__(self):
        return f"Language({self.to_text()!r})"


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    op: str
    args: tuple = ()

    def __str__(self):
        return render(self)


Term = Union[Var, App]


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    def __str__(self):
        return f"{render(self.lhs)} = {render(self.rhs)}"


@dataclass(frozen=True)
class System:
    language: Language
    variables: tuple
    equations: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "equations", tuple(self.equations))
        if len(set(self.variables)) != len(self.variables):
            raise ParseError("duplicate variable in declaration")
        for v in self.variables:
            if v in self.language:
                raise ParseError(f"variable {v!r} clashes with a symbol of the language")
        for eq in self.equations:
            for side in (eq.lhs, eq.rhs):
                check_term(side, self.language, self.variables)

    def with_equations(self, equations):
        return System(self.language, self.variables, tuple(equations))

    def to_text(self):
        lines = [f"vars: {', '.join(self.variables)}"]
        lines += [f"eq: {eq}" for eq in self.equations]
        return "\n".join(lines)


def check_term(term, language, variables=None):
    """Raise unless ``term`` is well formed over ``language`` and ``variables``."""
    if isinstance(term, Var):
        if variables is not None and term.name not in variables:
            raise UnknownSymbol(f"undeclared variable {term.name!r}")
        return
    if term.op not in language:
        raise UnknownSymbol(f"unknown symbol {term.op!r}")
    if language.arity(term.op) != len(term.args):
        raise ArityMismatch(
            f"{term.op!r} has arity {language.arity(term.op)}, applied to {len(term.args)} arguments"
        )
    for a in term.args:
        check_term(a, language, variables)


def term_variables(term, acc=None):
    """Variables of ``term`` in order of first occurrence."""
    if acc is None:
        acc = {}
    if isinstance(term, Var):
        acc.setdefault(term.name, None)
    else:
        for a in term.args:
            term_variables(a, acc)
    return tuple(acc)


def term_symbols(term, acc=None):
    if acc is None:
        acc = set()
    if isinstance(term, App):
        acc.add((term.op, len(term.args)))
        for a in term.args:
            term_symbols(a, acc)
    return acc


def subterms(term, acc=None):
    """All subterms of ``term``, children before parents."""
    if acc is None:
        acc = {}
    if isinstance(term, App):
        for a in term.args:
            subterms(a, acc)
    acc.setdefault(term, None)
    return list(acc)


def depth(term):
    if isinstance(term, Var) or not term.args:
        return 0
    return 1 + max(depth(a) for a in term.args)


def substitute(term, mapping: Mapping[str, Term]):
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    if not term.args:
        return term
    return App(term.op, tuple(substitute(a, mapping) for a in term.args))


def evaluate(term, algebra, point: Mapping[str, int]):
    """Value of ``term`` in a finite algebra at ``point`` (variable -> element)."""
    if isinstance(term, Var):
        try:
            return point[term.name]
        except KeyError:
            raise MissingBinding(f"no value for variable {term.name!r}") from None
    lang = algebra.language
    if term.op not in lang or lang.arity(term.op) != len(term.args):
        raise LanguageMismatch(f"algebra does not interpret {term.op}/{len(term.args)}")
    return algebra.apply(term.op, tuple(evaluate(a, algebra, point) for a in term.args))


def multiple(k, term):
    """``k``-fold sum ``term + ... + term`` built by doubling (k >= 1)."""
    if k < 1:
        raise ValueError("multiple needs k >= 1")
    if k == 1:
        return term
    if k % 2 == 0:
        half = multiple(k // 2, term)
        return App("add", (half, half))
    return App("add", (multiple(k - 1, term), term))


def power(k, term):
    """``k``-fold product of ``term`` with the same shape as :func:`multiple`."""
    if k < 1:
        raise ValueError("power needs k >= 1")
    if k == 1:
        return term
    if k % 2 == 0:
        half = power(k // 2, term)
        return App("mul", (half, half))
    return App("mul", (power(k - 1, term), term))


# ---------------------------------------------------------------- rendering

_SUM, _PROD, _UNARY, _POSTFIX, _ATOM = range(5)


def _repeat_shape(term, op):
    """Return (k, leaf) if term is exactly multiple/power(k, leaf) with k >= 2."""
    if not (isinstance(term, App) and term.op == op and len(term.args) == 2):
        return None
    leaves = []
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, App) and t.op == op and len(t.args) == 2:
            stack.extend(t.args)
        else:
            leaves.append(t)
    leaf = leaves[0]
    if any(x != leaf for x in leaves):
        return None
    build = multiple if op == "add" else power
    if build(len(leaves), leaf) != term:
        return None
    return len(leaves), leaf


def _is_atomic(term):
    return isinstance(term, Var) or not term.args


_LITERALS = {"zero": "0", "one": "1"}


def _render(term, level):
    if isinstance(term, Var):
        return term.name
    op, args = term.op, term.args
    if not args:
        return _LITERALS.get(op, op)
    text, prec = None, _ATOM
    if op == "add" and len(args) == 2:
        rep = _repeat_shape(term, "add")
        if rep and rep[1] == App("one"):
            text = str(rep[0])
        elif rep and _is_atomic(rep[1]) and rep[1] != App("zero"):
            text, prec = f"{rep[0]}{_render(rep[1], _ATOM)}", _UNARY
        elif isinstance(args[1], App) and args[1].op == "neg" and len(args[1].args) == 1:
            text = f"{_render(args[0], _SUM)} - {_render(args[1].args[0], _PROD)}"
            prec = _SUM
        else:
            text, prec = f"{_render(args[0], _SUM)} + {_render(args[1], _PROD)}", _SUM
    elif op == "mul" and len(args) == 2:
        rep = _repeat_shape(term, "mul")
        if rep and _is_atomic(rep[1]):
            text, prec = f"{_render(rep[1], _ATOM)}^{rep[0]}", _POSTFIX
        else:
            text, prec = f"{_render(args[0], _PROD)}*{_render(args[1], _UNARY)}", _PROD
    elif op == "neg" and len(args) == 1:
        text, prec = f"-{_render(args[0], _UNARY)}", _UNARY
    elif op == "inv" and len(args) == 1:
        text, prec = f"{_render(args[0], _POSTFIX)}^-1", _POSTFIX
    else:
        text = f"{op}({', '.join(_render(a, _SUM) for a in args)})"
    if prec < level:
        return f"({text})"
    return text


def render(term):
    return _render(term, _SUM)


# ------------------------------------------------------------------ parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<ne>!=)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<sym>[()+\-*^=,&|]))"
)


def tokenize(text, line=1, col0=1):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip()) if text[pos:].strip() else pos
            raise ParseError(f"unexpected character {text[bad]!r}", line, col0 + bad)
        kind = m.lastgroup
        start = m.start(kind)
        value = m.group(kind)
        tokens.append((kind if kind != "sym" else value, value, line, col0 + start))
        pos = m.end()
    tokens.append(("eof", "", line, col0 + len(text)))
    return tokens


class TermParser:
    """Recursive-descent parser over a token list; shared with the formula parser."""

    def __init__(self, tokens, language, variables):
        self.tokens = tokens
        self.i = 0
        self.language = language
        self.variables = tuple(variables)

    # token helpers
    def peek(self, offset=0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            self.fail(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def fail(self, message, tok=None, exc=ParseError):
        tok = tok or self.peek()
        raise exc(message, tok[2], tok[3])

    def _sym(self, name, arity, tok):
        if name not in self.language:
            self.fail(f"operator sugar needs {name}/{arity} in the language", tok, UnknownSymbol)
        if self.language.arity(name) != arity:
            self.fail(f"{name!r} has arity {self.language.arity(name)}, not {arity}", tok, ArityMismatch)

    # grammar
    def term(self):
        left = self.product()
        while self.peek()[0] in ("+", "-"):
            tok = self.next()
            right = self.product()
            self._sym("add", 2, tok)
            if tok[0] == "-":
                self._sym("neg", 1, tok)
                right = App("neg", (right,))
            left = App("add", (left, right))
        return left

    def product(self):
        left = self.unary()
        while self.peek()[0] == "*":
            tok = self.next()
            right = self.unary()
            self._sym("mul", 2, tok)
            left = App("mul", (left, right))
        return left

    def unary(self):
        if self.peek()[0] == "-":
            tok = self.next()
            inner = self.unary()
            self._sym("neg", 1, tok)
            return App("neg", (inner,))
        if self.peek()[0] == "int" and self.peek(1)[0] in ("ident", "("):
            tok = self.next()
            k = int(tok[1])
            inner = self.postfix()
            if k == 0:
                return self._literal(0, tok)
            if k > 1:
                self._sym("add", 2, tok)
            return multiple(k, inner)
        return self.postfix()

    def postfix(self):
        base = self.atom()
        while self.peek()[0] == "^":
            tok = self.next()
            if self.peek()[0] == "-":
                self.next()
                one = self.expect("int")
                if one[1] != "1":
                    self.fail("only ^-1 is supported for negative exponents", one)
                self._sym("inv", 1, tok)
                base = App("inv", (base,))
            else:
                k = int(self.expect("int")[1])
                if k < 1:
                    self.fail("exponent must be positive", tok)
                if k > 1:
                    self._sym("mul", 2, tok)
                base = power(k, base)
        return base

    def _literal(self, k, tok):
        if k == 0:
            if "zero" not in self.language:
                self.fail("literal 0 needs constant 'zero'", tok, UnknownSymbol)
            return App("zero")
        if "one" not in self.language:
            self.fail("integer literal needs constant 'one'", tok, UnknownSymbol)
        if k == 1:
            return App("one")
        self._sym("add", 2, tok)
        return multiple(k, App("one"))

    def atom(self):
        tok = self.next()
        kind, value = tok[0], tok[1]
        if kind == "(":
            inner = self.term()
            self.expect(")")
            return inner
        if kind == "int":
            return self._literal(int(value), tok)
        if kind != "ident":
            self.fail(f"expected a term, found {value or 'end of input'!r}", tok)
        if self.peek()[0] == "(":
            if value not in self.language:
                self.fail(f"unknown symbol {value!r}", tok, UnknownSymbol)
            self.next()
            args = [self.term()]
            while self.peek()[0] == ",":
                self.next()
                args.append(self.term())
            self.expect(")")
            if self.language.arity(value) != len(args):
                self.fail(
                    f"{value!r} has arity {self.language.arity(value)}, applied to {len(args)} arguments",
                    tok,
                    ArityMismatch,
                )
            return App(value, tuple(args))
        if value in self.variables:
            return Var(value)
        if value in self.language:
            if self.language.arity(value) != 0:
                self.fail(f"{value!r} has arity {self.language.arity(value)}, used as a constant", tok, ArityMismatch)
            return App(value)
        self.fail(f"unknown identifier {value!r}", tok, UnknownSymbol)


def parse_term(text, language, variables, line=1, col0=1):
    p = TermParser(tokenize(text, line, col0), language, variables)
    t = p.term()
    p.expect("eof")
    return t


def parse_equation(text, language, variables, line=1, col0=1):
    p = TermParser(tokenize(text, line, col0), language, variables)
    lhs = p.term()
    p.expect("=")
    rhs = p.term()
    p.expect("eof")
    return Equation(lhs, rhs)


_DECL = re.compile(r"\s*(?:op\s+([A-Za-z_][A-Za-z0-9_']*)\s*/\s*(\d+)|const\s+([A-Za-z_][A-Za-z0-9_']*))\s*")


def parse_language(text, line=1):
    """Parse ``op SYM/ARITY; const SYM; ...`` (separators ``;`` or newlines)."""
    symbols = []
    names = set()
    lineno = line
    for raw_line in text.split("\n"):
        col = 1
        for chunk in raw_line.split(";"):
            if chunk.strip():
                m = _DECL.fullmatch(chunk)
                if not m:
                    raise ParseError(f"bad declaration {chunk.strip()!r}", lineno, col)
                name, arity = (m.group(1), int(m.group(2))) if m.group(1) else (m.group(3), 0)
                if name in names:
                    raise DuplicateSymbol(f"duplicate symbol {name!r}", lineno, col)
                names.add(name)
                symbols.append((name, arity))
            col += len(chunk) + 1
        lineno += 1
    return Language(tuple(symbols))


def split_directive(raw, lineno):
    """Split ``key: rest`` returning (key, rest, column of rest)."""
    line = raw.split("#", 1)[0]
    if not line.strip():
        return None
    if ":" not in line:
        raise ParseError("expected 'key: value'", lineno, 1)
    key, rest = line.split(":", 1)
    return key.strip(), rest, len(key) + 2


def parse_variables(rest, lineno, col):
    names = [v.strip() for v in rest.split(",") if v.strip()]
    for v in names:
        if not _IDENT.fullmatch(v):
            raise ParseError(f"bad variable name {v!r}", lineno, col)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable", lineno, col)
    return tuple(names)


def parse_system(text, language=None):
    """Parse a system file (``vars:``/``eq:`` lines, optional ``language:``)."""
    variables = None
    equations = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        d = split_directive(raw, lineno)
        if d is None:
            continue
        key, rest, col = d
        if key == "language":
            if language is None:
                language = parse_language(rest, lineno)
        elif key == "vars":
            if variables is not None:
                raise ParseError("variables declared twice", lineno, 1)
            variables = parse_variables(rest, lineno, col)
        elif key == "eq":
            if variables is None:
                raise ParseError("'eq:' before 'vars:'", lineno, 1)
            if language is None:
                raise ParseError("no language given for the system", lineno, 1)
            equations.append(parse_equation(rest, language, variables, lineno, col))
        else:
            raise ParseError(f"unknown directive {key!r}", lineno, 1)
    if variables is None:
        raise ParseError("missing 'vars:' line")
    if language is None:
        raise ParseError("no language given for the system")
    return System(language, variables, tuple(equations))


def system(language, variables, *equations):
    """Build a System from equation strings such as ``"x*y = y"``."""
    if isinstance(variables, str):
        variables = parse_variables(variables, 1, 1)
    eqs = [e if isinstance(e, Equation) else parse_equation(e, language, variables) for e in equations]
    return System(language, tuple(variables), tuple(eqs))


def iter_terms(language, variables, max_depth) -> Iterable[Term]:
    """All terms of depth at most ``max_depth``; intended for tiny signatures."""
    level = [Var(v) for v in variables] + [App(c) for c in language.constants]
    seen = list(level)
    for _ in range(max_depth):
        new = []
        for name, arity in language.operations:
            for args in itertools.product(seen, repeat=arity):
                new.append(App(name, tuple(args)))
        seen = list(dict.fromkeys(seen + new))
    return seen
