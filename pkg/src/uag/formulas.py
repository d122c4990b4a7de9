"""Universal formulas: parsing, finite model checking, abelian formula families."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Optional

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .errors import InputError, LanguageMismatch, ResourceLimit
from .finalg import FiniteAlgebra
from .linear import FGAbelianGroup, is_prime
from .terms import (
    App,
    Term,
    TermParser,
    Var,
    check_term,
    multiple,
    parse_variables,
    render,
    split_directive,
    term_symbols,
    tokenize,
)


@dataclass(frozen=True)
class Literal:
    lhs: Term
    rhs: Term
    positive: bool = True

    def __str__(self):
        return f"{render(self.lhs)} {'=' if self.positive else '!='} {render(self.rhs)}"


@dataclass(frozen=True)
class Formula:
    """``forall vars: AND premises -> OR conclusions``.

    An empty premise list is ``true``; an empty conclusion list is ``false``.
    """

    variables: tuple
    premises: tuple = ()
    conclusions: tuple = ()

    @property
    def is_identity(self):
        return not self.premises and len(self.conclusions) == 1 and self.conclusions[0].positive

    @property
    def is_quasi_identity(self):
        return len(self.conclusions) == 1 and all(l.positive for l in self.premises + self.conclusions)

    def literals(self):
        return self.premises + self.conclusions

    def __str__(self):
        pre = " & ".join(map(str, self.premises)) or "true"
        post = " | ".join(map(str, self.conclusions)) or "false"
        return post if not self.premises and self.conclusions else f"{pre} -> {post}"

    def to_text(self):
        return f"vars: {', '.join(self.variables)}\nfml: {self}\n"


def _inferred_variables(text):
    """Variables in order of appearance: single-letter-ish identifiers not followed by ``(``."""
    out = []
    toks = tokenize(text)
    for i, (kind, value, _, _) in enumerate(toks):
        if kind == "ident" and toks[i + 1][0] != "(" and value not in ("true", "false") and value not in out:
            out.append(value)
    return out


class _FormulaParser(TermParser):
    def literal(self):
        lhs = self.term()
        tok = self.next()
        if tok[0] not in ("=", "ne"):
            self.fail("expected '=' or '!='", tok)
        return Literal(lhs, self.term(), tok[0] == "=")

    def side(self, sep):
        if self.peek()[0] in ("eof", "arrow"):
            return ()
        out = [self.literal()]
        while self.peek()[0] == sep:
            self.next()
            out.append(self.literal())
        return tuple(out)


def parse_formula(text, language, variables=None, line=1, col0=1) -> Formula:
    """Parse ``LIT & ... -> LIT | ...``; without an arrow the text is the conclusion.

    ``variables`` defaults to the identifiers that are not symbols of the language.
    """
    if variables is None:
        variables = [v for v in _inferred_variables(text) if v not in language]
    variables = tuple(variables)
    tokens = tokenize(text, line, col0)
    has_arrow = any(t[0] == "arrow" for t in tokens)
    p = _FormulaParser(tokens, language, variables)
    premises = ()
    if has_arrow:
        if p.peek()[0] == "ident" and p.peek()[1] == "true" and p.peek(1)[0] == "arrow":
            p.next()
        else:
            premises = p.side("&")
        p.expect("arrow")
    if p.peek()[0] == "ident" and p.peek()[1] == "false" and p.peek(1)[0] == "eof":
        p.next()
        conclusions = ()
    else:
        conclusions = p.side("|")
    p.expect("eof")
    if not has_arrow and not conclusions:
        p.fail("empty formula")
    return Formula(variables, premises, conclusions)


def parse_formula_file(text, language):
    """Formula file: ``vars:`` line followed by ``fml:`` lines (``#`` comments)."""
    variables = None
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        d = split_directive(raw, lineno)
        if d is None:
            continue
        key, rest, col = d
        if key == "vars":
            variables = parse_variables(rest, lineno, col)
        elif key == "fml":
            out.append(parse_formula(rest, language, variables, lineno, col))
        else:
            raise InputError(f"line {lineno}: unknown directive {key!r}")
    if not out:
        raise InputError("no fml: lines")
    return out


# ---------------------------------------------------------------- checking


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    counterexample: Optional[tuple] = None  # element indices, one per variable
    checked: int = 0

    def __bool__(self):
        return self.holds


def holds_in(formula: Formula, algebra: FiniteAlgebra, limits: Limits = DEFAULT_LIMITS, chunk=1 << 18) -> CheckResult:
    """Check every assignment in lexicographic order; report the least counterexample."""
    for lit in formula.literals():
        for side in (lit.lhs, lit.rhs):
            for sym, arity in term_symbols(side):
                if sym not in algebra.language or algebra.language.arity(sym) != arity:
                    raise LanguageMismatch(f"{algebra.name} does not interpret {sym}/{arity}")
            check_term(side, algebra.language, formula.variables)
    k, n = algebra.size, len(formula.variables)
    total = k ** n
    if total > limits.tuple_cap:
        raise ResourceLimit(f"{k}^{n} assignments exceed the tuple cap {limits.tuple_cap}")
    for lo in range(0, total, chunk):
        hi = min(total, lo + chunk)
        idx = np.arange(lo, hi, dtype=np.int64)
        cols = {}
        for j in range(n - 1, -1, -1):
            cols[formula.variables[j]] = idx % k
            idx = idx // k
        m = hi - lo

        def truth(lit):
            eq = algebra.eval_columns(lit.lhs, cols, m) == algebra.eval_columns(lit.rhs, cols, m)
            return eq if lit.positive else ~eq

        premise = reduce(np.logical_and, (truth(l) for l in formula.premises), np.ones(m, dtype=bool))
        conclusion = reduce(np.logical_or, (truth(l) for l in formula.conclusions), np.zeros(m, dtype=bool))
        bad = np.flatnonzero(premise & ~conclusion)
        if len(bad):
            point = tuple(int(cols[v][bad[0]]) for v in formula.variables)
            return CheckResult(False, point, lo + int(bad[0]) + 1)
    return CheckResult(True, None, total)


# ------------------------------------------------------ abelian formula families

_X = Var("x")
_ZERO = App("zero")


def _times(k, t):
    return _ZERO if k == 0 else multiple(k, t)


def period(group: FGAbelianGroup):
    """Least common multiple of the torsion orders, or None for infinite groups."""
    if group.rank:
        return None
    return reduce(math.lcm, group.torsion, 1)


def period_identity(group: FGAbelianGroup) -> Formula:
    return Formula(("x",), (), (Literal(_times(period(group), _X), _ZERO),))


def sigma_pn(p, n) -> Formula:
    """``p^n x = 0 -> p^(n-1) x = 0``."""
    return Formula(("x",), (Literal(_times(p ** n, _X), _ZERO),), (Literal(_times(p ** (n - 1), _X), _ZERO),))


def _require_prime(p):
    if not is_prime(p):
        raise InputError(f"{p} is not prime")


def sigma_pn_holds(group: FGAbelianGroup, p, n) -> bool:
    """True iff the group has no element of order exactly ``p^n``."""
    _require_prime(p)
    if n < 1:
        raise InputError("n must be at least 1")
    return all(e < n for e in group.p_exponents(p))


def sigma_A(group: FGAbelianGroup, p_max, n_max):
    """Period identity (finite groups) plus the ``sigma_pn`` true in the group within the window."""
    if p_max < 2 or n_max < 1:
        raise InputError("window bounds must be positive (p_max >= 2)")
    out = [period_identity(group)] if group.rank == 0 else []
    for p in range(2, p_max + 1):
        if is_prime(p):
            out += [sigma_pn(p, n) for n in range(1, n_max + 1) if sigma_pn_holds(group, p, n)]
    return out


def sigma_window_notes(group: FGAbelianGroup, p_max, n_max):
    """Torsion data that the window does not reach."""
    notes = []
    for p in group.primes:
        if p > p_max:
            notes.append(f"prime {p} occurs in the torsion but exceeds p_max={p_max}")
        elif max(group.p_exponents(p)) >= n_max:
            notes.append(f"sigma_{p},n fails for n <= {max(group.p_exponents(p))}; window stops at n_max={n_max}")
    return notes


def count_order(group: FGAbelianGroup, p, k):
    """Number of elements of order exactly ``p^k``."""
    exps = group.p_exponents(p)
    below = math.prod(p ** min(e, k) for e in exps)
    under = math.prod(p ** min(e, k - 1) for e in exps)
    return below - under


def phi_nk_holds(group: FGAbelianGroup, p, k, n) -> bool:
    """At most ``n`` elements of order ``p^k``."""
    _require_prime(p)
    if k < 1 or n < 0:
        raise InputError("need k >= 1 and n >= 0")
    return count_order(group, p, k) <= n


def phi_nk_formula(p, k, n) -> Formula:
    xs = tuple(f"x{i + 1}" for i in range(n + 1))
    premises = tuple(Literal(_times(p ** k, Var(x)), _ZERO) for x in xs)
    premises += tuple(Literal(_times(p ** (k - 1), Var(x)), _ZERO, False) for x in xs)
    conclusions = tuple(Literal(Var(a), Var(b)) for i, a in enumerate(xs) for b in xs[i + 1:])
    return Formula(xs, premises, conclusions)
