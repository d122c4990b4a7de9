"""Normal forms of terms over a handful of varieties.

Each variety fixes the symbols a term may use (``mul`` for the semigroup
varieties, ``mul/inv/one`` for groups, ``add/neg/zero`` for abelian groups,
``add/zero`` for commutative monoids, ``f`` for unars).  Normal forms are
canonical: two terms are equal in every algebra of the variety iff their
normal forms coincide.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

from .errors import LanguageMismatch
from .terms import App, Equation, Term, Var, multiple


class Variety(enum.Enum):
    SEMIGROUP = "Semigroup"
    GROUP = "Group"
    ABELIAN_GROUP = "AbelianGroup"
    COMMUTATIVE_MONOID = "CommutativeMonoid"
    IDEMPOTENT_SEMIGROUP = "IdempotentSemigroup"
    SEMILATTICE = "Semilattice"
    RECTANGULAR_BAND = "RectangularBand"
    LEFT_ZERO = "LeftZeroSemigroup"
    UNAR = "Unar"

    @classmethod
    def parse(cls, text):
        for v in cls:
            if text.lower() in (v.value.lower(), v.name.lower()):
                return v
        raise ValueError(f"unknown variety {text!r}")


_MUL = {"mul": 2}
SHAPES = {
    Variety.SEMIGROUP: _MUL,
    Variety.IDEMPOTENT_SEMIGROUP: _MUL,
    Variety.SEMILATTICE: _MUL,
    Variety.RECTANGULAR_BAND: _MUL,
    Variety.LEFT_ZERO: _MUL,
    Variety.GROUP: {"mul": 2, "inv": 1, "one": 0},
    Variety.ABELIAN_GROUP: {"add": 2, "neg": 1, "zero": 0},
    Variety.COMMUTATIVE_MONOID: {"add": 2, "zero": 0},
    Variety.UNAR: {"f": 1},
}


@dataclass(frozen=True)
class NormalForm:
    variety: Variety
    data: object

    def __str__(self):
        from .terms import render

        return render(to_term(self))


def _check_shape(term, variety):
    shape = SHAPES[variety]
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            continue
        ok = shape.get(t.op) == len(t.args)
        # further constants are opaque atoms in commutative monoids (e.g. ``one`` in N)
        if not ok and not (variety is Variety.COMMUTATIVE_MONOID and not t.args):
            raise LanguageMismatch(f"symbol {t.op}/{len(t.args)} is not in the {variety.value} language")
        stack.extend(t.args)


def _order_key(variables):
    if variables is None:
        return lambda v: (0, v)
    pos = {v: i for i, v in enumerate(variables)}
    return lambda v: (0, pos[v]) if v in pos else (1, v)


def _flatten_mul(term, out):
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            out.append(t.name)
        else:
            stack.append(t.args[1])
            stack.append(t.args[0])
    return out


def _group_word(term):
    if isinstance(term, Var):
        return [(term.name, 1)]
    if term.op == "one":
        return []
    if term.op == "inv":
        return [(v, -e) for v, e in reversed(_group_word(term.args[0]))]
    return _free_reduce(_group_word(term.args[0]) + _group_word(term.args[1]))


def _free_reduce(word):
    out = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return out


def _linear(term, coeffs, sign=1):
    if isinstance(term, Var):
        coeffs[term.name] += sign
    elif term.op == "add":
        _linear(term.args[0], coeffs, sign)
        _linear(term.args[1], coeffs, sign)
    elif term.op == "neg":
        _linear(term.args[0], coeffs, -sign)
    elif term.op != "zero":
        coeffs[App(term.op)] += sign
    return coeffs


def _atom_key(order):
    def key(atom):
        if isinstance(atom, App):
            return (2, atom.op)
        return order(atom)

    return key


def _band_nf(word, order):
    """Canonical form in the free band (content, prefix, letters, suffix recursion)."""
    if not word:
        return None
    content = set(word)
    if len(content) == 1:
        return (word[0],)
    seen = set()
    for i, x in enumerate(word):
        seen.add(x)
        if len(seen) == len(content):
            pre, a0 = word[:i], x
            break
    seen = set()
    for i in range(len(word) - 1, -1, -1):
        seen.add(word[i])
        if len(seen) == len(content):
            suf, a1 = word[i + 1:], word[i]
            break
    return (tuple(sorted(content, key=order)), _band_nf(pre, order), a0, a1, _band_nf(suf, order))


def _band_word(nf):
    if nf is None:
        return ()
    if len(nf) == 1:
        return nf
    return _band_word(nf[1]) + (nf[2], nf[3]) + _band_word(nf[4])


def normalize(term: Term, variety: Variety, variables=None) -> NormalForm:
    """Canonical form of ``term`` over ``variety``.

    ``variables`` fixes the order used when a normal form sorts variables
    (semilattices, linear forms); without it names are sorted.
    """
    _check_shape(term, variety)
    order = _order_key(variables)
    if variety is Variety.GROUP:
        data = tuple(_group_word(term))
    elif variety in (Variety.ABELIAN_GROUP, Variety.COMMUTATIVE_MONOID):
        coeffs = _linear(term, Counter())
        data = tuple(sorted(((a, c) for a, c in coeffs.items() if c), key=lambda ac: _atom_key(order)(ac[0])))
    elif variety is Variety.UNAR:
        n = 0
        while isinstance(term, App):
            n += 1
            term = term.args[0]
        data = (n, term.name)
    else:
        word = tuple(_flatten_mul(term, []))
        if variety is Variety.SEMIGROUP:
            data = word
        elif variety is Variety.IDEMPOTENT_SEMIGROUP:
            data = _band_nf(word, order)
        elif variety is Variety.SEMILATTICE:
            data = tuple(sorted(set(word), key=order))
        elif variety is Variety.RECTANGULAR_BAND:
            data = (word[0], word[-1])
        else:
            data = word[0]
    return NormalForm(variety, data)


def _product(factors):
    out = factors[0]
    for f in factors[1:]:
        out = App("mul", (out, f))
    return out


def _sum(terms, empty):
    if not terms:
        return empty
    out = terms[0]
    for t in terms[1:]:
        out = App("add", (out, t))
    return out


def to_term(nf: NormalForm) -> Term:
    """A representative term of a normal form."""
    v, d = nf.variety, nf.data
    if v is Variety.GROUP:
        letters = [Var(x) if e > 0 else App("inv", (Var(x),)) for x, e in d]
        return _product(letters) if letters else App("one")
    if v in (Variety.ABELIAN_GROUP, Variety.COMMUTATIVE_MONOID):
        parts = []
        for atom, c in d:
            base = atom if isinstance(atom, App) else Var(atom)
            m = multiple(abs(c), base)
            parts.append(m if c > 0 else App("neg", (m,)))
        return _sum(parts, App("zero"))
    if v is Variety.UNAR:
        t = Var(d[1])
        for _ in range(d[0]):
            t = App("f", (t,))
        return t
    if v is Variety.IDEMPOTENT_SEMIGROUP:
        return _product([Var(x) for x in _band_word(d)])
    if v is Variety.LEFT_ZERO:
        return Var(d)
    if v is Variety.RECTANGULAR_BAND:
        return Var(d[0]) if d[0] == d[1] else App("mul", (Var(d[0]), Var(d[1])))
    return _product([Var(x) for x in d])


def equivalent_over(t: Term, s: Term, variety: Variety) -> bool:
    return normalize(t, variety) == normalize(s, variety)


def normalize_equation(eq: Equation, variety: Variety, variables=None, injective=False):
    """Normal-form pair for an equation, simplified where the variety allows.

    Abelian groups move everything to the left (``sum k_i x_i = 0``); groups
    give ``w = 1``; commutative monoids cancel the common part so no atom occurs
    on both sides (valid for cancellative monoids such as N); unars reduce
    ``f^n(x) = f^m(y)`` by the common power when ``injective`` is set.
    """
    lhs = normalize(eq.lhs, variety, variables)
    rhs = normalize(eq.rhs, variety, variables)
    if variety is Variety.ABELIAN_GROUP:
        diff = normalize(App("add", (eq.lhs, App("neg", (eq.rhs,)))), variety, variables)
        return diff, NormalForm(variety, ())
    if variety is Variety.GROUP:
        word = normalize(App("mul", (eq.lhs, App("inv", (eq.rhs,)))), variety, variables)
        return word, NormalForm(variety, ())
    if variety is Variety.COMMUTATIVE_MONOID:
        left, right = Counter(dict(lhs.data)), Counter(dict(rhs.data))
        for atom in set(left) & set(right):
            common = min(left[atom], right[atom])
            left[atom] -= common
            right[atom] -= common
        key = _atom_key(_order_key(variables))

        def pack(c):
            return NormalForm(variety, tuple(sorted(((a, k) for a, k in c.items() if k), key=lambda ak: key(ak[0]))))

        return pack(left), pack(right)
    if variety is Variety.UNAR and injective:
        (n, x), (m, y) = lhs.data, rhs.data
        common = min(n, m)
        return NormalForm(variety, (n - common, x)), NormalForm(variety, (m - common, y))
    return lhs, rhs
