"""Brute-force reference implementations used to freeze expected values.

Everything here is plain Python over dictionaries and tuples and shares no
evaluation code with the package: terms are compiled to closures, closures of
point sets come from the full clone of term functions, homomorphisms from
exhaustive maps.
"""
from __future__ import annotations

import itertools
import math
import random

from uag.terms import App, Equation, System, Var


def table_fn(algebra, sym):
    t = algebra.tables[sym].tolist()
    arity = algebra.language.arity(sym)
    if arity == 0:
        return lambda: t
    if arity == 1:
        return lambda x: t[x]
    if arity == 2:
        return lambda x, y: t[x][y]

    def f(*xs):
        v = t
        for x in xs:
            v = v[x]
        return v

    return f


def compile_term(term, algebra, variables):
    pos = {v: i for i, v in enumerate(variables)}
    fns = {s: table_fn(algebra, s) for s, _ in algebra.language}

    def build(t):
        if isinstance(t, Var):
            i = pos[t.name]
            return lambda p: p[i]
        f = fns[t.op]
        if not t.args:
            c = f()
            return lambda p: c
        subs = [build(a) for a in t.args]
        if len(subs) == 1:
            (s0,) = subs
            return lambda p: f(s0(p))
        if len(subs) == 2:
            s0, s1 = subs
            return lambda p: f(s0(p), s1(p))
        return lambda p: f(*(s(p) for s in subs))

    return build(term)


def brute_solve(system: System, algebra):
    eqs = [(compile_term(e.lhs, algebra, system.variables), compile_term(e.rhs, algebra, system.variables)) for e in system.equations]
    out = []
    for p in itertools.product(range(algebra.size), repeat=len(system.variables)):
        if all(l(p) == r(p) for l, r in eqs):
            out.append(p)
    return out


def clone(algebra, n):
    """All n-ary term functions as value tuples over the lexicographic grid of A^n."""
    grid = list(itertools.product(range(algebra.size), repeat=n))
    fns = {s: table_fn(algebra, s) for s, _ in algebra.language}
    found = [tuple(p[i] for p in grid) for i in range(n)]
    found += [tuple(fns[c]() for _ in grid) for c in algebra.language.constants]
    found = list(dict.fromkeys(found))
    seen = set(found)
    changed = True
    while changed:
        changed = False
        for sym, arity in algebra.language.operations:
            f = fns[sym]
            for args in itertools.product(list(found), repeat=arity):
                v = tuple(f(*xs) for xs in zip(*args))
                if v not in seen:
                    seen.add(v)
                    found.append(v)
                    changed = True
    return grid, found


def brute_closure(points, algebra, n, _cache={}):
    """cl(Y): points where every pair of term functions agreeing on Y agrees."""
    key = (id(algebra), n)
    if key not in _cache:
        _cache[key] = (algebra, clone(algebra, n))
    grid, funcs = _cache[key][1]
    index = {p: i for i, p in enumerate(grid)}
    ys = [index[tuple(p)] for p in points]
    classes = {}
    for f in funcs:
        classes.setdefault(tuple(f[i] for i in ys), []).append(f)
    out = []
    for j, p in enumerate(grid):
        if all(len({f[j] for f in group}) == 1 for group in classes.values()):
            out.append(p)
    return out


def is_hom(mapping, source, target):
    for sym, arity in source.language:
        fs, ft = table_fn(source, sym), table_fn(target, sym)
        for args in itertools.product(range(source.size), repeat=arity):
            if mapping[fs(*args)] != ft(*(mapping[a] for a in args)):
                return False
    return True


def brute_homs(source, target):
    return [m for m in itertools.product(range(target.size), repeat=source.size) if is_hom(m, source, target)]


def random_term(rng: random.Random, language, variables, depth):
    leaves = [Var(v) for v in variables] + [App(c) for c in language.constants]
    ops = list(language.operations)
    if depth == 0 or not ops or rng.random() < 0.3:
        return rng.choice(leaves)
    sym, arity = rng.choice(ops)
    return App(sym, tuple(random_term(rng, language, variables, depth - 1) for _ in range(arity)))


def random_system(rng: random.Random, language, max_vars=3, max_eqs=4, depth=3):
    n = rng.randint(1, max_vars)
    variables = tuple("xyz"[:n]) if n <= 3 else tuple(f"x{i}" for i in range(n))
    eqs = tuple(
        Equation(random_term(rng, language, variables, depth), random_term(rng, language, variables, depth))
        for _ in range(rng.randint(1, max_eqs))
    )
    return System(language, variables, eqs)


# ------------------------------------------------------------ integer algebra

def det(m):
    """Determinant by permutation expansion (small matrices only)."""
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        total += (-1) ** inv * math.prod(m[i][perm[i]] for i in range(n))
    return total


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def minors_gcd(m, k):
    """gcd of all k x k minors: the product of the first k invariant factors."""
    rows, cols = len(m), len(m[0])
    g = 0
    for r in itertools.combinations(range(rows), k):
        for c in itertools.combinations(range(cols), k):
            g = math.gcd(g, det([[m[i][j] for j in c] for i in r]))
    return g


def cyclic_sum(orders):
    """Elements and addition of Z_{q1} + ... as tuples."""
    elems = list(itertools.product(*(range(q) for q in orders)))

    def add(a, b):
        return tuple((x + y) % q for x, y, q in zip(a, b, orders))

    return elems, add


def element_order(e, orders):
    return math.lcm(*(q // math.gcd(q, x) for q, x in zip(orders, e))) if orders else 1


def count_elements_of_order(orders, target):
    elems, _ = cyclic_sum(orders)
    return sum(1 for e in elems if element_order(e, orders) == target)


def finite_embeds(b_orders, a_orders):
    """Search an injective hom from the cyclic generators of B into A."""
    a_elems, a_add = cyclic_sum(a_orders)
    b_elems, _ = cyclic_sum(b_orders)
    zero = tuple(0 for _ in a_orders)

    def times(k, x):
        out = zero
        for _ in range(k):
            out = a_add(out, x)
        return out

    choices = [[x for x in a_elems if times(q, x) == zero] for q in b_orders]
    for images in itertools.product(*choices):
        seen = set()
        for coeffs in b_elems:
            v = zero
            for k, g in zip(coeffs, images):
                v = a_add(v, times(k, g))
            if v in seen:
                break
            seen.add(v)
        else:
            return True
    return False
