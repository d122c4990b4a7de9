"""Congruent closure of a system as a ground congruence.

Variables are treated as opaque constants: the closure rules are reflexivity,
symmetry, transitivity and application of an operation to equal arguments, with
no substitution.  Classic congruence closure over the subterms of the system
and the query decides membership exactly.
"""
from __future__ import annotations

from .errors import LanguageMismatch
from .terms import App, Equation, System, check_term, subterms


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


class TermUniverse:
    """Subterm-closed set of terms with a congruence partition."""

    def __init__(self, terms):
        acc = {}
        for t in terms:
            subterms(t, acc)
        self.terms = list(acc)
        self.ids = {t: i for i, t in enumerate(self.terms)}
        self.uf = UnionFind(len(self.terms))
        self.uses = [[] for _ in self.terms]
        for t in self.terms:
            if isinstance(t, App):
                for a in t.args:
                    self.uses[self.ids[a]].append(t)

    def signature(self, t):
        return (t.op, tuple(self.uf.find(self.ids[a]) for a in t.args))

    def merge(self, s, t):
        pending = [(self.ids[s], self.ids[t])]
        sig = {}
        for u in self.terms:
            if isinstance(u, App) and u.args:
                sig.setdefault(self.signature(u), u)
        while pending:
            a, b = pending.pop()
            ra, rb = self.uf.find(a), self.uf.find(b)
            if ra == rb:
                continue
            parents = [u for i in range(len(self.terms)) if self.uf.find(i) in (ra, rb) for u in self.uses[i]]
            self.uf.union(ra, rb)
            for u in parents:
                key = self.signature(u)
                other = sig.get(key)
                if other is None:
                    sig[key] = u
                elif self.uf.find(self.ids[other]) != self.uf.find(self.ids[u]):
                    pending.append((self.ids[other], self.ids[u]))

    def equal(self, s, t):
        return self.uf.find(self.ids[s]) == self.uf.find(self.ids[t])

    def classes(self):
        out = {}
        for i, t in enumerate(self.terms):
            out.setdefault(self.uf.find(i), []).append(t)
        return list(out.values())


def congruent_closure_contains(system: System, query: Equation) -> bool:
    """Is ``query`` derivable from ``system`` by the four congruence rules?"""
    for side in (query.lhs, query.rhs):
        try:
            check_term(side, system.language, system.variables)
        except Exception as exc:
            raise LanguageMismatch(f"query does not match the system: {exc}") from None
    universe = TermUniverse([t for eq in system.equations for t in (eq.lhs, eq.rhs)] + [query.lhs, query.rhs])
    for eq in system.equations:
        universe.merge(eq.lhs, eq.rhs)
    return universe.equal(query.lhs, query.rhs)
