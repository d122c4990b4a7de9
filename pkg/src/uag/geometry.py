"""Algebraic sets over finite algebras.

Points are tuples of element indices ordered like the variable list; every
point set handed back is sorted lexicographically.  The central computation is
:func:`closure`, the smallest algebraic set containing a set of points: the
subalgebra ``G`` of ``A^Z`` generated by the coordinate vectors of ``Z`` is built
once, and a point ``p`` belongs to the closure iff sending the ``i``-th
generator to ``p_i`` extends to a homomorphism ``G -> A`` (equivalently, every
equation true on ``Z`` holds at ``p``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .errors import EmptySet, InputError, LanguageMismatch, ResourceLimit
from .finalg import DTYPE, Closure, FiniteAlgebra, approximates, close_vectors, witness_term
from .normalize import normalize, to_term
from .terms import Equation, System, Var, render, term_symbols, term_variables


@dataclass(frozen=True)
class SolutionSet:
    algebra: FiniteAlgebra
    variables: tuple
    points: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "points", tuple(sorted(set(tuple(int(x) for x in p) for p in self.points))))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return tuple(p) in set(self.points)

    def __eq__(self, other):
        return (
            isinstance(other, SolutionSet)
            and self.variables == other.variables
            and self.points == other.points
            and self.algebra.same_as(other.algebra)
        )

    def __hash__(self):
        return hash((self.variables, self.points))

    def issubset(self, other):
        return set(self.points) <= set(other.points)

    def labelled(self):
        return [tuple(self.algebra.label(x) for x in p) for p in self.points]


def grid(k, n, limits: Limits = DEFAULT_LIMITS):
    """All points of ``A^n`` for ``|A| = k`` as a (k**n, n) array, lexicographic."""
    total = k ** n
    if total > limits.tuple_cap:
        raise ResourceLimit(f"{k}^{n} = {total} points exceed the tuple cap {limits.tuple_cap}")
    return np.indices((k,) * n, dtype=DTYPE).reshape(n, -1).T.copy()


def _check_language(system_language, algebra):
    for sym, arity in system_language:
        if sym not in algebra.language or algebra.language.arity(sym) != arity:
            raise LanguageMismatch(f"{algebra.name} does not interpret {sym}/{arity}")


def _check_equation(eq, algebra, variables):
    for side in (eq.lhs, eq.rhs):
        for sym, arity in term_symbols(side):
            if sym not in algebra.language or algebra.language.arity(sym) != arity:
                raise LanguageMismatch(f"{algebra.name} does not interpret {sym}/{arity}")
        for v in term_variables(side):
            if v not in variables:
                raise LanguageMismatch(f"variable {v!r} not in {variables}")


def solve(system: System, algebra: FiniteAlgebra, limits: Limits = DEFAULT_LIMITS, variety=None, cross_check=False):
    """Exact solution set by enumeration, filtering one equation at a time.

    Equations are applied in order of increasing number of free variables.
    With ``variety`` set, both sides are replaced by their normal forms first;
    ``cross_check`` also solves the raw system and insists on agreement.
    """
    _check_language(system.language, algebra)
    n = len(system.variables)
    cand = grid(algebra.size, n, limits)
    eqs = list(system.equations)
    if variety is not None:
        eqs = [
            Equation(to_term(normalize(e.lhs, variety, system.variables)), to_term(normalize(e.rhs, variety, system.variables)))
            for e in eqs
        ]
    order = sorted(range(len(eqs)), key=lambda i: (len(set(term_variables(eqs[i].lhs) + term_variables(eqs[i].rhs))), i))
    for i in order:
        if not len(cand):
            break
        cols = {v: cand[:, j] for j, v in enumerate(system.variables)}
        keep = algebra.eval_columns(eqs[i].lhs, cols, len(cand)) == algebra.eval_columns(eqs[i].rhs, cols, len(cand))
        cand = cand[keep]
    result = SolutionSet(algebra, system.variables, [tuple(p) for p in cand])
    if cross_check and variety is not None:
        raw = solve(system, algebra, limits)
        if raw.points != result.points:
            raise InputError(f"{algebra.name} does not belong to the asserted variety {variety.value}")
    return result


def in_radical(eq: Equation, ys: SolutionSet) -> bool:
    """Does ``eq`` hold at every point of ``ys``?  (Vacuously true on the empty set.)"""
    _check_equation(eq, ys.algebra, ys.variables)
    if not ys.points:
        return True
    pts = np.array(ys.points, dtype=DTYPE).reshape(len(ys.points), len(ys.variables))
    cols = {v: pts[:, j] for j, v in enumerate(ys.variables)}
    a = ys.algebra
    return bool(np.array_equal(a.eval_columns(eq.lhs, cols, len(pts)), a.eval_columns(eq.rhs, cols, len(pts))))


def _coordinate_closure(points, algebra, n, limits):
    seeds = [np.array([p[i] for p in points], dtype=DTYPE) for i in range(n)]
    return close_vectors(algebra, seeds, len(points), limits)


def extends_to_hom(cl: Closure, algebra: FiniteAlgebra, cand: np.ndarray, chunk_cells=4_000_000):
    """Mask of candidate points whose generator assignment extends to ``G -> A``."""
    out = np.zeros(len(cand), dtype=bool)
    nG = cl.size
    ops = algebra.language.operations
    widest = max([nG ** a for _, a in ops] + [1])
    step = max(1, chunk_cells // max(widest, nG))
    for lo in range(0, len(cand), step):
        c = cand[lo:lo + step]
        vals = np.empty((nG, len(c)), dtype=DTYPE)
        for e, wit in enumerate(cl.witnesses):
            if wit[0] == "seed":
                vals[e] = c[:, wit[1]]
            elif wit[0] == "const":
                vals[e] = algebra.constant(wit[1])
            else:
                vals[e] = algebra.tables[wit[1]][tuple(vals[x] for x in wit[2])]
        ok = np.ones(len(c), dtype=bool)
        for i, e in enumerate(cl.seed_index):
            ok &= vals[e] == c[:, i]
        for name, e in cl.const_index.items():
            ok &= vals[e] == algebra.constant(name)
        for name, arity in ops:
            tg = cl.tables[name]
            idx = np.indices(tg.shape).reshape(arity, -1)
            lhs = algebra.tables[name][tuple(vals[i] for i in idx)]
            ok &= (lhs == vals[tg.reshape(-1)]).all(axis=0)
        out[lo:lo + step] = ok
    return out


def closure(points, algebra: FiniteAlgebra, variables, limits: Limits = DEFAULT_LIMITS) -> SolutionSet:
    """Smallest algebraic set containing ``points`` (the set of solutions of its radical).

    The closure of the empty set is computed exactly as well: it consists of the
    constant points ``(a, ..., a)`` for which ``{a}`` is a subalgebra, so it is
    empty over any algebra with two distinct constants and nonempty over every
    group or idempotent semigroup.
    """
    if isinstance(variables, int):
        variables = tuple(f"x{i + 1}" for i in range(variables))
    variables = tuple(variables)
    n = len(variables)
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    for p in pts:
        if len(p) != n or any(not 0 <= x < algebra.size for x in p):
            raise InputError(f"point {p} is not in {algebra.name}^{n}")
    cl = _coordinate_closure(pts, algebra, n, limits)
    cand = grid(algebra.size, n, limits)
    mask = extends_to_hom(cl, algebra, cand)
    return SolutionSet(algebra, variables, [tuple(p) for p in cand[mask]])


def is_algebraic(points, algebra: FiniteAlgebra, variables=None, limits: Limits = DEFAULT_LIMITS) -> bool:
    pts = set(tuple(int(x) for x in p) for p in points)
    if variables is None:
        if not pts:
            raise InputError("dimension of an empty point set must be given")
        variables = len(next(iter(pts)))
    if isinstance(variables, int):
        variables = tuple(f"x{i + 1}" for i in range(variables))
    n = len(variables)
    if not pts:
        return not closure(pts, algebra, variables, limits).points
    for p in pts:
        if len(p) != n or any(not 0 <= x < algebra.size for x in p):
            raise InputError(f"point {p} is not in {algebra.name}^{n}")
    # p lies outside cl(Y) iff some pair of terms agrees on Y but not at p;
    # generating in A^(Y + p) finds such a pair long before G is complete.
    ordered = sorted(pts)
    for q in grid(algebra.size, n, limits):
        q = tuple(int(x) for x in q)
        if q in pts:
            continue
        seeds = [np.array([r[i] for r in ordered] + [q[i]], dtype=DTYPE) for i in range(n)]
        if close_vectors(algebra, seeds, len(ordered) + 1, limits, prefix=len(ordered)) is not None:
            return False
    return True


@dataclass(frozen=True)
class CoordAlgebra:
    """Coordinate algebra realised inside ``A^|Y|``."""

    underlying: FiniteAlgebra
    solution_set: SolutionSet
    generators: tuple  # element index of each variable
    witnesses: tuple  # one term per element
    vectors: np.ndarray  # element -> tuple of values at the points of Y

    @property
    def size(self):
        return self.underlying.size

    def element_of(self, term):
        """Element represented by ``term`` (its class modulo the radical)."""
        ys = self.solution_set
        if not ys.points:
            return 0
        pts = np.array(ys.points, dtype=DTYPE)
        cols = {v: pts[:, j] for j, v in enumerate(ys.variables)}
        vec = ys.algebra.eval_columns(term, cols, len(pts))
        hits = np.flatnonzero((self.vectors == vec).all(axis=1))
        return int(hits[0])

    def evaluation_at(self, j):
        """The homomorphism ``[t] -> t(P_j)`` as a map array."""
        return tuple(int(x) for x in self.vectors[:, j])


def coordinate_algebra(ys: SolutionSet, limits: Limits = DEFAULT_LIMITS) -> CoordAlgebra:
    n = len(ys.variables)
    cl = _coordinate_closure(ys.points, ys.algebra, n, limits)
    gens = [Var(v) for v in ys.variables]
    cache = {}
    witnesses = tuple(witness_term(cl, e, gens, cache) for e in range(cl.size))
    labels = [render(t) for t in witnesses]
    if len(set(labels)) != len(labels):
        labels = None
    underlying = FiniteAlgebra(ys.algebra.language, cl.size, cl.tables, labels, name=f"Gamma_{ys.algebra.name}")
    return CoordAlgebra(underlying, ys, tuple(cl.seed_index), witnesses, cl.vectors)


def is_irreducible(ys: SolutionSet, limits: Limits = DEFAULT_LIMITS):
    """``(True, P)`` when evaluation at ``P`` embeds the coordinate algebra into A."""
    if not ys.points:
        raise EmptySet("irreducibility is defined for nonempty sets")
    vecs = coordinate_algebra(ys, limits).vectors
    n = len(vecs)
    for j, p in enumerate(ys.points):
        if len(np.unique(vecs[:, j])) == n:
            return True, p
    return False, None


def irreducible_components(ys: SolutionSet, limits: Limits = DEFAULT_LIMITS):
    """Maximal point closures ``cl({P})``, sorted by their point lists."""
    if not ys.points:
        raise EmptySet("components are defined for nonempty sets")
    found = []
    for p in ys.points:
        if any(p in set(c.points) for c in found):
            # cl({p}) is contained in that closure, hence equal to it or not maximal
            continue
        found.append(closure([p], ys.algebra, ys.variables, limits))
    maximal = [c for c in found if not any(c is not d and set(c.points) < set(d.points) for d in found)]
    unique = {c.points: c for c in maximal}
    return [unique[k] for k in sorted(unique)]


def systems_equivalent(s1: System, s2: System, algebra: FiniteAlgebra, limits: Limits = DEFAULT_LIMITS) -> bool:
    if s1.variables != s2.variables:
        raise InputError("systems must share the variable list")
    return solve(s1, algebra, limits).points == solve(s2, algebra, limits).points


def geometrically_equivalent(a: FiniteAlgebra, b: FiniteAlgebra, limits: Limits = DEFAULT_LIMITS) -> bool:
    return approximates(a, b, limits) and approximates(b, a, limits)


def union_of_diagonals(algebra: FiniteAlgebra, limits: Limits = DEFAULT_LIMITS):
    """Points of ``A^4`` with ``x1 = x2`` or ``x3 = x4``."""
    g = grid(algebra.size, 4, limits)
    mask = (g[:, 0] == g[:, 1]) | (g[:, 2] == g[:, 3])
    return [tuple(p) for p in g[mask]]


def is_equational_domain(algebra: FiniteAlgebra, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Finite unions of algebraic sets stay algebraic iff the set M is algebraic."""
    return is_algebraic(union_of_diagonals(algebra, limits), algebra, 4, limits)


@dataclass
class CoDomainReport:
    algebra: str
    n_max: int
    dimension: Optional[int] = None
    source: Optional[str] = None
    counterexample: Optional[SolutionSet] = None
    components: list = field(default_factory=list)

    @property
    def found(self):
        return self.dimension is not None


def co_domain_scan(algebra: FiniteAlgebra, n_max: int, limits: Limits = DEFAULT_LIMITS) -> CoDomainReport:
    """Look for a reducible nonempty algebraic set in dimensions ``1..n_max``.

    Per dimension the whole space is tested, then the solution set of every
    single equation ``t = s``; the term functions of the whole space enumerate
    all such equations up to equivalence, so the search per dimension is
    exhaustive for single equations.
    """
    report = CoDomainReport(algebra.name, n_max)
    for m in range(1, n_max + 1):
        variables = tuple(f"x{i + 1}" for i in range(m))
        full = SolutionSet(algebra, variables, [tuple(p) for p in grid(algebra.size, m, limits)])
        coord = coordinate_algebra(full, limits)
        candidates = [("full space", full)]
        vecs = coord.vectors
        seen = {full.points}
        for i in range(len(vecs)):
            for j in range(i + 1, len(vecs)):
                cols = np.flatnonzero(vecs[i] == vecs[j])
                if not len(cols):
                    continue
                ys = SolutionSet(algebra, variables, [full.points[c] for c in cols])
                if ys.points in seen:
                    continue
                seen.add(ys.points)
                eq = f"{render(coord.witnesses[i])} = {render(coord.witnesses[j])}"
                candidates.append((eq, ys))
        for source, ys in candidates:
            if not is_irreducible(ys, limits)[0]:
                report.dimension = m
                report.source = source
                report.counterexample = ys
                report.components = irreducible_components(ys, limits)
                return report
    return report
