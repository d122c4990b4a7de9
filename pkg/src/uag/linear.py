"""Finitely generated abelian groups and the monoid N.

Integer matrices are lists of rows of Python ints (arbitrary precision).
Homogeneous abelian equations ``k_1 x_1 + ... + k_n x_n = 0`` are their
coefficient rows.
"""
from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import reduce

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from .config import DEFAULT_LIMITS, Limits
from .errors import InputError, ResourceLimit, Unbounded
from .normalize import Variety, normalize_equation
from .terms import App, Language, System

NAT_LANGUAGE = Language((("add", 2), ("zero", 0), ("one", 0)))
ABELIAN_LANGUAGE = Language((("add", 2), ("neg", 1), ("zero", 0)))


def is_prime(p):
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def factor(m):
    out = Counter()
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] += 1
            m //= d
        d += 1
    if m > 1:
        out[m] += 1
    return out


def prime_power(q):
    """``(p, e)`` with ``q = p**e``, or None."""
    f = factor(q)
    if len(f) != 1:
        return None
    (p, e), = f.items()
    return p, e


@dataclass(frozen=True)
class FGAbelianGroup:
    """``Z^rank`` plus cyclic factors of prime-power order (sorted)."""

    rank: int = 0
    torsion: tuple = field(default=())

    def __post_init__(self):
        if self.rank < 0:
            raise InputError("rank must be nonnegative")
        for q in self.torsion:
            if q < 2 or prime_power(q) is None:
                raise InputError(f"torsion factor {q} is not a prime power > 1")
        object.__setattr__(self, "torsion", tuple(sorted(self.torsion)))

    @classmethod
    def from_orders(cls, rank, orders):
        """Split arbitrary cyclic orders into prime-power factors."""
        parts = []
        for m in orders:
            parts += [p ** e for p, e in factor(m).items()]
        return cls(rank, tuple(parts))

    @classmethod
    def parse(cls, text):
        """``Z^2 + Z_8 + Z_{3}``; ``0`` is the trivial group."""
        rank, orders = 0, []
        for part in (p.strip() for p in text.replace(" ", "").split("+")):
            if part in ("0", ""):
                continue
            m = re.fullmatch(r"Z(?:\^(\d+))?", part)
            if m:
                rank += int(m.group(1) or 1)
                continue
            m = re.fullmatch(r"Z_\{?(\d+)\}?(?:\^(\d+))?", part)
            if not m:
                raise InputError(f"cannot parse abelian group summand {part!r}")
            orders += [int(m.group(1))] * int(m.group(2) or 1)
        if any(o < 1 for o in orders):
            raise InputError("cyclic orders must be positive")
        return cls.from_orders(rank, [o for o in orders if o > 1])

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z_{q}" for q in self.torsion]
        return " + ".join(parts) if parts else "0"

    @property
    def torsion_part(self):
        return FGAbelianGroup(0, self.torsion)

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def p_exponents(self, p):
        return [prime_power(q)[1] for q in self.torsion if prime_power(q)[0] == p]

    @property
    def primes(self):
        return sorted({prime_power(q)[0] for q in self.torsion})

    @property
    def order(self):
        return math.prod(self.torsion) if self.rank == 0 else None


Z = FGAbelianGroup(1)


def cyclic(q):
    return FGAbelianGroup.from_orders(0, [q])


# ------------------------------------------------------------- matrix helpers

def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class SNF:
    U: list
    D: list
    V: list
    V_inv: list

    @property
    def diagonal(self):
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d)


def _snf(m, ncols=None):
    rows = len(m)
    cols = len(m[0]) if m else (ncols or 0)
    if rows == 0 or cols == 0:
        return SNF(identity(rows), [[0] * cols for _ in range(rows)], identity(cols), identity(cols))
    D, U, V = smith_normal_decomp(Matrix(m), domain=ZZ)
    as_ints = lambda mat: [[int(x) for x in mat.row(i)] for i in range(mat.rows)]
    return SNF(as_ints(U), as_ints(D), as_ints(V), as_ints(V.inv()))


def smith_normal_form(m, ncols=None):
    """``(U, D, V)`` with ``U·M·V = D`` diagonal, ``d1 | d2 | ...``, U and V unimodular."""
    s = _snf(m, ncols)
    return s.U, s.D, s.V


def hermite_rows(rows):
    """Row-style Hermite normal form of the lattice spanned by ``rows`` (zero rows dropped)."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    n = len(a[0])
    out_row = 0
    for col in range(n):
        if out_row >= len(a):
            break
        while True:
            nz = [i for i in range(out_row, len(a)) if a[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][col]))
            a[out_row], a[piv] = a[piv], a[out_row]
            done = True
            for i in range(out_row + 1, len(a)):
                if a[i][col]:
                    q = a[i][col] // a[out_row][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[out_row])]
                    done = done and a[i][col] == 0
            if done:
                break
        if any(a[i][col] for i in range(out_row, len(a))):
            if a[out_row][col] < 0:
                a[out_row] = [-x for x in a[out_row]]
            p = a[out_row][col]
            for i in range(out_row):
                q = a[i][col] // p
                a[i] = [x - q * y for x, y in zip(a[i], a[out_row])]
            out_row += 1
    return [r for r in a[:out_row]]


# ------------------------------------------------------------- equations

def system_to_matrix(system: System):
    """Coefficient rows of a system over the abelian-group language."""
    rows = []
    for eq in system.equations:
        lhs, _ = normalize_equation(eq, Variety.ABELIAN_GROUP, system.variables)
        coeff = dict(lhs.data)
        rows.append([coeff.get(v, 0) for v in system.variables])
    return rows


def radical_lattice(rows, n):
    """Saturation of the row lattice: the radical of the system over Z.

    Returned in row Hermite normal form, so equal radicals give equal bases.
    """
    rows = [list(r) for r in rows if len(r) == n]
    if not rows:
        return []
    s = _snf(rows, n)
    return hermite_rows(s.V_inv[: s.rank])


def coordinate_group_rank(rows, n):
    """``m`` with coordinate group over Z isomorphic to ``Z^m``."""
    return n - len(radical_lattice(rows, n))


def kernel_size_mod(rows, n, m):
    """Number of solutions of the homogeneous system in ``Z_m^n``."""
    if not rows:
        return m ** n
    s = _snf(rows, n)
    diag = [d for d in s.diagonal if d]
    return math.prod(math.gcd(d, m) for d in diag) * m ** (n - len(diag))


def _solution_signature(rows, n, group: FGAbelianGroup):
    rank = len(radical_lattice(rows, n)) if group.rank else None
    return rank, tuple(kernel_size_mod(rows, n, q) for q in sorted(set(group.torsion)))


def minimal_equivalent_prefix(rows, group: FGAbelianGroup = Z, n=None):
    """Least ``i`` such that the first ``i`` equations cut out the full solution subgroup.

    Prefix solution subgroups shrink as ``i`` grows, so equality is decided by
    comparing the rank over Z and the sizes of the kernels modulo each torsion
    order.
    """
    rows = [list(r) for r in rows]
    if not rows:
        raise InputError("empty list of equations")
    n = n if n is not None else len(rows[0])
    target = _solution_signature(rows, n, group)
    for i in range(1, len(rows) + 1):
        if _solution_signature(rows[:i], n, group) == target:
            return i
    return len(rows)


# --------------------------------------------------- coordinate classification

def sub_oplus(group: FGAbelianGroup):
    """Nonzero subgroups of the direct summands, up to isomorphism."""
    out = set()
    if group.rank:
        out.add(Z)
    for q in group.torsion:
        p, e = prime_power(q)
        out.update(cyclic(p ** j) for j in range(1, e + 1))
    return frozenset(out)


def _summands(group):
    return ([Z] if group.rank else []) + [cyclic(q) for q in group.torsion]


def is_coordinate_abelian(b: FGAbelianGroup, a: FGAbelianGroup) -> bool:
    """Is ``b`` the coordinate group of a nonempty algebraic set over ``a``?"""
    allowed = sub_oplus(a)
    return all(s in allowed for s in _summands(b))


def torsion_embeds(b: FGAbelianGroup, a: FGAbelianGroup) -> bool:
    """Does the finite group ``T(b)`` embed into ``T(a)``?  (Per-prime column counts.)"""
    for p in b.primes:
        eb, ea = b.p_exponents(p), a.p_exponents(p)
        for j in range(1, max(eb) + 1):
            if sum(e >= j for e in eb) > sum(e >= j for e in ea):
                return False
    return True


def is_irreducible_coordinate_abelian(b: FGAbelianGroup, a: FGAbelianGroup) -> bool:
    if a.rank == 0 and b.rank > 0:
        return False
    return torsion_embeds(b, a)


def geom_equiv_abelian(a: FGAbelianGroup, b: FGAbelianGroup) -> bool:
    return sub_oplus(a) == sub_oplus(b)


def is_coordinate_abelian_with_constants(b_prime: FGAbelianGroup, a: FGAbelianGroup) -> bool:
    """Candidate ``A + B'`` with the ``A`` summand naming the constants."""
    return is_coordinate_abelian(b_prime, a)


def is_irreducible_coordinate_abelian_with_constants(b_prime: FGAbelianGroup, a: FGAbelianGroup) -> bool:
    if a.rank == 0:
        return b_prime.is_trivial
    return not b_prime.torsion


def finite_rendering(group: FGAbelianGroup):
    """The finite group as a table algebra in the additive language."""
    from .finalg import cyclic_group, direct_product, trivial_algebra

    if group.rank:
        raise InputError(f"{group} is infinite")
    if not group.torsion:
        return trivial_algebra(ABELIAN_LANGUAGE, name="0")
    parts = [cyclic_group(q) for q in group.torsion]
    alg = parts[0] if len(parts) == 1 else direct_product(parts)
    alg.name = str(group)
    return alg


def element_orders(group: FGAbelianGroup):
    """Order of every element of a finite group, brute force over coordinates."""
    if group.rank:
        raise InputError(f"{group} is infinite")
    out = []
    for coords in itertools.product(*(range(q) for q in group.torsion)):
        out.append(reduce(math.lcm, (q // math.gcd(q, c) for q, c in zip(group.torsion, coords)), 1))
    return out


# ------------------------------------------------------------------ N

@dataclass(frozen=True)
class LinearEquation:
    """``sum lhs_i x_i + lhs_const = sum rhs_i x_i + rhs_const`` over N."""

    lhs: tuple
    lhs_const: int
    rhs: tuple
    rhs_const: int


def nat_equations(system: System):
    out = []
    for eq in system.equations:
        left, right = normalize_equation(eq, Variety.COMMUTATIVE_MONOID, system.variables)

        def split(nf):
            coeff = dict(nf.data)
            const = 0
            for atom, c in coeff.items():
                if isinstance(atom, App):
                    if atom.op != "one":
                        raise InputError(f"constant {atom.op!r} has no value in N")
                    const += c
            return tuple(coeff.get(v, 0) for v in system.variables), const

        (lv, lc), (rv, rc) = split(left), split(right)
        common = min(lc, rc)
        out.append(LinearEquation(lv, lc - common, rv, rc - common))
    return out


def nat_bounds(equations, n, variables=None):
    """Upper bound per variable, propagated through equations until stable."""
    names = variables or [f"x{i + 1}" for i in range(n)]
    bound = [None] * n
    changed = True
    while changed:
        changed = False
        for eq in equations:
            for side, const, other, other_const in ((eq.lhs, eq.lhs_const, eq.rhs, eq.rhs_const), (eq.rhs, eq.rhs_const, eq.lhs, eq.lhs_const)):
                if any(c and bound[j] is None for j, c in enumerate(other)):
                    continue
                top = other_const + sum(c * bound[j] for j, c in enumerate(other) if c) - const
                for i, k in enumerate(side):
                    if k > 0:
                        b = max(top, -1) // k
                        if bound[i] is None or b < bound[i]:
                            bound[i] = b
                            changed = True
    for i, b in enumerate(bound):
        if b is None:
            raise Unbounded(names[i])
    return bound


def solve_over_N(system: System, limits: Limits = DEFAULT_LIMITS):
    """All solutions in N of a bounded linear system, sorted."""
    eqs = nat_equations(system)
    n = len(system.variables)
    bounds = nat_bounds(eqs, n, system.variables)
    if any(b < 0 for b in bounds):
        return []
    if math.prod(b + 1 for b in bounds) > limits.tuple_cap:
        raise ResourceLimit("bounded search space exceeds the tuple cap")

    def ok(p):
        return all(
            sum(k * x for k, x in zip(e.lhs, p)) + e.lhs_const == sum(k * x for k, x in zip(e.rhs, p)) + e.rhs_const
            for e in eqs
        )

    return [p for p in itertools.product(*(range(b + 1) for b in bounds)) if ok(p)]
