"""Free unars and the bicyclic monoid."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, LanguageMismatch
from .normalize import Variety, normalize_equation
from .terms import System

# ---------------------------------------------------------------- free unars


@dataclass(frozen=True)
class UnarEquation:
    """``f^n(lhs) = f^m(rhs)``."""

    n: int
    lhs: str
    m: int
    rhs: str

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise InputError("iteration counts must be nonnegative")

    def __str__(self):
        return f"{_fpow(self.n, self.lhs)} = {_fpow(self.m, self.rhs)}"


def _fpow(k, x):
    return x if k == 0 else ("f(" * k) + x + ")" * k


@dataclass(frozen=True)
class UnarSystem:
    variables: tuple
    equations: tuple

    def __post_init__(self):
        for e in self.equations:
            for v in (e.lhs, e.rhs):
                if v not in self.variables:
                    raise InputError(f"variable {v!r} not declared")

    @classmethod
    def from_system(cls, system: System):
        eqs = []
        for eq in system.equations:
            try:
                lhs, rhs = normalize_equation(eq, Variety.UNAR, system.variables)
            except LanguageMismatch as exc:
                raise InputError(f"malformed unar equation: {exc}") from None
            eqs.append(UnarEquation(lhs.data[0], lhs.data[1], rhs.data[0], rhs.data[1]))
        return cls(tuple(system.variables), tuple(eqs))


@dataclass(frozen=True)
class Inconsistent:
    """A derived cycle ``f^cycle(variable) = variable`` with ``cycle > 0``."""

    variable: str
    cycle: int
    equation: UnarEquation

    @property
    def witness(self):
        return f"{_fpow(self.cycle, self.variable)} = {self.variable}"


@dataclass(frozen=True)
class Reduced:
    """Each variable as ``f^k(root)``; roots generate the coordinate unar freely."""

    bindings: tuple  # (variable, k, root)
    roots: tuple

    @property
    def rank(self):
        return len(self.roots)

    def binding(self, x):
        for v, k, r in self.bindings:
            if v == x:
                return k, r
        raise KeyError(x)


def solve_free_unar(system: UnarSystem):
    """Decide consistency over free unars and compute the reduced bindings.

    Each variable carries a height relative to its class root: ``x = f^h(root)``
    with the root chosen as the class member of least height.  An equation
    between two classes hangs one root below the other; inside one class the
    two exponents must agree, otherwise a cycle ``f^c(z) = z`` with ``c > 0``
    follows.
    """
    parent = {x: x for x in system.variables}
    height = {x: 0 for x in system.variables}  # x = f^height(parent chain to root)

    def find(x):
        h = 0
        while parent[x] != x:
            h += height[x]
            x = parent[x]
        return x, h

    for eq in system.equations:
        (rx, hx), (ry, hy) = find(eq.lhs), find(eq.rhs)
        # f^(hx+n)(rx) = f^(hy+m)(ry)
        a, b = hx + eq.n, hy + eq.m
        if rx == ry:
            if a != b:
                return Inconsistent(eq.lhs if a > b else eq.rhs, abs(a - b), eq)
            continue
        # f^a(rx) = f^b(ry); the root with the larger exponent hangs below the other
        if a <= b:
            low, high, shift = ry, rx, b - a  # rx = f^shift(ry)
        else:
            low, high, shift = rx, ry, a - b
        parent[high] = low
        height[high] = shift

    bindings, roots = [], []
    for x in system.variables:
        r, h = find(x)
        bindings.append((x, h, r))
        if r == x:
            roots.append(x)
    return Reduced(tuple(bindings), tuple(roots))


def check_reduced(system: UnarSystem, result: Reduced) -> bool:
    """Substitute the bindings into every equation and compare symbolically."""
    for eq in system.equations:
        kx, rx = result.binding(eq.lhs)
        ky, ry = result.binding(eq.rhs)
        if (kx + eq.n, rx) != (ky + eq.m, ry):
            return False
    return True


# ------------------------------------------------------------ bicyclic monoid


@dataclass(frozen=True, order=True)
class BicyclicElement:
    """``b^n a^m`` with the relation ``ab = 1``."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise InputError("bicyclic exponents must be nonnegative")

    def __mul__(self, other):
        return bicyclic_mul(self, other)

    def __pow__(self, k):
        out = IDENTITY
        for _ in range(k):
            out = out * self
        return out

    def __str__(self):
        parts = []
        if self.n:
            parts.append("b" if self.n == 1 else f"b^{self.n}")
        if self.m:
            parts.append("a" if self.m == 1 else f"a^{self.m}")
        return "".join(parts) or "1"


IDENTITY = BicyclicElement(0, 0)
A = BicyclicElement(0, 1)
B = BicyclicElement(1, 0)


def bicyclic_mul(u: BicyclicElement, v: BicyclicElement) -> BicyclicElement:
    # a^m1 b^n2 cancels min(m1, n2) copies of ab
    if u.m <= v.n:
        return BicyclicElement(u.n + v.n - u.m, v.m)
    return BicyclicElement(u.n, u.m + v.m - v.n)


@dataclass(frozen=True)
class NoetherianWitness:
    n: int
    values: tuple  # value of x^i y^i z at (b, a, b^n a^n) for i = 1..n+1
    z: BicyclicElement

    @property
    def holds_up_to_n(self):
        return all(v == self.z for v in self.values[:-1])

    @property
    def fails_at_next(self):
        return self.values[-1] != self.z

    @property
    def final(self):
        return self.values[-1]


def bicyclic_noetherian_witness(n: int) -> NoetherianWitness:
    """Evaluate ``x^i y^i z`` at ``(b, a, b^n a^n)`` for ``i = 1 .. n+1``."""
    if n < 1:
        raise InputError("n must be at least 1")
    z = BicyclicElement(n, n)
    values = tuple((B ** i) * (A ** i) * z for i in range(1, n + 2))
    return NoetherianWitness(n, values, z)
