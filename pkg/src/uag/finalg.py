"""Finite algebras given by operation tables.

Elements of a carrier of size ``k`` are the integers ``0..k-1``; labels are
cosmetic.  The table of an ``a``-ary symbol is a read-only numpy array of shape
``(k,) * a`` (a 0-d array for constants), so ``table[x, y]`` works for scalars
and for whole index arrays alike.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .errors import EmptySeedNoConstants, InputError, LanguageMismatch, ResourceLimit
from .terms import App, Language, Var

DTYPE = np.int64


class FiniteAlgebra:
    def __init__(self, language: Language, size: int, tables: dict, labels=None, name="A"):
        if size < 1:
            raise InputError("an algebra needs a nonempty carrier")
        self.language = language
        self.size = int(size)
        self.name = name
        frozen = {}
        for sym, arity in language:
            if sym not in tables:
                raise InputError(f"no table for symbol {sym!r}")
            t = np.asarray(tables[sym], dtype=DTYPE)
            if t.shape != (self.size,) * arity:
                try:
                    t = t.reshape((self.size,) * arity)
                except ValueError:
                    raise InputError(f"table for {sym!r} has {t.size} entries, expected {self.size ** arity}") from None
            if t.size and (t.min() < 0 or t.max() >= self.size):
                raise InputError(f"table for {sym!r} leaves the carrier")
            t = t.copy()
            t.setflags(write=False)
            frozen[sym] = t
        extra = set(tables) - {s for s, _ in language}
        if extra:
            raise InputError(f"tables for undeclared symbols: {sorted(extra)}")
        self.tables = frozen
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != self.size or len(set(labels)) != self.size:
                raise InputError("labels must be distinct, one per element")
        self.labels = labels

    @classmethod
    def from_functions(cls, language, size, funcs: dict, labels=None, name="A"):
        """Tabulate Python callables (or ints for constants) over ``range(size)``."""
        tables = {}
        for sym, arity in language:
            f = funcs[sym]
            if arity == 0:
                tables[sym] = np.array(f if isinstance(f, (int, np.integer)) else f(), dtype=DTYPE)
            else:
                t = np.empty((size,) * arity, dtype=DTYPE)
                for args in itertools.product(range(size), repeat=arity):
                    t[args] = f(*args)
                tables[sym] = t
        return cls(language, size, tables, labels, name)

    def __repr__(self):
        return f"FiniteAlgebra({self.name!r}, size={self.size}, language={self.language.to_text()!r})"

    def apply(self, sym, args=()):
        return int(self.tables[sym][tuple(args)])

    def constant(self, sym):
        return int(self.tables[sym][()])

    def label(self, e):
        return self.labels[e] if self.labels else str(e)

    def element(self, text):
        """Element index from a label or a decimal index."""
        if self.labels and text in self.labels:
            return self.labels.index(text)
        try:
            e = int(text)
        except ValueError:
            raise InputError(f"unknown element {text!r} of {self.name}") from None
        if not 0 <= e < self.size:
            raise InputError(f"element {e} outside carrier of size {self.size}")
        return e

    @property
    def is_trivial(self):
        return self.size == 1

    def same_as(self, other):
        """Equal language, carrier and tables (labels ignored)."""
        return (
            self.language == other.language
            and self.size == other.size
            and all(np.array_equal(self.tables[s], other.tables[s]) for s, _ in self.language)
        )

    def eval_columns(self, term, columns: dict, length: int):
        """Vectorised evaluation: ``columns`` maps variables to index arrays."""
        if isinstance(term, Var):
            return columns[term.name]
        if term.op not in self.language or self.language.arity(term.op) != len(term.args):
            raise LanguageMismatch(f"{self.name} does not interpret {term.op}/{len(term.args)}")
        table = self.tables[term.op]
        if not term.args:
            return np.full(length, int(table[()]), dtype=DTYPE)
        return table[tuple(self.eval_columns(a, columns, length) for a in term.args)]

    def reduct(self, symbols, name=None):
        keep = Language(tuple((s, a) for s, a in self.language if s in set(symbols)))
        return FiniteAlgebra(keep, self.size, {s: self.tables[s] for s, _ in keep}, self.labels, name or self.name)

    def rename(self, mapping: dict, name=None):
        lang = Language(tuple((mapping.get(s, s), a) for s, a in self.language))
        tables = {mapping.get(s, s): t for s, t in self.tables.items()}
        return FiniteAlgebra(lang, self.size, tables, self.labels, name or self.name)


def _check_same_language(a, b):
    if a.language != b.language:
        raise LanguageMismatch(f"{a.name} and {b.name} have different languages")


# ------------------------------------------------------------------ builtins

GROUP_LANGUAGE = Language((("add", 2), ("neg", 1), ("zero", 0)))
SEMIGROUP_LANGUAGE = Language((("mul", 2),))


def ring_language(with_one=False):
    syms = (("add", 2), ("neg", 1), ("mul", 2), ("zero", 0))
    return Language(syms + ((("one", 0),) if with_one else ()))


def cyclic_group(n):
    return FiniteAlgebra.from_functions(
        GROUP_LANGUAGE,
        n,
        {"add": lambda x, y: (x + y) % n, "neg": lambda x: (-x) % n, "zero": 0},
        name=f"Z{n}",
    )


def residue_ring(n, with_one=False):
    funcs = {
        "add": lambda x, y: (x + y) % n,
        "neg": lambda x: (-x) % n,
        "mul": lambda x, y: (x * y) % n,
        "zero": 0,
        "one": 1 % n,
    }
    return FiniteAlgebra.from_functions(ring_language(with_one), n, funcs, name=f"Z{n}ring")


def chain_semilattice(n):
    return FiniteAlgebra.from_functions(SEMIGROUP_LANGUAGE, n, {"mul": min}, name=f"L{n}")


def left_zero(n):
    labels = [f"a{i}" for i in range(n)]
    return FiniteAlgebra.from_functions(SEMIGROUP_LANGUAGE, n, {"mul": lambda x, y: x}, labels, name=f"LZ{n}")


def rectangular_band(n, m):
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, m + 1)]
    labels = [f"({i},{j})" for i, j in pairs]

    def mul(x, y):
        return pairs.index((pairs[x][0], pairs[y][1]))

    return FiniteAlgebra.from_functions(SEMIGROUP_LANGUAGE, n * m, {"mul": mul}, labels, name=f"RB({n},{m})")


def trivial_algebra(language, name="trivial"):
    return FiniteAlgebra(language, 1, {s: np.zeros((1,) * a, dtype=DTYPE) for s, a in language}, name=name)


_BUILTINS = {
    "Zn": (cyclic_group, 1),
    "Zn_ring": (residue_ring, 1),
    "Ln": (chain_semilattice, 1),
    "LZn": (left_zero, 1),
    "RBnm": (rectangular_band, 2),
}


def build_builtin(kind, *params, with_one=False):
    """Builtin algebras: ``Zn``, ``Zn_ring``, ``Ln``, ``LZn``, ``RBnm``."""
    if kind not in _BUILTINS:
        raise InputError(f"unknown builtin {kind!r}; choose from {sorted(_BUILTINS)}")
    fn, nparams = _BUILTINS[kind]
    if len(params) != nparams:
        raise InputError(f"{kind} takes {nparams} parameter(s)")
    if any(int(p) < 1 for p in params):
        raise InputError(f"{kind} parameters must be positive")
    if kind == "Zn_ring":
        return fn(int(params[0]), with_one)
    return fn(*(int(p) for p in params))


# ---------------------------------------------------------------- products

def direct_product(algebras: Sequence[FiniteAlgebra], name=None):
    """Cartesian product with lexicographic element indexing."""
    algebras = list(algebras)
    if not algebras:
        raise InputError("direct product of an empty list")
    for b in algebras[1:]:
        _check_same_language(algebras[0], b)
    sizes = [a.size for a in algebras]
    total = int(np.prod(sizes))
    comps = np.array(list(itertools.product(*(range(s) for s in sizes))), dtype=DTYPE).reshape(total, len(sizes))
    radix = np.array([int(np.prod(sizes[i + 1:])) for i in range(len(sizes))], dtype=DTYPE)
    tables = {}
    for sym, arity in algebras[0].language:
        if arity == 0:
            tables[sym] = np.array(sum(a.constant(sym) * r for a, r in zip(algebras, radix)), dtype=DTYPE)
            continue
        grids = np.indices((total,) * arity).reshape(arity, -1)
        out = np.zeros(grids.shape[1], dtype=DTYPE)
        for c, alg in enumerate(algebras):
            out += alg.tables[sym][tuple(comps[g, c] for g in grids)] * radix[c]
        tables[sym] = out.reshape((total,) * arity)
    labels = ["(" + ",".join(alg.label(x) for alg, x in zip(algebras, row)) + ")" for row in comps]
    name = name or "x".join(a.name for a in algebras)
    return FiniteAlgebra(algebras[0].language, total, tables, labels, name)


def projection(product: FiniteAlgebra, factors: Sequence[FiniteAlgebra], i: int):
    """Map array of the i-th projection of ``direct_product(factors)``."""
    sizes = [a.size for a in factors]
    comps = np.array(list(itertools.product(*(range(s) for s in sizes))), dtype=DTYPE)
    return Homomorphism(product, factors[i], tuple(int(x) for x in comps[:, i]))


# ------------------------------------------------------------ closure engine

@dataclass
class Closure:
    """Result of closing seed vectors of ``A^width`` under the operations."""

    vectors: np.ndarray  # n x width, discovery order
    witnesses: list  # ("seed", i) | ("const", name) | ("op", name, args)
    seed_index: list  # element index of every seed (duplicates collapse)
    const_index: dict
    tables: dict

    @property
    def size(self):
        return len(self.vectors)


class _RowIndex:
    """Maps rows of ``A^width`` to element indices.

    Rows are packed into base-``k`` integer codes when they fit in 62 bits, so
    whole blocks are looked up with ``searchsorted``; wider rows fall back to a
    dictionary keyed by their bytes.
    """

    def __init__(self, k, width):
        self.packed = width * max(1, (k - 1).bit_length()) <= 62
        if self.packed:
            self.radix = np.array([k ** (width - 1 - j) for j in range(width)], dtype=DTYPE)
            self.codes = np.empty(0, dtype=DTYPE)
            self.ids = np.empty(0, dtype=DTYPE)
        else:
            self.table = {}

    def lookup(self, rows):
        """Indices of known rows (-1 for unknown) and the keys used."""
        if self.packed:
            keys = rows @ self.radix
            pos = np.searchsorted(self.codes, keys)
            pos_c = np.minimum(pos, len(self.codes) - 1)
            hit = (pos < len(self.codes)) & (self.codes[pos_c] == keys) if len(self.codes) else np.zeros(len(keys), bool)
            out = np.where(hit, self.ids[pos_c] if len(self.codes) else -1, -1)
            return out, keys
        keys = [r.tobytes() for r in rows]
        return np.array([self.table.get(k, -1) for k in keys], dtype=DTYPE), keys

    def insert(self, keys, ids):
        if self.packed:
            codes = np.concatenate([self.codes, np.asarray(keys, dtype=DTYPE)])
            ids = np.concatenate([self.ids, np.asarray(ids, dtype=DTYPE)])
            order = np.argsort(codes, kind="stable")
            self.codes, self.ids = codes[order], ids[order]
        else:
            for k, i in zip(keys, ids):
                self.table[k] = int(i)


def _arg_block(i, arity):
    """Argument tuples with maximum exactly ``i``, in lexicographic order."""
    if arity == 1:
        return np.array([[i]], dtype=DTYPE)
    if arity == 2:
        left = np.stack([np.arange(i, dtype=DTYPE), np.full(i, i, dtype=DTYPE)], axis=1)
        right = np.stack([np.full(i + 1, i, dtype=DTYPE), np.arange(i + 1, dtype=DTYPE)], axis=1)
        return np.concatenate([left, right])
    tuples = [t for t in itertools.product(range(i + 1), repeat=arity) if max(t) == i]
    return np.array(tuples, dtype=DTYPE).reshape(-1, arity)


class _Separated(Exception):
    pass


def close_vectors(algebra: FiniteAlgebra, seeds, width: int, limits: Limits = DEFAULT_LIMITS, prefix=None) -> Optional[Closure]:
    """Least subuniverse of ``algebra**width`` containing ``seeds`` and constants.

    Discovery order: seeds as given, constants in language order, then each
    element ``i`` in turn is combined with all earlier elements, every operation
    in language order and argument tuples with maximum ``i`` in lexicographic
    order.  Every table entry is computed exactly once.

    With ``prefix`` set, generation stops and returns None as soon as two
    elements agree on their first ``prefix`` coordinates.
    """
    buf = np.empty((16, width), dtype=DTYPE)
    index = _RowIndex(algebra.size, width)
    heads = _RowIndex(algebra.size, prefix) if prefix is not None else None
    witnesses = []

    def append(rows, wits):
        nonlocal buf
        n = len(witnesses)
        if n + len(rows) > limits.elem_cap:
            raise ResourceLimit(f"generated subalgebra exceeds {limits.elem_cap} elements")
        while n + len(rows) > len(buf):
            buf = np.concatenate([buf, np.empty_like(buf)])
        buf[n:n + len(rows)] = rows
        witnesses.extend(wits)
        return np.arange(n, n + len(rows), dtype=DTYPE)

    def add_block(rows, wit_of):
        """Index of every row, appending unseen rows in first-occurrence order."""
        rows = np.ascontiguousarray(rows, dtype=DTYPE)
        rows = rows.reshape(len(rows), width)
        found, keys = index.lookup(rows)
        missing = np.flatnonzero(found < 0)
        if len(missing):
            if index.packed:
                _, first = np.unique(keys[missing], return_index=True)
                first = missing[np.sort(first)]
            else:
                seen, first = set(), []
                for m in missing:
                    if keys[m] not in seen:
                        seen.add(keys[m])
                        first.append(m)
                first = np.array(first, dtype=DTYPE)
            if heads is not None:
                new = rows[first][:, :prefix]
                old, hkeys = heads.lookup(np.ascontiguousarray(new))
                if (old >= 0).any() or len(set(hkeys.tolist() if heads.packed else hkeys)) < len(new):
                    raise _Separated
            ids = append(rows[first], [wit_of(int(f)) for f in first])
            if heads is not None:
                heads.insert(hkeys if heads.packed else list(hkeys), ids)
            index.insert(keys[first] if index.packed else [keys[f] for f in first], ids)
            found, _ = index.lookup(rows)
        return found

    try:
        return _close(algebra, seeds, width, limits, add_block, witnesses, lambda: buf)
    except _Separated:
        return None


def _close(algebra, seeds, width, limits, add_block, witnesses, get_buf):
    seed_index = []
    for i, s in enumerate(seeds):
        seed_index.append(int(add_block(np.asarray(s).reshape(1, width), lambda _, i=i: ("seed", i))[0]))
    const_index = {}
    for c in algebra.language.constants:
        row = np.full((1, width), algebra.constant(c), dtype=DTYPE)
        const_index[c] = int(add_block(row, lambda _, c=c: ("const", c))[0])
    if not witnesses:
        raise EmptySeedNoConstants("no seeds and no constants: the generated subalgebra would be empty")

    ops = algebra.language.operations
    entries = {name: [] for name, _ in ops}
    i = 0
    while i < len(witnesses):
        for name, arity in ops:
            table = algebra.tables[name]
            args = _arg_block(i, arity)
            cur = get_buf()[: i + 1]
            res = table[tuple(cur[args[:, j]] for j in range(arity))]
            result = add_block(res, lambda f, name=name, args=args: ("op", name, tuple(int(x) for x in args[f])))
            entries[name].append((args, result))
        i += 1

    n = len(witnesses)
    tables = {}
    for name, arity in algebra.language:
        if arity == 0:
            tables[name] = np.array(const_index[name], dtype=DTYPE)
            continue
        if n ** arity > limits.table_cap:
            raise ResourceLimit(f"table of {name!r} would have {n ** arity} entries")
        t = np.empty((n,) * arity, dtype=DTYPE)
        if entries[name]:
            args = np.concatenate([a for a, _ in entries[name]])
            vals = np.concatenate([r for _, r in entries[name]])
            t[tuple(args[:, j] for j in range(arity))] = vals
        tables[name] = t
    return Closure(get_buf()[:n].copy(), witnesses, seed_index, const_index, tables)


def generate_subalgebra(algebra: FiniteAlgebra, seeds, limits: Limits = DEFAULT_LIMITS):
    """Subalgebra generated by ``seeds``; returns ``(subalgebra, inclusion)``."""
    seeds = list(seeds)
    for s in seeds:
        if not 0 <= int(s) < algebra.size:
            raise InputError(f"seed {s} outside the carrier")
    cl = close_vectors(algebra, [np.array([int(s)]) for s in seeds], 1, limits)
    inclusion = tuple(int(v) for v in cl.vectors[:, 0])
    labels = [algebra.label(e) for e in inclusion]
    sub = FiniteAlgebra(algebra.language, cl.size, cl.tables, labels, name=f"<{algebra.name}>")
    return sub, inclusion


def diophantize(algebra: FiniteAlgebra, prefix="c"):
    """Add one fresh constant per element, named ``c0, c1, ...``."""
    fresh = []
    tables = dict(algebra.tables)
    for e in range(algebra.size):
        name = f"{prefix}{e}"
        while name in algebra.language or name in tables:
            name = "_" + name
        fresh.append((name, 0))
        tables[name] = np.array(e, dtype=DTYPE)
    return FiniteAlgebra(algebra.language.extend(fresh), algebra.size, tables, algebra.labels, f"D({algebra.name})")


# ------------------------------------------------------------ homomorphisms

@dataclass(frozen=True)
class Homomorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    map: tuple

    def __call__(self, e):
        return self.map[e]

    @property
    def is_injective(self):
        return len(set(self.map)) == len(self.map)


def is_homomorphism(mapping, source: FiniteAlgebra, target: FiniteAlgebra):
    """Check every table entry of ``source`` against ``target``."""
    h = np.asarray(mapping, dtype=DTYPE)
    if h.shape != (source.size,) or h.min() < 0 or h.max() >= target.size:
        return False
    for sym, arity in source.language:
        tb, ta = source.tables[sym], target.tables[sym]
        if arity == 0:
            if h[int(tb[()])] != int(ta[()]):
                return False
            continue
        grid = np.indices(tb.shape).reshape(arity, -1)
        if not np.array_equal(ta[tuple(h[g] for g in grid)], h[tb.reshape(-1)]):
            return False
    return True


class _HomSearch:
    """Backtracking over source elements in index order with forward forcing.

    Whenever all arguments of a table entry are assigned, the image of the
    result is forced (or checked); this keeps generated algebras cheap because
    the generators come first.
    """

    def __init__(self, source, target, injective, limits):
        _check_same_language(source, target)
        self.B, self.A = source, target
        self.injective = injective
        self.limits = limits
        self.h = np.full(source.size, -1, dtype=DTYPE)
        self.owner = np.full(target.size, -1, dtype=DTYPE)
        self.trail = []
        self.nodes = 0
        self.ops = [(source.tables[s], target.tables[s], a) for s, a in source.language.operations]

    def undo(self, mark):
        for e in self.trail[mark:]:
            if self.injective:
                self.owner[self.h[e]] = -1
            self.h[e] = -1
        del self.trail[mark:]

    def _set(self, rr, vv, queue):
        """Assign images for unassigned elements ``rr``; False on conflict."""
        if len(rr) == 0:
            return True
        order = np.argsort(rr, kind="stable")
        rr, vv = rr[order], vv[order]
        first = np.ones(len(rr), dtype=bool)
        first[1:] = rr[1:] != rr[:-1]
        starts = np.flatnonzero(first)
        if not np.array_equal(np.repeat(vv[starts], np.diff(np.append(starts, len(rr)))), vv):
            return False
        rr, vv = rr[starts], vv[starts]
        if self.injective:
            if len(np.unique(vv)) != len(vv) or (self.owner[vv] >= 0).any():
                return False
            self.owner[vv] = rr
        self.h[rr] = vv
        self.trail.extend(int(r) for r in rr)
        queue.extend(int(r) for r in rr)
        return True

    def propagate(self, queue):
        h = self.h
        while queue:
            e = queue.pop()
            he = h[e]
            for tb, ta, arity in self.ops:
                if arity == 1:
                    rr = np.array([tb[e]], dtype=DTYPE)
                    vv = np.array([ta[he]], dtype=DTYPE)
                elif arity == 2:
                    J = np.array(self.trail, dtype=DTYPE)
                    hJ = h[J]
                    rr = np.concatenate([tb[e, J], tb[J, e]])
                    vv = np.concatenate([ta[he, hJ], ta[hJ, he]])
                else:
                    J = self.trail
                    tuples = [t for t in itertools.product(J, repeat=arity) if e in t]
                    rr = np.array([tb[t] for t in tuples], dtype=DTYPE)
                    vv = np.array([ta[tuple(h[list(t)])] for t in tuples], dtype=DTYPE)
                cur = h[rr]
                known = cur >= 0
                if (cur[known] != vv[known]).any():
                    return False
                if not self._set(rr[~known], vv[~known], queue):
                    return False
        return True

    def start(self):
        for sym in self.B.language.constants:
            e, v = int(self.B.tables[sym][()]), int(self.A.tables[sym][()])
            if self.h[e] >= 0:
                if self.h[e] != v:
                    return False
                continue
            queue = []
            if not self._set(np.array([e]), np.array([v]), queue) or not self.propagate(queue):
                return False
        return True

    def choose(self, e, v):
        self.nodes += 1
        if self.nodes > self.limits.node_budget:
            raise ResourceLimit(f"homomorphism search exceeded {self.limits.node_budget} nodes")
        queue = []
        return self._set(np.array([e]), np.array([v]), queue) and self.propagate(queue)

    def next_free(self, start):
        free = np.flatnonzero(self.h[start:] < 0)
        return int(free[0]) + start if len(free) else None

    def run(self) -> Iterator[tuple]:
        if not self.start():
            return
        e = self.next_free(0)
        if e is None:
            yield tuple(int(x) for x in self.h)
            return
        frames = [[e, 0, len(self.trail)]]
        k = self.A.size
        while frames:
            frame = frames[-1]
            e, v, mark = frame
            self.undo(mark)
            if v >= k:
                frames.pop()
                continue
            frame[1] = v + 1
            if self.choose(e, v):
                nxt = self.next_free(e + 1)
                if nxt is None:
                    yield tuple(int(x) for x in self.h)
                else:
                    frames.append([nxt, 0, len(self.trail)])


def iter_homs(source, target, injective=False, limits: Limits = DEFAULT_LIMITS) -> Iterator[Homomorphism]:
    """Homomorphisms ``source -> target`` in lexicographic order of the map."""
    for m in _HomSearch(source, target, injective, limits).run():
        yield Homomorphism(source, target, m)


def enumerate_homs(source, target, limits: Limits = DEFAULT_LIMITS):
    return list(iter_homs(source, target, False, limits))


def find_embedding(source, target, require_bijective=False, limits: Limits = DEFAULT_LIMITS) -> Optional[Homomorphism]:
    _check_same_language(source, target)
    if source.size > target.size or (require_bijective and source.size != target.size):
        return None
    return next(iter_homs(source, target, True, limits), None)


def is_isomorphic(a, b, limits: Limits = DEFAULT_LIMITS):
    return find_embedding(a, b, True, limits) is not None


def approximates(a: FiniteAlgebra, b: FiniteAlgebra, limits: Limits = DEFAULT_LIMITS):
    """True iff every pair of distinct elements of ``b`` is split by some hom b -> a."""
    _check_same_language(a, b)
    n = b.size
    if n == 1:
        return True
    missing = ~np.eye(n, dtype=bool)
    for hom in iter_homs(b, a, False, limits):
        m = np.array(hom.map)
        missing &= m[:, None] == m[None, :]
        if not missing.any():
            return True
    return False


def discriminates(a: FiniteAlgebra, b: FiniteAlgebra, limits: Limits = DEFAULT_LIMITS):
    """For finite ``b`` this is the existence of an embedding b -> a."""
    return find_embedding(b, a, False, limits) is not None


def witness_term(closure: Closure, e: int, generator_terms: Sequence, _cache=None):
    """Term recorded for element ``e`` of a closure (seed i -> generator_terms[i])."""
    cache = {} if _cache is None else _cache
    if e in cache:
        return cache[e]
    wit = closure.witnesses[e]
    if wit[0] == "seed":
        t = generator_terms[wit[1]]
    elif wit[0] == "const":
        t = App(wit[1])
    else:
        t = App(wit[1], tuple(witness_term(closure, a, generator_terms, cache) for a in wit[2]))
    cache[e] = t
    return t


def algebra_from_callable(language, size, fn: Callable, name="A"):
    """Convenience: ``fn(symbol, *args)`` gives every table entry."""
    return FiniteAlgebra.from_functions(
        language, size, {s: (fn(s) if a == 0 else (lambda *xs, s=s: fn(s, *xs))) for s, a in language}, name=name
    )
