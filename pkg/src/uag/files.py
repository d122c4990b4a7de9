"""Reading and writing algebra, system and formula files."""
from __future__ import annotations

import itertools
from pathlib import Path

import numpy as np

from .errors import DuplicateSymbol, InputError, ParseError
from .finalg import DTYPE, FiniteAlgebra, build_builtin
from .terms import Language, parse_language, parse_system


def parse_algebra(text: str) -> FiniteAlgebra:
    """Line-oriented algebra format.

    ``algebra NAME``, ``language: op mul/2; const e``, ``carrier: K``, optional
    ``labels: l0 l1 ...``, then ``table SYM: v0 v1 ...`` (leftmost argument most
    significant) and ``const SYM = E`` lines.  Values may be indices or labels.
    """
    name, language, size, labels = "A", None, None, None
    raw_tables, consts = {}, {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if line.startswith("algebra"):
            name = rest.strip() or name
        elif line.startswith("language:"):
            language = parse_language(line[len("language:"):], lineno)
        elif line.startswith("carrier:"):
            try:
                size = int(line[len("carrier:"):])
            except ValueError:
                raise ParseError("carrier size must be an integer", lineno, 1) from None
        elif line.startswith("labels:"):
            labels = line[len("labels:"):].split()
        elif head == "table":
            sym, colon, values = rest.partition(":")
            if not colon:
                raise ParseError("expected 'table SYM: values'", lineno, 1)
            sym = sym.strip()
            if sym in raw_tables or sym in consts:
                raise DuplicateSymbol(f"second table for {sym!r}", lineno, 1)
            raw_tables[sym] = (values.split(), lineno)
        elif head == "const":
            sym, eq, value = rest.partition("=")
            if not eq:
                raise ParseError("expected 'const SYM = E'", lineno, 1)
            sym = sym.strip()
            if sym in raw_tables or sym in consts:
                raise DuplicateSymbol(f"second value for {sym!r}", lineno, 1)
            consts[sym] = (value.strip(), lineno)
        else:
            raise ParseError(f"unknown line {line!r}", lineno, 1)
    if language is None or size is None:
        raise InputError("algebra file needs 'language:' and 'carrier:' lines")
    if labels is not None and len(labels) != size:
        raise InputError(f"{len(labels)} labels for a carrier of size {size}")

    def value(text, lineno):
        if labels and text in labels:
            return labels.index(text)
        try:
            return int(text)
        except ValueError:
            raise ParseError(f"unknown element {text!r}", lineno, 1) from None

    tables = {}
    for sym, arity in language:
        if arity == 0:
            if sym in raw_tables:
                vals, lineno = raw_tables[sym]
                if len(vals) != 1:
                    raise ParseError(f"constant {sym!r} needs one value", lineno, 1)
                consts[sym] = (vals[0], lineno)
            if sym not in consts:
                raise InputError(f"no value for constant {sym!r}")
            tables[sym] = np.array(value(*consts[sym]), dtype=DTYPE)
        else:
            if sym not in raw_tables:
                raise InputError(f"no table for {sym!r}")
            vals, lineno = raw_tables[sym]
            if len(vals) != size ** arity:
                raise ParseError(f"table {sym!r} has {len(vals)} entries, expected {size ** arity}", lineno, 1)
            tables[sym] = np.array([value(v, lineno) for v in vals], dtype=DTYPE).reshape((size,) * arity)
    unknown = (set(raw_tables) | set(consts)) - {s for s, _ in language}
    if unknown:
        raise InputError(f"values for undeclared symbols {sorted(unknown)}")
    return FiniteAlgebra(language, size, tables, labels, name)


def format_algebra(algebra: FiniteAlgebra) -> str:
    lines = [f"algebra {algebra.name}", f"language: {algebra.language.to_text()}", f"carrier: {algebra.size}"]
    if algebra.labels:
        lines.append("labels: " + " ".join(algebra.labels))
    for sym, arity in algebra.language:
        t = algebra.tables[sym]
        if arity == 0:
            lines.append(f"const {sym} = {algebra.label(int(t[()]))}")
        else:
            lines.append(f"table {sym}: " + " ".join(algebra.label(int(v)) for v in t.reshape(-1)))
    return "\n".join(lines) + "\n"


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_algebra(spec: str) -> FiniteAlgebra:
    """A file path, or ``builtin:KIND:P1[:P2][:one]`` such as ``builtin:RBnm:2:2``."""
    if spec.startswith("builtin:"):
        parts = spec.split(":")[1:]
        with_one = parts[-1] == "one"
        if with_one:
            parts = parts[:-1]
        try:
            params = [int(p) for p in parts[1:]]
        except ValueError:
            raise InputError(f"bad builtin parameters in {spec!r}") from None
        return build_builtin(parts[0], *params, with_one=with_one)
    return parse_algebra(_read(spec))


def load_system(path, language: Language = None):
    return parse_system(_read(path), language)


def load_formulas(path, language):
    from .formulas import parse_formula_file

    return parse_formula_file(_read(path), language)


def parse_points(text, algebra: FiniteAlgebra, dim=None):
    """``a0,a1; a1,a1`` (labels or indices); empty text is the empty set."""
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip().strip("()")
        if not chunk:
            continue
        points.append(tuple(algebra.element(x.strip()) for x in chunk.split(",")))
    dims = {len(p) for p in points} | ({dim} if dim is not None else set())
    if len(dims) > 1:
        raise InputError("points of different dimensions")
    return points


def all_points(algebra, n):
    return list(itertools.product(range(algebra.size), repeat=n))
