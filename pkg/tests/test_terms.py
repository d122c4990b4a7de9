import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import compile_term, random_term
from uag.errors import ArityMismatch, DuplicateSymbol, MissingBinding, ParseError, UnknownSymbol
from uag.finalg import GROUP_LANGUAGE, SEMIGROUP_LANGUAGE, chain_semilattice, cyclic_group, left_zero, ring_language
from uag.terms import (
    App,
    Language,
    Var,
    evaluate,
    iter_terms,
    parse_equation,
    parse_language,
    parse_system,
    parse_term,
    render,
    substitute,
    term_variables,
)

x, y, z = Var("x"), Var("y"), Var("z")


def mul(a, b):
    return App("mul", (a, b))


def test_parse_language_examples():
    assert parse_language("op mul/2") == Language((("mul", 2),))
    assert parse_language("op add/2; const zero") == Language((("add", 2), ("zero", 0)))
    with pytest.raises(DuplicateSymbol):
        parse_language("op f/1; op f/2")


def test_parse_system_sugar_matches_functional_form():
    s1 = parse_system("vars: x,y\neq: mul(x,y) = mul(y,x)", SEMIGROUP_LANGUAGE)
    s2 = parse_system("vars: x,y\neq: x*y = y*x", SEMIGROUP_LANGUAGE)
    assert len(s1.equations) == 1
    assert s1 == s2


def test_arity_errors_carry_position():
    lang = parse_language("op f/1")
    with pytest.raises(ArityMismatch) as info:
        parse_system("vars: x, y\neq: f(x,y)=x", lang)
    assert info.value.line == 2


def test_unknown_symbol_and_syntax_errors():
    with pytest.raises(UnknownSymbol):
        parse_term("g(x)", SEMIGROUP_LANGUAGE, ["x"])
    with pytest.raises(UnknownSymbol):
        parse_term("w", SEMIGROUP_LANGUAGE, ["x"])
    with pytest.raises(ParseError) as info:
        parse_term("x * (y", SEMIGROUP_LANGUAGE, ["x", "y"])
    assert info.value.column is not None


def test_system_file_with_language_line_and_comments():
    s = parse_system("language: op mul/2  # semigroups\nvars: x\n# nothing\neq: x*x = x\n")
    assert s.language == SEMIGROUP_LANGUAGE
    assert s.equations[0].lhs == mul(x, x)


def test_precedence_and_sugar():
    ring = ring_language(with_one=True)
    t = parse_term("x + y*z", ring, "xyz")
    assert t == App("add", (x, mul(y, z)))
    assert parse_term("x - y", ring, "xy") == App("add", (x, App("neg", (y,))))
    assert parse_term("3x", ring, "x") == App("add", (App("add", (x, x)), x))
    assert parse_term("1", ring, "x") == App("one")
    assert parse_term("x^-1", Language.of(mul=2, inv=1, one=0), "x") == App("inv", (x,))


def test_substitute_examples():
    f = Language.of(f=1, mul=2)
    assert substitute(mul(x, x), {"x": y}) == mul(y, y)
    t = App("f", (x,))
    assert substitute(t, {}) == t
    assert substitute(t, {"x": mul(y, z)}) == App("f", (mul(y, z),))
    assert f.arity("f") == 1


def test_evaluate_examples():
    assert evaluate(App("add", (x, x)), cyclic_group(3), {"x": 2}) == 1
    lz = left_zero(2)
    assert lz.label(evaluate(mul(x, y), lz, {"x": lz.element("a0"), "y": lz.element("a1")})) == "a0"
    assert evaluate(mul(x, y), chain_semilattice(2), {"x": 0, "y": 1}) == 0
    with pytest.raises(MissingBinding):
        evaluate(mul(x, y), chain_semilattice(2), {"x": 0})


def test_term_variables_first_occurrence():
    assert term_variables(mul(y, mul(x, y))) == ("y", "x")


def test_iter_terms_small():
    ts = iter_terms(SEMIGROUP_LANGUAGE, ["x"], 1)
    assert ts == [x, mul(x, x)]


LANGS = [SEMIGROUP_LANGUAGE, GROUP_LANGUAGE, ring_language(True), Language.of(mul=2, inv=1, one=0), Language.of(f=1, g=2, c=0)]


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(LANGS), st.integers(0, 4))
def test_render_parse_round_trip(seed, lang, d):
    t = random_term(random.Random(seed), lang, ("x", "y", "z"), d)
    text = render(t)
    assert parse_term(text, lang, ("x", "y", "z")) == t
    assert render(parse_term(text, lang, ("x", "y", "z"))) == text


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_substitution_composes_with_evaluation(seed):
    rng = random.Random(seed)
    a = cyclic_group(4)
    t = random_term(rng, GROUP_LANGUAGE, ("x", "y"), 3)
    sigma = {"x": random_term(rng, GROUP_LANGUAGE, ("x", "y"), 2), "y": random_term(rng, GROUP_LANGUAGE, ("x", "y"), 2)}
    p = {"x": rng.randrange(4), "y": rng.randrange(4)}
    inner = {v: evaluate(s, a, p) for v, s in sigma.items()}
    assert evaluate(substitute(t, sigma), a, p) == evaluate(t, a, inner)
    assert 0 <= evaluate(t, a, p) < 4
    assert evaluate(t, a, p) == compile_term(t, a, ("x", "y"))((p["x"], p["y"]))


def test_parse_equation_requires_single_equals():
    with pytest.raises(ParseError):
        parse_equation("x*y", SEMIGROUP_LANGUAGE, "xy")
