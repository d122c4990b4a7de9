import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import compile_term, random_term
from uag.errors import LanguageMismatch
from uag.finalg import (
    FiniteAlgebra,
    SEMIGROUP_LANGUAGE,
    chain_semilattice,
    cyclic_group,
    left_zero,
    rectangular_band,
)
from uag.normalize import Variety, equivalent_over, normalize, normalize_equation, to_term
from uag.terms import App, Equation, Language, Var, parse_term, render

GROUP = Language.of(mul=2, inv=1, one=0)
ABELIAN = Language.of(add=2, neg=1, zero=0)
UNAR = Language.of(f=1)
VARS = ("x", "y", "z")


def s3():
    """Symmetric group on three points in the mul/inv/one language."""
    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}

    def compose(a, b):
        return idx[tuple(perms[a][perms[b][i]] for i in range(3))]

    def inverse(a):
        p = perms[a]
        inv = [0] * 3
        for i, j in enumerate(p):
            inv[j] = i
        return idx[tuple(inv)]

    return FiniteAlgebra.from_functions(GROUP, 6, {"mul": compose, "inv": inverse, "one": idx[(0, 1, 2)]}, name="S3")


def free_band_quotients():
    # a few bands that are not normal bands, to exercise the free-band form
    return [chain_semilattice(3), left_zero(3), rectangular_band(2, 3), _left_regular_band()]


def _left_regular_band():
    # subsets of {a,b} as words modulo left-regular identities: table of the free left regular band on 2 letters
    words = ["a", "b", "ab", "ba"]

    def mul(i, j):
        seen = []
        for c in words[i] + words[j]:
            if c not in seen:
                seen.append(c)
        return words.index("".join(seen))

    return FiniteAlgebra.from_functions(SEMIGROUP_LANGUAGE, 4, {"mul": mul}, name="LRB2")


def agree(t, s, algebra, n_vars=3):
    ft, fs = compile_term(t, algebra, VARS), compile_term(s, algebra, VARS)
    return all(ft(p) == fs(p) for p in itertools.product(range(algebra.size), repeat=n_vars))


def test_examples():
    g = parse_term("(x*x^-1)*y", GROUP, VARS)
    assert to_term(normalize(g, Variety.GROUP)) == Var("y")
    assert normalize(parse_term("x2*x1*x2", SEMIGROUP_LANGUAGE, ["x1", "x2"]), Variety.SEMILATTICE).data == ("x1", "x2")
    t = parse_term("x1*x2*x3", SEMIGROUP_LANGUAGE, ["x1", "x2", "x3"])
    assert normalize(t, Variety.RECTANGULAR_BAND).data == ("x1", "x3")
    assert equivalent_over(t, Var("x1"), Variety.LEFT_ZERO)
    assert equivalent_over(parse_term("x+x+y-y", ABELIAN, VARS), parse_term("2x", ABELIAN, VARS), Variety.ABELIAN_GROUP)
    assert not equivalent_over(parse_term("x*y", SEMIGROUP_LANGUAGE, VARS), parse_term("y*x", SEMIGROUP_LANGUAGE, VARS), Variety.SEMIGROUP)


def test_shape_is_enforced():
    with pytest.raises(LanguageMismatch):
        normalize(App("add", (Var("x"), Var("y"))), Variety.SEMIGROUP)


def test_equation_level_forms():
    cm = Language.of(add=2, zero=0, one=0)
    eq = Equation(parse_term("2x + y + 1", cm, VARS), parse_term("x + 3y", cm, VARS))
    lhs, rhs = normalize_equation(eq, Variety.COMMUTATIVE_MONOID, VARS)
    assert dict(lhs.data) == {"x": 1, App("one"): 1}
    assert dict(rhs.data) == {"y": 2}
    ueq = Equation(parse_term("f(f(f(x)))", UNAR, VARS), parse_term("f(y)", UNAR, VARS))
    lhs, rhs = normalize_equation(ueq, Variety.UNAR, VARS, injective=True)
    assert (lhs.data, rhs.data) == ((2, "x"), (0, "y"))
    lhs, rhs = normalize_equation(ueq, Variety.UNAR, VARS)
    assert (lhs.data, rhs.data) == ((3, "x"), (1, "y"))
    ab = Equation(parse_term("x + y", ABELIAN, VARS), parse_term("2y", ABELIAN, VARS))
    lhs, rhs = normalize_equation(ab, Variety.ABELIAN_GROUP, VARS)
    assert lhs.data == (("x", 1), ("y", -1)) and rhs.data == ()


def test_band_normal_form_small_cases():
    bnf = lambda s: normalize(parse_term(s, SEMIGROUP_LANGUAGE, VARS), Variety.IDEMPOTENT_SEMIGROUP)
    assert bnf("x*x") == bnf("x")
    assert bnf("x*y*x*y") == bnf("x*y")
    assert bnf("x*y*x") != bnf("x*y")
    assert bnf("x*y*z*x*z") != bnf("x*z")
    # xyzx . yz collapses in the free band? its content is {x,y,z}; compare a known identity xyx.x = xyx
    assert bnf("x*y*x*x") == bnf("x*y*x")


CASES = [
    (Variety.SEMILATTICE, SEMIGROUP_LANGUAGE, [chain_semilattice(2), chain_semilattice(3)]),
    (Variety.LEFT_ZERO, SEMIGROUP_LANGUAGE, [left_zero(2), left_zero(3)]),
    (Variety.RECTANGULAR_BAND, SEMIGROUP_LANGUAGE, [rectangular_band(2, 2), left_zero(2)]),
    (Variety.IDEMPOTENT_SEMIGROUP, SEMIGROUP_LANGUAGE, free_band_quotients()),
    (Variety.SEMIGROUP, SEMIGROUP_LANGUAGE, [chain_semilattice(2), rectangular_band(2, 2), cyclic_group(3).rename({"add": "mul"}).reduct(["mul"])]),
    (Variety.GROUP, GROUP, [s3()]),
    (Variety.ABELIAN_GROUP, ABELIAN, [cyclic_group(5), cyclic_group(4)]),
]


@settings(max_examples=400, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(range(len(CASES))))
def test_soundness(seed, case):
    variety, lang, algebras = CASES[case]
    rng = random.Random(seed)
    t = random_term(rng, lang, VARS, 4)
    s = to_term(normalize(t, variety))
    for a in algebras:
        assert agree(t, s, a)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(range(3)))
def test_completeness_for_locally_finite_varieties(seed, case):
    variety, lang, _ = CASES[case]
    generators = {Variety.SEMILATTICE: chain_semilattice(2), Variety.LEFT_ZERO: left_zero(2), Variety.RECTANGULAR_BAND: rectangular_band(2, 2)}
    rng = random.Random(seed)
    t, s = random_term(rng, lang, VARS, 3), random_term(rng, lang, VARS, 3)
    same = normalize(t, variety) == normalize(s, variety)
    assert same == agree(t, s, generators[variety])


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(range(len(CASES))))
def test_idempotent_under_render_and_reparse(seed, case):
    variety, lang, _ = CASES[case]
    t = random_term(random.Random(seed), lang, VARS, 4)
    nf = normalize(t, variety, VARS)
    again = parse_term(render(to_term(nf)), lang, VARS)
    assert normalize(again, variety, VARS) == nf
