import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_homs, is_hom
from uag.config import Limits
from uag.errors import EmptySeedNoConstants, InputError, ResourceLimit
from uag.finalg import (
    SEMIGROUP_LANGUAGE,
    FiniteAlgebra,
    approximates,
    build_builtin,
    chain_semilattice,
    cyclic_group,
    diophantize,
    direct_product,
    discriminates,
    enumerate_homs,
    find_embedding,
    generate_subalgebra,
    is_homomorphism,
    is_isomorphic,
    left_zero,
    projection,
    rectangular_band,
    residue_ring,
    trivial_algebra,
)
from uag.geometry import solve
from uag.terms import Language, system


def test_builtins():
    z6 = build_builtin("Zn", 6)
    assert z6.size == 6 and z6.apply("add", (4, 5)) == 3
    rb = build_builtin("RBnm", 2, 2)
    assert rb.label(rb.apply("mul", (rb.element("(1,2)"), rb.element("(2,1)")))) == "(1,1)"
    l2 = build_builtin("Ln", 2)
    assert l2.tables["mul"].tolist() == [[0, 0], [0, 1]]
    assert "one" in build_builtin("Zn_ring", 3, with_one=True).language
    with pytest.raises(InputError):
        build_builtin("Ln", 0)
    with pytest.raises(InputError):
        build_builtin("Qn", 2)


def test_tables_are_checked_and_frozen():
    with pytest.raises(InputError):
        FiniteAlgebra(SEMIGROUP_LANGUAGE, 2, {"mul": [[0, 2], [0, 1]]})
    a = chain_semilattice(2)
    with pytest.raises(ValueError):
        a.tables["mul"][0, 0] = 1


def test_products_and_isomorphisms():
    assert is_isomorphic(direct_product([cyclic_group(2), cyclic_group(3)]), cyclic_group(6))
    assert is_isomorphic(direct_product([left_zero(2), left_zero(3)]), left_zero(6))
    a = rectangular_band(2, 2)
    assert is_isomorphic(direct_product([a, trivial_algebra(SEMIGROUP_LANGUAGE)]), a)
    assert not is_isomorphic(cyclic_group(4), direct_product([cyclic_group(2), cyclic_group(2)]))


def test_projections_are_homomorphisms():
    factors = [cyclic_group(2), cyclic_group(3)]
    p = direct_product(factors)
    for i in range(2):
        h = projection(p, factors, i)
        assert is_homomorphism(h.map, p, factors[i])


def test_generate_subalgebra():
    sub, inc = generate_subalgebra(cyclic_group(6), [2])
    assert sorted(inc) == [0, 2, 4]
    with pytest.raises(EmptySeedNoConstants):
        generate_subalgebra(chain_semilattice(3), [])
    a = rectangular_band(2, 2)
    full, inc = generate_subalgebra(a, range(4))
    assert sorted(inc) == [0, 1, 2, 3]
    again, inc2 = generate_subalgebra(full, range(full.size))
    assert again.same_as(full)


def test_diophantize():
    d = diophantize(chain_semilattice(2))
    assert d.language.constants == ("c0", "c1")
    assert solve(system(d.language, "x", "x = c1"), d).points == ((1,),)
    assert solve(system(d.language, "x", "c0 = c1"), d).points == ()


def test_hom_examples():
    assert len(enumerate_homs(cyclic_group(4), cyclic_group(2))) == 2
    assert [h.map for h in enumerate_homs(cyclic_group(4), cyclic_group(3))] == [(0, 0, 0, 0)]
    a = rectangular_band(2, 2)
    assert tuple(range(4)) in [h.map for h in enumerate_homs(a, a)]


def test_embedding_examples():
    assert find_embedding(left_zero(2), left_zero(3)) is not None
    h = find_embedding(cyclic_group(4), cyclic_group(8))
    assert h.map == (0, 2, 4, 6)
    assert find_embedding(cyclic_group(4), cyclic_group(6)) is None


def test_approximation_and_discrimination():
    l2, l3, l5 = chain_semilattice(2), chain_semilattice(3), chain_semilattice(5)
    assert approximates(l2, l5)
    assert not approximates(cyclic_group(2), cyclic_group(4))
    assert approximates(l3, l3)
    assert discriminates(l3, l2)
    assert not discriminates(l2, l3)
    assert discriminates(rectangular_band(2, 2), left_zero(2))


def test_node_budget_raises():
    with pytest.raises(ResourceLimit):
        enumerate_homs(left_zero(6), left_zero(6), Limits(node_budget=50))


def _random_algebra(rng, lang, k):
    tables = {}
    for sym, arity in lang:
        tables[sym] = np.array([rng.randrange(k) for _ in range(k ** arity)]).reshape((k,) * arity)
    return FiniteAlgebra(lang, k, tables)


SMALL = [chain_semilattice(2), left_zero(2), rectangular_band(2, 2), cyclic_group(2), cyclic_group(3), cyclic_group(4), residue_ring(2)]


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_homs_match_brute_force_on_random_algebras(seed):
    rng = random.Random(seed)
    lang = rng.choice([SEMIGROUP_LANGUAGE, Language.of(f=1, c=0), Language.of(mul=2, e=0)])
    src = _random_algebra(rng, lang, rng.randint(1, 3))
    tgt = _random_algebra(rng, lang, rng.randint(1, 3))
    got = [h.map for h in enumerate_homs(src, tgt)]
    assert got == brute_homs(src, tgt)
    assert all(is_hom(m, src, tgt) for m in got)
    emb = find_embedding(src, tgt)
    inj = [m for m in got if len(set(m)) == len(m)]
    assert (emb.map if emb else None) == (inj[0] if inj else None)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(range(len(SMALL))), st.sampled_from(range(len(SMALL))))
def test_discrimination_implies_approximation(i, j):
    a, b = SMALL[i], SMALL[j]
    if a.language != b.language:
        return
    if discriminates(a, b):
        assert approximates(a, b)
