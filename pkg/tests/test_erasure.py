import pytest
from hypothesis import given, strategies as st

from gnoop import fixtures
from gnoop.denote import enumerate_ground_names
from gnoop.diagnostics import GnoopError
from gnoop.erasure import (
    ErasureConfig,
    check_erasure_theorem,
    erase_env,
    erase_env_by_instantiation,
    erase_gos,
    erase_ground_signature,
    erase_name,
    erasure_mismatches,
    inject_top,
    is_non_generic,
)
from gnoop.generate import unbounded
from gnoop.parser import parse_env, parse_type_name
from gnoop.subsign import subsigns
from gnoop.subst import ground_of
from gnoop.syntax import App, GenericObjectSignature, app
from gnoop.wellformed import wf_env

from conftest import envs

INT, BOOL, OBJ = App("Int"), App("Bool"), App("Object")


def gos(text, env):
    return GenericObjectSignature(parse_type_name(text, env), env)


def test_erase_name():
    assert erase_name(app("Pair", app("Pair", INT, BOOL), INT)) == App("Pair")
    assert erase_name(INT) == INT
    assert erase_name(app("List", app("List", INT))) == App("List")


def test_erase_ground_signature(pair, javac_top):
    e = erase_ground_signature(ground_of(gos("Pair<Int,Bool>", pair), relaxed=True))
    assert e.name == App("Pair") and e.supers == (OBJ,)
    assert [f.ty for f in e.fields] == [INT, BOOL]
    assert e.methods[0].ret == App("Pair")
    gi = ground_of(gos("Int", pair))
    assert erase_ground_signature(gi) == gi
    ec = erase_ground_signature(ground_of(gos("C<Int>", javac_top)))
    assert (ec.name, ec.supers) == (App("C"), (App("B"),))


def test_erase_env_pair(pair):
    e = erase_env(pair)
    assert is_non_generic(e)
    lst, pr = e["List"], e["Pair"]
    assert [(m.label, m.params, m.ret) for m in lst.methods] == [("head", (), OBJ), ("cons", (OBJ,), App("List"))]
    assert [f.ty for f in pr.fields] == [OBJ, OBJ]
    assert pr.methods[0].ret == App("Pair")


def test_erase_env_javac(javac_top):
    e = erase_env(javac_top)
    assert e["B"].supers == (App("A"),)
    assert e["C"].supers == (App("B"),)


def test_bound_aware_enum(enum_env):
    assert erase_env(enum_env)["Enum"].methods[0].params == (App("Enum"),)
    top_only = erase_env(enum_env, ErasureConfig(bound_aware=False))
    assert top_only["Enum"].methods[0].params == (OBJ,)


def test_erase_gos(pair, javac_top):
    for text, env, expect in [("Pair<Int,Bool>", pair, "Pair"), ("Int", pair, "Int"), ("C<Int>", javac_top, "C")]:
        e = erase_gos(gos(text, env))
        assert e.name == App(expect)
        assert e.env == erase_env(env)


def test_missing_top_is_e220(javac):
    with pytest.raises(GnoopError) as exc:
        erase_env(javac)
    assert exc.value.code == "E220"
    no_top = parse_env(fixtures.JAVAC_INT)
    assert check_erasure_theorem(GenericObjectSignature(INT, no_top)).codes == ["E220"]


def test_unsuitable_top_is_e220(pair):
    with pytest.raises(GnoopError) as exc:
        erase_env(pair, ErasureConfig(top="Pair"))
    assert exc.value.code == "E220"


def test_inject_top(javac):
    env = inject_top(javac)
    assert env.names()[0] == "Object"
    assert env["A"].supers == (OBJ,)
    assert env["B"].supers == javac["B"].supers
    assert wf_env(env).ok
    assert inject_top(env) == env


@pytest.mark.parametrize("text", ["Pair<Int,Bool>", "List<Pair<Int,Int>>", "Int"])
def test_erasure_theorem_pair(pair, text):
    assert check_erasure_theorem(gos(text, pair)).ok


def test_erasure_theorem_javac(javac_top):
    assert check_erasure_theorem(gos("C<Int>", javac_top)).ok


def test_erasure_theorem_gap_on_fixed_super_argument():
    # S fixes List's argument, so S's head(): Int no longer matches the erased List's head(): Object.
    env = parse_env(fixtures.PAIR + "constructor S<T> extends { List<Int> } {\n  method head(): Int;\n  method cons(Int): List<Int>;\n}\n")
    assert wf_env(env).ok
    report = check_erasure_theorem(gos("S<Int>", env))
    assert report.codes == ["E299"]
    assert "E121" in report.diagnostics[0].message


def test_erasure_non_injective(pair):
    a, b = gos("Pair<Int,Int>", pair), gos("Pair<Int,Bool>", pair)
    assert a.name != b.name
    assert erase_gos(a) == erase_gos(b)


@pytest.mark.parametrize("name", ["pair", "javac_top", "enum"])
def test_erase_env_idempotent(name):
    env = fixtures.well_formed()[name]
    once = erase_env(env)
    assert erase_env(once) == once
    for g in enumerate_ground_names(once, 0).names:
        assert erase_name(g) == g


@pytest.mark.parametrize("name", ["pair", "javac_top", "enum"])
def test_subsigning_preserved_by_erasure(name):
    env = fixtures.well_formed()[name]
    names = enumerate_ground_names(env, 2).names
    for g1 in names:
        for g2 in names:
            if subsigns(GenericObjectSignature(g1, env), GenericObjectSignature(g2, env)):
                assert subsigns(erase_gos(GenericObjectSignature(g1, env)), erase_gos(GenericObjectSignature(g2, env)))


def test_formulations_agree_without_bounds(pair, javac_top):
    for env in (pair, javac_top):
        assert erase_env(env) == erase_env_by_instantiation(env)


def test_formulations_differ_with_bounds(enum_env):
    assert erase_env(enum_env) != erase_env_by_instantiation(enum_env)
    assert erase_env(enum_env, ErasureConfig(bound_aware=False)) == erase_env_by_instantiation(enum_env)


@given(envs())
def test_generated_formulations_agree_without_bounds(env):
    flat = unbounded(env)
    assert erase_env(flat) == erase_env_by_instantiation(flat)


@given(envs(), st.data())
def test_generated_erasure_preserves_subsigning(env, data):
    names = enumerate_ground_names(env, 1).names
    g1, g2 = data.draw(st.sampled_from(names)), data.draw(st.sampled_from(names))
    a, b = GenericObjectSignature(g1, env), GenericObjectSignature(g2, env)
    if subsigns(a, b):
        assert subsigns(erase_gos(a), erase_gos(b))
    assert is_non_generic(erase_env(env))
    assert erase_env(erase_env(env)) == erase_env(env)


def test_erasure_mismatches_locate_the_gap(pair, enum_env, javac_top):
    env = parse_env(fixtures.PAIR + "constructor S<T> extends { List<Int> } {\n  method head(): Int;\n  method cons(Int): List<Int>;\n}\n")
    assert erasure_mismatches(env) == [("S", app("List", INT), 0)]
    assert erasure_mismatches(enum_env) == [("MyEnum", app("Enum", App("MyEnum")), 0)]
    assert erasure_mismatches(pair) == []
    # A<C<T>> erases C<T> to C where A's parameter erases to Object
    assert erasure_mismatches(javac_top) == [("B", app("A", app("C", parse_type_name("T", javac_top, {"T"}))), 0)]


@given(envs())
def test_theorem_holds_without_mismatches(env):
    if erasure_mismatches(env):
        return
    for g in enumerate_ground_names(env, 2).names:
        assert check_erasure_theorem(GenericObjectSignature(g, env)).ok
