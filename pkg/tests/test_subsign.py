import pytest
from hypothesis import given, strategies as st

from gnoop import fixtures
from gnoop.denote import enumerate_ground_names
from gnoop.parser import parse_env, parse_type_name
from gnoop.subsign import gss, subsigns, supersignatures, valid_ground_name, validate_env_usage
from gnoop.syntax import App, ConstructorEnvironment, GenericObjectSignature, app

from conftest import envs

INT, BOOL, OBJ = App("Int"), App("Bool"), App("Object")


def gos(text, env):
    return GenericObjectSignature(parse_type_name(text, env), env)


def test_gss_javac(javac_top):
    assert gss(javac_top, app("C", INT)) == {app("B", INT), app("A", app("C", INT)), OBJ}


def test_gss_pair(pair):
    assert gss(pair, app("Pair", INT, BOOL)) == {OBJ}
    assert gss(pair, OBJ) == frozenset()


def test_gss_of_top_is_empty_everywhere():
    for env in fixtures.well_formed().values():
        if "Object" in env:
            assert gss(env, OBJ) == frozenset()


def test_subsigns_with_chain(javac_top):
    v = subsigns(gos("C<Int>", javac_top), gos("A<C<Int>>", javac_top))
    assert v.holds
    assert v.chain == (app("C", INT), app("B", INT), app("A", app("C", INT)))


def test_subsigns_reflexive_and_invariant(pair):
    assert subsigns(gos("Pair<Int,Bool>", pair), gos("Pair<Int,Bool>", pair))
    assert not subsigns(gos("Pair<Int,Bool>", pair), gos("Pair<Bool,Int>", pair))


def test_subsigns_wrong_direction(javac_top):
    assert not subsigns(gos("A<C<Int>>", javac_top), gos("C<Int>", javac_top))
    assert not subsigns(gos("A<Int>", javac_top), gos("A<C<Int>>", javac_top))


def test_subsigns_needs_extending_env(pair):
    small = ConstructorEnvironment.of([pair["Object"], pair["Int"]])
    assert subsigns(GenericObjectSignature(INT, pair), GenericObjectSignature(OBJ, small))
    assert not subsigns(GenericObjectSignature(INT, small), GenericObjectSignature(OBJ, pair))


def test_enum_validity(enum_env):
    report = valid_ground_name(enum_env, app("Enum", OBJ))
    assert report.codes == ["E210"]
    assert valid_ground_name(enum_env, app("Enum", App("MyEnum"))).ok


def test_unbounded_always_valid(pair):
    assert valid_ground_name(pair, app("Pair", INT, BOOL)).ok


def test_nested_violation_reported_innermost_first(enum_env):
    env = parse_env(fixtures.ENUM + "constructor Box<T extends Enum<T>> extends { Object } {}")
    report = valid_ground_name(env, app("Box", app("Enum", OBJ)))
    assert report.codes == ["E210", "E210"]
    assert "Enum<Object> (Object)" in report.diagnostics[0].message


def test_usage_is_checked_at_occurrence():
    env = parse_env(fixtures.ENUM + "constructor Holder<> extends { Object } {\n  field e: Enum<Object>;\n}")
    report = validate_env_usage(env)
    assert report.codes == ["E210"]
    assert report.diagnostics[0].span.line == fixtures.ENUM.count("\n") + 2


@pytest.mark.parametrize("name", ["pair", "javac", "enum"])
def test_fixture_usage_valid(name):
    assert validate_env_usage(fixtures.well_formed()[name]).ok




@given(envs(), st.data())
def test_subsign_order_laws(env, data):
    names = enumerate_ground_names(env, 1).names
    a, b, c = (data.draw(st.sampled_from(names)) for _ in range(3))
    G = lambda g: GenericObjectSignature(g, env)  # noqa: E731
    assert subsigns(G(a), G(a))
    if subsigns(G(a), G(b)) and subsigns(G(b), G(c)):
        assert subsigns(G(a), G(c))
    if subsigns(G(a), G(b)) and subsigns(G(b), G(a)):
        assert a == b
    assert (b in supersignatures(env, a)) == subsigns(G(a), G(b)).holds


@given(envs())
def test_chain_steps_are_direct(env):
    from gnoop.subst import direct_supers

    for g in enumerate_ground_names(env, 1).names:
        for h in gss(env, g):
            chain = subsigns(GenericObjectSignature(g, env), GenericObjectSignature(h, env)).chain
            assert chain[0] == g and chain[-1] == h
            for x, y in zip(chain, chain[1:]):
                assert y in direct_supers(env, x)
