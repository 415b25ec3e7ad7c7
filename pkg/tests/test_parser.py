import pytest
from hypothesis import given

from gnoop import fixtures
from gnoop.diagnostics import GnoopError
from gnoop.parser import parse_env, parse_type_name, render, render_type, tokenize
from gnoop.syntax import App, Var, app

from conftest import envs

INT, BOOL = App("Int"), App("Bool")


def test_javac_triple_parses():
    env = parse_env(
        "constructor A<T> extends {} {} \n constructor B<T> extends { A<C<T>> } {} \n constructor C<T> extends { B<T> } {}"
    )
    assert env.names() == ["A", "B", "C"]
    # forward reference to C resolves to an application, T to the variable
    assert env["B"].supers == (app("A", app("C", Var("T"))),)


def test_zeroary():
    env = parse_env("constructor Int<> extends {} {}")
    assert len(env) == 1 and env["Int"].arity == 0


def test_duplicate_tvar_is_e002():
    with pytest.raises(GnoopError) as exc:
        parse_env("constructor P<T,T> extends {} {}")
    assert exc.value.codes == ["E002"]


def test_duplicate_constructor_is_e001():
    with pytest.raises(GnoopError) as exc:
        parse_env("constructor Int<> extends {} {}\nconstructor Int<> extends {} {}")
    assert exc.value.code == "E001"
    assert exc.value.diagnostics[0].span.line == 2


@pytest.mark.parametrize(
    "source, line, column",
    [
        ("constructor A<T> extends {", 1, 27),
        ("constructor A<T> {}", 1, 18),
        ("constructor A<> extends {} { field x Int; }", 1, 38),
        ("constructor A<> extends {} {}\n  $", 2, 3),
    ],
)
def test_syntax_errors_are_located(source, line, column):
    with pytest.raises(GnoopError) as exc:
        parse_env(source)
    d = exc.value.diagnostics[0]
    assert d.code == "E000"
    assert (d.span.line, d.span.column) == (line, column)


def test_comments_and_whitespace():
    env = parse_env("// leading\nconstructor Int<> extends {} {} // trailing\n\n")
    assert env.names() == ["Int"]


def test_parse_type_name(pair):
    assert parse_type_name("Pair<Int,Bool>", pair) == App("Pair", (INT, BOOL))
    assert parse_type_name("Int", pair) == INT
    assert parse_type_name("Q", pair) == Var("Q")
    assert parse_type_name("Int", pair, scope={"Int"}) == Var("Int")


def test_parse_type_name_rejects_trailing_input(pair):
    with pytest.raises(GnoopError):
        parse_type_name("Int Int", pair)


def test_render_type():
    assert render_type(App("Pair", (INT, Var("B")))) == "Pair<Int,B>"
    assert render_type(INT) == "Int"
    assert render_type(INT, scope={"Int"}) == "Int<>"


def test_render_constructor(pair):
    assert render(pair["Pair"]) == (
        "constructor Pair<A,B> extends { Object } {\n"
        "  field fst: A;\n"
        "  field snd: B;\n"
        "  method swap(): Pair<B,A>;\n"
        "}"
    )
    assert render(pair["Object"]) == "constructor Object<> extends {} {}"


def test_bounds_and_method_vars_render():
    src = fixtures.ENUM + "constructor Box<T> extends { Object } {\n  method map<U extends Enum<U>>(U): Box<U>;\n}\n"
    env = parse_env(src)
    assert "E extends Enum<E>" in render(env["Enum"])
    assert "map<U extends Enum<U>>(U): Box<U>" in render(env["Box"])
    assert parse_env(render(env)) == env


def test_sibling_variable_in_bound():
    env = parse_env("constructor Object<> extends {} {}\nconstructor K<A extends Object, B extends K<A,B>> extends { Object } {}")
    assert env["K"].tvars[1].bound == app("K", Var("A"), Var("B"))


def test_shadowed_constructor_round_trips():
    # a variable named like a constructor: the zeroary application needs explicit brackets
    src = "constructor Int<> extends {} {}\nconstructor Box<Int> extends {} {\n  field a: Int;\n  field b: Int<>;\n}\n"
    env = parse_env(src)
    assert [f.ty for f in env["Box"].fields] == [Var("Int"), INT]
    assert parse_env(render(env)) == env


@pytest.mark.parametrize("name", sorted(fixtures.SOURCES))
def test_fixture_round_trip(name):
    env = parse_env(fixtures.SOURCES[name])
    assert parse_env(render(env)) == env
    assert render(parse_env(render(env))) == render(env)


@given(envs())
def test_generated_round_trip(env):
    assert parse_env(render(env)) == env


def test_tokens_carry_positions():
    toks = tokenize("constructor\n  Int")
    assert [(t.line, t.column) for t in toks[:2]] == [(1, 1), (2, 3)]
