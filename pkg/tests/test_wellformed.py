import pytest

from gnoop import fixtures
from gnoop.parser import parse_env
from gnoop.syntax import App, ConstructorEnvironment, SignatureConstructor, Var, alpha_canonicalize
from gnoop.wellformed import (
    check_member_inheritance,
    sce_extends,
    topological_order,
    wf_constructor,
    wf_env,
    wf_type_name,
)

INT, BOOL = App("Int"), App("Bool")


def with_pair(extra):
    return parse_env(fixtures.PAIR + extra)


def test_wf_type_name(pair):
    assert wf_type_name(App("Pair", (INT, BOOL)), pair).ok
    assert wf_type_name(App("Pair", (INT,)), pair).codes == ["E101"]
    assert wf_type_name(Var("T"), pair).codes == ["E102"]
    assert wf_type_name(Var("T"), pair, {"T"}).ok
    assert wf_type_name(App("Nope"), pair).codes == ["E100"]


def test_wf_constructor_pair(pair):
    assert wf_constructor(pair["Pair"], pair).ok


def test_naked_super_is_e110():
    env = with_pair("constructor D<T> extends { T } {}")
    assert "E110" in wf_constructor(env["D"], env).codes


def test_naked_bound_is_e105():
    env = with_pair("constructor D<T, U extends T> extends { Object } {}")
    assert "E105" in wf_env(env).codes


def test_head_mismatch_is_e121():
    env = with_pair("constructor S<T> extends { List<T> } { method head(): Int; method cons(T): List<T>; }")
    assert wf_constructor(env["S"], env).codes == ["E121"]


@pytest.mark.parametrize(
    "decl",
    [
        "constructor S<T> extends { List<T> } { method head(): T; method cons(T): List<T>; }",
        "constructor S<T> extends { List<Int> } { method head(): Int; method cons(Int): List<Int>; }",
    ],
)
def test_member_inheritance_ok(decl):
    env = with_pair(decl)
    assert check_member_inheritance(env["S"], env).ok


def test_missing_members_are_e120():
    env = with_pair("constructor S<T> extends { List<T> } { }")
    report = check_member_inheritance(env["S"], env)
    assert report.codes == ["E120", "E120"]
    text = " ".join(d.message for d in report.diagnostics)
    assert "head" in text and "cons" in text


def test_method_vars_match_up_to_renaming():
    src = """
    constructor Object<> extends {} {}
    constructor F<> extends { Object } { method id<X>(X): X; }
    constructor G<> extends { F } { method id<Y>(Y): Y; }
    """
    assert wf_env(parse_env(src)).ok


def test_inherited_members_are_transitive():
    src = """
    constructor Object<> extends {} {}
    constructor Int<> extends { Object } {}
    constructor A<T> extends { Object } { field a: T; }
    constructor B<U> extends { A<U> } { field a: U; }
    constructor C<> extends { B<Int> } { }
    """
    assert wf_env(parse_env(src)).codes == ["E120"]


def test_scope_errors():
    env = with_pair("constructor D<T> extends { Object } { field x: U; method m<X>(X): List<X,X>; }")
    assert sorted(wf_env(env).codes) == ["E101", "E102"]


def test_method_var_shadowing_class_var():
    env = with_pair("constructor D<T> extends { Object } { method m<T>(T): T; }")
    assert wf_env(env).codes == ["E104"]


def test_duplicate_labels():
    env = with_pair("constructor D<> extends { Object } { field x: Int; field x: Bool; }")
    assert wf_env(env).codes == ["E103"]


def test_fixtures_are_well_formed():
    for name, env in fixtures.well_formed().items():
        assert wf_env(env).ok, name


def test_broken_fixture():
    assert wf_env(fixtures.broken()).codes == ["E121"]


def test_javac_is_acyclic(javac):
    assert wf_env(javac).ok
    assert topological_order(javac) == ["A", "B", "C"]


def test_cycle_is_e130():
    env = parse_env("constructor P<T> extends { Q<T> } {}\nconstructor Q<T> extends { P<T> } {}")
    report = wf_env(env)
    assert report.codes == ["E130"]
    assert "P -> Q -> P" in report.diagnostics[0].message


def test_self_cycle():
    env = parse_env("constructor P<T> extends { P<P<T>> } {}")
    assert wf_env(env).codes == ["E130"]


def test_diagnostics_are_located():
    env = with_pair("\nconstructor D<T> extends { Object } {\n  field x: U;\n}")
    (d,) = wf_env(env).diagnostics
    assert d.span is not None and (d.span.line, d.span.column) == (fixtures.PAIR.count("\n") + 3, 3)


def test_sce_extends(pair):
    small = ConstructorEnvironment.of([pair["Object"], pair["Int"]])
    assert sce_extends(pair, small)
    assert sce_extends(pair, pair)
    assert not sce_extends(small, pair)
    renamed = parse_env("constructor Object<> extends {} {}\nconstructor List<U> extends { Object } { method head(): U; method cons(U): List<U>; }")
    assert sce_extends(pair, renamed)
    different = ConstructorEnvironment.of([SignatureConstructor("Int", supers=())])
    assert not sce_extends(pair, different)


def test_canonical_env_still_well_formed(pair):
    canon = ConstructorEnvironment.of(alpha_canonicalize(sc) for sc in pair.constructors())
    assert wf_env(canon).ok
