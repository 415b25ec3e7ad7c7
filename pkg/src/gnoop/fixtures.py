"""Reference environments used by the tests, the acceptance suite and the CLI samples."""

from __future__ import annotations

from gnoop.erasure import inject_top
from gnoop.parser import parse_env
from gnoop.syntax import ConstructorEnvironment

PAIR = """\
// Object, two base types, a list and a pair.
constructor Object<> extends {} {}
constructor Int<> extends { Object } {}
constructor Bool<> extends { Object } {}
constructor List<T> extends { Object } {
  method head(): T;
  method cons(T): List<T>;
}
constructor Pair<A,B> extends { Object } {
  field fst: A;
  field snd: B;
  method swap(): Pair<B,A>;
}
"""

# The three-constructor slice used for the small enumeration examples.
MINI_PAIR = """\
constructor Object<> extends {} {}
constructor Int<> extends { Object } {}
constructor Pair<A,B> extends { Object } {
  field fst: A;
  field snd: B;
  method swap(): Pair<B,A>;
}
"""

JAVAC = """\
// Accepted by a correct checker; C<T> occurs inside the supersignature of B<T>.
constructor A<T> extends {} {}
constructor B<T> extends { A<C<T>> } {}
constructor C<T> extends { B<T> } {}
"""

# JAVAC plus a zeroary argument type; meant to be used with inject_top.
JAVAC_INT = JAVAC + "constructor Int<> extends {} {}\n"

ENUM = """\
constructor Object<> extends {} {}
constructor Int<> extends { Object } {}
constructor Enum<E extends Enum<E>> extends { Object } {
  method compareTo(E): Int;
}
constructor MyEnum<> extends { Enum<MyEnum> } {
  method compareTo(MyEnum): Int;
}
"""

EXPANSIVE = """\
constructor Int<> extends {} {}
constructor C<T> extends {} {
  method m(): C<C<T>>;
}
"""

# Member matching deliberately violated: S inherits head(): Int but declares head(): Bool.
BROKEN = """\
constructor Object<> extends {} {}
constructor Int<> extends { Object } {}
constructor Bool<> extends { Object } {}
constructor List<T> extends { Object } {
  method head(): T;
}
constructor S<> extends { List<Int> } {
  method head(): Bool;
}
"""

SOURCES = {
    "pair": PAIR,
    "mini_pair": MINI_PAIR,
    "javac": JAVAC,
    "javac_int": JAVAC_INT,
    "enum": ENUM,
    "expansive": EXPANSIVE,
    "broken": BROKEN,
}


def pair() -> ConstructorEnvironment:
    return parse_env(PAIR)


def mini_pair() -> ConstructorEnvironment:
    return parse_env(MINI_PAIR)


def javac() -> ConstructorEnvironment:
    return parse_env(JAVAC)


def javac_top() -> ConstructorEnvironment:
    """The javac triple with ``Int`` and an injected ``Object`` top."""
    return inject_top(parse_env(JAVAC_INT))


def enum() -> ConstructorEnvironment:
    return parse_env(ENUM)


def expansive() -> ConstructorEnvironment:
    return parse_env(EXPANSIVE)


def broken() -> ConstructorEnvironment:
    return parse_env(BROKEN)


def well_formed() -> dict[str, ConstructorEnvironment]:
    """Every fixture that passes the checker, keyed by name."""
    return {
        "pair": pair(),
        "mini_pair": mini_pair(),
        "javac": javac(),
        "javac_top": javac_top(),
        "enum": enum(),
        "expansive": expansive(),
    }
