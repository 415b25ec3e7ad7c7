"""Core terms of the generic nominal signature calculus.

Type names are either type-variable leaves (:class:`Var`) or constructor
applications (:class:`App`).  Zeroary applications stand for non-generic
names.  All values are immutable; source spans are carried for diagnostics
but never take part in equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Iterator, Mapping, Optional, Union

from gnoop.diagnostics import SourceSpan

CLASS_VAR_PREFIX = "#"
METHOD_VAR_PREFIX = "%"


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    head: str
    args: tuple["TypeName", ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.head
        return f"{self.head}<{','.join(str(a) for a in self.args)}>"


TypeName = Union[Var, App]


def app(head: str, *args: TypeName) -> App:
    """Shorthand used throughout the tests: ``app("Pair", INT, BOOL)``."""
    return App(head, tuple(args))


@dataclass(frozen=True)
class BoundedVar:
    """A declared type variable.  ``bound=None`` means the implicit top bound."""

    var: str
    bound: Optional[App] = None
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class FieldSig:
    label: str
    ty: TypeName
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class MethodSig:
    label: str
    params: tuple[TypeName, ...]
    ret: TypeName
    mtvars: tuple[BoundedVar, ...] = ()
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(self.params))
        object.__setattr__(self, "mtvars", tuple(self.mtvars))

    @property
    def mtvar_names(self) -> tuple[str, ...]:
        return tuple(b.var for b in self.mtvars)


@dataclass(frozen=True)
class SignatureConstructor:
    name: str
    tvars: tuple[BoundedVar, ...] = ()
    supers: tuple[TypeName, ...] = ()
    fields: tuple[FieldSig, ...] = ()
    methods: tuple[MethodSig, ...] = ()
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)
    super_spans: tuple[Optional[SourceSpan], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        for name in ("tvars", "supers", "fields", "methods", "super_spans"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def tvar_names(self) -> tuple[str, ...]:
        return tuple(b.var for b in self.tvars)

    @property
    def arity(self) -> int:
        return len(self.tvars)

    def get_field(self, label: str) -> Optional[FieldSig]:
        return next((f for f in self.fields if f.label == label), None)

    def get_method(self, label: str) -> Optional[MethodSig]:
        return next((m for m in self.methods if m.label == label), None)

    def super_span(self, index: int) -> Optional[SourceSpan]:
        if index < len(self.super_spans):
            return self.super_spans[index]
        return self.span


@dataclass(frozen=True)
class ConstructorEnvironment:
    """Finite map from constructor names to signature constructors, in source order.

    Bindings are kept as pairs so a name/constructor mismatch can be
    represented (and reported by the checker) rather than made impossible.
    """

    bindings: tuple[tuple[str, SignatureConstructor], ...] = ()
    _memo: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "bindings", tuple(self.bindings))
        object.__setattr__(self, "_index", dict(self.bindings))

    @classmethod
    def of(cls, constructors: Iterable[SignatureConstructor]) -> "ConstructorEnvironment":
        return cls(tuple((sc.name, sc) for sc in constructors))

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, SignatureConstructor]) -> "ConstructorEnvironment":
        return cls(tuple(mapping.items()))

    def __getitem__(self, name: str) -> SignatureConstructor:
        return self._index[name]  # type: ignore[attr-defined]

    def get(self, name: str) -> Optional[SignatureConstructor]:
        return self._index.get(name)  # type: ignore[attr-defined]

    def __contains__(self, name: object) -> bool:
        return name in self._index  # type: ignore[attr-defined]

    def __iter__(self) -> Iterator[str]:
        return (n for n, _ in self.bindings)

    def __len__(self) -> int:
        return len(self.bindings)

    def names(self) -> list[str]:
        return [n for n, _ in self.bindings]

    def constructors(self) -> list[SignatureConstructor]:
        return [sc for _, sc in self.bindings]

    def memo(self, table: str) -> dict:
        """Per-environment cache table; invisible to callers."""
        return self._memo.setdefault(table, {})

    def with_constructor(self, sc: SignatureConstructor) -> "ConstructorEnvironment":
        """Add or replace the binding for ``sc.name`` (replacement keeps position)."""
        if sc.name in self:
            return ConstructorEnvironment(tuple((n, sc if n == sc.name else old) for n, old in self.bindings))
        return ConstructorEnvironment(self.bindings + ((sc.name, sc),))


@dataclass(frozen=True)
class GroundSignature:
    name: App
    supers: tuple[TypeName, ...] = ()
    fields: tuple[FieldSig, ...] = ()
    methods: tuple[MethodSig, ...] = ()

    def member_types(self) -> Iterator[TypeName]:
        yield from self.supers
        for f in self.fields:
            yield f.ty
        for m in self.methods:
            yield from m.params
            yield m.ret


@dataclass(frozen=True)
class GenericObjectSignature:
    name: App
    env: ConstructorEnvironment


# -- classification -----------------------------------------------------------------


def is_ground(t: TypeName) -> bool:
    if isinstance(t, Var):
        return False
    return all(is_ground(a) for a in t.args)


def free_vars(t: TypeName) -> list[str]:
    """Variable tokens of ``t`` in left-to-right first-occurrence order."""
    seen: dict[str, None] = {}

    def walk(u: TypeName) -> None:
        if isinstance(u, Var):
            seen.setdefault(u.name, None)
        else:
            for a in u.args:
                walk(a)

    walk(t)
    return list(seen)


def depth(t: TypeName) -> int:
    """Nesting depth: zeroary applications and variables are 0."""
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(depth(a) for a in t.args)


def subterms(t: TypeName) -> Iterator[TypeName]:
    """Pre-order traversal of ``t`` including ``t`` itself."""
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def map_vars(t: TypeName, fn: Callable[[Var], TypeName]) -> TypeName:
    if isinstance(t, Var):
        return fn(t)
    if not t.args:
        return t
    return App(t.head, tuple(map_vars(a, fn) for a in t.args))


def map_types(sc: SignatureConstructor, fn: Callable[[TypeName], TypeName], *, bounds: bool = True) -> SignatureConstructor:
    """Apply ``fn`` to every type occurrence of ``sc``.

    ``bounds`` controls whether class-level bounds are rewritten; method
    bounds always are.
    """

    def bvar(b: BoundedVar) -> BoundedVar:
        if b.bound is None:
            return b
        new = fn(b.bound)
        return replace(b, bound=new)  # type: ignore[arg-type]

    methods = tuple(
        replace(
            m,
            mtvars=tuple(bvar(b) for b in m.mtvars),
            params=tuple(fn(p) for p in m.params),
            ret=fn(m.ret),
        )
        for m in sc.methods
    )
    return replace(
        sc,
        tvars=tuple(bvar(b) for b in sc.tvars) if bounds else sc.tvars,
        supers=tuple(fn(s) for s in sc.supers),
        fields=tuple(replace(f, ty=fn(f.ty)) for f in sc.fields),
        methods=methods,
    )


# -- alpha-equivalence --------------------------------------------------------------


def _rename(t: TypeName, mapping: Mapping[str, str]) -> TypeName:
    return map_vars(t, lambda v: Var(mapping.get(v.name, v.name)))


def rename_constructor(
    sc: SignatureConstructor,
    class_map: Mapping[str, str],
    method_maps: Optional[Mapping[str, Mapping[str, str]]] = None,
) -> SignatureConstructor:
    """Consistently rename class variables and, per method label, method variables."""
    method_maps = method_maps or {}

    def rb(b: BoundedVar, mapping: Mapping[str, str]) -> BoundedVar:
        bound = _rename(b.bound, mapping) if b.bound is not None else None
        return replace(b, var=mapping.get(b.var, b.var), bound=bound)  # type: ignore[arg-type]

    methods = []
    for m in sc.methods:
        mapping = {**class_map, **method_maps.get(m.label, {})}
        methods.append(
            replace(
                m,
                mtvars=tuple(rb(b, mapping) for b in m.mtvars),
                params=tuple(_rename(p, mapping) for p in m.params),
                ret=_rename(m.ret, mapping),
            )
        )
    return replace(
        sc,
        tvars=tuple(rb(b, class_map) for b in sc.tvars),
        supers=tuple(_rename(s, class_map) for s in sc.supers),
        fields=tuple(replace(f, ty=_rename(f.ty, class_map)) for f in sc.fields),
        methods=tuple(methods),
    )


def alpha_canonicalize(sc: SignatureConstructor) -> SignatureConstructor:
    """Rename class variables to ``#0, #1, ...`` and each method's variables to ``%0, %1, ...``."""
    class_map = {v: f"{CLASS_VAR_PREFIX}{i}" for i, v in enumerate(sc.tvar_names)}
    method_maps = {
        m.label: {v: f"{METHOD_VAR_PREFIX}{i}" for i, v in enumerate(m.mtvar_names)} for m in sc.methods
    }
    return rename_constructor(sc, class_map, method_maps)


def canonical_method(m: MethodSig) -> MethodSig:
    """A method with its own type variables renamed positionally; class variables untouched."""
    mapping = {v: f"{METHOD_VAR_PREFIX}{i}" for i, v in enumerate(m.mtvar_names)}
    return replace(
        m,
        mtvars=tuple(
            replace(b, var=mapping[b.var], bound=_rename(b.bound, mapping) if b.bound is not None else None)
            for b in m.mtvars
        ),
        params=tuple(_rename(p, mapping) for p in m.params),
        ret=_rename(m.ret, mapping),
    )


def sc_equal(a: SignatureConstructor, b: SignatureConstructor) -> bool:
    return alpha_canonicalize(a) == alpha_canonicalize(b)


def canonicalize_env(env: ConstructorEnvironment) -> ConstructorEnvironment:
    return ConstructorEnvironment(tuple((n, alpha_canonicalize(sc)) for n, sc in env.bindings))
