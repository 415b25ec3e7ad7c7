"""Well-formedness of type names, signature constructors and environments.

Checks run in a fixed order (structure, names and arity, supersignature
cycles, member inheritance) and a later phase only runs when the earlier
ones are clean, so diagnostics do not cascade.
"""

from __future__ import annotations

from collections import Counter
from typing import Collection, Iterator, Optional

from gnoop.diagnostics import Diagnostic, SourceSpan, WfReport, error
from gnoop.syntax import (
    App,
    BoundedVar,
    ConstructorEnvironment,
    FieldSig,
    MethodSig,
    SignatureConstructor,
    TypeName,
    Var,
    canonical_method,
    sc_equal,
)


def _type_diags(t: TypeName, sce: ConstructorEnvironment, scope: Collection[str], span: Optional[SourceSpan]) -> Iterator[Diagnostic]:
    if isinstance(t, Var):
        if t.name not in scope:
            yield error("E102", f"type variable {t.name} is not in scope", span, [t.name])
        return
    sc = sce.get(t.head)
    if sc is None:
        yield error("E100", f"unbound constructor name {t.head}", span, [t.head])
    elif len(t.args) != sc.arity:
        yield error(
            "E101",
            f"{t.head} expects {sc.arity} type argument(s), got {len(t.args)} in {t}",
            span,
            [str(t)],
        )
    for a in t.args:
        yield from _type_diags(a, sce, scope, span)


def wf_type_name(
    t: TypeName,
    sce: ConstructorEnvironment,
    scope: Collection[str] = (),
    span: Optional[SourceSpan] = None,
) -> WfReport:
    return WfReport.of(_type_diags(t, sce, scope, span))


def _duplicates(items) -> list[str]:
    return [k for k, n in Counter(items).items() if n > 1]


def structural_diags(sc: SignatureConstructor) -> list[Diagnostic]:
    """Invariants that need no environment: distinct names, no naked variables where forbidden."""
    out: list[Diagnostic] = []
    for v in _duplicates(sc.tvar_names):
        out.append(error("E002", f"duplicate type variable {v} in {sc.name}", sc.span, [v]))
    for label in _duplicates(f.label for f in sc.fields):
        out.append(error("E103", f"duplicate field label {label} in {sc.name}", sc.span, [label]))
    for label in _duplicates(m.label for m in sc.methods):
        out.append(error("E103", f"duplicate method label {label} in {sc.name}", sc.span, [label]))
    for i, s in enumerate(sc.supers):
        if isinstance(s, Var):
            out.append(error("E110", f"naked type variable {s.name} used as supersignature of {sc.name}", sc.super_span(i), [s.name]))
    for b in sc.tvars:
        if isinstance(b.bound, Var):
            out.append(error("E105", f"type variable {b.var} is bounded by naked variable {b.bound.name}", b.span or sc.span, [b.var]))
    class_vars = set(sc.tvar_names)
    for m in sc.methods:
        for v in _duplicates(m.mtvar_names):
            out.append(error("E104", f"duplicate method type variable {v} in {sc.name}.{m.label}", m.span, [v]))
        for v in m.mtvar_names:
            if v in class_vars:
                out.append(error("E104", f"method type variable {v} of {sc.name}.{m.label} shadows a class type variable", m.span, [v]))
        for b in m.mtvars:
            if isinstance(b.bound, Var):
                out.append(error("E105", f"type variable {b.var} is bounded by naked variable {b.bound.name}", m.span, [b.var]))
    return out


def scoped_type_diags(sc: SignatureConstructor, sce: ConstructorEnvironment) -> list[Diagnostic]:
    """Closedness, arity and variable scoping of every type occurring in ``sc``."""
    scope = set(sc.tvar_names)
    out: list[Diagnostic] = []
    for b in sc.tvars:
        if isinstance(b.bound, App):
            out.extend(_type_diags(b.bound, sce, scope, b.span or sc.span))
    for i, s in enumerate(sc.supers):
        out.extend(_type_diags(s, sce, scope, sc.super_span(i)))
    for f in sc.fields:
        out.extend(_type_diags(f.ty, sce, scope, f.span))
    for m in sc.methods:
        inner = scope | set(m.mtvar_names)
        for b in m.mtvars:
            if isinstance(b.bound, App):
                out.extend(_type_diags(b.bound, sce, inner, m.span))
        for p in m.params:
            out.extend(_type_diags(p, sce, inner, m.span))
        out.extend(_type_diags(m.ret, sce, inner, m.span))
    return out


def _subst(t: TypeName, mapping: dict[str, TypeName]) -> TypeName:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if not t.args:
        return t
    return App(t.head, tuple(_subst(a, mapping) for a in t.args))


def _subst_method(m: MethodSig, mapping: dict[str, TypeName]) -> MethodSig:
    # Method variables are renamed apart first so class-level arguments cannot be captured.
    m = canonical_method(m)
    mtvars = tuple(
        BoundedVar(b.var, _subst(b.bound, mapping) if b.bound is not None else None)  # type: ignore[arg-type]
        for b in m.mtvars
    )
    return MethodSig(m.label, tuple(_subst(p, mapping) for p in m.params), _subst(m.ret, mapping), mtvars)


def inherited_members(
    sc: SignatureConstructor, sce: ConstructorEnvironment
) -> tuple[list[tuple[str, FieldSig]], list[tuple[str, MethodSig]]]:
    """Members of all (transitive) supersignatures, instantiated with ``sc``'s own type names.

    Each entry is paired with the rendering of the supersignature it came from.
    """
    fields: list[tuple[str, FieldSig]] = []
    methods: list[tuple[str, MethodSig]] = []
    seen: set[App] = set()

    def visit(sup: TypeName, path: frozenset[str]) -> None:
        if not isinstance(sup, App) or sup in seen or sup.head in path:
            return
        seen.add(sup)
        d = sce.get(sup.head)
        if d is None or d.arity != len(sup.args):
            return
        mapping = dict(zip(d.tvar_names, sup.args))
        origin = str(sup)
        for f in d.fields:
            fields.append((origin, FieldSig(f.label, _subst(f.ty, mapping))))
        for m in d.methods:
            methods.append((origin, _subst_method(m, mapping)))
        for s in d.supers:
            visit(_subst(s, mapping), path | {d.name})

    for s in sc.supers:
        visit(s, frozenset({sc.name}))
    return fields, methods


def check_member_inheritance(sc: SignatureConstructor, sce: ConstructorEnvironment) -> WfReport:
    """Every inherited member must be redeclared with an identical signature.

    Method signatures are compared up to renaming of the method's own type
    variables.
    """
    out: list[Diagnostic] = []
    reported: set[tuple[str, str]] = set()
    fields, methods = inherited_members(sc, sce)
    for origin, f in fields:
        key = ("field", f.label)
        own = sc.get_field(f.label)
        if own is None:
            if key not in reported:
                out.append(error("E120", f"{sc.name} is missing field {f.label}: {f.ty} inherited from {origin}", sc.span, [origin, f.label]))
        elif own.ty != f.ty:
            if key not in reported:
                out.append(
                    error(
                        "E121",
                        f"{sc.name}.{f.label} has type {own.ty} but {origin} requires {f.ty}",
                        own.span or sc.span,
                        [origin, f.label],
                    )
                )
        else:
            continue
        reported.add(key)
    for origin, m in methods:
        key = ("method", m.label)
        own_m = sc.get_method(m.label)
        if own_m is None:
            if key not in reported:
                out.append(error("E120", f"{sc.name} is missing method {m.label} inherited from {origin}", sc.span, [origin, m.label]))
        elif canonical_method(own_m) != m:
            if key not in reported:
                out.append(
                    error(
                        "E121",
                        f"{sc.name}.{m.label} does not match the signature required by {origin}",
                        own_m.span or sc.span,
                        [origin, m.label],
                    )
                )
        else:
            continue
        reported.add(key)
    return WfReport.of(out)


def wf_constructor(sc: SignatureConstructor, sce: ConstructorEnvironment) -> WfReport:
    diags = structural_diags(sc)
    if diags:
        return WfReport.of(diags)
    diags = scoped_type_diags(sc, sce)
    if diags:
        return WfReport.of(diags)
    return check_member_inheritance(sc, sce)


def super_graph(sce: ConstructorEnvironment) -> dict[str, list[str]]:
    """Edges from each constructor name to the heads of its supersignatures."""
    return {
        name: [s.head for s in sc.supers if isinstance(s, App) and s.head in sce]
        for name, sc in sce.bindings
    }


def find_cycle(graph: dict[str, list[str]]) -> Optional[list[str]]:
    """One witness cycle as a closed path ``[a, b, ..., a]``, or None for a DAG."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = {n: WHITE for n in graph}
    stack: list[str] = []

    def dfs(n: str) -> Optional[list[str]]:
        color[n] = GREY
        stack.append(n)
        for m in graph.get(n, ()):
            if color.get(m, BLACK) == GREY:
                return stack[stack.index(m):] + [m]
            if color.get(m) == WHITE:
                found = dfs(m)
                if found:
                    return found
        stack.pop()
        color[n] = BLACK
        return None

    for n in graph:
        if color[n] == WHITE:
            found = dfs(n)
            if found:
                return found
    return None


def topological_order(sce: ConstructorEnvironment) -> list[str]:
    """Constructor names with every supersignature head before its subsignatures."""
    graph = super_graph(sce)
    order: list[str] = []
    done: set[str] = set()

    def visit(n: str) -> None:
        if n in done:
            return
        done.add(n)
        for m in graph[n]:
            visit(m)
        order.append(n)

    for n in graph:
        visit(n)
    return order


def wf_env(sce: ConstructorEnvironment) -> WfReport:
    diags: list[Diagnostic] = []
    for name, sc in sce.bindings:
        if name != sc.name:
            diags.append(error("E106", f"binding {name} holds constructor {sc.name}", sc.span, [name, sc.name]))
    for _, sc in sce.bindings:
        diags.extend(structural_diags(sc))
    if diags:
        return WfReport.of(diags)

    for _, sc in sce.bindings:
        diags.extend(scoped_type_diags(sc, sce))
    if diags:
        return WfReport.of(diags)

    cycle = find_cycle(super_graph(sce))
    if cycle:
        return WfReport.of(
            [error("E130", "supersignature cycle " + " -> ".join(cycle), sce[cycle[0]].span, cycle)]
        )

    for _, sc in sce.bindings:
        diags.extend(check_member_inheritance(sc, sce).diagnostics)
    return WfReport.of(diags)


def sce_extends(big: ConstructorEnvironment, small: ConstructorEnvironment) -> bool:
    """True iff every binding of ``small`` is present in ``big`` up to alpha-renaming."""
    if big is small:
        return True
    memo = big.memo("extends")
    if small not in memo:
        memo[small] = all(
            name in big and sc_equal(sc, big[name]) for name, sc in small.bindings
        )
    return memo[small]
