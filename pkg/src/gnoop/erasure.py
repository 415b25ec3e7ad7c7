"""Erasure of ground names, ground signatures, environments and generic
object signatures, plus the check that erasure yields a well-formed
non-generic environment.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from gnoop.diagnostics import Diagnostic, GnoopError, WfReport, error
from gnoop.subst import instantiate
from gnoop.syntax import (
    App,
    BoundedVar,
    ConstructorEnvironment,
    FieldSig,
    GenericObjectSignature,
    GroundSignature,
    MethodSig,
    SignatureConstructor,
    TypeName,
    Var,
)
from gnoop.wellformed import wf_env, wf_type_name


@dataclass(frozen=True)
class ErasureConfig:
    top: str = "Object"
    # Naked variables erase to their bound's constructor; False forces the top everywhere.
    bound_aware: bool = True


DEFAULT = ErasureConfig()


def inject_top(env: ConstructorEnvironment, top: str = "Object") -> ConstructorEnvironment:
    """Add a zeroary top constructor and make it the supersignature of every root."""
    constructors = []
    if top not in env:
        constructors.append(SignatureConstructor(top))
    for sc in env.constructors():
        if sc.name != top and not sc.supers:
            sc = replace(sc, supers=(App(top),), super_spans=())
        constructors.append(sc)
    return ConstructorEnvironment.of(constructors)


def check_top(env: ConstructorEnvironment, top: str) -> list[Diagnostic]:
    sc = env.get(top)
    if sc is None:
        return [error("E220", f"top constructor {top} is not bound in the environment", related=[top])]
    if sc.tvars or sc.supers:
        return [error("E220", f"top constructor {top} must be zeroary with no supersignatures", sc.span, [top])]
    return []


def erase_name(g: App) -> App:
    return App(g.head)


def _erase_ground_type(t: TypeName, top: str) -> App:
    if isinstance(t, Var):
        # only reachable through schematic polymorphic methods
        return App(top)
    return App(t.head)


def erase_ground_signature(ggs: GroundSignature, top: str = "Object") -> GroundSignature:
    return GroundSignature(
        erase_name(ggs.name),
        tuple(_erase_ground_type(s, top) for s in ggs.supers),
        tuple(FieldSig(f.label, _erase_ground_type(f.ty, top)) for f in ggs.fields),
        tuple(
            MethodSig(m.label, tuple(_erase_ground_type(p, top) for p in m.params), _erase_ground_type(m.ret, top))
            for m in ggs.methods
        ),
    )


def _targets(tvars: tuple[BoundedVar, ...], cfg: ErasureConfig, outer: dict[str, App]) -> dict[str, App]:
    """What each naked variable erases to: its bound's constructor, or the top."""
    bounds = {b.var: b.bound for b in tvars}
    out = dict(outer)

    def target(v: str, seen: tuple[str, ...]) -> App:
        if v in out:
            return out[v]
        if v in seen:
            raise GnoopError(error("E221", "bound erasure cycle " + " -> ".join(seen + (v,)), related=list(seen)))
        b = bounds.get(v)
        if b is None or not cfg.bound_aware:
            return App(cfg.top)
        if isinstance(b, Var):
            return target(b.name, seen + (v,))
        return App(b.head)

    for b in tvars:
        out[b.var] = target(b.var, ())
    return out


def _erase_type(t: TypeName, targets: dict[str, App]) -> App:
    if isinstance(t, Var):
        return targets[t.name]
    return App(t.head)


def erase_constructor(sc: SignatureConstructor, cfg: ErasureConfig = DEFAULT) -> SignatureConstructor:
    targets = _targets(sc.tvars, cfg, {})
    methods = []
    for m in sc.methods:
        inner = _targets(m.mtvars, cfg, targets)
        methods.append(
            MethodSig(m.label, tuple(_erase_type(p, inner) for p in m.params), _erase_type(m.ret, inner), (), m.span)
        )
    return SignatureConstructor(
        sc.name,
        (),
        tuple(_erase_type(s, targets) for s in sc.supers),
        tuple(FieldSig(f.label, _erase_type(f.ty, targets), f.span) for f in sc.fields),
        tuple(methods),
        sc.span,
        sc.super_spans,
    )


def erase_env(sce: ConstructorEnvironment, cfg: ErasureConfig = DEFAULT) -> ConstructorEnvironment:
    """Drop type variables and type arguments; naked variables become their bound's constructor or the top."""
    memo = sce.memo("erase_env")
    if cfg not in memo:
        problems = check_top(sce, cfg.top)
        if problems:
            raise GnoopError(problems)
        memo[cfg] = ConstructorEnvironment(tuple((n, erase_constructor(sc, cfg)) for n, sc in sce.bindings))
    return memo[cfg]


def erase_env_by_instantiation(sce: ConstructorEnvironment, top: str = "Object") -> ConstructorEnvironment:
    """Erasure as instantiate-everything-with-the-top, then drop type arguments.

    Coincides with :func:`erase_env` when no variable carries a bound.
    """
    problems = check_top(sce, top)
    if problems:
        raise GnoopError(problems)
    out = []
    for name, sc in sce.bindings:
        ggs = erase_ground_signature(instantiate(sc, [App(top)] * sc.arity, relaxed=True), top)
        out.append((name, SignatureConstructor(name, (), ggs.supers, ggs.fields, ggs.methods)))
    return ConstructorEnvironment(tuple(out))


def erasure_mismatches(sce: ConstructorEnvironment, cfg: ErasureConfig = DEFAULT) -> list[tuple[str, App, int]]:
    """Supersignature arguments whose erasure differs from that of the parameter they instantiate.

    Each hit ``(constructor, super, index)`` is a place where an inherited
    member changes type under erasure, so exact member matching can fail in
    the erased environment.  An empty list means erasure commutes with
    inheritance and the erasure theorem holds for ``sce``.
    """
    out = []
    for sc in sce.constructors():
        targets = _targets(sc.tvars, cfg, {})
        for s in sc.supers:
            if not isinstance(s, App) or s.head not in sce:
                continue
            params = _targets(sce[s.head].tvars, cfg, {})
            for i, (arg, b) in enumerate(zip(s.args, sce[s.head].tvars)):
                if _erase_type(arg, targets) != params[b.var]:
                    out.append((sc.name, s, i))
    return out


def erase_gos(gos: GenericObjectSignature, cfg: ErasureConfig = DEFAULT) -> GenericObjectSignature:
    return GenericObjectSignature(erase_name(gos.name), erase_env(gos.env, cfg))


def is_non_generic(env: ConstructorEnvironment) -> bool:
    return all(not sc.tvars and not any(m.mtvars for m in sc.methods) for sc in env.constructors())


def check_erasure_theorem(gos: GenericObjectSignature, cfg: ErasureConfig = DEFAULT) -> WfReport:
    """The erasure of a well-formed generic object signature must be well-formed and non-generic."""
    try:
        egos = erase_gos(gos, cfg)
    except GnoopError as exc:
        return WfReport(exc.diagnostics)
    memo = gos.env.memo("erased_wf")
    if cfg not in memo:
        memo[cfg] = wf_env(egos.env)
    problems = list(memo[cfg].diagnostics) + list(wf_type_name(egos.name, egos.env).diagnostics)
    if not is_non_generic(egos.env):
        problems.append(error("E299", "erased environment still declares type variables"))
    if not any(d.is_error for d in problems):
        return WfReport()
    detail = "; ".join(f"{d.code} {d.message}" for d in problems if d.is_error)
    return WfReport(
        (error("E299", f"erasure of {gos.name} is not a well-formed non-generic signature: {detail}", related=[str(gos.name)]),)
    )
