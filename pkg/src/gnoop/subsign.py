"""Ground supersignatures, subsigning and bounded-instantiation validity."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional

from gnoop.diagnostics import Diagnostic, SourceSpan, WfReport, error
from gnoop.subst import Substitution, direct_supers, substitute
from gnoop.syntax import (
    App,
    ConstructorEnvironment,
    GenericObjectSignature,
    SignatureConstructor,
    TypeName,
    is_ground,
)
from gnoop.wellformed import sce_extends


def gss(sce: ConstructorEnvironment, g: App) -> frozenset[App]:
    """All ground supersignature names of ``g``, excluding ``g`` itself."""
    memo = sce.memo("gss")
    found = memo.get(g)
    if found is None:
        acc: set[App] = set()
        for s in direct_supers(sce, g):
            acc.add(s)
            acc |= gss(sce, s)
        found = frozenset(acc)
        memo[g] = found
    return found


def supersignatures(sce: ConstructorEnvironment, g: App) -> frozenset[App]:
    """``g`` together with :func:`gss`; ``h`` is in it iff ``(g, sce) ⊴ (h, sce)``."""
    memo = sce.memo("up")
    found = memo.get(g)
    if found is None:
        found = memo[g] = gss(sce, g) | {g}
    return found


@dataclass(frozen=True)
class SubsignVerdict:
    holds: bool
    chain: tuple[App, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def _chain(sce: ConstructorEnvironment, sub: App, sup: App) -> tuple[App, ...]:
    prev: dict[App, Optional[App]] = {sub: None}
    queue = deque([sub])
    while queue:
        g = queue.popleft()
        if g == sup:
            path = []
            cur: Optional[App] = g
            while cur is not None:
                path.append(cur)
                cur = prev[cur]
            return tuple(reversed(path))
        for s in direct_supers(sce, g):
            if s not in prev:
                prev[s] = g
                queue.append(s)
    raise AssertionError(f"{sup} listed in gss of {sub} but unreachable")


def subsigns(sub: GenericObjectSignature, sup: GenericObjectSignature) -> SubsignVerdict:
    """Decide ``sub ⊴ sup``: the sub-side environment must extend the super-side one."""
    if not sce_extends(sub.env, sup.env):
        return SubsignVerdict(False)
    if sub.name == sup.name:
        return SubsignVerdict(True)
    if sup.name in gss(sub.env, sub.name):
        return SubsignVerdict(True, _chain(sub.env, sub.name, sup.name))
    return SubsignVerdict(False)


def _bound_diags(sce: ConstructorEnvironment, g: App, span: Optional[SourceSpan]) -> Iterator[Diagnostic]:
    for a in g.args:
        yield from _bound_diags(sce, a, span)  # type: ignore[arg-type]
    sc = sce[g.head]
    s = Substitution(sc.tvar_names, g.args)
    for i, (b, arg) in enumerate(zip(sc.tvars, g.args)):
        if b.bound is None:
            continue
        bound = substitute(s, b.bound)
        ok = subsigns(GenericObjectSignature(arg, sce), GenericObjectSignature(bound, sce))  # type: ignore[arg-type]
        if not ok:
            yield error(
                "E210",
                f"type argument {i} of {g} ({arg}) does not subsign its bound {bound}",
                span,
                [str(g), str(i), str(arg), str(bound)],
            )


def valid_ground_name(sce: ConstructorEnvironment, g: App, span: Optional[SourceSpan] = None) -> WfReport:
    """Arguments are checked before the outer bounds, so the innermost violation comes first."""
    memo = sce.memo("valid")
    key = (g, span)
    if key not in memo:
        memo[key] = WfReport.of(_bound_diags(sce, g, span))
    return memo[key]


def _maximal_ground(t: TypeName) -> Iterator[App]:
    if is_ground(t):
        yield t  # type: ignore[misc]
    elif isinstance(t, App):
        for a in t.args:
            yield from _maximal_ground(a)


def _occurrences(sc: SignatureConstructor) -> Iterator[tuple[TypeName, Optional[SourceSpan]]]:
    for b in sc.tvars:
        if b.bound is not None:
            yield b.bound, b.span or sc.span
    for i, s in enumerate(sc.supers):
        yield s, sc.super_span(i)
    for f in sc.fields:
        yield f.ty, f.span
    for m in sc.methods:
        for b in m.mtvars:
            if b.bound is not None:
                yield b.bound, m.span
        for p in m.params:
            yield p, m.span
        yield m.ret, m.span


def validate_env_usage(sce: ConstructorEnvironment) -> WfReport:
    """Validity of every variable-free type name written inside the environment."""
    report = WfReport()
    for sc in sce.constructors():
        for t, span in _occurrences(sc):
            for g in _maximal_ground(t):
                report = report + valid_ground_name(sce, g, span)
    return report
