"""Name substitution, instantiation of constructors, instantiation closures
and the expansiveness analysis.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from typing import Collection, Iterable, Sequence

from gnoop.diagnostics import GnoopError, error, warning
from gnoop.syntax import (
    App,
    BoundedVar,
    ConstructorEnvironment,
    GenericObjectSignature,
    GroundSignature,
    MethodSig,
    SignatureConstructor,
    TypeName,
    Var,
    is_ground,
    subterms,
)


@dataclass(frozen=True)
class Substitution:
    """Positional map from type variables to type names: ``vars[i] -> args[i]``."""

    vars: tuple[str, ...]
    args: tuple[TypeName, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.vars) != len(self.args):
            raise GnoopError(
                error("E201", f"substitution has {len(self.vars)} variable(s) but {len(self.args)} argument(s)")
            )
        if len(set(self.vars)) != len(self.vars):
            raise GnoopError(error("E201", "substituted variables are not distinct"))
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vars)})

    def lookup(self, name: str) -> TypeName | None:
        i = self._index.get(name)  # type: ignore[attr-defined]
        return None if i is None else self.args[i]


def substitute(s: Substitution, t: TypeName, passthrough: Collection[str] = ()) -> TypeName:
    """Replace variables of ``s`` in ``t``.

    A variable outside ``s`` is an error (E200) unless listed in
    ``passthrough``, which is how method-level variables survive a
    class-level substitution.
    """
    if isinstance(t, Var):
        found = s.lookup(t.name)
        if found is not None:
            return found
        if t.name in passthrough:
            return t
        raise GnoopError(
            error("E200", f"type variable {t.name} is not among the substituted variables {list(s.vars)}", related=[t.name])
        )
    if not t.args:
        return t
    return App(t.head, tuple(substitute(s, a, passthrough) for a in t.args))


def _subst_bvar(s: Substitution, b: BoundedVar, passthrough: Collection[str]) -> BoundedVar:
    if b.bound is None:
        return b
    return replace(b, bound=substitute(s, b.bound, passthrough))  # type: ignore[arg-type]


def _subst_method(s: Substitution, m: MethodSig) -> MethodSig:
    own = set(m.mtvar_names)
    return replace(
        m,
        mtvars=tuple(_subst_bvar(s, b, own) for b in m.mtvars),
        params=tuple(substitute(s, p, own) for p in m.params),
        ret=substitute(s, m.ret, own),
    )


def substitute_constructor(s: Substitution, sc: SignatureConstructor) -> SignatureConstructor:
    """Substitute throughout ``sc``; the type-variable component is kept as is."""
    if s.vars != sc.tvar_names:
        raise GnoopError(
            error("E201", f"substitution variables {list(s.vars)} do not match {sc.name}'s type variables {list(sc.tvar_names)}")
        )
    return replace(
        sc,
        supers=tuple(substitute(s, t) for t in sc.supers),
        fields=tuple(replace(f, ty=substitute(s, f.ty)) for f in sc.fields),
        methods=tuple(_subst_method(s, m) for m in sc.methods),
    )


def instantiate(sc: SignatureConstructor, args: Sequence[TypeName], *, relaxed: bool = False) -> GroundSignature:
    """Instantiate ``sc`` with ground arguments and drop its type variables.

    Polymorphic methods cannot be fully grounded; by default they raise
    E203, with ``relaxed=True`` they are kept schematic in their own
    variables.
    """
    args = tuple(args)
    if len(args) != sc.arity:
        raise GnoopError(error("E201", f"{sc.name} expects {sc.arity} type argument(s), got {len(args)}"))
    for i, a in enumerate(args):
        if not is_ground(a):
            raise GnoopError(error("E202", f"type argument {i} of {sc.name} is not ground: {a}", related=[str(a)]))
    poly = [m.label for m in sc.methods if m.mtvars]
    if poly and not relaxed:
        raise GnoopError(
            warning("E203", f"polymorphic method(s) {', '.join(poly)} of {sc.name} keep their own type variables", related=poly)
        )
    inst = substitute_constructor(Substitution(sc.tvar_names, args), sc)
    return GroundSignature(App(sc.name, args), inst.supers, inst.fields, inst.methods)


def ground_of(gos: GenericObjectSignature, *, relaxed: bool = False) -> GroundSignature:
    sc = gos.env.get(gos.name.head)
    if sc is None:
        raise GnoopError(error("E100", f"unbound constructor name {gos.name.head}", related=[gos.name.head]))
    gs = instantiate(sc, gos.name.args, relaxed=relaxed)
    assert gs.name == gos.name
    return gs


def direct_supers(sce: ConstructorEnvironment, g: App) -> tuple[App, ...]:
    """Instantiated supersignatures of ground name ``g`` (memoized per environment)."""
    memo = sce.memo("direct_supers")
    found = memo.get(g)
    if found is None:
        sc = sce[g.head]
        s = Substitution(sc.tvar_names, g.args)
        found = tuple(substitute(s, t) for t in sc.supers)  # type: ignore[misc]
        memo[g] = found
    return found


@dataclass(frozen=True)
class ClosureResult:
    names: tuple[App, ...]
    exhausted_fuel: bool


def instantiation_closure(gos: GenericObjectSignature, fuel: int) -> ClosureResult:
    """Ground names reachable from ``gos.name`` through instantiated member types.

    Breadth-first by discovery; ``fuel`` caps the number of distinct names.
    Only top-level occurrences (supersignatures, field types, method
    parameter and return types) are followed.
    """
    if fuel < 1:
        raise ValueError("fuel must be positive")
    env = gos.env
    seen: dict[App, None] = {gos.name: None}
    queue = deque([gos.name])
    while queue:
        g = queue.popleft()
        for t in ground_of(GenericObjectSignature(g, env), relaxed=True).member_types():
            if not is_ground(t) or t in seen:
                continue
            if len(seen) >= fuel:
                return ClosureResult(tuple(seen), True)
            seen[t] = None  # type: ignore[index]
            queue.append(t)  # type: ignore[arg-type]
    return ClosureResult(tuple(seen), False)


Node = tuple[str, int]


@dataclass(frozen=True)
class ExpansivenessReport:
    expansive: bool
    witness_cycle: tuple[Node, ...] = ()
    # expansive_steps[i] tells whether witness_cycle[i] -> witness_cycle[i+1] is an expansive edge
    expansive_steps: tuple[bool, ...] = ()


def _occurrences(sc: SignatureConstructor) -> Iterable[TypeName]:
    yield from sc.supers
    for f in sc.fields:
        yield f.ty
    for m in sc.methods:
        for b in m.mtvars:
            if b.bound is not None:
                yield b.bound
        yield from m.params
        yield m.ret


def parameter_graph(sce: ConstructorEnvironment) -> dict[Node, dict[Node, bool]]:
    """Edges ``(C,i) -> (D,j)`` flagged True when expansive.

    For every application ``D<a_0..a_k>`` inside ``C`` and every class
    variable ``X_i`` occurring in ``a_j``: the edge is plain when ``a_j`` is
    exactly ``X_i`` and expansive otherwise.  Parallel edges collapse, with
    expansive winning.
    """
    graph: dict[Node, dict[Node, bool]] = {}
    for name, sc in sce.bindings:
        index = {v: i for i, v in enumerate(sc.tvar_names)}
        for i in range(sc.arity):
            graph.setdefault((name, i), {})
        for occ in _occurrences(sc):
            for sub in subterms(occ):
                if not isinstance(sub, App):
                    continue
                for j, a in enumerate(sub.args):
                    for u in subterms(a):
                        if isinstance(u, Var) and u.name in index:
                            src, dst = (name, index[u.name]), (sub.head, j)
                            edges = graph.setdefault(src, {})
                            edges[dst] = edges.get(dst, False) or a != u
    return graph


def _path(graph: dict[Node, dict[Node, bool]], start: Node, goal: Node) -> list[Node] | None:
    prev: dict[Node, Node | None] = {start: None}
    queue = deque([start])
    while queue:
        n = queue.popleft()
        if n == goal:
            out = []
            cur: Node | None = n
            while cur is not None:
                out.append(cur)
                cur = prev[cur]
            return out[::-1]
        for m in graph.get(n, {}):
            if m not in prev:
                prev[m] = n
                queue.append(m)
    return None


def expansiveness(sce: ConstructorEnvironment) -> ExpansivenessReport:
    graph = parameter_graph(sce)
    for src, edges in graph.items():
        for dst, is_expansive in edges.items():
            if not is_expansive:
                continue
            back = _path(graph, dst, src)
            if back is None:
                continue
            cycle = [src] + back
            steps = tuple(graph[a][b] for a, b in zip(cycle, cycle[1:]))
            return ExpansivenessReport(True, tuple(cycle), steps)
    return ExpansivenessReport(False)
