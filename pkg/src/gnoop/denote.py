"""Finite-depth denotation oracle for subsigning.

Each ground name stands for its principal object: an object carrying that
name and the members of its ground signature.  The denotation of ``g`` is
the set of universe names whose objects may be used where a ``g`` is
expected: they declare ``g`` among their (reflexive, transitive)
supersignatures and carry every member of ``g`` with the same signature.

Supersignature reachability is recomputed here from instantiated ground
signatures so the oracle does not share the memoized path of
:mod:`gnoop.subsign` it is checking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from gnoop.diagnostics import GnoopError, WfReport, error
from gnoop.subsign import subsigns, supersignatures, valid_ground_name
from gnoop.subst import ground_of
from gnoop.syntax import (
    App,
    ConstructorEnvironment,
    GenericObjectSignature,
    GroundSignature,
    canonical_method,
)
from gnoop.syntax import depth as type_depth

DEFAULT_CAP = 10_000


@dataclass(frozen=True)
class GroundUniverse:
    env: ConstructorEnvironment
    depth: int
    names: tuple[App, ...]
    valid_only: bool = False
    _index: frozenset = field(default=frozenset(), compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", frozenset(self.names))

    def __contains__(self, g: object) -> bool:
        return g in self._index

    def __len__(self) -> int:
        return len(self.names)


def enumerate_ground_names(
    sce: ConstructorEnvironment, depth: int, valid_only: bool = False, cap: int = DEFAULT_CAP
) -> GroundUniverse:
    """All well-formed ground names of nesting depth <= ``depth``, sorted by rendering.

    Raises E003 before materializing a level that would exceed ``cap``.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    zeroary = [App(sc.name) for sc in sce.constructors() if sc.arity == 0]
    generic = [sc for sc in sce.constructors() if sc.arity > 0]
    level: list[App] = list(zeroary)
    for _ in range(depth):
        size = len(zeroary) + sum(len(level) ** sc.arity for sc in generic)
        if size > cap:
            raise GnoopError(
                error("E003", f"universe of depth {depth} would hold {size} names, above the cap of {cap}")
            )
        level = list(zeroary) + [
            App(sc.name, args) for sc in generic for args in itertools.product(level, repeat=sc.arity)
        ]
    names = sorted(level, key=str)
    if valid_only:
        names = [g for g in names if valid_ground_name(sce, g).ok]
    return GroundUniverse(sce, depth, tuple(names), valid_only)


def _ancestors(env: ConstructorEnvironment, g: App, memo: dict) -> frozenset[App]:
    """``g`` together with every name reachable through instantiated supersignatures."""
    found = memo.get(g)
    if found is None:
        acc = {g}
        frontier = [g]
        while frontier:
            h = frontier.pop()
            for s in ground_of(GenericObjectSignature(h, env), relaxed=True).supers:
                if s not in acc:
                    acc.add(s)  # type: ignore[arg-type]
                    frontier.append(s)  # type: ignore[arg-type]
        found = frozenset(acc)
        memo[g] = found
    return found


def conforms(sub: GroundSignature, sup: GroundSignature) -> bool:
    """Every member of ``sup`` is present in ``sub`` with an identical signature."""
    fields = {f.label: f.ty for f in sub.fields}
    if any(fields.get(f.label) != f.ty for f in sup.fields):
        return False
    methods = {m.label: canonical_method(m) for m in sub.methods}
    return all(methods.get(m.label) == canonical_method(m) for m in sup.methods)


def denotations(universe: GroundUniverse) -> dict[App, frozenset[App]]:
    """Denotation of every universe name, computed in one sweep."""
    env = universe.env
    anc_memo: dict = {}
    sigs = {g: ground_of(GenericObjectSignature(g, env), relaxed=True) for g in universe.names}
    out: dict[App, set[App]] = {g: set() for g in universe.names}
    for h in universe.names:
        for g in _ancestors(env, h, anc_memo):
            if g in out and conforms(sigs[h], sigs[g]):
                out[g].add(h)
    return {g: frozenset(v) for g, v in out.items()}


def denote(gos: GenericObjectSignature, universe: GroundUniverse) -> frozenset[App]:
    memo = universe.env.memo("denotations")
    key = (universe.depth, universe.valid_only, universe.names)
    if key not in memo:
        memo[key] = denotations(universe)
    table = memo[key]
    if gos.name in table:
        return table[gos.name]
    # a name outside the universe: same rule, computed directly
    env = universe.env
    target = ground_of(GenericObjectSignature(gos.name, env), relaxed=True)
    anc_memo: dict = {}
    return frozenset(
        h
        for h in universe.names
        if gos.name in _ancestors(env, h, anc_memo)
        and conforms(ground_of(GenericObjectSignature(h, env), relaxed=True), target)
    )


@dataclass(frozen=True)
class Counterexample:
    sub: App
    sup: App
    subsigns: bool
    chain: tuple[App, ...]
    denote_sub: frozenset[App]
    denote_sup: frozenset[App]

    @property
    def missing(self) -> frozenset[App]:
        return self.denote_sub - self.denote_sup

    def to_json(self) -> dict:
        return {
            "sub": str(self.sub),
            "sup": str(self.sup),
            "subsigns": self.subsigns,
            "chain": [str(g) for g in self.chain],
            "denote_sub": sorted(str(g) for g in self.denote_sub),
            "denote_sup": sorted(str(g) for g in self.denote_sup),
            "missing": sorted(str(g) for g in self.missing),
        }


@dataclass(frozen=True)
class TheoremReport(WfReport):
    universe_size: int = 0
    pairs_checked: int = 0
    counterexamples: int = 0
    counterexample: Optional[Counterexample] = None


def theorem_check(
    sce: ConstructorEnvironment,
    depth: int,
    valid_only: bool = False,
    cap: int = DEFAULT_CAP,
    universe: Optional[GroundUniverse] = None,
) -> TheoremReport:
    """Check ``g1 ⊴ g2  <=>  denote(g1) ⊆ denote(g2)`` on every ordered pair of the universe.

    The reported counterexample is the minimal one by combined depth, then
    by rendering, independent of iteration order.
    """
    if universe is None:
        universe = enumerate_ground_names(sce, depth, valid_only, cap)
    den = denotations(universe)
    names = universe.names
    bit = {g: 1 << i for i, g in enumerate(names)}
    # into[h]: the universe names whose denotation contains h
    into = dict.fromkeys(names, 0)
    for g, members in den.items():
        for h in members:
            into[h] |= bit[g]
    everything = (1 << len(names)) - 1
    best: Optional[tuple] = None
    failures = 0
    for g1 in names:
        # row of "d1 ⊆ den[g2]" over all g2, as the intersection of into[h] for h in d1
        included = everything
        for h in den[g1]:
            included &= into[h]
        # same-environment subsigning: g1 ⊴ g2 iff g2 is g1 or one of its ground supersignatures
        holds = 0
        for g2 in supersignatures(sce, g1):
            holds |= bit.get(g2, 0)
        diff = included ^ holds
        if not diff:
            continue
        for i, g2 in enumerate(names):
            if not diff >> i & 1:
                continue
            failures += 1
            key = (type_depth(g1) + type_depth(g2), str(g1), str(g2))
            if best is None or key < best[0]:
                verdict = subsigns(GenericObjectSignature(g1, sce), GenericObjectSignature(g2, sce))
                best = (key, Counterexample(g1, g2, verdict.holds, verdict.chain, den[g1], den[g2]))
    n = len(universe.names)
    if best is None:
        return TheoremReport(universe_size=n, pairs_checked=n * n)
    ce = best[1]
    if ce.subsigns:
        why = f"{ce.sub} subsigns {ce.sup} but its denotation is not included: missing {sorted(map(str, ce.missing))}"
    else:
        why = f"denotation of {ce.sub} is included in that of {ce.sup} but {ce.sub} does not subsign {ce.sup}"
    diag = error("E230", why, related=[str(ce.sub), str(ce.sup)])
    return TheoremReport((diag,), n, n * n, failures, ce)
