"""Seeded generator of random well-formed constructor environments.

Constructors are built one at a time; supersignatures only point at
earlier constructors, so the head graph is acyclic by construction.
Inherited members are copied down with the substitution applied, which is
the only way a random environment can satisfy member matching.  Every
candidate is run through the checker and discarded if it fails.
"""

from __future__ import annotations

import random
from dataclasses import replace
from typing import Optional, Sequence

from gnoop.syntax import (
    App,
    BoundedVar,
    ConstructorEnvironment,
    FieldSig,
    MethodSig,
    SignatureConstructor,
    TypeName,
    Var,
    rename_constructor,
)
from gnoop.wellformed import inherited_members, wf_env

NAME_POOL = ("Box", "Cell", "Node", "Tree", "Opt", "Res", "Nat", "Str", "Seq", "Map")
CLASS_VARS = ("T", "U")
METHOD_VARS = ("X", "Y")
TOP = "Object"


class _Gen:
    def __init__(self, rng: random.Random, max_arity: int, bound_prob: float, poly_prob: float):
        self.rng = rng
        self.max_arity = max_arity
        self.bound_prob = bound_prob
        self.poly_prob = poly_prob

    def app(self, pool: Sequence[SignatureConstructor], scope: Sequence[str], budget: int) -> App:
        choices = [sc for sc in pool if budget > 0 or sc.arity == 0]
        sc = self.rng.choice(choices)
        return App(sc.name, tuple(self.type(pool, scope, budget - 1) for _ in range(sc.arity)))

    def type(self, pool: Sequence[SignatureConstructor], scope: Sequence[str], budget: int) -> TypeName:
        if scope and self.rng.random() < 0.45:
            return Var(self.rng.choice(list(scope)))
        return self.app(pool, scope, budget)

    def constructor(self, name: str, earlier: list[SignatureConstructor]) -> Optional[SignatureConstructor]:
        rng = self.rng
        arity = rng.choices(range(self.max_arity + 1), weights=[35, 40, 25][: self.max_arity + 1])[0]
        tvar_names = CLASS_VARS[:arity]
        # A placeholder of the right arity lets members and bounds refer to the constructor itself.
        pool = earlier + [SignatureConstructor(name, tuple(BoundedVar(v) for v in tvar_names))]

        tvars = []
        for v in tvar_names:
            bound = None
            if rng.random() < self.bound_prob:
                bound = self.app(pool, tvar_names, 2)
            tvars.append(BoundedVar(v, bound))

        candidates = [sc for sc in earlier if sc.name != TOP]
        heads = rng.sample(candidates, k=min(len(candidates), rng.choice((0, 1, 1, 2))))
        supers: list[TypeName] = [
            App(h.name, tuple(self.type(earlier, tvar_names, 1) for _ in range(h.arity))) for h in heads
        ]
        if not supers:
            supers = [App(TOP)]

        skeleton = SignatureConstructor(name, tuple(tvars), tuple(supers))
        inh_fields, inh_methods = inherited_members(skeleton, ConstructorEnvironment.of(earlier + [skeleton]))
        fields: dict[str, FieldSig] = {}
        for _, f in inh_fields:
            if fields.setdefault(f.label, f) != f:
                return None
        methods: dict[str, MethodSig] = {}
        for _, m in inh_methods:
            if methods.setdefault(m.label, m) != m:
                return None

        stem = name.lower()
        for i in range(rng.randint(0, 2)):
            fields[f"{stem}_f{i}"] = FieldSig(f"{stem}_f{i}", self.type(pool, tvar_names, 2))
        for i in range(rng.randint(0, 2)):
            mtvars: tuple[BoundedVar, ...] = ()
            scope = list(tvar_names)
            if rng.random() < self.poly_prob:
                mtvars = (BoundedVar(METHOD_VARS[0]),)
                scope.append(METHOD_VARS[0])
            params = tuple(self.type(pool, scope, 2) for _ in range(rng.randint(0, 2)))
            methods[f"{stem}_m{i}"] = MethodSig(f"{stem}_m{i}", params, self.type(pool, scope, 2), mtvars)

        sc = SignatureConstructor(name, tuple(tvars), tuple(supers), tuple(fields.values()), tuple(methods.values()))
        # Inherited methods arrive with canonical method variables; give them user-level names.
        method_maps = {
            m.label: {v: METHOD_VARS[i] for i, v in enumerate(m.mtvar_names)} for m in sc.methods if m.mtvars
        }
        return rename_constructor(sc, {}, method_maps)


def random_env(
    rng: random.Random,
    max_constructors: int = 5,
    max_arity: int = 2,
    bound_prob: float = 0.2,
    poly_prob: float = 0.1,
    attempts: int = 25,
) -> ConstructorEnvironment:
    """One well-formed environment with an ``Object`` top and at most ``max_constructors`` bindings."""
    gen = _Gen(rng, max_arity, bound_prob, poly_prob)
    constructors = [SignatureConstructor(TOP)]
    for name in rng.sample(NAME_POOL, rng.randint(1, max_constructors - 1)):
        for _ in range(attempts):
            sc = gen.constructor(name, constructors)
            if sc is not None and wf_env(ConstructorEnvironment.of(constructors + [sc])).ok:
                constructors.append(sc)
                break
        else:
            constructors.append(SignatureConstructor(name, supers=(App(TOP),)))
    env = ConstructorEnvironment.of(constructors)
    assert wf_env(env).ok
    return env


def campaign(count: int = 200, seed: int = 20240601, **kwargs) -> list[ConstructorEnvironment]:
    rng = random.Random(seed)
    return [random_env(rng, **kwargs) for _ in range(count)]


def unbounded(env: ConstructorEnvironment) -> ConstructorEnvironment:
    """The same environment with every bound dropped (still well-formed)."""
    return ConstructorEnvironment(
        tuple(
            (
                n,
                replace(
                    sc,
                    tvars=tuple(BoundedVar(b.var) for b in sc.tvars),
                    methods=tuple(replace(m, mtvars=tuple(BoundedVar(b.var) for b in m.mtvars)) for m in sc.methods),
                ),
            )
            for n, sc in env.bindings
        )
    )


def alpha_rename(env: ConstructorEnvironment, rng: random.Random) -> ConstructorEnvironment:
    """Rename every class and method type variable to a fresh, randomly chosen name.

    The renaming is injective within each binder scope and avoids constructor names,
    so the result is alpha-equivalent to ``env`` binding by binding.
    """
    out = []
    for n, sc in env.bindings:
        pool = [f"V{i}" for i in range(100) if f"V{i}" not in env]
        rng.shuffle(pool)
        class_map = {v: pool.pop() for v in sc.tvar_names}
        method_maps = {}
        for m in sc.methods:
            mpool = [f"W{i}" for i in range(100) if f"W{i}" not in env]
            rng.shuffle(mpool)
            method_maps[m.label] = {v: mpool.pop() for v in m.mtvar_names}
        out.append((n, rename_constructor(sc, class_map, method_maps)))
    return ConstructorEnvironment(tuple(out))
