"""Cross-module laws checked on generated environments."""

import random

from hypothesis import given, strategies as st

from gnoop.denote import enumerate_ground_names, theorem_check
from gnoop.erasure import erase_env
from gnoop.generate import alpha_rename, random_env
from gnoop.parser import parse_env, render
from gnoop.subsign import subsigns, valid_ground_name
from gnoop.syntax import GenericObjectSignature, alpha_canonicalize, canonicalize_env, sc_equal
from gnoop.wellformed import sce_extends, wf_env

from conftest import envs


@given(envs())
def test_canonicalize_idempotent(env):
    for sc in env.constructors():
        once = alpha_canonicalize(sc)
        assert alpha_canonicalize(once) == once


@given(envs(), st.integers(0, 2**16))
def test_sc_equal_is_an_equivalence(env, seed):
    renamed = alpha_rename(env, random.Random(seed))
    again = alpha_rename(renamed, random.Random(seed + 1))
    for a, b, c in zip(env.constructors(), renamed.constructors(), again.constructors()):
        assert sc_equal(a, a)
        assert sc_equal(a, b) and sc_equal(b, a)
        assert sc_equal(b, c) and sc_equal(a, c)
    assert canonicalize_env(env) == canonicalize_env(renamed)


@given(envs(), st.integers(0, 2**16))
def test_alpha_renamed_env_round_trips(env, seed):
    renamed = alpha_rename(env, random.Random(seed))
    assert parse_env(render(renamed)) == renamed


@given(envs(), st.integers(0, 2**16))
def test_alpha_invariance(env, seed):
    renamed = alpha_rename(env, random.Random(seed))
    assert wf_env(renamed).ok
    assert sce_extends(env, renamed) and sce_extends(renamed, env)
    names = enumerate_ground_names(env, 1).names
    assert enumerate_ground_names(renamed, 1).names == names
    for g in names:
        assert valid_ground_name(env, g).ok == valid_ground_name(renamed, g).ok
        for h in names[:8]:
            assert bool(subsigns(GenericObjectSignature(g, env), GenericObjectSignature(h, env))) == bool(
                subsigns(GenericObjectSignature(g, renamed), GenericObjectSignature(h, renamed))
            )
    assert erase_env(env) == erase_env(renamed)
    assert theorem_check(env, 1).counterexamples == theorem_check(renamed, 1).counterexamples


def test_generator_is_deterministic():
    a = random_env(random.Random(7))
    b = random_env(random.Random(7))
    assert render(a) == render(b)


@given(envs(max_constructors=3, max_arity=1))
def test_generator_respects_limits(env):
    assert len(env) <= 3
    assert all(sc.arity <= 1 for sc in env.constructors())
    assert wf_env(env).ok
