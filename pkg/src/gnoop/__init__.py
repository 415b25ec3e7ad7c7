"""Checker for generic nominal object signature environments."""

from gnoop.denote import GroundUniverse, TheoremReport, denote, enumerate_ground_names, theorem_check
from gnoop.diagnostics import Diagnostic, GnoopError, SourceSpan, WfReport
from gnoop.erasure import (
    ErasureConfig,
    check_erasure_theorem,
    erase_env,
    erase_env_by_instantiation,
    erase_gos,
    erase_name,
    inject_top,
)
from gnoop.parser import parse_env, parse_type_name, render
from gnoop.subsign import gss, subsigns, valid_ground_name
from gnoop.subst import (
    Substitution,
    expansiveness,
    ground_of,
    instantiate,
    instantiation_closure,
    substitute,
)
from gnoop.syntax import (
    App,
    BoundedVar,
    ConstructorEnvironment,
    FieldSig,
    GenericObjectSignature,
    GroundSignature,
    MethodSig,
    SignatureConstructor,
    Var,
    alpha_canonicalize,
    sc_equal,
)
from gnoop.wellformed import sce_extends, wf_constructor, wf_env, wf_type_name

__version__ = "0.1.0"

__all__ = [
    "App", "BoundedVar", "ConstructorEnvironment", "Diagnostic", "ErasureConfig", "FieldSig",
    "GenericObjectSignature", "GnoopError", "GroundSignature", "GroundUniverse", "MethodSig",
    "SignatureConstructor", "SourceSpan", "Substitution", "TheoremReport", "Var", "WfReport",
    "alpha_canonicalize", "check_erasure_theorem", "denote", "enumerate_ground_names", "erase_env",
    "erase_env_by_instantiation", "erase_gos", "erase_name", "expansiveness", "ground_of", "gss",
    "inject_top", "instantiate", "instantiation_closure", "parse_env", "parse_type_name", "render",
    "sc_equal", "sce_extends", "subsigns", "substitute", "theorem_check", "valid_ground_name",
    "wf_constructor", "wf_env", "wf_type_name",
]
