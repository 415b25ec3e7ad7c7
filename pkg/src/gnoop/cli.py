"""Command-line front end.

Exit status: 0 clean, 1 at least one error diagnostic (or, with
``--strict``, a warning finding), 2 usage or parse failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, TextIO

from gnoop.denote import DEFAULT_CAP, denote, enumerate_ground_names, theorem_check
from gnoop.diagnostics import Diagnostic, GnoopError, error, warning
from gnoop.erasure import ErasureConfig, check_erasure_theorem, erase_env, erase_gos, inject_top
from gnoop.parser import parse_env, parse_type_name, render, render_type
from gnoop.subsign import subsigns, valid_ground_name, validate_env_usage
from gnoop.subst import expansiveness, ground_of, instantiation_closure
from gnoop.syntax import App, ConstructorEnvironment, GenericObjectSignature, GroundSignature, is_ground
from gnoop.wellformed import wf_env, wf_type_name

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2

COMMANDS = (
    "check",
    "subsign",
    "instantiate",
    "erase",
    "validate",
    "closure",
    "expansive",
    "enumerate",
    "denote",
    "theorem-check",
)


class UsageError(Exception):
    pass


@dataclass
class Outcome:
    diagnostics: list[Diagnostic] = field(default_factory=list)
    result: dict = field(default_factory=dict)
    lines: list[str] = field(default_factory=list)


def _ground_name(text: str, env: ConstructorEnvironment) -> App:
    t = parse_type_name(text, env)
    report = wf_type_name(t, env)
    if not report.ok:
        raise GnoopError(report.diagnostics)
    if not is_ground(t):
        raise GnoopError(error("E202", f"{text} is not a ground type name"))
    return t  # type: ignore[return-value]


def _needs_args(args: argparse.Namespace, n: int, what: str) -> list[str]:
    if len(args.names) != n:
        raise UsageError(f"{args.command} expects {what}")
    return args.names


def _signature_json(gs: GroundSignature) -> dict:
    return {
        "name": str(gs.name),
        "supers": [render_type(s) for s in gs.supers],
        "fields": [{"label": f.label, "type": render_type(f.ty)} for f in gs.fields],
        "methods": [
            {
                "label": m.label,
                "tvars": list(m.mtvar_names),
                "params": [render_type(p) for p in m.params],
                "return": render_type(m.ret),
            }
            for m in gs.methods
        ],
    }


def cmd_check(env: ConstructorEnvironment, args: argparse.Namespace) -> Outcome:
    out = Outcome(result={"constructors": len(env)})
    out.lines.append(f"well-formed: {len(env)} constructors")
    return out


def cmd_subsign(env: ConstructorEnvironment, args: argparse.Namespace) -> Outcome:
    sub_text, sup_text = _needs_args(args, 2, "two type names: SUB SUPER")
    sub, sup = _ground_name(sub_text, env), _ground_name(sup_text, env)
    verdict = subsigns(GenericObjectSignature(sub, env), GenericObjectSignature(sup, env))
    chain = [str(g) for g in verdict.chain]
    out = Outcome(result={"sub": str(sub), "sup": str(sup), "holds": verdict.holds, "chain": chain})
    out.lines.append(f"{sub} {'subsigns' if verdict.holds else 'does not subsign'} {sup}")
    if chain:
        out.lines.append("chain: " + " <: ".join(chain))
    return out


def cmd_instantiate(env: ConstructorEnvironment, args: argparse.Namespace) -> Outcome:
    (text,) = _needs_args(args, 1, "one ground type name")
    g = _ground_name(text, env)
    gs = ground_of(GenericObjectSignature(g, env), relaxed=True)
    out = Outcome(result=_signature_json(gs))
    poly = [m.label for m in gs.methods if m.mtvars]
    if poly:
        out.diagnostics.append(warning("E203", f"polymorphic method(s) {', '.join(poly)} kept schematic", related=poly))
    out.lines.append(f"ground signature {gs.name}")
    out.lines.append("  supers: " + (", ".join(render_type(s) for s in gs.supers) or "(none)"))
    for f in gs.fields:
        out.lines.append(f"  field {f.label}: {render_type(f.ty)}")
    for m in gs.methods:
        tv = f"<{','.join(m.mtvar_names)}>" if m.mtvars else ""
        out.lines.append(f"  method {m.label}{tv}({', '.join(render_type(p) for p in m.params)}): {render_type(m.ret)}")
    return out


def cmd_erase(env: ConstructorEnvironment, args: argparse.Namespace) -> Outcome:
    cfg = ErasureConfig(args.top)
    erased = erase_env(env, cfg)
    text = render(erased)
    out = Outcome(result={"env": text})
    out.lines.append(text.rstrip("\n"))
    for name in args.names:
        g = _ground_name(name, env)
        gos = GenericObjectSignature(g, env)
        out.result.setdefault("names", []).append({"name": str(g), "erased": str(erase_gos(gos, cfg).name)})
        out.lines.append(f"{g} erases to {erase_gos(gos, cfg).name}")
        out.diagnostics.extend(check_erasure_theorem(gos, cfg).diagnostics)
    return out


def cmd_validate(env: ConstructorEnvironment, args: argparse.Namespace) -> Outcome:
    out = Outcome()
    out.diagnostics.extend(validate_env_usage(env).diagnostics)
    checked = []
    for name in args.names:
        g = _ground_name(name, env)
        report = valid_ground_name(env, g)
        checked.append({"name": str(g), "valid": report.ok})
        out.diagnostics.extend(report.diagnostics)
        out.lines.append(f"{g}: {'valid' if report.ok else 'invalid'}")
    out.result = {"names": checked}
    if not out.diagnostics:
        out.lines.append("all ground type names are valid")
    return out


def cmd_closure(env: ConstructorEnvironment, args: argparse.Namespace) -> Outcome:
    (text,) = _needs_args(args, 1, "one ground type name")
    g = _ground_name(text, env)
    res = instantiation_closure(GenericObjectSignature(g, env), args.fuel)
    names = [str(n) for n in res.names]
    out = Outcome(result={"closure": names, "exhausted_fuel": res.exhausted_fuel})
    out.lines.extend(names)
    if res.exhausted_fuel:
        out.diagnostics.append(warning("E241", f"closure of {g} truncated after {args.fuel} names", related=[str(g)]))
    return out


def cmd_expansive(env: ConstructorEnvironment, args: argparse.Namespace) -> Outcome:
    rep = expansiveness(env)
    witness = [{"constructor": n, "index": i} for n, i in rep.witness_cycle]
    out = Outcome(result={"expansive": rep.expansive, "witness": witness, "expansive_steps": list(rep.expansive_steps)})
    if rep.expansive:
        steps = []
        for (a, b), exp in zip(zip(rep.witness_cycle, rep.witness_cycle[1:]), rep.expansive_steps):
            steps.append(f"({a[0]},{a[1]}) -{'expansive' if exp else 'plain'}-> ({b[0]},{b[1]})")
        out.diagnostics.append(
            warning("E240", "expansive instantiation cycle: " + ", ".join(steps), related=[n for n, _ in rep.witness_cycle])
        )
        out.lines.append("expansive")
        out.lines.extend("  " + s for s in steps)
    else:
        out.lines.append("non-expansive")
    return out


def _universe(env: ConstructorEnvironment, args: argparse.Namespace):
    return enumerate_ground_names(env, args.depth, args.valid_only, args.cap)


def cmd_enumerate(env: ConstructorEnvironment, args: argparse.Namespace) -> Outcome:
    u = _universe(env, args)
    names = [str(g) for g in u.names]
    out = Outcome(result={"names": names, "universe_size": len(names), "depth": args.depth})
    out.lines.extend(names)
    out.lines.append(f"{len(names)} ground names at depth <= {args.depth}")
    return out


def cmd_denote(env: ConstructorEnvironment, args: argparse.Namespace) -> Outcome:
    (text,) = _needs_args(args, 1, "one ground type name")
    g = _ground_name(text, env)
    u = _universe(env, args)
    members = sorted(str(h) for h in denote(GenericObjectSignature(g, env), u))
    out = Outcome(result={"name": str(g), "denotation": members, "universe_size": len(u)})
    out.lines.extend(members)
    out.lines.append(f"{len(members)} of {len(u)} universe names")
    return out


def cmd_theorem_check(env: ConstructorEnvironment, args: argparse.Namespace) -> Outcome:
    rep = theorem_check(env, args.depth, args.valid_only, args.cap)
    ce = rep.counterexample.to_json() if rep.counterexample else None
    out = Outcome(
        diagnostics=list(rep.diagnostics),
        result={
            "universe_size": rep.universe_size,
            "pairs_checked": rep.pairs_checked,
            "counterexamples": rep.counterexamples,
            "counterexample": ce,
        },
    )
    out.lines.append(f"{rep.pairs_checked} ordered pairs over {rep.universe_size} names: {rep.counterexamples} counterexample(s)")
    return out


HANDLERS: dict[str, Callable[[ConstructorEnvironment, argparse.Namespace], Outcome]] = {
    "check": cmd_check,
    "subsign": cmd_subsign,
    "instantiate": cmd_instantiate,
    "erase": cmd_erase,
    "validate": cmd_validate,
    "closure": cmd_closure,
    "expansive": cmd_expansive,
    "enumerate": cmd_enumerate,
    "denote": cmd_denote,
    "theorem-check": cmd_theorem_check,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gnoop", description="Checker for generic nominal signature environments.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input_path", help=".gnoop declaration file")
    p.add_argument("names", nargs="*", help="type-name arguments, parsed against the loaded environment")
    p.add_argument("--json", action="store_true", help="emit one JSON document")
    p.add_argument("--stable", action="store_true", help="omit the timestamp so JSON output is byte-stable")
    p.add_argument("--top", default="Object", help="name of the top constructor (default: Object)")
    p.add_argument("--inject-top", action="store_true", help="add the top constructor and make it the super of every root")
    p.add_argument("--fuel", type=int, default=1000, help="closure size cap (default: 1000)")
    p.add_argument("--depth", type=int, default=2, help="ground-name nesting depth (default: 2)")
    p.add_argument("--valid-only", action="store_true", help="restrict universes to valid ground names")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help=f"universe size cap (default: {DEFAULT_CAP})")
    p.add_argument("--strict", action="store_true", help="warning findings also exit 1")
    return p


def _color(stream: TextIO) -> bool:
    return os.environ.get("GNOOP_COLOR", "1") != "0" and hasattr(stream, "isatty") and stream.isatty()


def _emit(
    args: Optional[argparse.Namespace],
    command: str,
    diagnostics: Sequence[Diagnostic],
    result: dict,
    lines: Sequence[str],
    stdout: TextIO,
) -> None:
    ok = not any(d.is_error for d in diagnostics)
    if args is not None and args.json:
        doc = {
            "command": command,
            "ok": ok,
            "diagnostics": [d.to_json() for d in diagnostics],
            "result": result,
        }
        if not args.stable:
            doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
        stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return
    color = _color(stdout)
    for d in diagnostics:
        text = str(d)
        if color:
            text = ("\033[31m" if d.is_error else "\033[33m") + text + "\033[0m"
        stdout.write(text + "\n")
    for line in lines:
        stdout.write(line + "\n")


def run(argv: Optional[Sequence[str]] = None, stdout: TextIO = sys.stdout, stderr: TextIO = sys.stderr) -> int:
    parser = build_parser()
    try:
        args = parser.parse_intermixed_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.fuel < 1 or args.depth < 0:
        stderr.write("gnoop: --fuel must be positive and --depth nonnegative\n")
        return EXIT_USAGE

    try:
        with open(args.input_path, encoding="utf-8") as fh:
            source = fh.read()
    except OSError as exc:
        stderr.write(f"gnoop: cannot read {args.input_path}: {exc.strerror}\n")
        return EXIT_USAGE

    try:
        env = parse_env(source)
    except GnoopError as exc:
        _emit(args, args.command, exc.diagnostics, {}, [], stdout)
        return EXIT_USAGE
    if args.inject_top:
        env = inject_top(env, args.top)

    report = wf_env(env)
    if not report.ok:
        _emit(args, args.command, report.diagnostics, {}, [], stdout)
        return EXIT_FINDINGS

    try:
        outcome = HANDLERS[args.command](env, args)
    except UsageError as exc:
        stderr.write(f"gnoop: {exc}\n")
        return EXIT_USAGE
    except GnoopError as exc:
        # type-name arguments that fail to parse are usage errors; semantic failures are findings
        _emit(args, args.command, exc.diagnostics, {}, [], stdout)
        return EXIT_USAGE if exc.code == "E000" else EXIT_FINDINGS

    diags = list(report.diagnostics) + outcome.diagnostics
    _emit(args, args.command, diags, outcome.result, outcome.lines, stdout)
    if any(d.is_error for d in diags):
        return EXIT_FINDINGS
    if args.strict and diags:
        return EXIT_FINDINGS
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
