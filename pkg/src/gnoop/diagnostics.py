"""Diagnostics, source spans and check reports.

Codes are stable API.  Ranges: E000-E099 parser, E100-E199 well-formedness,
E200-E209 substitution, E210-E219 validity, E220-E229 erasure,
E230-E239 denotation oracle, E299 internal consistency.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

ERROR = "error"
WARNING = "warning"

CATALOG = {
    "E000": "syntax error",
    "E001": "duplicate constructor name",
    "E002": "duplicate type variable",
    "E003": "universe too large",
    "E100": "unbound constructor name",
    "E101": "arity mismatch",
    "E102": "type variable out of scope",
    "E103": "duplicate member label",
    "E104": "method type variable clash",
    "E105": "naked type variable bound",
    "E106": "binding name mismatch",
    "E110": "naked type variable supersignature",
    "E120": "missing inherited member",
    "E121": "inherited member signature mismatch",
    "E130": "supersignature cycle",
    "E200": "unbound type variable in substitution",
    "E201": "substitution does not match type variables",
    "E202": "non-ground type argument",
    "E203": "polymorphic method prevents full grounding",
    "E210": "bound violation",
    "E220": "top constructor missing or unsuitable",
    "E221": "bound erasure does not ground",
    "E230": "inheritance/subtyping counterexample",
    "E240": "expansive instantiation",
    "E241": "closure fuel exhausted",
    "E299": "erasure theorem violation",
}


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1:
            raise ValueError(f"invalid span {self.line}:{self.column}")


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    severity: str = ERROR
    span: Optional[SourceSpan] = None
    related: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.code not in CATALOG:
            raise ValueError(f"unknown diagnostic code {self.code}")
        if self.severity not in (ERROR, WARNING):
            raise ValueError(f"unknown severity {self.severity}")

    @property
    def is_error(self) -> bool:
        return self.severity == ERROR

    def to_json(self) -> dict:
        out = {"code": self.code, "severity": self.severity, "message": self.message}
        if self.span is not None:
            out["line"] = self.span.line
            out["column"] = self.span.column
        if self.related:
            out["related"] = list(self.related)
        return out

    def __str__(self) -> str:
        where = f"{self.span.line}:{self.span.column}: " if self.span else ""
        return f"{where}{self.severity} {self.code}: {self.message}"


@dataclass(frozen=True)
class WfReport:
    """Outcome of a check; ``ok`` iff no error-severity diagnostic is present."""

    diagnostics: tuple[Diagnostic, ...] = ()

    @property
    def ok(self) -> bool:
        return not any(d.is_error for d in self.diagnostics)

    @property
    def codes(self) -> list[str]:
        return [d.code for d in self.diagnostics]

    def __bool__(self) -> bool:
        return self.ok

    def __add__(self, other: "WfReport") -> "WfReport":
        return WfReport(self.diagnostics + other.diagnostics)

    @classmethod
    def of(cls, diags: Iterable[Diagnostic]) -> "WfReport":
        return cls(tuple(diags))


OK = WfReport()


class GnoopError(Exception):
    """Raised by operations whose contract is a value-or-error, carrying the diagnostics."""

    def __init__(self, diagnostics: Diagnostic | Iterable[Diagnostic]):
        if isinstance(diagnostics, Diagnostic):
            diagnostics = (diagnostics,)
        self.diagnostics: tuple[Diagnostic, ...] = tuple(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))

    @property
    def code(self) -> str:
        return self.diagnostics[0].code

    @property
    def codes(self) -> list[str]:
        return [d.code for d in self.diagnostics]


def error(code: str, message: str, span: Optional[SourceSpan] = None, related: Iterable[str] = ()) -> Diagnostic:
    return Diagnostic(code, message, ERROR, span, tuple(related))


def warning(code: str, message: str, span: Optional[SourceSpan] = None, related: Iterable[str] = ()) -> Diagnostic:
    return Diagnostic(code, message, WARNING, span, tuple(related))
