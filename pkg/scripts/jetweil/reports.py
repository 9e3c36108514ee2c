#!/usr/bin/env python3
"""
Verification Reports

Check functions return Case records; the CLI collects them into a Report,
serialized as canonical JSON so that identical runs give identical bytes.
"""

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .errors import SignInconsistent, WeilError

try:
    import pystache
    MUSTACHE_AVAILABLE = True
except ImportError:
    MUSTACHE_AVAILABLE = False

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
ERROR = "error"


def payload(value: Any) -> Any:
    """JSON-ready form of a compared value"""
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if hasattr(value, "to_records"):
        return value.to_records()
    if isinstance(value, (list, tuple)):
        return [payload(v) for v in value]
    return value


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def fingerprint(value: Any) -> str:
    return hashlib.sha256(canonical_json(payload(value)).encode("utf-8")).hexdigest()


@dataclass
class Case:
    """One verified identity"""

    name: str
    status: str = PASS
    sign: Optional[int] = None
    lhs_hash: Optional[str] = None
    rhs_hash: Optional[str] = None
    witness: Optional[Any] = None
    note: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> Dict[str, Any]:
        return {key: value for key, value in asdict(self).items() if value is not None}


def compare(name: str, lhs: Any, rhs: Any, *, allow_sign: bool = False,
            note: Optional[str] = None) -> Case:
    """Case for lhs == rhs, or lhs == -rhs when a projective sign is allowed"""
    case = Case(name=name, lhs_hash=fingerprint(lhs), rhs_hash=fingerprint(rhs), note=note)
    if lhs == rhs:
        case.sign = 1 if allow_sign else None
    elif allow_sign and lhs == -rhs:
        case.sign = -1
    else:
        case.status = FAIL
        case.witness = {"lhs": payload(lhs), "rhs": payload(rhs)}
    return case


def sign_case(name: str, pairs: Sequence[Tuple[Any, Any]], *, projective: bool = True,
              note: Optional[str] = None) -> Case:
    """
    One case over several probes. With projective=True every pair must agree
    up to a single common sign; a probe whose sides vanish fixes no sign.
    """
    lhs_all = [lhs for lhs, _ in pairs]
    rhs_all = [rhs for _, rhs in pairs]
    case = Case(name=name, lhs_hash=fingerprint(lhs_all), rhs_hash=fingerprint(rhs_all), note=note)
    sign = None
    for index, (lhs, rhs) in enumerate(pairs):
        if lhs == rhs:
            this = 1
        elif projective and lhs == -rhs:
            this = -1
        else:
            case.status = FAIL
            case.witness = {"probe": index, "lhs": payload(lhs), "rhs": payload(rhs)}
            return case
        if this == 1 and lhs == -rhs:
            continue
        if sign is None:
            sign = this
        elif sign != this:
            raise SignInconsistent(
                f"probe {index} gives sign {this}, earlier probes gave {sign}",
                witness={"probe": index, "lhs": payload(lhs), "rhs": payload(rhs)},
            )
    if projective:
        case.sign = sign or 1
    return case


def guarded(name: str, check: Callable[[], Case]) -> Case:
    """Run a check, turning library errors into an error case"""
    try:
        return check()
    except WeilError as exc:
        return Case(name=name, status=ERROR, note=f"{type(exc).__name__}: {exc}",
                    witness=getattr(exc, "witness", None))


@dataclass
class Report:
    suite: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    cases: List[Case] = field(default_factory=list)

    def add(self, case: Case) -> "Report":
        self.cases.append(case)
        return self

    def extend(self, cases: List[Case]) -> "Report":
        self.cases.extend(cases)
        return self

    @property
    def passed(self) -> bool:
        return all(case.passed for case in self.cases)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def summary(self) -> Dict[str, int]:
        return {
            "total": len(self.cases),
            "passed": sum(1 for c in self.cases if c.status == PASS),
            "failed": sum(1 for c in self.cases if c.status == FAIL),
            "errors": sum(1 for c in self.cases if c.status == ERROR),
        }

    def to_dict(self) -> Dict[str, Any]:
        names = [case.name for case in self.cases]
        if len(names) != len(set(names)):
            raise ValueError(f"duplicate case names in suite {self.suite}")
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "exact": True,
            "parameters": self.parameters,
            "cases": [case.to_dict() for case in sorted(self.cases, key=lambda c: c.name)],
            "summary": self.summary(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def render_markdown(self, template_file: Path) -> str:
        """Human-readable summary from a Mustache template"""
        if not MUSTACHE_AVAILABLE:
            raise RuntimeError("pystache library required. Install with: pip install pystache")
        with open(template_file, "r", encoding="utf-8") as f:
            template = f.read()
        context = self.to_dict()
        context["status_line"] = "all cases pass" if self.passed else "FAILURES PRESENT"
        context["failures"] = [c for c in context["cases"] if c["status"] != PASS]
        context["notes"] = [c for c in context["cases"] if "note" in c and c["status"] == PASS]
        context["has_failures"] = bool(context["failures"])
        context["has_notes"] = bool(context["notes"])
        context["parameter_list"] = [
            {"key": key, "value": json.dumps(value, sort_keys=True)}
            for key, value in sorted(self.parameters.items())
        ]
        return pystache.Renderer().render(template, context)
