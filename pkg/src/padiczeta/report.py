"""Per-identity verification records and their canonical renderings.

A report captures one checked identity instance: the two sides in canonical
form, the guaranteed precision of each side, the agreement depth (largest k
with lhs == rhs mod p^k), and a pass/fail status.  ``agreement_depth`` is
None when equality was certified exactly (rational identities, or a
difference that is the exact zero).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .padic import PadicNumber, agreement_depth, render

__all__ = [
    "VerificationReport",
    "compare_exact",
    "compare_values",
    "render_param",
    "reports_to_csv",
    "report_to_json_line",
    "report_to_text",
]


@dataclass(frozen=True)
class VerificationReport:
    identity: str
    params: tuple[tuple[str, str], ...]
    lhs: str
    rhs: str
    lhs_prec: int | None
    rhs_prec: int | None
    agreement_depth: int | None
    required_depth: int | None
    reference_depth: int | None  # the N (or step exponent) an oracle ran at
    status: str  # pass | fail | hypothesis-violation | budget
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status in ("pass", "hypothesis-violation")


def render_param(value) -> str:
    if isinstance(value, PadicNumber):
        return render(value)
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


def params_tuple(params: dict) -> tuple[tuple[str, str], ...]:
    return tuple((k, render_param(v)) for k, v in params.items())


def compare_values(
    identity: str,
    params: dict,
    lhs: PadicNumber,
    rhs: PadicNumber,
    required_depth: int | None = None,
    slack: int = 0,
    reference_depth: int | None = None,
    note: str = "",
    informational: bool = False,
) -> VerificationReport:
    """Build a report comparing two p-adic values.

    When ``required_depth`` is None the rule is the default one: pass iff
    the agreement depth reaches the minimum of the two sides' guaranteed
    precisions minus ``slack``.
    """
    depth = agreement_depth(lhs, rhs)
    lp = lhs.absprec
    rp = rhs.absprec
    shared = min(
        lp if lp is not None else math.inf,
        rp if rp is not None else math.inf,
    )
    if required_depth is None:
        required = shared - slack if shared != math.inf else None
    else:
        required = required_depth
    if informational:
        status = "pass"
    elif required is None:
        status = "pass" if depth == math.inf else "fail"
    else:
        status = "pass" if depth >= required else "fail"
    return VerificationReport(
        identity=identity,
        params=params_tuple(params),
        lhs=render(lhs),
        rhs=render(rhs),
        lhs_prec=lp,
        rhs_prec=rp,
        agreement_depth=None if depth == math.inf else int(depth),
        required_depth=None if required in (None, math.inf) else int(required),
        reference_depth=reference_depth,
        status=status,
        note=note,
    )


def compare_exact(
    identity: str, params: dict, lhs: Fraction, rhs: Fraction, note: str = ""
) -> VerificationReport:
    """Report on an exact rational identity (zero tolerance)."""
    return VerificationReport(
        identity=identity,
        params=params_tuple(params),
        lhs=str(lhs),
        rhs=str(rhs),
        lhs_prec=None,
        rhs_prec=None,
        agreement_depth=None,
        required_depth=None,
        reference_depth=None,
        status="pass" if lhs == rhs else "fail",
        note=note,
    )


def hypothesis_violation(identity: str, params: dict, note: str) -> VerificationReport:
    return VerificationReport(
        identity=identity,
        params=params_tuple(params),
        lhs="",
        rhs="",
        lhs_prec=None,
        rhs_prec=None,
        agreement_depth=None,
        required_depth=None,
        reference_depth=None,
        status="hypothesis-violation",
        note=note,
    )


def budget_failure(identity: str, params: dict, note: str) -> VerificationReport:
    return VerificationReport(
        identity=identity,
        params=params_tuple(params),
        lhs="",
        rhs="",
        lhs_prec=None,
        rhs_prec=None,
        agreement_depth=None,
        required_depth=None,
        reference_depth=None,
        status="budget",
        note=note,
    )


def report_to_json_line(rep: VerificationReport) -> str:
    obj = {
        "identity": rep.identity,
        "params": dict(rep.params),
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "lhs_prec": rep.lhs_prec,
        "rhs_prec": rep.rhs_prec,
        "agreement_depth": rep.agreement_depth,
        "required_depth": rep.required_depth,
        "reference_depth": rep.reference_depth,
        "status": rep.status,
        "note": rep.note,
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def report_to_text(rep: VerificationReport) -> str:
    params = " ".join(f"{k}={v}" for k, v in rep.params)
    depth = "exact" if rep.agreement_depth is None else str(rep.agreement_depth)
    req = "-" if rep.required_depth is None else str(rep.required_depth)
    line = f"[{rep.status:>20}] {rep.identity} {params} depth={depth} required={req}"
    if rep.note:
        line += f"  # {rep.note}"
    return line


CSV_FIELDS = [
    "identity",
    "status",
    "agreement_depth",
    "required_depth",
    "reference_depth",
    "lhs_prec",
    "rhs_prec",
    "params",
    "lhs",
    "rhs",
    "note",
]


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rep in reports:
        writer.writerow(
            {
                "identity": rep.identity,
                "status": rep.status,
                "agreement_depth": rep.agreement_depth,
                "required_depth": rep.required_depth,
                "reference_depth": rep.reference_depth,
                "lhs_prec": rep.lhs_prec,
                "rhs_prec": rep.rhs_prec,
                "params": " ".join(f"{k}={v}" for k, v in rep.params),
                "lhs": rep.lhs,
                "rhs": rep.rhs,
                "note": rep.note,
            }
        )
    return buf.getvalue()
