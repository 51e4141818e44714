# crossfam/reports.py

import functools
import json  # dump báo cáo JSON với sort_keys cố định
import time  # đo thời gian chạy từng phép kiểm tra
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Sequence, Union

import pandas as pd  # xuất bảng CSV

from pydantic import BaseModel, ConfigDict, Field

from .config import get_logger
from .errors import ReportWriteError
from .family_core import SetFamily

logger = get_logger(__name__)

# cột cố định đứng đầu, sau đó là computed.* và checks.* theo thứ tự chữ cái
CSV_COLUMNS = ["claim_id", "instance", "passed"]
# số nguyên vượt ngưỡng này được ghi dưới dạng chuỗi thập phân
_INT_LIMIT = 2**53


class VerificationReport(BaseModel):
    """Outcome of one claim check on one instance."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    claim_id: str
    instance: str
    passed: bool
    computed: Dict[str, Any] = Field(default_factory=dict)
    checks: Dict[str, bool] = Field(default_factory=dict)
    witnesses: Dict[str, Any] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)
    runtime_ms: int = 0


def make_report(
    claim_id: str,
    instance: str,
    checks: Dict[str, bool],
    computed: Dict[str, Any] = None,
    witnesses: Dict[str, Any] = None,
    notes: List[str] = None,
) -> VerificationReport:
    checks = {k: bool(v) for k, v in checks.items()}
    return VerificationReport(
        claim_id=claim_id,
        instance=instance,
        passed=all(checks.values()),
        computed=computed or {},
        checks=checks,
        witnesses=witnesses or {},
        notes=notes or [],
    )


def timed(func: Callable[..., VerificationReport]) -> Callable[..., VerificationReport]:
    """Stamp the wall time of a verifier into the returned report."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = func(*args, **kwargs)
        report.runtime_ms = int((time.perf_counter() - start) * 1000)
        return report

    return wrapper


def encode_rational(value: Fraction) -> Dict[str, Any]:
    with localcontext() as ctx:
        ctx.prec = 60
        decimal = (Decimal(value.numerator) / Decimal(value.denominator)).quantize(Decimal("1e-12"))
    return {"num": value.numerator, "den": value.denominator, "decimal": str(decimal)}


def encode_value(value: Any) -> Any:
    """Exact JSON form: rationals as num/den/decimal, big integers as decimal strings."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return encode_rational(value)
    if isinstance(value, int):
        return value if abs(value) < _INT_LIMIT else str(value)
    if isinstance(value, SetFamily):
        return value.as_lists()
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [encode_value(v) for v in value]
    if isinstance(value, float):
        raise TypeError("floating point values are not allowed in reports")
    if hasattr(value, "to_dict"):
        return encode_value(value.to_dict())
    return str(value)


def render_value(value: Any) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(render_value(v) for v in value) + "]"
    return str(value)


def comparable_payload(report: VerificationReport) -> Dict[str, Any]:
    return {
        "claim_id": report.claim_id,
        "instance": report.instance,
        "passed": report.passed,
        "computed": encode_value(report.computed),
        "checks": dict(report.checks),
        "witnesses": encode_value(report.witnesses),
        "notes": list(report.notes),
    }


def report_payload(report: VerificationReport) -> Dict[str, Any]:
    payload = comparable_payload(report)
    payload["volatile"] = {"runtime_ms": report.runtime_ms}
    return payload


def sort_reports(reports: Sequence[VerificationReport]) -> List[VerificationReport]:
    return sorted(reports, key=lambda r: (r.claim_id, r.instance))


def reports_to_json(reports: Sequence[VerificationReport]) -> str:
    return json.dumps([report_payload(r) for r in reports], sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def reports_to_frame(reports: Sequence[VerificationReport]) -> pd.DataFrame:
    """One row per report; computed values and checks flattened into their own columns."""
    if not reports:
        return pd.DataFrame(columns=CSV_COLUMNS)
    rows = [
        {
            "claim_id": r.claim_id,
            "instance": r.instance,
            "passed": r.passed,
            "computed": {k: render_value(v) for k, v in r.computed.items()},
            "checks": {k: render_value(v) for k, v in r.checks.items()},
        }
        for r in reports
    ]
    frame = pd.json_normalize(rows, sep=".")
    extra = sorted(c for c in frame.columns if c not in CSV_COLUMNS)
    return frame[CSV_COLUMNS + extra]


def write_report(reports: Sequence[VerificationReport], path: Union[str, Path], format: str = "json") -> Path:
    """Ghi báo cáo ra file JSON hoặc CSV; nội dung ổn định khi đầu vào giống nhau."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if format == "json":
            path.write_text(reports_to_json(reports), encoding="utf-8")
        elif format == "csv":
            reports_to_frame(reports).to_csv(path, index=False, encoding="utf-8", lineterminator="\n")
        else:
            raise ValueError(f"unknown report format {format!r}")
    except OSError as e:
        raise ReportWriteError(f"cannot write report to {path}: {e}") from e
    logger.info(f"Đã lưu {len(reports)} báo cáo vào {path}")
    return path
