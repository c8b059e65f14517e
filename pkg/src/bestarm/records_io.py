"""CSV persistence for experiment records.

Fixed schema, UTF-8, "\n" newlines, floats at 12 significant digits.
Record labels are comma-free by construction, so rows are plain joins and
the output bytes are a pure function of the records.
"""

from __future__ import annotations

from .errors import DomainError
from .harness import ExperimentRecord

CSV_HEADER = ("algorithm,instance,family,param,metric_grid_value,replications,"
              "error_rate,error_ci_halfwidth,mean_tau,std_tau,exhausted_count,seed")


def format_float(x: float) -> str:
    return f"{x:.12g}"


def record_row(rec: ExperimentRecord) -> str:
    fields = [
        rec.algorithm,
        rec.instance,
        rec.family,
        rec.param,
        format_float(rec.grid_value),
        str(rec.replications),
        format_float(rec.error_rate),
        format_float(rec.error_ci_halfwidth),
        format_float(rec.mean_tau),
        format_float(rec.std_tau),
        str(rec.exhausted_count),
        str(rec.master_seed),
    ]
    for f in fields:
        if "," in f or "\n" in f:
            raise DomainError(f"record field {f!r} would break the CSV layout")
    return ",".join(fields)


def records_to_csv(records: list[ExperimentRecord]) -> str:
    lines = [CSV_HEADER]
    lines.extend(record_row(r) for r in records)
    return "\n".join(lines) + "\n"


def write_records(records: list[ExperimentRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(records_to_csv(records))


def read_records(path: str) -> list[ExperimentRecord]:
    """Parse a records CSV back; floats carry the file's 12-digit precision."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise DomainError(f"{path} does not carry the expected records header")
    out = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != 12:
            raise DomainError(f"malformed record row: {line!r}")
        out.append(ExperimentRecord(
            algorithm=parts[0],
            instance=parts[1],
            family=parts[2],
            param=parts[3],
            grid_value=float(parts[4]),
            replications=int(parts[5]),
            error_rate=float(parts[6]),
            error_ci_halfwidth=float(parts[7]),
            mean_tau=float(parts[8]),
            std_tau=float(parts[9]),
            exhausted_count=int(parts[10]),
            master_seed=int(parts[11]),
        ))
    return out
