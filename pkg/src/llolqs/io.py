"""File formats: observable replays, matrix records, trace and sweep CSVs.

Observable replay grammar (line oriented)::

    d=<int>                      header, once, first nonblank line
    <re>:<im> <re>:<im> ...      d entries per row, d rows per record,
    ...                          row-major; records separated by one or
                                 more blank lines

Numbers are written with 17 significant digits, so writer output parses back
bit-exactly.  The same record format (with header) stores a single density
matrix.  CSV floats use the same rule; ``float(cell)`` recovers the value
exactly.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .game import GameTrace, SweepCell
from .hermitian import Matrix, hermitize


class ReplayFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_entry(z: complex) -> str:
    return f"{fmt(z.real)}:{fmt(z.imag)}"


def _matrix_lines(m: Matrix) -> list[str]:
    return [" ".join(_fmt_entry(m[i, j]) for j in range(m.shape[1])) for i in range(m.shape[0])]


def write_observables(path: str | Path, observables: Sequence[Matrix]) -> None:
    if not observables:
        raise ValueError("refusing to write an empty replay")
    d = observables[0].shape[0]
    out = [f"d={d}"]
    for a in observables:
        if a.shape != (d, d):
            raise ValueError(f"mixed dimensions in replay: {a.shape} vs {(d, d)}")
        out.extend(_matrix_lines(np.asarray(a, dtype=complex)))
        out.append("")
    Path(path).write_text("\n".join(out))


def _parse_entry(token: str, line_no: int) -> complex:
    parts = token.split(":")
    if len(parts) != 2:
        raise ReplayFormatError(f"entry {token!r} is not re:im", line_no)
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise ReplayFormatError(f"entry {token!r} has non-numeric parts", line_no) from None


def read_observables(path: str | Path) -> list[Matrix]:
    """Parse a replay file; raises ReplayFormatError with a line number."""
    lines = Path(path).read_text().splitlines()
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx >= len(lines):
        raise ReplayFormatError("empty file: missing d=<int> header", 1)
    header = lines[idx].strip()
    if not header.startswith("d="):
        raise ReplayFormatError(f"expected d=<int> header, got {header!r}", idx + 1)
    try:
        d = int(header[2:])
    except ValueError:
        raise ReplayFormatError(f"bad dimension in header {header!r}", idx + 1) from None
    if d < 1:
        raise ReplayFormatError(f"dimension must be positive, got {d}", idx + 1)
    idx += 1
    observables: list[Matrix] = []
    row_buf: list[list[complex]] = []
    for line_no, raw in enumerate(lines[idx:], start=idx + 1):
        stripped = raw.strip()
        if not stripped:
            if row_buf:
                observables.append(_rows_to_matrix(row_buf, d, line_no))
                row_buf = []
            continue
        tokens = stripped.split()
        if len(tokens) != d:
            raise ReplayFormatError(f"expected {d} entries per row, got {len(tokens)}", line_no)
        row_buf.append([_parse_entry(tok, line_no) for tok in tokens])
        if len(row_buf) > d:
            raise ReplayFormatError(f"record has more than {d} rows", line_no)
    if row_buf:
        observables.append(_rows_to_matrix(row_buf, d, len(lines)))
    if not observables:
        raise ReplayFormatError("no observable records found", len(lines) or 1)
    return observables


def _rows_to_matrix(rows: list[list[complex]], d: int, line_no: int) -> Matrix:
    if len(rows) != d:
        raise ReplayFormatError(f"record has {len(rows)} rows, expected {d}", line_no)
    return np.array(rows, dtype=complex)


def write_density(path: str | Path, rho: Matrix) -> None:
    d = rho.shape[0]
    Path(path).write_text("\n".join([f"d={d}", *_matrix_lines(np.asarray(rho, dtype=complex)), ""]))


def read_density(path: str | Path) -> Matrix:
    records = read_observables(path)
    if len(records) != 1:
        raise ReplayFormatError(f"expected one matrix record, found {len(records)}", 1)
    return hermitize(records[0])


# ---------------------------------------------------------------------------
# trace and sweep tables

TRACE_COLUMNS = ["t", "loss", "cumloss", "pi", "gain", "miss", "solve_iters", "solve_seconds"]


def write_trace_csv(path: str | Path, trace: GameTrace, record_timings: bool = False) -> None:
    """Per-round table.  Timings are written only on request: wall-clock values
    break the byte-for-byte reproducibility of reruns, so the default stores 0."""
    cum = 0.0
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_COLUMNS)
        for r in trace.rounds:
            cum += r.loss
            seconds = r.solve_seconds if record_timings else 0.0
            writer.writerow([r.t, fmt(r.loss), fmt(cum), fmt(r.pi), fmt(r.gain),
                             fmt(r.miss), r.solve_iters, fmt(seconds)])


@dataclass(frozen=True)
class TraceRow:
    t: int
    loss: float
    cumloss: float
    pi: float
    gain: float
    miss: float
    solve_iters: int
    solve_seconds: float


def read_trace_csv(path: str | Path) -> list[TraceRow]:
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != TRACE_COLUMNS:
            raise ValueError(f"unexpected trace columns {reader.fieldnames}")
        for rec in reader:
            rows.append(TraceRow(
                t=int(rec["t"]), loss=float(rec["loss"]), cumloss=float(rec["cumloss"]),
                pi=float(rec["pi"]), gain=float(rec["gain"]), miss=float(rec["miss"]),
                solve_iters=int(rec["solve_iters"]), solve_seconds=float(rec["solve_seconds"]),
            ))
    return rows


SWEEP_COLUMNS = ["d", "T", "seed", "learner", "reality", "regret", "ratio", "wall_seconds"]


def write_sweep_csv(path: str | Path, cells: Iterable[SweepCell]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_COLUMNS)
        for c in cells:
            writer.writerow([c.d, c.T, c.seed, c.learner, c.reality,
                             fmt(c.regret), fmt(c.ratio), fmt(c.wall_seconds)])


def certificate_violations(trace: GameTrace, solver_value_tol: float = 1e-6) -> dict:
    """Count per-round certificate violations at the standard tolerances."""
    lam, mu = trace.lam, trace.mu
    pi_bound = 1.0 / (lam + 1.0) + 1e-6
    pi_bad = sum(1 for r in trace.rounds if r.pi > pi_bound)
    gain_bad = 0
    for r in trace.rounds:
        ident = (mu / 2.0) * np.log(1.0 - r.pi)
        scale = max(abs(ident), abs(r.gain), 1e-30)
        if abs(r.gain - ident) > 1e-6 * scale:
            gain_bad += 1
    miss_bad = sum(
        1 for r in trace.rounds
        if not np.isnan(r.miss) and r.miss > (mu / 2.0) * r.pi + 2.0 * solver_value_tol
    )
    return {"pi": pi_bad, "gain_identity": gain_bad, "miss": miss_bad}


def write_summary(path: str | Path, trace: GameTrace, config_echo: dict,
                  solver_value_tol: float = 1e-6, status: str = "ok") -> None:
    summary = {
        "status": status,
        "d": trace.d,
        "T": trace.T,
        "lambda": trace.lam,
        "mu": trace.mu,
        "seed": trace.seed,
        "learner": trace.learner,
        "reality": trace.reality,
        "rounds_completed": len(trace.rounds),
        "total_loss": trace.total_loss,
        "hindsight_value": trace.hindsight_value,
        "regret": trace.regret,
        "certificate_violations": certificate_violations(trace, solver_value_tol),
        "total_solve_iters": int(sum(r.solve_iters for r in trace.rounds)),
        "config": config_echo,
    }
    with open(path, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
