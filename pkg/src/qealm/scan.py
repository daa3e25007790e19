"""Corpus scanning: membership and fork statistics over a directory of TPTP files."""

from __future__ import annotations

import csv
import io
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from .fragment import check_membership
from .logic import validate_problem
from .tptp import read_tptp

PATTERNS = (".p", ".cnf")


@dataclass
class ScanRecord:
    path: str
    status: str  # "ok", "error" (unreadable or syntax), "not-cnf"
    epr: bool = False
    member: bool = False
    fork_count: Optional[int] = None
    fork_indices: list = field(default_factory=list)
    classification: Optional[str] = None
    time_ms: float = 0.0
    diagnostics: list = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


def scan_file(path, include_dir=None) -> ScanRecord:
    start = time.perf_counter()
    rec = ScanRecord(str(path), "ok")
    try:
        text = Path(path).read_text(encoding="utf-8", errors="replace")
    except OSError as e:
        rec.status = "error"
        rec.diagnostics = [str(e)]
        return rec
    f = read_tptp(text, include_dir)
    if not f.is_cnf:
        rec.status = "not-cnf"
    elif f.errors:
        rec.status = "error"
        rec.diagnostics = [str(d) for d in f.errors]
    else:
        problem = f.problem()
        invalid = [d for d in validate_problem(problem) if d.severity == "error"]
        rec.diagnostics = [str(d) for d in invalid[:5]]
        rec.epr = not invalid
        if rec.epr:
            report = check_membership(problem)
            rec.member = report.member
            rec.fork_indices = sorted(report.fork_indices)
            rec.fork_count = len(report.fork_indices)
            if report.classification is not None:
                rec.classification = str(report.classification)
    rec.time_ms = (time.perf_counter() - start) * 1000.0
    return rec


def find_problem_files(root) -> list[str]:
    """Problem files below ``root``, sorted; symlinked files and directories are skipped."""
    out = []
    for dirpath, dirnames, filenames in os.walk(root, followlinks=False):
        dirnames[:] = [d for d in dirnames if not os.path.islink(os.path.join(dirpath, d))]
        for name in filenames:
            full = os.path.join(dirpath, name)
            if name.endswith(PATTERNS) and not os.path.islink(full):
                out.append(full)
    return sorted(out)


def _bucket(n: int) -> str:
    if n <= 1:
        return "<=1"
    if n <= 3:
        return f"={n}"
    return ">3"


def summarize(records) -> dict:
    hist = {"<=1": 0, "=2": 0, "=3": 0, ">3": 0}
    summary = {"total": 0, "epr": 0, "member": 0, "non_member": 0, "errors": 0, "not_cnf": 0,
               "fork_histogram": hist}
    for r in records:
        summary["total"] += 1
        if r.status == "error":
            summary["errors"] += 1
        elif r.status == "not-cnf":
            summary["not_cnf"] += 1
        elif r.epr:
            summary["epr"] += 1
            if r.member:
                summary["member"] += 1
                hist[_bucket(r.fork_count)] += 1
            else:
                summary["non_member"] += 1
    return summary


def scan_corpus(root, parallelism: int = 1, include_dir=None):
    """Scan every problem file; returns ``(records, summary)`` in sorted path order."""
    files = find_problem_files(root)
    if parallelism > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            records = list(pool.map(scan_file, files, [include_dir] * len(files), chunksize=8))
    else:
        records = [scan_file(f, include_dir) for f in files]
    return records, summarize(records)


CSV_FIELDS = ("path", "status", "epr", "member", "fork_count", "fork_indices", "classification", "time_ms")


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in records:
        w.writerow([r.path, r.status, r.epr, r.member, "" if r.fork_count is None else r.fork_count,
                    " ".join(map(str, r.fork_indices)), r.classification or "", f"{r.time_ms:.2f}"])
    return buf.getvalue()
