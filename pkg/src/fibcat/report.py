"""Check reports: the uniform result type for all verifiers.

A report records what was checked (a stable id plus the anchor naming the
law), whether it passed, witnesses for failures, and wall time.  JSON
serialization zeroes the timing field so identical inputs always serialize
to identical bytes; the text format shows real timings.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field


@dataclass
class Report:
    id: str
    paper_anchor: str
    status: str                       # "pass" | "fail" | "vacuous"
    witnesses: list = field(default_factory=list)
    millis: int = 0

    @property
    def ok(self):
        return self.status in ("pass", "vacuous")

    def as_dict(self, deterministic=True):
        return {
            "id": self.id,
            "paper_anchor": self.paper_anchor,
            "status": self.status,
            "witnesses": list(self.witnesses),
            "millis": 0 if deterministic else self.millis,
        }


def timed_check(check_id, anchor, fn):
    """Run a boolean (or (bool, witnesses)) check and wrap it in a Report."""
    start = time.monotonic()
    witnesses = []
    try:
        out = fn()
    except Exception as exc:  # a crashed check is a failed check with a witness
        out = False
        witnesses = ["%s: %s" % (type(exc).__name__, exc)]
    if isinstance(out, tuple):
        ok, extra = out
        witnesses = list(extra) + witnesses
    else:
        ok = out
    millis = int((time.monotonic() - start) * 1000)
    status = "pass" if ok else "fail"
    return Report(check_id, anchor, status, witnesses, millis)


def vacuous(check_id, anchor, note):
    return Report(check_id, anchor, "vacuous", [note], 0)


def all_ok(reports):
    return all(r.ok for r in reports)


def emit_report(reports, fmt="json"):
    """Serialize reports; JSON output is byte-stable for identical inputs."""
    reports = sorted(reports, key=lambda r: r.id)
    if fmt == "json":
        doc = {"version": 1, "checks": [r.as_dict(deterministic=True) for r in reports]}
        return (json.dumps(doc, separators=(",", ":"), ensure_ascii=True) + "\n").encode()
    if fmt == "text":
        lines = []
        for r in reports:
            head = "%-7s %s" % (r.status.upper(), r.id)
            lines.append("%s  [%s]  %dms" % (head, r.paper_anchor, r.millis))
            for w in r.witnesses:
                lines.append("        witness: %s" % w)
        summary = "%d checks, %d failed" % (
            len(reports), sum(1 for r in reports if not r.ok))
        lines.append(summary)
        return ("\n".join(lines) + "\n").encode()
    raise ValueError("unknown format %r" % fmt)


def emit_csv(reports):
    """Delimited summary, one row per check."""
    reports = sorted(reports, key=lambda r: r.id)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["id", "paper_anchor", "status", "witnesses", "millis"])
    for r in reports:
        writer.writerow([r.id, r.paper_anchor, r.status,
                         "; ".join(str(w) for w in r.witnesses), r.millis])
    return buf.getvalue().encode()


def render_figure(reports, path):
    """Render a summary figure (status counts and slowest checks) to a file."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    reports = sorted(reports, key=lambda r: r.id)
    counts = {"pass": 0, "fail": 0, "vacuous": 0}
    for r in reports:
        counts[r.status] = counts.get(r.status, 0) + 1
    slowest = sorted(reports, key=lambda r: -r.millis)[:12]

    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(11, 4.5))
    names = list(counts)
    ax0.bar(names, [counts[k] for k in names],
            color=["#4caf50", "#e53935", "#9e9e9e"])
    ax0.set_title("check outcomes")
    ax0.set_ylabel("count")

    ax1.barh([r.id[-40:] for r in slowest][::-1],
             [r.millis for r in slowest][::-1], color="#1976d2")
    ax1.set_title("slowest checks (ms)")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
