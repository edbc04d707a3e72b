"""Deterministic verification reports.

A report is byte-identical across repeated runs on the same input and
bounds: check rows are emitted in a fixed order and wall times, which are
captured per check, are only serialized when explicitly requested.
"""

from __future__ import annotations

import json
import time

from . import __version__

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


class CheckResult:
    def __init__(self, name, status, detail="", wall_ms=None):
        self.name = name
        self.status = status
        self.detail = detail
        self.wall_ms = wall_ms


class VerificationReport:
    def __init__(self, command, input_name, digest, ring_tag, bounds):
        self.command = command
        self.input_name = input_name
        self.digest = digest
        self.ring_tag = ring_tag
        self.bounds = dict(bounds)
        self.checks = []
        self._clock = time.perf_counter()

    def add(self, name, status, detail=""):
        """Record a check row; its wall time is the elapsed time since the
        previous row (the work for a row happens right before it is added)."""
        now = time.perf_counter()
        result = CheckResult(name, status, detail,
                             wall_ms=(now - self._clock) * 1000.0)
        self._clock = now
        self.checks.append(result)
        return result

    @property
    def status(self):
        statuses = [c.status for c in self.checks]
        if FAIL in statuses:
            return FAIL
        if INCONCLUSIVE in statuses:
            return INCONCLUSIVE
        return PASS

    @property
    def exit_code(self):
        return {PASS: 0, FAIL: 1, INCONCLUSIVE: 3}[self.status]

    def to_text(self, timings=False):
        lines = [f"groupoidal {__version__}",
                 f"command: {self.command}",
                 f"input: {self.input_name} sha256={self.digest}",
                 f"ring: {self.ring_tag}",
                 "bounds: " + " ".join(f"{k}={v}"
                                       for k, v in sorted(self.bounds.items()))]
        for c in self.checks:
            line = f"check {c.name}: {c.status}"
            if c.detail:
                line += f"  [{c.detail}]"
            if timings and c.wall_ms is not None:
                line += f"  ({c.wall_ms:.1f} ms)"
            lines.append(line)
        lines.append(f"result: {self.status}")
        return "\n".join(lines) + "\n"

    def to_machine(self, timings=False):
        checks = []
        for c in self.checks:
            row = {"name": c.name, "status": c.status, "detail": c.detail}
            if timings and c.wall_ms is not None:
                row["wall_ms"] = round(c.wall_ms, 3)
            checks.append(row)
        doc = {
            "tool": f"groupoidal {__version__}",
            "command": self.command,
            "input": self.input_name,
            "sha256": self.digest,
            "ring": self.ring_tag,
            "bounds": self.bounds,
            "checks": checks,
            "result": self.status,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    def render(self, style="text", timings=False):
        if style == "machine":
            return self.to_machine(timings)
        return self.to_text(timings)
