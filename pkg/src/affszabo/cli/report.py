"""Report container and its text / JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Report:
    command: str
    verdict: bool | None = None
    data: dict = field(default_factory=dict)
    timing_ms: float = 0.0

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "verdict": self.verdict,
            "data": self.data,
            "timing_ms": round(self.timing_ms, 3),
        }


def _text_lines(r: Report) -> list:
    v = "n/a" if r.verdict is None else str(r.verdict).lower()
    out = [f"command: {r.command}", f"verdict: {v}"]
    d = r.data
    for key, val in d.items():
        if key == "sigma":
            out += [f"sigma_{k} = {s}" for k, s in enumerate(val, 1)]
        elif key == "residuals":
            names = d.get("residual_names") or [f"residual_{k}" for k in range(1, len(val) + 1)]
            out += [f"{n} = {s}" for n, s in zip(names, val)]
        elif key == "residual_names":
            continue
        elif key == "components":
            out += [f"{n} = {s}" for n, s in val.items()] or ["(all components vanish)"]
        elif key == "nilpotency":
            for row in val:
                deg = "not nilpotent" if row["degree"] is None else row["degree"]
                out.append(f"nilpotency[{row['direction']}] = {deg}")
        elif isinstance(val, dict):
            out.append(f"{key}:")
            out += [f"  {n} = {s}" for n, s in val.items()]
        elif isinstance(val, list) and val and isinstance(val[0], list):
            out.append(f"{key}:")
            out += ["  " + " ".join(str(x) for x in row) for row in val]
        else:
            out.append(f"{key}: {json.dumps(val) if not isinstance(val, str) else val}")
    return out


def emit_report(r: Report, fmt: str = "text") -> bytes:
    if fmt == "json":
        return (json.dumps(r.as_dict(), indent=2, ensure_ascii=False) + "\n").encode()
    if fmt == "text":
        return ("\n".join(_text_lines(r)) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")
