"""Command results in human and machine form.

The machine form is one ``key=value`` pair per line with JSON values:
``command``, ``verdict``, then ``result.NAME`` and ``usage.NAME`` entries in
insertion order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

VERDICTS = ("true", "false", "unknown")


def _plain(value):
    return json.loads(json.dumps(value))


@dataclass
class Report:
    command: str
    verdict: Optional[str] = None
    result: dict = field(default_factory=dict)
    usage: dict = field(default_factory=dict)

    def __post_init__(self):
        if isinstance(self.verdict, bool):
            self.verdict = "true" if self.verdict else "false"
        if self.verdict is not None and self.verdict not in VERDICTS:
            raise ValueError(f"bad verdict {self.verdict!r}")
        self.result = _plain(self.result)
        self.usage = _plain(self.usage)

    def to_machine(self) -> str:
        lines = [f"command={json.dumps(self.command)}", f"verdict={json.dumps(self.verdict)}"]
        lines += [f"result.{k}={json.dumps(v, separators=(',', ':'))}" for k, v in self.result.items()]
        lines += [f"usage.{k}={json.dumps(v, separators=(',', ':'))}" for k, v in self.usage.items()]
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.verdict is not None:
            lines.append(f"verdict: {self.verdict}")
        for k, v in self.result.items():
            if isinstance(v, list) and v and all(isinstance(x, (list, str)) for x in v):
                lines.append(f"{k}: ({len(v)})")
                lines += [f"  {_show(x)}" for x in v]
            else:
                lines.append(f"{k}: {_show(v)}")
        if self.usage:
            lines.append("usage: " + ", ".join(f"{k}={_show(v)}" for k, v in self.usage.items()))
        return "\n".join(lines) + "\n"


def _show(v):
    if isinstance(v, list):
        return "(" + ", ".join(_show(x) for x in v) + ")"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def parse_machine(text: str) -> Report:
    command, verdict, result, usage = None, None, {}, {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"line {lineno}: missing '='")
        value = json.loads(value)
        if key == "command":
            command = value
        elif key == "verdict":
            verdict = value
        elif key.startswith("result."):
            result[key[len("result."):]] = value
        elif key.startswith("usage."):
            usage[key[len("usage."):]] = value
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if command is None:
        raise ValueError("no command line")
    return Report(command, verdict, result, usage)
