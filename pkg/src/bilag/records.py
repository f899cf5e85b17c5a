"""Line-oriented ``key: value`` record files.

Records are separated by blank lines; ``#`` starts a comment.  Keys may
repeat inside a record; callers decide whether that is allowed.
"""

from __future__ import annotations

from typing import Iterator


class RecordError(ValueError):
    pass


Record = list[tuple[int, str, str]]


def iter_records(text: str) -> Iterator[tuple[int, Record]]:
    rec: Record = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            if rec:
                yield rec[0][0], rec
                rec = []
            continue
        if ":" not in line:
            raise RecordError(f"line {lineno}: expected 'key: value'")
        key, value = line.split(":", 1)
        rec.append((lineno, key.strip(), value.strip()))
    if rec:
        yield rec[0][0], rec


def as_dict(rec: Record) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, key, value in rec:
        if key in out:
            raise RecordError(f"line {lineno}: duplicate field {key!r}")
        out[key] = value
    return out
