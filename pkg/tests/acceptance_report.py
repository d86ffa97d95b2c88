"""Shared store for per-criterion outcomes of the acceptance suite."""
from __future__ import annotations

RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, ok: bool, note: str) -> None:
    RESULTS[n] = (ok, note)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {note}")
