"""Versioned JSON documents for all domain objects.

Documents are an envelope ``{"format", "version", "kind", "payload"}``
with optional free-form ``notes``.  Rationals travel as exact ``"p/q"``
strings and the infinities as ``"inf"`` / ``"-inf"``; permutations are
one-line arrays.  Grid documents list columns right to left (the
classical convention: column 0 is the rightmost, carrying the forced
long cycle); the internal left-to-right order never leaks out.
"""

from __future__ import annotations

import json

from .census import CensusReport
from .core import (
    CellLabel,
    ParallelSlitDomain,
    Permutation,
    SlitCoordinates,
    SlitError,
)
from .surface import GluedGrid
from .uniformize import PeriodMatrix
from .xrat import format_rational, format_xrat, parse_rational, parse_xrat

FORMAT_NAME = "parslit"
FORMAT_VERSION = 1

KINDS = ("cell", "domain", "grid", "report", "periods")


class ParseError(SlitError):
    """Malformed document; the message carries the offending location."""


class InvariantViolation(SlitError):
    """Well-formed document whose payload fails a domain validator."""


def _need(mapping, key, where):
    if not isinstance(mapping, dict) or key not in mapping:
        raise ParseError("missing %r in %s" % (key, where))
    return mapping[key]


def _cell_payload(label: CellLabel):
    return {
        "g": label.g,
        "m": label.m,
        "n": 1,
        "sigmas": [list(s.word) for s in label.sigmas],
        "nu": [list(c) for c in label.nu],
    }


def _cell_from_payload(payload):
    g = _need(payload, "g", "cell payload")
    m = _need(payload, "m", "cell payload")
    if payload.get("n", 1) != 1:
        raise ParseError("only n = 1 is supported")
    sigmas = _need(payload, "sigmas", "cell payload")
    nu = _need(payload, "nu", "cell payload")
    try:
        return CellLabel(g, m, sigmas, [tuple(c) for c in nu])
    except SlitError as exc:
        raise InvariantViolation(str(exc)) from exc


def _domain_payload(domain: ParallelSlitDomain):
    payload = _cell_payload(domain.label)
    payload["a"] = [format_rational(x) for x in domain.coords.a]
    payload["b"] = [format_rational(x) for x in domain.coords.b]
    return payload


def _domain_from_payload(payload):
    label = _cell_from_payload(payload)
    a = _need(payload, "a", "domain payload")
    b = _need(payload, "b", "domain payload")
    try:
        coords = SlitCoordinates(
            [parse_rational(x) for x in a], [parse_rational(x) for x in b]
        )
        return ParallelSlitDomain(label, coords)
    except (SlitError, ValueError) as exc:
        raise InvariantViolation(str(exc)) from exc


def _grid_payload(grid: GluedGrid):
    columns = []
    for c in range(grid.num_columns - 1, -1, -1):  # wire order: right to left
        columns.append(
            {
                "width": format_xrat(grid.col_widths[c]),
                "sigma": list(grid.col_perms[c].word),
            }
        )
    return {
        "columns": columns,
        "strips": {
            "heights": [format_xrat(h) for h in grid.strip_heights],
            "bottom_open": grid.bottom_open,
            "top_open": grid.top_open,
        },
        "end_labels": [sorted(c) for c in grid.end_labels],
        "origin_x": format_rational(grid.origin_x),
    }


def _grid_from_payload(payload):
    columns = _need(payload, "columns", "grid payload")
    strips = _need(payload, "strips", "grid payload")
    heights = _need(strips, "heights", "grid strips")
    try:
        widths = [parse_xrat(_need(col, "width", "grid column")) for col in columns]
        perms = [
            Permutation(_need(col, "sigma", "grid column")) for col in columns
        ]
        grid = GluedGrid(
            col_widths=list(reversed(widths)),
            col_perms=list(reversed(perms)),
            strip_heights=[parse_xrat(h) for h in heights],
            bottom_open=_need(strips, "bottom_open", "grid strips"),
            top_open=_need(strips, "top_open", "grid strips"),
            end_labels=_need(payload, "end_labels", "grid payload"),
            origin_x=parse_rational(payload.get("origin_x", 0)),
        )
    except (SlitError, ValueError) as exc:
        raise InvariantViolation(str(exc)) from exc
    return grid


def _report_payload(report: CensusReport):
    return {
        "g": report.g,
        "m": report.m,
        "h": report.h,
        "method": report.method,
        "count": report.count,
        "count_sigma": report.count_sigma,
        "flagged_count": report.flagged_count,
        "flagged": [
            {"sigmas": [list(w) for w in words], "diagnosis": diag}
            for words, diag in report.flagged
        ],
        "labels": [_cell_payload(label) for label in report.labels],
        "digests": list(report.digests),
    }


def _report_from_payload(payload):
    labels = [_cell_from_payload(p) for p in _need(payload, "labels", "report")]
    flagged = [
        (tuple(tuple(w) for w in _need(f, "sigmas", "flagged entry")), f.get("diagnosis"))
        for f in payload.get("flagged", [])
    ]
    return CensusReport(
        _need(payload, "g", "report"),
        _need(payload, "m", "report"),
        _need(payload, "method", "report"),
        labels,
        flagged,
        payload.get("digests", []),
        flagged_count=payload.get("flagged_count"),
    )


def _periods_payload(matrix: PeriodMatrix):
    return {
        "h": matrix.h,
        "entries": [
            {
                "k": k,
                "l": l,
                "re": format_rational(re),
                "im": format_rational(im),
            }
            for (k, l), (re, im) in matrix.items()
        ],
    }


def _periods_from_payload(payload):
    entries = {}
    for entry in _need(payload, "entries", "periods"):
        k = _need(entry, "k", "period entry")
        l = _need(entry, "l", "period entry")
        entries[(k, l)] = (
            parse_rational(_need(entry, "re", "period entry")),
            parse_rational(_need(entry, "im", "period entry")),
        )
    return PeriodMatrix(_need(payload, "h", "periods"), entries)


_WRITERS = (
    (ParallelSlitDomain, "domain", _domain_payload),
    (CellLabel, "cell", _cell_payload),
    (GluedGrid, "grid", _grid_payload),
    (CensusReport, "report", _report_payload),
    (PeriodMatrix, "periods", _periods_payload),
)

_READERS = {
    "cell": _cell_from_payload,
    "domain": _domain_from_payload,
    "grid": _grid_from_payload,
    "report": _report_from_payload,
    "periods": _periods_from_payload,
}


def write_document(obj, notes=None) -> str:
    """Serialize a domain object to its canonical JSON document."""
    for cls, kind, writer in _WRITERS:
        if isinstance(obj, cls):
            doc = {
                "format": FORMAT_NAME,
                "version": FORMAT_VERSION,
                "kind": kind,
                "payload": writer(obj),
            }
            if notes is not None:
                doc["notes"] = notes
            return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    raise TypeError("cannot serialize %r" % (type(obj).__name__,))


def read_document(text: str):
    """Parse and validate a document; returns the domain object."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON at line %d column %d: %s" % (exc.lineno, exc.colno, exc.msg)) from exc
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if doc.get("format") != FORMAT_NAME:
        raise ParseError("unknown document format %r" % (doc.get("format"),))
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise ParseError("unsupported format version %r" % (version,))
    kind = doc.get("kind")
    if kind not in _READERS:
        raise ParseError("unknown document kind %r" % (kind,))
    payload = _need(doc, "payload", "document")
    return _READERS[kind](payload)
