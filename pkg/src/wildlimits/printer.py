"""Canonical printers: grammar-compatible text, JSON schemas, and LaTeX.

Text output is the graded-lex canonical infix form (leading terms first) and
always reparses to an equal map; JSON follows the shared term-list schemas;
LaTeX renders rational coefficients as \\frac and indeterminates by their
usual symbols.
"""

from __future__ import annotations

import json

from .maps import PolyMap
from .multipoly import MultiPoly


def _monomial_text(ring, exps) -> str:
    parts = []
    for v, k in zip(ring.vars, exps):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def poly_text(p: MultiPoly) -> str:
    if not p.terms:
        return "0"
    backend = p.ring.backend
    pieces = []
    for e, c in p.sorted_terms():
        sign, mag = backend.scalar_sign_split(c)
        mono = _monomial_text(p.ring, e)
        if not mono:
            body = backend.scalar_text(mag)
        elif mag == backend.one:
            body = mono
        else:
            body = f"{backend.scalar_text(mag)}*{mono}"
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] < 0 else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += (" - " if sign < 0 else " + ") + body
    return out


def map_text(f: PolyMap) -> str:
    return "(" + ", ".join(poly_text(c) for c in f.components) + ")"


_LATEX_NAMES = {"lambda": "\\lambda", "mu": "\\mu", "nu": "\\nu"}


def _monomial_latex(ring, exps) -> str:
    parts = []
    for v, k in zip(ring.vars, exps):
        name = _LATEX_NAMES.get(v, v)
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{{{k}}}")
    return "".join(parts)


def poly_latex(p: MultiPoly) -> str:
    if not p.terms:
        return "0"
    backend = p.ring.backend
    out = ""
    for e, c in p.sorted_terms():
        sign, mag = backend.scalar_sign_split(c)
        mono = _monomial_latex(p.ring, e)
        if not mono:
            body = backend.scalar_latex(mag)
        elif mag == backend.one:
            body = mono
        else:
            body = f"{backend.scalar_latex(mag)}{mono}"
        if not out:
            out = ("-" if sign < 0 else "") + body
        else:
            out += (" - " if sign < 0 else " + ") + body
    return out


def map_latex(f: PolyMap) -> str:
    return "\\left(" + ",\\; ".join(poly_latex(c) for c in f.components) + "\\right)"


def emit(obj, fmt: str = "text") -> str:
    """Render a PolyMap or MultiPoly in the requested format."""
    if fmt == "text":
        return map_text(obj) if isinstance(obj, PolyMap) else poly_text(obj)
    if fmt == "json":
        return json.dumps(obj.to_json())
    if fmt == "latex":
        return map_latex(obj) if isinstance(obj, PolyMap) else poly_latex(obj)
    raise ValueError(f"unknown format {fmt!r}")
