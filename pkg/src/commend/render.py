"""Canonical polynomial rendering.

The output conforms to the CLI expression grammar, so parse(render(p)) == p.
Cyclotomic coefficients are distributed into separate w^k terms; monomials
are emitted in descending graded-lex order.
"""

from __future__ import annotations

from fractions import Fraction


def _expanded_terms(p):
    """Yield (exps, w_power, rational) triples for every printed term."""
    from .mpoly import MPoly
    keyed = sorted(p.terms.items(), key=lambda kv: MPoly._grlex_key(kv[0]),
                   reverse=True)
    for exps, coef in keyed:
        for j, q in enumerate(coef.res):
            if q != 0:
                yield exps, (j, coef.order), q


def render_poly(p) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for exps, (wpow, _order), q in _expanded_terms(p):
        factors = []
        if wpow:
            factors.append("w" if wpow == 1 else f"w^{wpow}")
        for name, e in zip(p.vars, exps):
            if e:
                factors.append(name if e == 1 else f"{name}^{e}")
        mag = abs(q)
        if not factors or mag != 1:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        pieces.append((q < 0, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out
