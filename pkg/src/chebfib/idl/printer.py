"""Canonical text for identity ASTs; ``parse(format_identity(i)) == i``."""
from __future__ import annotations

from ..arith import format_poly
from .ast import (
    DEFAULT_RADICALS, Add, Affine, Binom, Div, Expr, Identity, IntConst, MetaVar,
    Mul, NamedConst, Neg, NumSeqRef, Pow, SeqRef, SignPow, Sqrt, Sub, Sum, Var,
)

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4}
_ATOM = 5


def format_affine(a: Affine) -> str:
    """Compact affine text such as ``n-k-1`` or ``2*n+1``."""
    out = ""
    for v, c in a.terms:
        mag = abs(c)
        body = v if mag == 1 else f"{mag}*{v}"
        if not out:
            out = body if c > 0 else f"-{body}"
        else:
            out += f"+{body}" if c > 0 else f"-{body}"
    if not out:
        return str(a.const)
    if a.const:
        out += f"+{a.const}" if a.const > 0 else f"-{-a.const}"
    return out


def _prec(e: Expr) -> int:
    return _PREC.get(type(e), _ATOM)


def format_expr(e: Expr) -> str:
    if isinstance(e, IntConst):
        return str(e.value)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, MetaVar):
        return e.name
    if isinstance(e, SeqRef):
        return f"{e.kind}({format_affine(e.index)}, {format_expr(e.arg)})"
    if isinstance(e, NumSeqRef):
        return f"{e.kind}({format_affine(e.index)})"
    if isinstance(e, Binom):
        return f"binom({format_affine(e.top)}, {format_affine(e.bottom)})"
    if isinstance(e, Sum):
        return (f"sum({e.var}, {format_affine(e.lo)}, {format_affine(e.hi)}, "
                f"{format_expr(e.body)})")
    if isinstance(e, Sqrt):
        return f"sqrt({format_expr(e.radicand)})"
    if isinstance(e, NamedConst):
        return f"{e.name}({format_expr(e.arg)})"
    if isinstance(e, SignPow):
        return f"sign({format_affine(e.exponent)})"
    if isinstance(e, Neg):
        inner = format_expr(e.operand)
        # the operand of unary minus is itself a unary: another Neg or a power/atom
        return f"-{inner}" if _prec(e.operand) >= 3 else f"-({inner})"
    if isinstance(e, Pow):
        base = format_expr(e.base)
        if _prec(e.base) <= 4:
            base = f"({base})"
        ex = e.exponent
        if ex.is_constant() and ex.const >= 0:
            return f"{base}^{ex.const}"
        if ex.const == 0 and len(ex.terms) == 1 and ex.terms[0][1] == 1:
            return f"{base}^{ex.terms[0][0]}"
        return f"{base}^({format_affine(ex)})"
    op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(e)]
    p = _PREC[type(e)]
    left = format_expr(e.left)
    right = format_expr(e.right)
    if _prec(e.left) < p:
        left = f"({left})"
    if _prec(e.right) <= p or (p == 2 and isinstance(e.right, Neg)) or (p == 1 and isinstance(e.right, Neg)):
        right = f"({right})"
    return f"{left}{op}{right}" if p == 2 else f"{left} {op} {right}"


def format_identity(ident: Identity) -> str:
    return f"{format_expr(ident.lhs)} = {format_expr(ident.rhs)} for n >= {ident.n_min}"


def format_radicals(bindings) -> str:
    return ", ".join(f"{format_poly(p).replace(' ', '')} -> {name}" for p, name in bindings)


def format_file(entries) -> str:
    """Canonical identity file; a radicals header is written only when non-default."""
    lines = []
    current = DEFAULT_RADICALS
    for entry in entries:
        bindings = entry.identity.radical_bindings
        if bindings != current:
            lines.append(f"radicals: {format_radicals(bindings)}")
            current = bindings
        if entry.anchor:
            lines.append(f"anchor: {entry.anchor}")
        lines.append(f"{entry.label}: {format_identity(entry.identity)}")
        lines.append("")
    return "\n".join(lines)
