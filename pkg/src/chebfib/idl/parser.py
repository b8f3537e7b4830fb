"""Recursive-descent parser for identity statements and identity files.

Grammar (``^`` binds tighter than unary minus)::

    identity := expr "=" expr "for" "n" ">=" ["-"] INT
    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := "-" unary | power
    power    := primary ("^" (INT | NAME | "(" index ")"))?
    primary  := INT | "x" | NAME | call | "(" expr ")"

Index positions (sequence indices, exponents, binomial arguments, sum bounds,
``sign``) must reduce to integer-affine combinations of ``n`` and bound sum
variables.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from ..arith import Poly
from .ast import (
    DEFAULT_RADICALS, NAMED_CONSTS, NUMSEQ_CALLS, RESERVED, SEQ_CALLS,
    Add, Affine, Binom, Div, Expr, Identity, IntConst, MetaVar, Mul, NamedConst,
    Neg, NumSeqRef, Pow, SeqRef, SignPow, Sqrt, Sub, Sum, Var,
)


class ParseError(ValueError):
    kind = "syntax error"

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message, self.line, self.col = message, line, col
        super().__init__(f"{self.kind} at line {line}, column {col}: {message}")


class LexError(ParseError):
    kind = "lexical error"


class ArityError(ParseError):
    kind = "arity error"


class NonAffineError(ParseError):
    kind = "non-affine index expression"


@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, LABEL, DIRECTIVE, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(>=|->|[-+*/^(),=:]))")
_LABEL_RE = re.compile(r"^\s*([A-Za-z][A-Za-z0-9_.\-]*)\s*:(?!\s*$)")
_DIRECTIVE_RE = re.compile(r"^\s*(radicals|anchor)\s*:(.*)$")


def _lex_line(text: str, lineno: int, col0: int, out: list[Token]) -> None:
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            return
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = len(text[pos:]) - len(text[pos:].lstrip())
            c = pos + stripped
            raise LexError(f"unexpected character {text[c]!r}", lineno, col0 + c + 1)
        if m.group(1) is not None:
            out.append(Token("INT", m.group(1), lineno, col0 + m.start(1) + 1))
        elif m.group(2) is not None:
            out.append(Token("NAME", m.group(2), lineno, col0 + m.start(2) + 1))
        else:
            out.append(Token("OP", m.group(3), lineno, col0 + m.start(3) + 1))
        pos = m.end()


def tokenize(source: str, *, file_mode: bool = False) -> list[Token]:
    """Split source into tokens; ``#`` starts a comment.

    In file mode, ``radicals:``/``anchor:`` lines become DIRECTIVE tokens and a
    leading ``LABEL:`` becomes a LABEL token.
    """
    tokens: list[Token] = []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        if file_mode:
            m = _DIRECTIVE_RE.match(raw)
            if m:
                payload = m.group(2) if m.group(1) == "anchor" else m.group(2).split("#", 1)[0]
                tokens.append(Token("DIRECTIVE", f"{m.group(1)}:{payload.strip()}", lineno, 1))
                continue
        line = raw.split("#", 1)[0]
        col0 = 0
        if file_mode:
            m = _LABEL_RE.match(line)
            if m:
                tokens.append(Token("LABEL", m.group(1), lineno, m.start(1) + 1))
                col0 = m.end()
                line = line[m.end():]
        _lex_line(line, lineno, col0, tokens)
    lines = source.split("\n")
    tokens.append(Token("EOF", "", len(lines), len(lines[-1]) + 1))
    return tokens


_ARITY = {**{k: 2 for k in SEQ_CALLS}, **{k: 1 for k in NUMSEQ_CALLS},
          **{k: 1 for k in NAMED_CONSTS}, "binom": 2, "sum": 4, "sqrt": 1, "sign": 1}


class Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.bound: list[str] = []
        self.open_calls: list[Token] = []
        self.unbound: dict[str, Token] = {}

    def check_bound(self) -> None:
        """Only ``n`` and sum variables inside their sums may appear free."""
        for name, tok in self.unbound.items():
            raise ParseError(f"unbound meta-variable {name!r}", tok.line, tok.col)

    # -- token helpers -------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def advance(self) -> Token:
        t = self.tok
        self.pos += 1
        return t

    def error(self, message: str, tok: Optional[Token] = None, cls=ParseError) -> ParseError:
        tok = tok or self.tok
        if tok.kind == "EOF":
            message = "unexpected end of input" + (f"; {message}" if message else "")
            if self.open_calls:
                c = self.open_calls[-1]
                message += f"; unclosed '{c.text}(' opened at line {c.line}, column {c.col}"
        return cls(message, tok.line, tok.col)

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        if not self.at(kind, text):
            want = text or kind
            got = self.tok.text or self.tok.kind
            raise self.error("" if self.tok.kind == "EOF" else f"expected {want!r}, found {got!r}")
        return self.advance()

    # -- grammar -------------------------------------------------------

    def identity(self) -> tuple[Expr, Expr, int]:
        lhs = self.expr()
        self.expect("OP", "=")
        rhs = self.expr()
        self.expect("NAME", "for")
        self.expect("NAME", "n")
        self.expect("OP", ">=")
        sign = -1 if self.at("OP", "-") and self.advance() else 1
        n_min = int(self.expect("INT").text) * sign
        return lhs, rhs, n_min

    def expr(self) -> Expr:
        left = self.term()
        while self.at("OP", "+") or self.at("OP", "-"):
            op = self.advance().text
            right = self.term()
            left = Add(left, right) if op == "+" else Sub(left, right)
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.at("OP", "*") or self.at("OP", "/"):
            op = self.advance().text
            right = self.unary()
            left = Mul(left, right) if op == "*" else Div(left, right)
        return left

    def unary(self) -> Expr:
        if self.at("OP", "-"):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.at("OP", "^"):
            self.advance()
            if self.at("INT"):
                exponent = Affine.of(int(self.advance().text))
            elif self.at("NAME") and self.tok.text not in RESERVED:
                exponent = to_affine(self.primary(), self.tok)
            elif self.at("OP", "("):
                self.advance()
                exponent = self.index()
                self.expect("OP", ")")
            else:
                raise self.error("exponent must be an integer, a variable or a parenthesized index expression")
            return Pow(base, exponent)
        return base

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return IntConst(int(t.text))
        if t.kind == "OP" and t.text == "(":
            self.advance()
            e = self.expr()
            self.expect("OP", ")")
            return e
        if t.kind == "NAME":
            if t.text == "x":
                self.advance()
                return Var()
            if t.text in _ARITY:
                return self.call()
            if t.text in RESERVED:
                raise self.error(f"unexpected keyword {t.text!r}")
            self.advance()
            if t.text != "n" and t.text not in self.bound:
                self.unbound.setdefault(t.text, t)
            return MetaVar(t.text)
        if t.kind == "EOF":
            raise self.error("")
        raise self.error(f"unexpected {t.text or t.kind!r}")

    def index(self) -> Affine:
        start = self.tok
        e = self.expr()
        return to_affine(e, start)

    def _args(self, name_tok: Token) -> list:
        """Parse a parenthesized argument list according to the callee."""
        name = name_tok.text
        self.expect("OP", "(")
        self.open_calls.append(name_tok)
        args: list = []
        if name == "sum":
            var_tok = self.expect("NAME")
            if var_tok.text in RESERVED or var_tok.text == "n":
                raise self.error(f"{var_tok.text!r} cannot be a summation variable", var_tok)
            args.append(var_tok.text)
            for _ in range(2):
                self.expect("OP", ",")
                args.append(self.index())
            self.expect("OP", ",")
            self.bound.append(var_tok.text)
            try:
                args.append(self.expr())
            finally:
                self.bound.pop()
        else:
            kinds = {
                **{k: ("i", "e") for k in SEQ_CALLS}, **{k: ("i",) for k in NUMSEQ_CALLS},
                **{k: ("e",) for k in NAMED_CONSTS},
                "binom": ("i", "i"), "sqrt": ("e",), "sign": ("i",),
            }[name]
            if self.at("OP", ")"):
                raise self.error(f"{name} takes {len(kinds)} argument(s), got 0", name_tok, ArityError)
            for i, k in enumerate(kinds):
                if i:
                    if not self.at("OP", ","):
                        if self.at("OP", ")"):
                            raise self.error(f"{name} takes {len(kinds)} argument(s), got {i}", name_tok, ArityError)
                        self.expect("OP", ",")
                    self.advance()
                args.append(self.index() if k == "i" else self.expr())
        if self.at("OP", ","):
            raise self.error(f"{name} takes {_ARITY[name]} argument(s), got more", name_tok, ArityError)
        self.expect("OP", ")")
        self.open_calls.pop()
        return args

    def call(self) -> Expr:
        name_tok = self.advance()
        name = name_tok.text
        args = self._args(name_tok)
        if name in SEQ_CALLS:
            return SeqRef(name, args[0], args[1])
        if name in NUMSEQ_CALLS:
            return NumSeqRef(name, args[0])
        if name in NAMED_CONSTS:
            return NamedConst(name, args[0])
        if name == "binom":
            return Binom(args[0], args[1])
        if name == "sum":
            return Sum(args[0], args[1], args[2], args[3])
        if name == "sqrt":
            return Sqrt(args[0])
        return SignPow(args[0])


def to_affine(e: Expr, where: Token) -> Affine:
    """Reduce an expression to an integer-affine form or raise :class:`NonAffineError`."""
    def bad(msg):
        return NonAffineError(msg, where.line, where.col)

    if isinstance(e, IntConst):
        return Affine.of(e.value)
    if isinstance(e, MetaVar):
        return Affine.of(e.name)
    if isinstance(e, Neg):
        return -to_affine(e.operand, where)
    if isinstance(e, Add):
        return to_affine(e.left, where) + to_affine(e.right, where)
    if isinstance(e, Sub):
        return to_affine(e.left, where) - to_affine(e.right, where)
    if isinstance(e, Mul):
        a, b = to_affine(e.left, where), to_affine(e.right, where)
        if a.is_constant():
            return b.scale(a.const)
        if b.is_constant():
            return a.scale(b.const)
        raise bad("product of two variable terms")
    raise bad(f"{type(e).__name__} is not allowed in an index")


def parse_expr(text: str) -> Expr:
    p = Parser(tokenize(text))
    e = p.expr()
    if not p.at("EOF"):
        raise p.error(f"unexpected {p.tok.text!r} after expression")
    p.check_bound()
    return e


def parse(text: str, radical_bindings: tuple[tuple[Poly, str], ...] = DEFAULT_RADICALS) -> Identity:
    """Parse one identity statement."""
    p = Parser(tokenize(text))
    lhs, rhs, n_min = p.identity()
    if not p.at("EOF"):
        raise p.error(f"unexpected {p.tok.text!r} after identity")
    p.check_bound()
    return Identity(lhs, rhs, n_min, radical_bindings)


@dataclass(frozen=True)
class IdlEntry:
    label: str
    identity: Identity
    anchor: str = ""


def parse_radicals(spec: str, line: int = 0) -> tuple[tuple[Poly, str], ...]:
    """``"x^2-1 -> w1, x^2+4 -> w2"`` to radical bindings."""
    from .evaluator import constant_poly

    out = []
    seen = set()
    for part in spec.split(","):
        if "->" not in part:
            raise ParseError(f"radical binding {part.strip()!r} lacks '->'", line, 1)
        lhs, rhs = part.rsplit("->", 1)
        target = rhs.strip()
        if target not in ("w1", "w2") or target in seen:
            raise ParseError(f"radical target must be w1 or w2 (once each), got {target!r}", line, 1)
        seen.add(target)
        try:
            poly = constant_poly(parse_expr(lhs))
        except ParseError as exc:
            raise ParseError(f"in radicals directive: {exc.message}", line, exc.col) from None
        except ArithmeticError as exc:
            raise ParseError(f"in radicals directive: {exc}", line, 1) from None
        out.append((poly, target))
    return tuple(sorted(out, key=lambda b: b[1]))


def parse_file(source: str) -> list[IdlEntry]:
    """Parse an identity file: directives, optional labels, identities."""
    p = Parser(tokenize(source, file_mode=True))
    radicals = DEFAULT_RADICALS
    anchor = ""
    entries: list[IdlEntry] = []
    while not p.at("EOF"):
        if p.at("DIRECTIVE"):
            d = p.advance()
            key, payload = d.text.split(":", 1)
            if key == "radicals":
                radicals = parse_radicals(payload, d.line)
            else:
                anchor = payload
            continue
        label_tok = p.advance() if p.at("LABEL") else None
        start = p.tok
        lhs, rhs, n_min = p.identity()
        p.check_bound()
        label = label_tok.text if label_tok else f"line{start.line}"
        entries.append(IdlEntry(label, Identity(lhs, rhs, n_min, radicals), anchor))
        anchor = ""
    return entries
