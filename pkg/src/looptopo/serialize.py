"""Text and JSON forms of loop (co)homology classes, and the expression language.

Canonical text form, which the parser reads back::

    AU4        -3 U2        (AU1,AU2)+(AU2,AU1)        0

Expressions use prefix operators so that no precedence rules are needed::

    cop(AU 4)          wedge(U 0, U 7)        copk(U 6, 3)
    2 AU3 - AU1        pair(T2, AU1)          (AU1+U2, AU3)

Generators: ``AU k``, ``U k`` (``U`` alone is ``U 1``), ``A`` (``AU 0``),
``T m``, ``UT m``, ``E0``, ``EN`` and the names ``omega, X, Y, Z``.  The
index may be glued (``AU4``), spaced (``AU 4``) or parenthesized (``AU(4)``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Union

from .errors import ContractError, ParseError
from .graded import BasisLabel, Element, TensorChain, add, pair_tensor, scale, tensor
from .sphere import SphereContext

Value = Union[Element, TensorChain, int]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")
_INDEXED = re.compile(r"^(AU|UT|U|T)(\d+)$")
_FAMILIES = ("AU", "UT", "U", "T")
_NAMED = {"A": ("AU", 0), "E0": ("E0", 0), "EN": ("EN", 0), "omega": ("T", 2),
          "X": ("T", 3), "Y": ("UT", 2), "Z": ("UT", 3)}


# -- formatting ----------------------------------------------------------------

def format_label(b: BasisLabel) -> str:
    return b.family if b.family in ("E0", "EN") else f"{b.family}{b.index}"


def _join(pieces) -> str:
    out = ""
    for body, c in pieces:
        if c == 1:
            term = body
        elif c == -1:
            term = "-" + body
        else:
            term = f"{c} {body}"
        out += term if not out or term.startswith("-") else "+" + term
    return out or "0"


def format_value(v: Value) -> str:
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Element):
        return _join((format_label(b), c) for b, c in v)
    return _join(("(" + ",".join(format_label(b) for b in slots) + ")", c) for slots, c in v)


def degree_note(v: Value) -> str:
    if isinstance(v, int):
        return "# integer"
    degs = v.degrees()
    if not degs:
        return "# zero"
    if len(degs) == 1:
        return f"# degree: {degs[0]}"
    return "# degrees: " + ", ".join(map(str, degs))


def _label_json(b: BasisLabel) -> dict:
    return {"family": b.family, "index": b.index, "degree": b.degree}


def value_to_json(v: Value) -> dict:
    if isinstance(v, int):
        return {"kind": "integer", "value": v}
    if isinstance(v, Element):
        terms = [{"coefficient": c, "labels": [_label_json(b)]} for b, c in v]
        kind, arity = "element", 1
    else:
        terms = [{"coefficient": c, "labels": [_label_json(b) for b in slots]} for slots, c in v]
        kind, arity = "tensor", v.arity
    return {"kind": kind, "arity": arity, "text": format_value(v),
            "degrees": v.degrees(), "terms": terms}


# -- parsing -------------------------------------------------------------------

@dataclass
class _Tok:
    kind: str  # "int", "name", "sym", "end"
    text: str
    pos: int


def _tokenize(src: str) -> List[_Tok]:
    src = src.split("#", 1)[0]
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m.group(1):
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3):
            if m.group(3) not in "(),+-*":
                raise ParseError(f"unexpected character {m.group(3)!r} at {m.start(3)}")
            toks.append(_Tok("sym", m.group(3), m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(src)))
    return toks


class ExpressionParser:
    """Recursive-descent evaluator for the prefix expression language."""

    def __init__(self, ctx: SphereContext, convention: str = "alg", k: Optional[int] = None,
                 lifted: bool = True):
        self.ctx = ctx
        self.convention = convention
        self.k = k
        self.lifted = lifted
        c = ctx
        self.ops: Dict[str, Callable[..., Value]] = {
            "wedge": lambda x, y: c.cs_product(self._el(x), self._el(y), "alg"),
            "wedgeTh": lambda x, y: c.cs_product(self._el(x), self._el(y), "thom"),
            "ast": lambda a, b: c.gh_product(self._el(a), self._el(b), "alg", self.lifted),
            "astTh": lambda a, b: c.gh_product(self._el(a), self._el(b), "thom", self.lifted),
            "cop": lambda x: c.coproduct(self._el(x)),
            "copk": self._copk,
            "delta": lambda x: c.delta(self._el(x)),
            "t": lambda x: c.t_op(self._el(x), convention=self.convention),
            "pair": self._pair,
        }

    def parse(self, src: str) -> Value:
        self.toks = _tokenize(src)
        self.i = 0
        if self._peek().kind == "end":
            raise ParseError("empty expression")
        v = self._sum()
        if self._peek().kind != "end":
            t = self._peek()
            raise ParseError(f"unexpected {t.text!r} at {t.pos}")
        return v

    # -- operator helpers --

    @staticmethod
    def _el(v: Value) -> Element:
        if isinstance(v, Element):
            return v
        if isinstance(v, int) and v == 0:
            return Element()
        raise ContractError(f"expected a single class, got {format_value(v)!r}")

    def _copk(self, x: Value, k: Optional[Value] = None) -> Value:
        if k is None:
            k = self.k if self.k is not None else 1
        if not isinstance(k, int):
            raise ContractError("copk takes an integer as its second argument")
        return self.ctx.iterated_coproduct(self._el(x), k)

    def _pair(self, a: Value, x: Value) -> int:
        if isinstance(a, Element) and isinstance(x, Element):
            return self.ctx.kronecker(a, x)
        if isinstance(a, TensorChain) and isinstance(x, TensorChain):
            return pair_tensor(a, x, self.ctx.kronecker_basis)
        raise ContractError("pair needs two classes or two tensors of equal arity")

    # -- grammar --

    def _peek(self) -> _Tok:
        return self.toks[self.i]

    def _next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def _expect(self, text: str) -> None:
        t = self._next()
        if t.text != text:
            raise ParseError(f"expected {text!r} at {t.pos}, got {t.text or 'end of input'!r}")

    def _sum(self) -> Value:
        acc = self._term()
        while self._peek().text in ("+", "-"):
            op = self._next().text
            rhs = self._term()
            acc = _plus(acc, rhs if op == "+" else _times(-1, rhs))
        return acc

    def _term(self) -> Value:
        t = self._peek()
        if t.text == "-":
            self._next()
            return _times(-1, self._term())
        if t.kind == "int":
            self._next()
            c = int(t.text)
            if self._peek().text == "*":
                self._next()
            if self._starts_atom():
                return _times(c, self._atom())
            return c
        return self._atom()

    def _starts_atom(self) -> bool:
        t = self._peek()
        return t.kind == "name" or t.text == "("

    def _atom(self) -> Value:
        t = self._next()
        if t.text == "(":
            items = [self._sum()]
            while self._peek().text == ",":
                self._next()
                items.append(self._sum())
            self._expect(")")
            if len(items) == 1:
                return items[0]
            out = items[0]
            for item in items[1:]:
                out = tensor(self._el(out) if isinstance(out, int) else out,
                             self._el(item) if isinstance(item, int) else item)
            return out
        if t.kind != "name":
            raise ParseError(f"unexpected {t.text or 'end of input'!r} at {t.pos}")
        name = t.text
        if name in self.ops:
            if self._peek().text != "(":
                raise ParseError(f"operator {name} needs an argument list at {t.pos}")
            self._next()
            args = [self._sum()]
            while self._peek().text == ",":
                self._next()
                args.append(self._sum())
            self._expect(")")
            try:
                return self.ops[name](*args)
            except TypeError as exc:
                raise ParseError(f"wrong number of arguments to {name}") from exc
        return self._generator(name, t.pos)

    def _generator(self, name: str, pos: int) -> Element:
        m = _INDEXED.match(name)
        if m:
            return Element.basis(self.ctx.label(m.group(1), int(m.group(2))))
        if name in _NAMED:
            fam, idx = _NAMED[name]
            return Element.basis(self.ctx.label(fam, idx))
        if name in _FAMILIES:
            nxt = self._peek()
            if nxt.kind == "int":
                self._next()
                return Element.basis(self.ctx.label(name, int(nxt.text)))
            if nxt.text == "(" and self.toks[self.i + 1].kind == "int" \
                    and self.toks[self.i + 2].text == ")":
                idx = int(self.toks[self.i + 1].text)
                self.i += 3
                return Element.basis(self.ctx.label(name, idx))
            if name == "U":
                return Element.basis(self.ctx.label("U", 1))
            raise ParseError(f"generator {name} needs an index at {pos}")
        raise ParseError(f"unknown name {name!r} at {pos}")


def _plus(x: Value, y: Value) -> Value:
    if isinstance(x, int) and isinstance(y, int):
        return x + y
    if isinstance(x, int) or isinstance(y, int):
        num, other = (x, y) if isinstance(x, int) else (y, x)
        if num != 0:
            raise ContractError("cannot add an integer to a class")
        return other
    return add(x, y)


def _times(c: int, v: Value) -> Value:
    return c * v if isinstance(v, int) else scale(c, v)


def parse_expression(src: str, ctx: SphereContext, **options) -> Value:
    return ExpressionParser(ctx, **options).parse(src)
