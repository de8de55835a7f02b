"""
A small text syntax for operator words, used by the ``congruence`` command.

    expr    := term (("+" | "-") term)*
    term    := ["-"] factor (("*" | "∘") factor)*
    factor  := rational | scalar | atom | "(" expr ")"
    scalar  := ("f" | "g") "(" value "," value ")"
    atom    := C[lo,hi;a=A](value)      A[lo,hi](value)
             | T[lo,hi;row=R,col=S](value)  L[i;row=R,col=S](value)
             | b[a=A,i=I]  bstar[a=A,i=I]  qN[a=A,i=I,e=E]
    value   := rational | name

Composition ``X * Y`` applies Y first.  Names in ``value`` positions are
looked up in an environment (``z``, ``w``, ``z1``, ...).  Example:

    C[1,3;a=2](z) ∘ bstar[a=1,i=2]
"""

import re
from fractions import Fraction
from typing import Dict, List

from . import fock
from .scalars import f_factor, g_factor, parse_rational


class OpSyntaxError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(∘|[-+*()\[\],;=]))")


def tokenize(text: str) -> List[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise OpSyntaxError("unexpected character %r at %d" % (text[pos], pos))
        out.append(m.group(m.lastindex))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, env, q):
        self.toks = tokens
        self.i = 0
        self.env = env
        self.q = q

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, want=None):
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise OpSyntaxError("expected %r, found %r" % (want or "token", tok))
        self.i += 1
        return tok

    def parse(self):
        op = self.expr()
        if self.peek() is not None:
            raise OpSyntaxError("trailing input at %r" % self.peek())
        return op

    def expr(self):
        op = self.term()
        while self.peek() in ("+", "-"):
            sign = self.take()
            rhs = self.term()
            op = op + rhs if sign == "+" else op - rhs
        return op

    def term(self):
        neg = False
        if self.peek() == "-":
            self.take()
            neg = True
        op = self.factor()
        while self.peek() in ("*", "∘"):
            self.take()
            op = op * self.factor()
        return -op if neg else op

    def value(self) -> Fraction:
        tok = self.take()
        if tok == "-":
            return -self.value()
        if tok[0].isdigit():
            return parse_rational(tok)
        if tok not in self.env:
            raise OpSyntaxError("unbound name %r" % tok)
        return Fraction(self.env[tok])

    def ints(self, names):
        """Parse name=int pairs in any order."""
        got = {}
        while True:
            key = self.take()
            self.take("=")
            got[key] = self.signed_int()
            if self.peek() != ",":
                break
            self.take(",")
        if set(got) != set(names):
            raise OpSyntaxError("expected keys %s, got %s" % (sorted(names), sorted(got)))
        return got

    def interval(self):
        lo = self.signed_int()
        self.take(",")
        hi = self.signed_int()
        return lo, hi

    def signed_int(self):
        if self.peek() == "-":
            self.take()
            return -int(self.take())
        return int(self.take())

    def call_arg(self):
        self.take("(")
        v = self.value()
        self.take(")")
        return v

    def factor(self):
        tok = self.peek()
        if tok is None:
            raise OpSyntaxError("unexpected end of input")
        if tok == "(":
            self.take()
            op = self.expr()
            self.take(")")
            return op
        if tok[0].isdigit():
            return fock._as_operator(parse_rational(self.take()))
        name = self.take()
        if name in ("f", "g"):
            self.take("(")
            x = self.value()
            self.take(",")
            y = self.value()
            self.take(")")
            fn = f_factor if name == "f" else g_factor
            return fock._as_operator(fn(x, y, self.q))
        if name not in _ATOMS:
            if name in self.env:
                return fock._as_operator(self.env[name])
            raise OpSyntaxError("unknown operator %r" % name)
        self.take("[")
        op = _ATOMS[name](self)
        return op


def _atom_C(p):
    lo, hi = p.interval()
    p.take(";")
    a = p.ints({"a"})["a"]
    p.take("]")
    return fock.C(lo, hi, a, p.call_arg())


def _atom_A(p):
    lo, hi = p.interval()
    p.take("]")
    return fock.A(lo, hi, p.call_arg())


def _atom_T(p):
    lo, hi = p.interval()
    p.take(";")
    k = p.ints({"row", "col"})
    p.take("]")
    return fock.T(lo, hi, k["row"], k["col"], p.call_arg())


def _atom_L(p):
    i = p.signed_int()
    p.take(";")
    k = p.ints({"row", "col"})
    p.take("]")
    return fock.L(i, k["row"], k["col"], p.call_arg())


def _atom_local(ctor, keys):
    def build(p):
        k = p.ints(keys)
        p.take("]")
        return ctor(**k)
    return build


_ATOMS = {
    "C": _atom_C,
    "A": _atom_A,
    "T": _atom_T,
    "L": _atom_L,
    "b": _atom_local(fock.b, {"a", "i"}),
    "bstar": _atom_local(fock.bstar, {"a", "i"}),
    "qN": _atom_local(fock.qN, {"a", "i", "e"}),
}


def parse_operator(text: str, env: Dict[str, Fraction], q) -> "fock.Operator":
    return _Parser(tokenize(text), dict(env), Fraction(q)).parse()


def default_env(z) -> Dict[str, Fraction]:
    """z, w bound to the first two spectral values and z1, z2, ... to all of them."""
    env = {}
    for i, v in enumerate(z):
        env["z%d" % (i + 1)] = Fraction(v)
    if z:
        env["z"] = Fraction(z[0])
    if len(z) > 1:
        env["w"] = Fraction(z[1])
    return env
