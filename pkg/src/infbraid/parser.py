"""Text syntax for algebra elements.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT ['/' INT] | NAME | '"' NAME '"' | 's<k>d(' NAME ')' | '(' expr ')'

Names are matched against the generators (and aliases) of the target algebra,
longest match first, so ``th+*th-`` reads as two generators.  Names that
contain ``+ - _`` may also be quoted.
"""

import re
from fractions import Fraction

from .algebra import GradedPoly


class ParseError(ValueError):
    pass


_INT = re.compile(r"\d+")
_WORD = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_SHIFTED = re.compile(r"s(\d+)d\(")


def _known_names(alg):
    names = getattr(alg, "_parser_names", None)
    if names is None:
        names = sorted(set(alg.index) | set(alg.aliases), key=len, reverse=True)
        alg._parser_names = names
    return names


def _resolve(alg, name, pos):
    name = alg.aliases.get(name, name)
    if name not in alg.index:
        raise ParseError("unknown symbol %r at %d" % (name, pos))
    return name


def tokenize(text, alg):
    toks = []
    pos = 0
    names = _known_names(alg)
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "+-*^()/":
            toks.append(("op", ch, pos))
            pos += 1
            continue
        if ch.isdigit():
            m = _INT.match(text, pos)
            toks.append(("int", int(m.group()), pos))
            pos = m.end()
            continue
        if ch in "\"'":
            end = text.find(ch, pos + 1)
            if end < 0:
                raise ParseError("unterminated quote at %d" % pos)
            toks.append(("name", _resolve(alg, text[pos + 1:end], pos), pos))
            pos = end + 1
            continue
        m = _SHIFTED.match(text, pos)
        if m:
            end = text.find(")", m.end())
            if end < 0:
                raise ParseError("unterminated %s at %d" % (m.group(), pos))
            inner = text[m.end():end].strip().strip("\"'")
            full = "%s%s)" % (m.group(), inner)
            toks.append(("name", _resolve(alg, full, pos), pos))
            pos = end + 1
            continue
        for name in names:
            if text.startswith(name, pos):
                nxt = pos + len(name)
                # do not split an alphanumeric word
                if nxt < len(text) and (text[nxt].isalnum() or text[nxt] == "_") \
                        and (name[-1].isalnum() or name[-1] == "_"):
                    continue
                toks.append(("name", _resolve(alg, name, pos), pos))
                pos = nxt
                break
        else:
            m = _WORD.match(text, pos)
            if m:
                raise ParseError("unknown symbol %r at %d" % (m.group(), pos))
            raise ParseError("unexpected character %r at %d" % (ch, pos))
    return toks


class _Parser:
    def __init__(self, toks, alg):
        self.toks = toks
        self.i = 0
        self.alg = alg

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, op=None):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input")
        if op is not None and not (t[0] == "op" and t[1] == op):
            raise ParseError("expected %r at %d" % (op, t[2]))
        self.i += 1
        return t

    def is_op(self, *ops):
        t = self.peek()
        return t is not None and t[0] == "op" and t[1] in ops

    def expr(self):
        out = self.term()
        while self.is_op("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.unary()
        while self.is_op("*"):
            self.take()
            out = out * self.unary()
        return out

    def unary(self):
        if self.is_op("-"):
            self.take()
            return -self.unary()
        if self.is_op("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.is_op("^"):
            self.take()
            t = self.take()
            if t[0] != "int":
                raise ParseError("exponent must be a non-negative integer at %d" % t[2])
            return base ** t[1]
        return base

    def atom(self):
        t = self.take()
        if t[0] == "int":
            val = Fraction(t[1])
            if self.is_op("/"):
                self.take()
                den = self.take()
                if den[0] != "int" or den[1] == 0:
                    raise ParseError("bad denominator at %d" % t[2])
                val = val / den[1]
            return self.alg.scalar(val)
        if t[0] == "name":
            return self.alg.gen(t[1])
        if t[1] == "(":
            out = self.expr()
            self.take(")")
            return out
        raise ParseError("unexpected %r at %d" % (t[1], t[2]))


def parse_poly(text, alg):
    """Parse an expression into a GradedPoly over ``alg``."""
    if isinstance(text, (int, Fraction)):
        return alg.scalar(text)
    toks = tokenize(str(text), alg)
    if not toks:
        raise ParseError("empty expression")
    p = _Parser(toks, alg)
    out = p.expr()
    if p.peek() is not None:
        raise ParseError("trailing input at %d" % p.peek()[2])
    return out


def format_rational(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def format_mono(alg, m):
    parts = []
    for i, e in enumerate(m):
        if e:
            name = alg.generators[i].name
            parts.append(name if e == 1 else "%s^%d" % (name, e))
    return "*".join(parts)


def format_terms(alg, terms, max_terms=None):
    """Render monomial->coefficient items in canonical order."""
    items = sorted(terms.items(), key=lambda kv: (alg.mono_degree(kv[0]), kv[0]),
                   reverse=True)
    extra = 0
    if max_terms is not None and len(items) > max_terms:
        extra = len(items) - max_terms
        items = items[:max_terms]
    out = ""
    for k, (m, c) in enumerate(items):
        mono = format_mono(alg, m)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = "%s*%s" % (format_rational(a), mono)
        if k == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    if extra:
        out += " + ... (%d more terms)" % extra
    return out or "0"


def format_poly(p, max_terms=None):
    if not isinstance(p, GradedPoly):
        return format_rational(p)
    return format_terms(p.alg, p.terms, max_terms)
