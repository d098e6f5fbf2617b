"""Expression trees: parsing, differentiation and evaluation.

Grammar accepted by :func:`parse` (EBNF)::

    expr    = term , { ("+" | "-") , term } ;
    term    = unary , { ("*" | "/") , unary } ;
    unary   = ("-" | "+") , unary | power ;
    power   = atom , [ "^" , ( integer | "(" , integer , ")" ) ] ;
    atom    = number | "pi" | variable | func , "(" , expr , ")" | "(" , expr , ")" ;
    func    = "sin" | "cos" | "exp" ;
    variable = "x" | "x" , digit , { digit } ;

``^`` binds tighter than unary minus, so ``-x^2`` is ``-(x^2)``.  Chained
powers must be parenthesized.  With ``arity == 1`` the variable is ``x``
(``x1`` is accepted as a synonym); otherwise ``x1 .. xn``.

Every tree can be evaluated at a real point (:func:`eval_real`), over a box
of classical intervals (:func:`eval_interval`, the natural extension) or as
a centered form (:func:`eval_centered`).  The linear functional evaluator
lives in :mod:`funtervals.lfr`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Sequence

from . import interval as iv
from .errors import DomainError, EnclosureError, ParseError
from .interval import Interval


class Expr:
    """Base class of expression nodes.  Nodes are immutable."""

    __slots__ = ()
    precedence = 100

    def _eval(self, ops):
        raise NotImplementedError

    def __add__(self, other):
        return Add(self, as_expr(other))

    def __radd__(self, other):
        return Add(as_expr(other), self)

    def __sub__(self, other):
        return Sub(self, as_expr(other))

    def __rsub__(self, other):
        return Sub(as_expr(other), self)

    def __mul__(self, other):
        return Mul(self, as_expr(other))

    def __rmul__(self, other):
        return Mul(as_expr(other), self)

    def __truediv__(self, other):
        return Div(self, as_expr(other))

    def __rtruediv__(self, other):
        return Div(as_expr(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, n):
        return Pow(self, n)


def as_expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, float)):
        return Const(float(x))
    raise TypeError(f"cannot convert {type(x).__name__} to an expression")


def _wrap(child: Expr, prec: int, right: bool = False) -> str:
    s = str(child)
    if child.precedence < prec or (right and child.precedence == prec):
        return f"({s})"
    return s


@dataclass(frozen=True, slots=True)
class Const(Expr):
    value: float
    precedence = 100

    def _eval(self, ops):
        return ops.const(self.value)

    def __str__(self):
        v = self.value
        if v == math.pi:
            return "pi"
        s = repr(float(v))
        if s.endswith(".0"):
            s = s[:-2]
        return f"({s})" if v < 0 else s


@dataclass(frozen=True, slots=True)
class Var(Expr):
    index: int
    precedence = 100

    def _eval(self, ops):
        return ops.var(self.index)

    def __str__(self):
        return f"x{self.index + 1}"


@dataclass(frozen=True, slots=True)
class Add(Expr):
    left: Expr
    right: Expr
    precedence = 10

    def _eval(self, ops):
        return ops.add(self.left._eval(ops), self.right._eval(ops))

    def __str__(self):
        return f"{_wrap(self.left, 10)} + {_wrap(self.right, 10, True)}"


@dataclass(frozen=True, slots=True)
class Sub(Expr):
    left: Expr
    right: Expr
    precedence = 10

    def _eval(self, ops):
        return ops.sub(self.left._eval(ops), self.right._eval(ops))

    def __str__(self):
        return f"{_wrap(self.left, 10)} - {_wrap(self.right, 10, True)}"


@dataclass(frozen=True, slots=True)
class Mul(Expr):
    left: Expr
    right: Expr
    precedence = 20

    def _eval(self, ops):
        return ops.mul(self.left._eval(ops), self.right._eval(ops))

    def __str__(self):
        return f"{_wrap(self.left, 20)}*{_wrap(self.right, 20, True)}"


@dataclass(frozen=True, slots=True)
class Div(Expr):
    left: Expr
    right: Expr
    precedence = 20

    def _eval(self, ops):
        return ops.div(self.left._eval(ops), self.right._eval(ops))

    def __str__(self):
        return f"{_wrap(self.left, 20)}/{_wrap(self.right, 20, True)}"


@dataclass(frozen=True, slots=True)
class Neg(Expr):
    arg: Expr
    precedence = 30

    def _eval(self, ops):
        return ops.neg(self.arg._eval(ops))

    def __str__(self):
        return f"-{_wrap(self.arg, 31)}"


@dataclass(frozen=True, slots=True)
class Pow(Expr):
    base: Expr
    exponent: int
    precedence = 40

    def __post_init__(self):
        if isinstance(self.exponent, bool) or not isinstance(self.exponent, int) or self.exponent < 0:
            raise DomainError(f"exponent must be a nonnegative integer, got {self.exponent!r}")

    def _eval(self, ops):
        return ops.pow(self.base._eval(ops), self.exponent)

    def __str__(self):
        return f"{_wrap(self.base, 41)}^{self.exponent}"


@dataclass(frozen=True, slots=True)
class Sin(Expr):
    arg: Expr

    def _eval(self, ops):
        return ops.sin(self.arg._eval(ops))

    def __str__(self):
        return f"sin({self.arg})"


@dataclass(frozen=True, slots=True)
class Cos(Expr):
    arg: Expr

    def _eval(self, ops):
        return ops.cos(self.arg._eval(ops))

    def __str__(self):
        return f"cos({self.arg})"


@dataclass(frozen=True, slots=True)
class Exp(Expr):
    arg: Expr

    def _eval(self, ops):
        return ops.exp(self.arg._eval(ops))

    def __str__(self):
        return f"exp({self.arg})"


def x(index: int = 0) -> Var:
    return Var(index)


def sin(e) -> Sin:
    return Sin(as_expr(e))


def cos(e) -> Cos:
    return Cos(as_expr(e))


def exp(e) -> Exp:
    return Exp(as_expr(e))


def children(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, (Add, Sub, Mul, Div)):
        return (e.left, e.right)
    if isinstance(e, (Neg, Sin, Cos, Exp)):
        return (e.arg,)
    if isinstance(e, Pow):
        return (e.base,)
    return ()


def arity_of(e: Expr) -> int:
    """One more than the largest variable index used (0 for constants)."""
    stack, top = [e], -1
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            top = max(top, node.index)
        stack.extend(children(node))
    return top + 1


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)
_FUNCS = {"sin": Sin, "cos": Cos, "exp": Exp}


class _Parser:
    def __init__(self, text: str, arity: int):
        self.text = text
        self.arity = arity
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        tokens, i = [], 0
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                raise ParseError(f"unexpected character {text[i]!r}", i, text)
            kind = m.lastgroup
            start = m.start(kind)
            tokens.append((kind, m.group(kind), start))
            i = m.end()
        tokens.append(("end", "", len(text)))
        return tokens

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value):
        kind, val, at = self.take()
        if val != value or kind == "end" and value:
            found = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected {value!r}, found {found}", at, self.text)

    def parse(self) -> Expr:
        e = self.expr()
        kind, val, at = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", at, self.text)
        return e

    def expr(self):
        e = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self):
        e = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.unary()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return Neg(self.unary())
        if kind == "op" and val == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] != "^":
            return base
        self.take()
        n = self._exponent()
        if self.peek()[1] == "^":
            raise ParseError("chained '^' is ambiguous; add parentheses", self.peek()[2], self.text)
        return Pow(base, n)

    def _exponent(self) -> int:
        kind, val, at = self.peek()
        if kind == "op" and val == "(":
            self.take()
            n = self._exponent()
            self.expect(")")
            return n
        if kind == "num" and re.fullmatch(r"\d+", val):
            self.take()
            return int(val)
        found = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"exponent must be a nonnegative integer literal, found {found}", at, self.text)

    def atom(self):
        kind, val, at = self.take()
        if kind == "num":
            return Const(float(val))
        if kind == "name":
            if val in _FUNCS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return _FUNCS[val](arg)
            if val == "pi":
                return Const(math.pi)
            return self._variable(val, at)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect(")")
            return e
        found = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"expected a number, variable, function or '(', found {found}", at, self.text)

    def _variable(self, name, at):
        if name == "x" and self.arity == 1:
            return Var(0)
        m = re.fullmatch(r"x([1-9]\d*)", name)
        if m and int(m.group(1)) <= self.arity:
            return Var(int(m.group(1)) - 1)
        if m:
            raise ParseError(f"variable {name!r} exceeds arity {self.arity}", at, self.text)
        raise ParseError(f"unknown identifier {name!r}", at, self.text)


def parse(text: str, arity: int = 1) -> Expr:
    """Parse ``text`` into an expression over ``arity`` variables.

    Raises
    ------
    ParseError
        On malformed input, unknown identifiers or a non-integer exponent.
        ``err.position`` is the offending character offset.
    """
    if arity < 1:
        raise DomainError("arity must be at least 1")
    return _Parser(text, arity).parse()


def infer_arity(text: str) -> int:
    """Guess the arity from the variable names appearing in ``text``."""
    names = re.findall(r"\bx(\d*)\b", text)
    indices = [int(n) for n in names if n]
    return max(indices, default=1)


# ---------------------------------------------------------------------------
# Differentiation
# ---------------------------------------------------------------------------

def _is_const(e, value=None):
    return isinstance(e, Const) and (value is None or e.value == value)


def _add(a, b):
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    if isinstance(b, Neg):
        return _sub(a, b.arg)
    return Add(a, b)


def _sub(a, b):
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return _neg(b)
    if isinstance(b, Neg):
        return _add(a, b.arg)
    return Sub(a, b)


def _neg(a):
    if _is_const(a):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def _mul(a, b):
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return Const(0.0)
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    if _is_const(b):
        a, b = b, a
    if _is_const(a, -1.0):
        return _neg(b)
    if _is_const(a) and isinstance(b, Mul) and _is_const(b.left):
        return _mul(Const(a.value * b.left.value), b.right)
    return Mul(a, b)


def _div(a, b):
    if _is_const(a, 0.0):
        return Const(0.0)
    if _is_const(b, 1.0):
        return a
    return Div(a, b)


def _pow(a, n):
    if n == 0:
        return Const(1.0)
    if n == 1:
        return a
    if _is_const(a):
        return Const(iv.ipow(a.value, n))
    return Pow(a, n)


def differentiate(e: Expr, var: int = 0) -> Expr:
    """Symbolic partial derivative of ``e`` with respect to variable ``var``.

    The result is lightly simplified (constant folding and 0/1 identities),
    not canonicalized.
    """
    if isinstance(e, Const):
        return Const(0.0)
    if isinstance(e, Var):
        return Const(1.0 if e.index == var else 0.0)
    if isinstance(e, Add):
        return _add(differentiate(e.left, var), differentiate(e.right, var))
    if isinstance(e, Sub):
        return _sub(differentiate(e.left, var), differentiate(e.right, var))
    if isinstance(e, Neg):
        return _neg(differentiate(e.arg, var))
    if isinstance(e, Mul):
        du, dv = differentiate(e.left, var), differentiate(e.right, var)
        return _add(_mul(du, e.right), _mul(e.left, dv))
    if isinstance(e, Div):
        du, dv = differentiate(e.left, var), differentiate(e.right, var)
        if _is_const(dv, 0.0):
            return _div(du, e.right)
        return _div(_sub(_mul(du, e.right), _mul(e.left, dv)), _pow(e.right, 2))
    if isinstance(e, Pow):
        if e.exponent == 0:
            return Const(0.0)
        du = differentiate(e.base, var)
        return _mul(_mul(Const(float(e.exponent)), _pow(e.base, e.exponent - 1)), du)
    if isinstance(e, Sin):
        return _mul(Cos(e.arg), differentiate(e.arg, var))
    if isinstance(e, Cos):
        return _neg(_mul(Sin(e.arg), differentiate(e.arg, var)))
    if isinstance(e, Exp):
        return _mul(e, differentiate(e.arg, var))
    raise TypeError(f"unknown node {type(e).__name__}")


def gradient(e: Expr, arity: int) -> tuple[Expr, ...]:
    return tuple(differentiate(e, i) for i in range(arity))


# ---------------------------------------------------------------------------
# Evaluation backends
# ---------------------------------------------------------------------------

class _RealOps:
    __slots__ = ("point",)

    def __init__(self, point):
        self.point = point

    def const(self, c):
        return c

    def var(self, i):
        return self.point[i]

    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    neg = staticmethod(lambda a: -a)

    @staticmethod
    def div(a, b):
        if b == 0.0:
            raise DomainError("division by zero")
        return a / b

    pow = staticmethod(iv.ipow)
    sin = staticmethod(math.sin)
    cos = staticmethod(math.cos)
    exp = staticmethod(iv._safe_exp)


class _IntervalOps:
    __slots__ = ("box",)

    def __init__(self, box):
        self.box = box

    @staticmethod
    def const(c):
        return Interval(c, c)

    def var(self, i):
        return self.box[i]

    add = staticmethod(iv.add)
    sub = staticmethod(iv.sub)
    mul = staticmethod(iv.mul)
    neg = staticmethod(iv.neg)

    @staticmethod
    def div(a, b):
        if b.lo <= 0.0 <= b.hi:
            raise EnclosureError(f"denominator enclosure {b} contains zero")
        return iv.div(a, b)

    pow = staticmethod(iv.pow_int)
    sin = staticmethod(iv.sin)
    cos = staticmethod(iv.cos)
    exp = staticmethod(iv.exp)


def _check_arity(e: Expr, n: int):
    if arity_of(e) > n:
        raise DomainError(f"expression uses {arity_of(e)} variables but {n} values were given")


def eval_real(e: Expr, point: Sequence[float]) -> float:
    """Evaluate at a real point.  Division by zero raises DomainError."""
    if isinstance(point, (int, float)):
        point = (float(point),)
    try:
        return e._eval(_RealOps(point))
    except IndexError:
        _check_arity(e, len(point))
        raise


def eval_interval(e: Expr, box) -> Interval:
    """Natural interval extension over ``box`` (a sequence of intervals)."""
    if isinstance(box, Interval):
        box = (box,)
    try:
        return e._eval(_IntervalOps(box))
    except IndexError:
        _check_arity(e, len(box))
        raise


class CenteredForm:
    """Mean-value (centered) inclusion function with precomputed gradient.

    ``F(X) = f(m) + sum_k (X_k - m_k) * G_k(X)`` where ``m`` is the midpoint
    of ``X`` and ``G_k`` the natural extension of the k-th partial derivative.
    """

    def __init__(self, e: Expr, arity: int | None = None):
        self.expr = e
        self.arity = arity if arity is not None else max(arity_of(e), 1)
        self.grad = gradient(e, self.arity)

    def gradient_enclosure(self, box) -> tuple[Interval, ...]:
        return tuple(eval_interval(g, box) for g in self.grad)

    def enclose(self, box, grads=None) -> tuple[Interval, tuple[Interval, ...]]:
        """Return the centered enclosure together with the gradient intervals."""
        if isinstance(box, Interval):
            box = (box,)
        if grads is None:
            grads = self.gradient_enclosure(box)
        centre = [b.mid for b in box]
        try:
            fc = eval_real(self.expr, centre)
        except DomainError as exc:
            raise EnclosureError(str(exc)) from exc
        lo = hi = fc
        for b, c, g in zip(box, centre, grads):
            if b.lo == b.hi:
                continue
            term = iv.mul(Interval(b.lo - c, b.hi - c), g)
            lo += term.lo
            hi += term.hi
        return Interval(lo, hi), grads

    def __call__(self, box) -> Interval:
        return self.enclose(box)[0]


def eval_centered(e: Expr, box) -> Interval:
    """Centered-form enclosure of ``e`` over ``box``."""
    if isinstance(box, Interval):
        box = (box,)
    return CenteredForm(e, len(box))(box)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial ``c0 + c1 x + ... + cn x^n`` with ``cn != 0``."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        c = [float(v) for v in self.coeffs]
        while c and c[-1] == 0.0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> Polynomial:
        return Polynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    @classmethod
    def from_expr(cls, e: Expr) -> Polynomial:
        """Expand a univariate polynomial expression.

        Raises DomainError for anything that is not a polynomial in ``x``.
        """
        return cls(tuple(_expand(e)))


def _padd(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0.0) + (q[i] if i < len(q) else 0.0) for i in range(n)]


def _pmul(p, q):
    out = [0.0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _expand(e):
    if isinstance(e, Const):
        return [e.value]
    if isinstance(e, Var):
        if e.index != 0:
            raise DomainError("polynomial extraction supports a single variable only")
        return [0.0, 1.0]
    if isinstance(e, Add):
        return _padd(_expand(e.left), _expand(e.right))
    if isinstance(e, Sub):
        return _padd(_expand(e.left), [-c for c in _expand(e.right)])
    if isinstance(e, Neg):
        return [-c for c in _expand(e.arg)]
    if isinstance(e, Mul):
        return _pmul(_expand(e.left), _expand(e.right))
    if isinstance(e, Pow):
        base, out = _expand(e.base), [1.0]
        for _ in range(e.exponent):
            out = _pmul(out, base)
        return out
    if isinstance(e, Div):
        den = Polynomial(tuple(_expand(e.right)))
        if den.degree == 0:
            return [c / den.coeffs[0] for c in _expand(e.left)]
    raise DomainError(
        f"{e} is not a polynomial; an explicit search domain is required"
    )


def rouche_bound(p: Polynomial | Expr) -> Interval:
    """Interval ``[-(1+m), 1+m]`` containing every real root of ``p``.

    ``m`` is the largest ``|c_i / c_n|`` over the non-leading coefficients.
    """
    if isinstance(p, Expr):
        p = Polynomial.from_expr(p)
    if p.is_zero:
        raise DomainError("the zero polynomial has no root bound")
    if p.degree < 1:
        raise DomainError("a root bound needs degree >= 1")
    lead = p.coeffs[-1]
    m = max(abs(c / lead) for c in p.coeffs[:-1])
    return Interval(-(1.0 + m), 1.0 + m)
