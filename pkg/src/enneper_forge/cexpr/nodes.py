"""Expression tree for holomorphic functions of one complex variable z.

Nodes are frozen dataclasses, so structural equality is plain ``==``.
The lower-case constructors (``add``, ``mul``, ...) fold constants and drop
neutral elements; the node classes themselves never simplify.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

FUNCTIONS = ("exp", "log", "sin", "cos", "sinh", "cosh")


class CExpr:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Const(CExpr):
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True)
class Var(CExpr):
    pass


@dataclass(frozen=True)
class Neg(CExpr):
    arg: CExpr


@dataclass(frozen=True)
class Add(CExpr):
    left: CExpr
    right: CExpr


@dataclass(frozen=True)
class Sub(CExpr):
    left: CExpr
    right: CExpr


@dataclass(frozen=True)
class Mul(CExpr):
    left: CExpr
    right: CExpr


@dataclass(frozen=True)
class Div(CExpr):
    left: CExpr
    right: CExpr


@dataclass(frozen=True)
class Pow(CExpr):
    base: CExpr
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int) or isinstance(self.exponent, bool):
            raise TypeError("power exponents must be integers")


@dataclass(frozen=True)
class Call(CExpr):
    name: str
    arg: CExpr

    def __post_init__(self):
        if self.name not in FUNCTIONS:
            raise ValueError(f"unknown function {self.name!r}")


Z = Var()
ZERO = Const(0)
ONE = Const(1)

_CMATH = {
    "exp": cmath.exp,
    "log": cmath.log,
    "sin": cmath.sin,
    "cos": cmath.cos,
    "sinh": cmath.sinh,
    "cosh": cmath.cosh,
}


def _is(e, value):
    return isinstance(e, Const) and e.value == value


def const(value) -> Const:
    return Const(value)


def _negative_looking(v: complex) -> bool:
    # printed with a leading minus: -x, -y*i
    return v.real < 0 or (v.real == 0 and v.imag < 0)


def neg(a: CExpr) -> CExpr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def add(a: CExpr, b: CExpr) -> CExpr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if _is(a, 0):
        return b
    if _is(b, 0):
        return a
    if isinstance(b, Neg):
        return Sub(a, b.arg)
    if isinstance(b, Const) and _negative_looking(b.value):
        return Sub(a, Const(-b.value))
    return Add(a, b)


def sub(a: CExpr, b: CExpr) -> CExpr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if _is(b, 0):
        return a
    if _is(a, 0):
        return neg(b)
    if isinstance(b, Neg):
        return Add(a, b.arg)
    if isinstance(b, Const) and _negative_looking(b.value):
        return Add(a, Const(-b.value))
    return Sub(a, b)


def mul(a: CExpr, b: CExpr) -> CExpr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if _is(a, 0) or _is(b, 0):
        return ZERO
    if _is(a, 1):
        return b
    if _is(b, 1):
        return a
    if _is(a, -1):
        return neg(b)
    if _is(b, -1):
        return neg(a)
    if isinstance(b, Neg):
        return neg(mul(a, b.arg))
    return Mul(a, b)


def div(a: CExpr, b: CExpr) -> CExpr:
    if isinstance(a, Const) and isinstance(b, Const) and b.value != 0:
        return Const(a.value / b.value)
    if _is(a, 0) and not _is(b, 0):
        return ZERO
    if _is(b, 1):
        return a
    return Div(a, b)


def power(base: CExpr, n: int) -> CExpr:
    if n == 0:
        return ONE
    if n == 1:
        return base
    if isinstance(base, Const) and (n > 0 or base.value != 0):
        return Const(base.value**n)
    return Pow(base, n)


def call(name: str, arg: CExpr) -> CExpr:
    if isinstance(arg, Const):
        try:
            return Const(_CMATH[name](arg.value))
        except (ValueError, OverflowError):
            pass
    return Call(name, arg)


# precedence levels used by the printer
_P_ADD, _P_MUL, _P_NEG, _P_POW, _P_ATOM = 1, 2, 3, 4, 5


def _format_real(x: float) -> str:
    text = repr(float(x))
    if text in ("inf", "-inf", "nan"):
        raise ValueError(f"cannot print non-finite constant {x}")
    return text


def _const_text(v: complex) -> tuple[str, int]:
    if v.imag == 0 and v.real >= 0 and not (v.real == 0 and str(v.real).startswith("-")):
        return _format_real(v.real), _P_ATOM
    if v == 1j:
        return "i", _P_ATOM
    if v.imag == 0:
        return "-" + _format_real(-v.real), _P_NEG
    if v.real == 0:
        im = v.imag
        if im < 0:
            return f"-{_format_real(-im)}*i", _P_ADD
        return f"{_format_real(im)}*i", _P_MUL
    re = _format_real(abs(v.real))
    re = re if v.real >= 0 else "-" + re
    sign = "+" if v.imag >= 0 else "-"
    return f"{re} {sign} {_format_real(abs(v.imag))}*i", _P_ADD


def _text(e: CExpr) -> tuple[str, int]:
    def wrap(child, minimum):
        s, p = _text(child)
        return f"({s})" if p < minimum else s

    match e:
        case Const(value=v):
            return _const_text(v)
        case Var():
            return "z", _P_ATOM
        case Neg(arg=a):
            return "-" + wrap(a, _P_NEG), _P_NEG
        case Add(left=a, right=b):
            return f"{wrap(a, _P_ADD)} + {wrap(b, _P_MUL)}", _P_ADD
        case Sub(left=a, right=b):
            return f"{wrap(a, _P_ADD)} - {wrap(b, _P_MUL)}", _P_ADD
        case Mul(left=a, right=b):
            return f"{wrap(a, _P_MUL)}*{wrap(b, _P_NEG)}", _P_MUL
        case Div(left=a, right=b):
            return f"{wrap(a, _P_MUL)}/{wrap(b, _P_NEG)}", _P_MUL
        case Pow(base=b, exponent=n):
            return f"{wrap(b, _P_ATOM)}^{n}", _P_POW
        case Call(name=name, arg=a):
            return f"{name}({_text(a)[0]})", _P_ATOM
    raise TypeError(f"not an expression node: {e!r}")


def to_text(e: CExpr) -> str:
    """Render ``e`` in the input grammar; the result parses back to ``e``
    whenever ``e`` came out of the parser."""
    return _text(e)[0]


def size(e: CExpr) -> int:
    match e:
        case Const() | Var():
            return 1
        case Neg(arg=a) | Pow(base=a) | Call(arg=a):
            return 1 + size(a)
        case Add(left=a, right=b) | Sub(left=a, right=b) | Mul(left=a, right=b) | Div(left=a, right=b):
            return 1 + size(a) + size(b)
    raise TypeError(f"not an expression node: {e!r}")
