"""Evaluation, exact differentiation and closed-form antiderivatives."""
from __future__ import annotations

import cmath
import math

import numpy as np

from ..errors import EvaluationError
from .nodes import (
    ONE,
    ZERO,
    Add,
    Call,
    CExpr,
    Const,
    Div,
    Mul,
    Neg,
    Pow,
    Sub,
    Var,
    Z,
    add,
    call,
    const,
    div,
    mul,
    neg,
    power,
    sub,
)

_CMATH = {
    "exp": cmath.exp,
    "log": cmath.log,
    "sin": cmath.sin,
    "cos": cmath.cos,
    "sinh": cmath.sinh,
    "cosh": cmath.cosh,
}
_NUMPY = {
    "exp": np.exp,
    "log": np.log,
    "sin": np.sin,
    "cos": np.cos,
    "sinh": np.sinh,
    "cosh": np.cosh,
}


def _ev(e: CExpr, z: complex) -> complex:
    match e:
        case Const(value=v):
            return v
        case Var():
            return z
        case Neg(arg=a):
            return -_ev(a, z)
        case Add(left=a, right=b):
            return _ev(a, z) + _ev(b, z)
        case Sub(left=a, right=b):
            return _ev(a, z) - _ev(b, z)
        case Mul(left=a, right=b):
            return _ev(a, z) * _ev(b, z)
        case Div(left=a, right=b):
            den = _ev(b, z)
            if den == 0:
                raise EvaluationError(f"division by zero at z={z!r}")
            return _ev(a, z) / den
        case Pow(base=b, exponent=n):
            w = _ev(b, z)
            if w == 0 and n < 0:
                raise EvaluationError(f"negative power of zero at z={z!r}")
            return w**n
        case Call(name=name, arg=a):
            w = _ev(a, z)
            if name == "log" and w == 0:
                raise EvaluationError(f"log(0) at z={z!r}")
            return _CMATH[name](w)
    raise TypeError(f"not an expression node: {e!r}")


def evaluate(e: CExpr, z) -> complex:
    """Value of ``e`` at the point ``z`` (principal branch for log)."""
    try:
        return complex(_ev(e, complex(z)))
    except OverflowError as exc:
        raise EvaluationError(f"overflow at z={z!r}") from exc


def _ev_array(e: CExpr, z: np.ndarray) -> np.ndarray:
    match e:
        case Const(value=v):
            return np.full(z.shape, v, dtype=complex)
        case Var():
            return z
        case Neg(arg=a):
            return -_ev_array(a, z)
        case Add(left=a, right=b):
            return _ev_array(a, z) + _ev_array(b, z)
        case Sub(left=a, right=b):
            return _ev_array(a, z) - _ev_array(b, z)
        case Mul(left=a, right=b):
            return _ev_array(a, z) * _ev_array(b, z)
        case Div(left=a, right=b):
            return _ev_array(a, z) / _ev_array(b, z)
        case Pow(base=b, exponent=n):
            w = _ev_array(b, z)
            if n >= 0:
                return w**n
            return 1.0 / w ** (-n)
        case Call(name=name, arg=a):
            return _NUMPY[name](_ev_array(a, z))
    raise TypeError(f"not an expression node: {e!r}")


def evaluate_array(e: CExpr, zs) -> np.ndarray:
    """Vectorized evaluation; singular points come back as inf/nan."""
    z = np.asarray(zs, dtype=complex)
    with np.errstate(all="ignore"):
        return np.array(_ev_array(e, z), dtype=complex)


_DERIV = {
    "exp": lambda u: call("exp", u),
    "sin": lambda u: call("cos", u),
    "cos": lambda u: neg(call("sin", u)),
    "sinh": lambda u: call("cosh", u),
    "cosh": lambda u: call("sinh", u),
}


def differentiate(e: CExpr) -> CExpr:
    """d e / dz, with constant folding as the only simplification."""
    match e:
        case Const():
            return ZERO
        case Var():
            return ONE
        case Neg(arg=a):
            return neg(differentiate(a))
        case Add(left=a, right=b):
            return add(differentiate(a), differentiate(b))
        case Sub(left=a, right=b):
            return sub(differentiate(a), differentiate(b))
        case Mul(left=a, right=b):
            return add(mul(differentiate(a), b), mul(a, differentiate(b)))
        case Div(left=a, right=b):
            da, db = differentiate(a), differentiate(b)
            if isinstance(db, Const) and db.value == 0:
                return div(da, b)
            return div(sub(mul(da, b), mul(a, db)), power(b, 2))
        case Pow(base=b, exponent=n):
            return mul(mul(const(n), power(b, n - 1)), differentiate(b))
        case Call(name=name, arg=a):
            da = differentiate(a)
            if name == "log":
                return div(da, a)
            return mul(_DERIV[name](a), da)
    raise TypeError(f"not an expression node: {e!r}")


# -- antiderivatives ---------------------------------------------------------
#
# An integrand in the closed-form class is rewritten as a finite sum of
#     coeff * z^n * exp(alpha*z + beta)
# keyed by (n, alpha, beta).  Keys with alpha == 0 carry beta == 0 (the
# constant exp(beta) is folded into coeff).  sin/cos/sinh/cosh of affine
# arguments are expanded into exponentials.

class _NoForm(Exception):
    pass


_K0 = (0, 0j, 0j)


def _key(n, alpha, beta, coeff):
    if alpha == 0:
        return (n, 0j, 0j), coeff * cmath.exp(beta)
    return (n, complex(alpha), complex(beta)), coeff


def _accumulate(out, key, coeff):
    out[key] = out.get(key, 0j) + coeff


def _scale(terms, s):
    return {k: v * s for k, v in terms.items()}


def _tmul(t1, t2):
    out = {}
    for (n1, a1, b1), c1 in t1.items():
        for (n2, a2, b2), c2 in t2.items():
            k, c = _key(n1 + n2, a1 + a2, b1 + b2, c1 * c2)
            _accumulate(out, k, c)
    return out


def _inverse(terms):
    items = [(k, v) for k, v in terms.items() if v != 0]
    if len(items) != 1:
        raise _NoForm
    (n, a, b), c = items[0]
    k, c2 = _key(-n, -a, -b, 1 / c)
    return {k: c2}


def _tpow(terms, n):
    if n < 0:
        return _tpow(_inverse(terms), -n)
    out = {_K0: 1 + 0j}
    for _ in range(n):
        out = _tmul(out, terms)
    return out


def _terms(e: CExpr) -> dict:
    match e:
        case Const(value=v):
            return {_K0: v}
        case Var():
            return {(1, 0j, 0j): 1 + 0j}
        case Neg(arg=a):
            return _scale(_terms(a), -1)
        case Add(left=a, right=b) | Sub(left=a, right=b):
            out = dict(_terms(a))
            sign = 1 if isinstance(e, Add) else -1
            for k, v in _terms(b).items():
                _accumulate(out, k, sign * v)
            return out
        case Mul(left=a, right=b):
            return _tmul(_terms(a), _terms(b))
        case Div(left=a, right=b):
            return _tmul(_terms(a), _inverse(_terms(b)))
        case Pow(base=b, exponent=n):
            return _tpow(_terms(b), n)
        case Call(name=name, arg=a):
            inner = {k: v for k, v in _terms(a).items() if v != 0}
            if not set(inner) <= {_K0, (1, 0j, 0j)}:
                raise _NoForm
            alpha = inner.get((1, 0j, 0j), 0j)
            beta = inner.get(_K0, 0j)
            if alpha == 0:
                if name == "log" and beta == 0:
                    raise _NoForm
                return {_K0: _CMATH[name](beta)}
            if name == "log":
                raise _NoForm
            out = {}
            pieces = {
                "exp": [(1, 1)],
                "sinh": [(1, 0.5), (-1, -0.5)],
                "cosh": [(1, 0.5), (-1, 0.5)],
                "sin": [(1j, -0.5j), (-1j, 0.5j)],
                "cos": [(1j, 0.5), (-1j, 0.5)],
            }[name]
            for rot, c in pieces:
                k, cc = _key(0, rot * alpha, rot * beta, c)
                _accumulate(out, k, cc)
            return out
    raise TypeError(f"not an expression node: {e!r}")


def _affine(alpha, beta):
    return add(mul(const(alpha), Z), const(beta))


def _integrate_term(n, alpha, beta, c) -> CExpr:
    if alpha == 0:
        if n == -1:
            return mul(const(c), call("log", Z))
        return mul(const(c / (n + 1)), power(Z, n + 1))
    if n < 0:
        raise _NoForm
    # tabular integration by parts of z^n exp(alpha z + beta)
    poly = ZERO
    fall = 1.0
    for k in range(n + 1):
        coeff = (-1) ** k * fall / alpha ** (k + 1)
        poly = add(poly, mul(const(coeff), power(Z, n - k)))
        fall *= n - k
    return mul(const(c), mul(poly, call("exp", _affine(alpha, beta))))


def _sort_key(item):
    (n, a, b), _ = item
    return (a.real, a.imag, b.real, b.imag, n)


def _verification_points(count=32, seed=20240901):
    rng = np.random.default_rng(seed)
    r = rng.uniform(0.5, 2.0, count)
    t = rng.uniform(-math.pi, math.pi, count)
    return r * np.exp(1j * t)


def antiderivative(e: CExpr) -> CExpr | None:
    """Closed-form primitive of ``e``, or None when ``e`` is outside the
    closed-form class and the caller must integrate numerically.

    ``1/z`` integrates to ``log(z)`` (principal branch, cut along the negative
    real axis).  The primitive is checked against ``e`` at 32 fixed points
    before being returned.
    """
    try:
        terms = _terms(e)
        result = ZERO
        for (n, a, b), c in sorted(terms.items(), key=_sort_key):
            if c != 0:
                result = add(result, _integrate_term(n, a, b, c))
    except _NoForm:
        return None
    dresult = differentiate(result)
    for z in _verification_points():
        try:
            want = evaluate(e, z)
            got = evaluate(dresult, z)
        except EvaluationError:
            continue
        scale = max(1.0, abs(want), abs(got))
        if not abs(got - want) <= 1e-9 * scale:
            return None
    return result


def wirtinger_zbar(f, z: complex, step: float) -> complex:
    """Central-difference estimate of df/dzbar = (f_x + i f_y)/2."""
    fx = (f(z + step) - f(z - step)) / (2 * step)
    fy = (f(z + 1j * step) - f(z - 1j * step)) / (2 * step)
    return 0.5 * (fx + 1j * fy)


def wirtinger_z(f, z: complex, step: float) -> complex:
    """Central-difference estimate of df/dz = (f_x - i f_y)/2."""
    fx = (f(z + step) - f(z - step)) / (2 * step)
    fy = (f(z + 1j * step) - f(z - 1j * step)) / (2 * step)
    return 0.5 * (fx - 1j * fy)


def _as_callable(e):
    if isinstance(e, CExpr):
        return lambda z: evaluate(e, z)
    return e


def holomorphy_residual(e, samples, step: float = 1e-4) -> float:
    """max |d e/dzbar| over ``samples``; ``e`` may be an expression or any
    callable of one complex argument."""
    f = _as_callable(e)
    return max((abs(wirtinger_zbar(f, complex(z), step)) for z in samples), default=0.0)
