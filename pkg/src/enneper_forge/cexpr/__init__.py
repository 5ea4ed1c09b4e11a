"""Complex-expression language: parsing, evaluation, calculus, quadrature."""
from .calculus import (
    antiderivative,
    differentiate,
    evaluate,
    evaluate_array,
    holomorphy_residual,
    wirtinger_z,
    wirtinger_zbar,
)
from .holo import HoloFn, QuadratureFn, primitive, straight_route
from .nodes import (
    FUNCTIONS,
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
    to_text,
)
from .parser import parse, tokenize
from .quadrature import MAX_SUBDIVISIONS, circle, integrate_path

__all__ = [
    "FUNCTIONS", "MAX_SUBDIVISIONS", "Add", "CExpr", "Call", "Const", "Div",
    "HoloFn", "Mul", "Neg", "Pow", "QuadratureFn", "Sub", "Var",
    "antiderivative", "circle", "differentiate", "evaluate", "evaluate_array",
    "holomorphy_residual", "integrate_path", "parse", "primitive",
    "straight_route", "to_text", "tokenize", "wirtinger_z", "wirtinger_zbar",
]
