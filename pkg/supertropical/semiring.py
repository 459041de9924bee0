"""Exact arithmetic for the max-plus semifield T and its supertropical extension T[i].

Scalars of T are plain floats with ``-inf`` standing for epsilon. Every operation is
built from ``max`` and ``+``, so integer and short-decimal inputs stay exactly
representable and equality is exact.

A supertropical scalar ``a + ib`` is the pair ``(a, b)``; the pair is stored as given,
ghosts ``a + ia`` are not collapsed into a tagged form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real
from typing import Any, Union

from .errors import BadScalar

ExtReal = float

EPS: ExtReal = float("-inf")

EPS_TOKEN = "eps"


def _check_ext_real(value: float) -> float:
    value = float(value)
    if math.isnan(value) or value == math.inf:
        raise ValueError(f"not an extended real: {value!r}")
    return value


def trop_add(a: ExtReal, b: ExtReal) -> ExtReal:
    """a ⊕ b = max(a, b); EPS is the least element."""
    return a if a >= b else b


def trop_mul(a: ExtReal, b: ExtReal) -> ExtReal:
    """a ⊗ b = a + b, absorbing at EPS."""
    if a == EPS or b == EPS:
        return EPS
    return a + b


@dataclass(frozen=True, slots=True)
class SuperScalar:
    """The element ``re + i*gh`` of T[i]."""

    re: ExtReal = EPS
    gh: ExtReal = EPS

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", _check_ext_real(self.re))
        object.__setattr__(self, "gh", _check_ext_real(self.gh))

    def __add__(self, other: "SuperScalar") -> "SuperScalar":
        return super_add(self, other)

    def __mul__(self, other: "SuperScalar") -> "SuperScalar":
        return super_mul(self, other)

    def __str__(self) -> str:
        return format_scalar(self)


ZERO = SuperScalar(EPS, EPS)
ONE = SuperScalar(0.0, EPS)
I = SuperScalar(EPS, 0.0)


def scalar(a: Union[ExtReal, int], b: Union[ExtReal, int] = EPS) -> SuperScalar:
    return SuperScalar(float(a), float(b))


def super_add(x: SuperScalar, y: SuperScalar) -> SuperScalar:
    return SuperScalar(trop_add(x.re, y.re), trop_add(x.gh, y.gh))


def super_mul(x: SuperScalar, y: SuperScalar) -> SuperScalar:
    """(a+ib)(c+id) = (ac ⊕ bd) + i(bc ⊕ ad), all products tropical."""
    a, b, c, d = x.re, x.gh, y.re, y.gh
    return SuperScalar(
        trop_add(trop_mul(a, c), trop_mul(b, d)),
        trop_add(trop_mul(b, c), trop_mul(a, d)),
    )


def is_eps(x: SuperScalar) -> bool:
    return x.re == EPS and x.gh == EPS


def is_ghost(x: SuperScalar) -> bool:
    """Membership in the ghost ideal Φ = {a + ia}; epsilon is a ghost."""
    return x.re == x.gh


def is_max_plus(x: SuperScalar) -> bool:
    """True when x lies in the copy of T embedded as b = EPS."""
    return x.gh == EPS


def magnitude(x: SuperScalar) -> ExtReal:
    return trop_add(x.re, x.gh)


# -- text form -------------------------------------------------------------------


def _parse_component(token: Any, where: str) -> ExtReal:
    if isinstance(token, str):
        if token == EPS_TOKEN:
            return EPS
        raise BadScalar(f"unknown scalar token {token!r}", location=where)
    # bool is an int subclass; JSON true/false are not scalars
    if isinstance(token, bool) or not isinstance(token, Real):
        raise BadScalar(f"expected number or 'eps', got {token!r}", location=where)
    value = float(token)
    if not math.isfinite(value):
        raise BadScalar(f"non-finite number {token!r}; use 'eps' for epsilon", location=where)
    return value


def parse_scalar(token: Any, where: str = "") -> SuperScalar:
    """Parse ``"eps"``, a bare number ``n`` (= n + i eps) or a pair ``[a, b]``."""
    if isinstance(token, (list, tuple)):
        if len(token) != 2:
            raise BadScalar(f"scalar pair needs 2 components, got {len(token)}", location=where)
        return SuperScalar(_parse_component(token[0], where), _parse_component(token[1], where))
    return SuperScalar(_parse_component(token, where), EPS)


def _component_token(value: ExtReal) -> Union[str, int, float]:
    if value == EPS:
        return EPS_TOKEN
    if value.is_integer():
        return int(value)
    return value


def scalar_token(x: SuperScalar) -> Union[str, int, float, list]:
    """JSON-ready token; inverse of :func:`parse_scalar`."""
    if x.gh == EPS:
        return _component_token(x.re)
    return [_component_token(x.re), _component_token(x.gh)]


def format_scalar(x: SuperScalar) -> str:
    token = scalar_token(x)
    if isinstance(token, list):
        return "[" + ",".join(str(t) for t in token) + "]"
    return str(token)


def format_ext_real(value: ExtReal) -> str:
    return str(_component_token(value))
