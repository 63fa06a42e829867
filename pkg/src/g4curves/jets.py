"""Truncated Taylor series ("jets") of fixed order.

A :class:`Jet` holds ``coeffs[k] = f^(k)(s0) / k!`` for ``k = 0..ORDER``.
Arithmetic and the elementary functions propagate the coefficients with the
usual univariate recurrences, so derivatives of composite expressions come
out exact up to floating-point rounding.

>>> x = jet_var(1.0)
>>> (x * x).coeffs
(1.0, 2.0, 1.0, 0.0, 0.0, 0.0)
"""

from __future__ import annotations

import math
from typing import Callable, Iterable

from .errors import DomainError

ORDER = 5
SIZE = ORDER + 1


class Jet:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[float]):
        c = tuple(float(x) for x in coeffs)
        if len(c) != SIZE:
            raise ValueError(f"a jet needs exactly {SIZE} coefficients, got {len(c)}")
        self.coeffs = c

    def __repr__(self) -> str:
        return f"Jet({list(self.coeffs)!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Jet) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __getitem__(self, k: int) -> float:
        return self.coeffs[k]

    @property
    def value(self) -> float:
        return self.coeffs[0]

    def is_constant(self) -> bool:
        return not any(self.coeffs[1:])

    def derivative(self, k: int) -> float:
        return derivative(self, k)

    def diff(self) -> Jet:
        """Jet of ``f'``. The top coefficient is unknown after the shift and set to 0."""
        c = self.coeffs
        return Jet([(k + 1) * c[k + 1] for k in range(ORDER)] + [0.0])

    # arithmetic with jets and plain numbers
    def __add__(self, other) -> Jet:
        return jet_add(self, _lift(other))

    __radd__ = __add__

    def __sub__(self, other) -> Jet:
        return jet_sub(self, _lift(other))

    def __rsub__(self, other) -> Jet:
        return jet_sub(_lift(other), self)

    def __mul__(self, other) -> Jet:
        if isinstance(other, Jet):
            return jet_mul(self, other)
        return jet_scale(self, float(other))

    __rmul__ = __mul__

    def __truediv__(self, other) -> Jet:
        return jet_div(self, _lift(other))

    def __rtruediv__(self, other) -> Jet:
        return jet_div(_lift(other), self)

    def __neg__(self) -> Jet:
        return Jet([-x for x in self.coeffs])


def _lift(x) -> Jet:
    return x if isinstance(x, Jet) else jet_const(float(x))


def jet_const(v: float) -> Jet:
    return Jet([v] + [0.0] * ORDER)


def jet_var(s0: float) -> Jet:
    """Jet of the identity function at ``s0``."""
    return Jet([s0, 1.0] + [0.0] * (ORDER - 1))


def jet_add(a: Jet, b: Jet) -> Jet:
    return Jet([x + y for x, y in zip(a.coeffs, b.coeffs)])


def jet_sub(a: Jet, b: Jet) -> Jet:
    return Jet([x - y for x, y in zip(a.coeffs, b.coeffs)])


def jet_scale(a: Jet, k: float) -> Jet:
    return Jet([k * x for x in a.coeffs])


def jet_mul(a: Jet, b: Jet) -> Jet:
    x, y = a.coeffs, b.coeffs
    return Jet([sum(x[j] * y[k - j] for j in range(k + 1)) for k in range(SIZE)])


def jet_div(a: Jet, b: Jet) -> Jet:
    x, y = a.coeffs, b.coeffs
    if y[0] == 0.0:
        raise DomainError("div", y[0])
    q = [0.0] * SIZE
    for k in range(SIZE):
        q[k] = (x[k] - sum(q[j] * y[k - j] for j in range(k))) / y[0]
    return Jet(q)


def derivative(a: Jet, k: int) -> float:
    """``k``-th derivative at the expansion point."""
    if not 0 <= k <= ORDER:
        raise ValueError(f"derivative order {k} outside 0..{ORDER}")
    return math.factorial(k) * a.coeffs[k]


def _exp(a: Jet) -> Jet:
    x = a.coeffs
    e = [math.exp(x[0])] + [0.0] * ORDER
    for k in range(1, SIZE):
        e[k] = sum(j * x[j] * e[k - j] for j in range(1, k + 1)) / k
    return Jet(e)


def _log(a: Jet) -> Jet:
    x = a.coeffs
    if not x[0] > 0.0:
        raise DomainError("log", x[0])
    out = [math.log(x[0])] + [0.0] * ORDER
    for k in range(1, SIZE):
        acc = sum(j * out[j] * x[k - j] for j in range(1, k))
        out[k] = (x[k] - acc / k) / x[0]
    return Jet(out)


def _sin_cos(a: Jet, hyperbolic: bool = False) -> tuple[Jet, Jet]:
    x = a.coeffs
    if hyperbolic:
        s, c, sign = [math.sinh(x[0])], [math.cosh(x[0])], 1.0
    else:
        s, c, sign = [math.sin(x[0])], [math.cos(x[0])], -1.0
    for k in range(1, SIZE):
        s.append(sum(j * x[j] * c[k - j] for j in range(1, k + 1)) / k)
        c.append(sign * sum(j * x[j] * s[k - j] for j in range(1, k + 1)) / k)
    return Jet(s), Jet(c)


def _sin(a: Jet) -> Jet:
    return _sin_cos(a)[0]


def _cos(a: Jet) -> Jet:
    return _sin_cos(a)[1]


def _sinh(a: Jet) -> Jet:
    return _sin_cos(a, hyperbolic=True)[0]


def _cosh(a: Jet) -> Jet:
    return _sin_cos(a, hyperbolic=True)[1]


def _tan(a: Jet) -> Jet:
    s, c = _sin_cos(a)
    if abs(c.coeffs[0]) < 1e-15:
        raise DomainError("tan", a.coeffs[0])
    out = jet_div(s, c)
    return Jet([math.tan(a.coeffs[0])] + list(out.coeffs[1:]))


def _sqrt(a: Jet) -> Jet:
    x = a.coeffs
    if not x[0] > 0.0:
        raise DomainError("sqrt", x[0])
    r = [math.sqrt(x[0])] + [0.0] * ORDER
    for k in range(1, SIZE):
        r[k] = (x[k] - sum(r[j] * r[k - j] for j in range(1, k))) / (2.0 * r[0])
    return Jet(r)


def _neg(a: Jet) -> Jet:
    return -a


def jet_ipow(a: Jet, n: int) -> Jet:
    """Integer power by repeated squaring; negative ``n`` inverts the result."""
    return ipow(a, n, jet_mul, jet_const(1.0), lambda x: jet_div(jet_const(1.0), x))


def ipow(base, n: int, mul: Callable, one, invert: Callable):
    """Square-and-multiply shared by the real and jet evaluators.

    Both evaluators must use the same multiplication sequence so that the
    constant term of a jet matches the real value bit for bit.
    """
    result = one
    b = base
    m = abs(n)
    first = True
    while m:
        if m & 1:
            result = b if first else mul(result, b)
            first = False
        m >>= 1
        if m:
            b = mul(b, b)
    return invert(result) if n < 0 else result


def jet_pow(a: Jet, r: float) -> Jet:
    """``a ** r`` for a real exponent.

    Integral ``r`` goes through :func:`jet_ipow`; otherwise the base must have
    a positive constant term.
    """
    if float(r).is_integer():
        return jet_ipow(a, int(r))
    x = a.coeffs
    if not x[0] > 0.0:
        raise DomainError("pow", x[0])
    g = [x[0] ** r] + [0.0] * ORDER
    for k in range(1, SIZE):
        acc = sum(((r + 1.0) * j - k) * x[j] * g[k - j] for j in range(1, k + 1))
        g[k] = acc / (k * x[0])
    return Jet(g)


_FUNCS: dict[str, Callable[[Jet], Jet]] = {
    "sin": _sin,
    "cos": _cos,
    "tan": _tan,
    "exp": _exp,
    "log": _log,
    "sqrt": _sqrt,
    "sinh": _sinh,
    "cosh": _cosh,
    "neg": _neg,
}

FUNCTION_TAGS = frozenset(_FUNCS) | {"pow"}


def jet_fun(tag: str, a: Jet, exponent: float | None = None) -> Jet:
    """Apply the elementary function named ``tag`` to a jet.

    ``pow`` takes its real exponent through ``exponent``.
    """
    if tag == "pow":
        if exponent is None:
            raise ValueError("pow needs an exponent")
        return jet_pow(a, exponent)
    try:
        f = _FUNCS[tag]
    except KeyError:
        raise ValueError(f"unknown function tag {tag!r}") from None
    try:
        return f(a)
    except OverflowError:
        raise DomainError(tag, a.value) from None
