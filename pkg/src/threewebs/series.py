"""Truncated formal power series in one and two variables over the rationals.

A series of validity order N stands for a germ known modulo terms of total
degree > N.  Coefficients are ``gmpy2.mpq`` values, stored sparsely (no
explicit zeros).  Every operation returns a new object; nothing mutates.

    >>> x, y = Series2.x(4), Series2.y(4)
    >>> (1 + x) * (1 + y)
    Series2(1 + x + y + x*y, order=4)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral

from gmpy2 import mpq

from .errors import InexactDivision, NonzeroConstantTerm, NotInvertible

Rat = type(mpq())
ZERO = mpq(0)
ONE = mpq(1)


def rat(value) -> Rat:
    """Coerce an int, Fraction, mpq or "p/q" string to an exact rational."""
    if isinstance(value, Rat):
        return value
    if isinstance(value, (Integral, Fraction, str)):
        return mpq(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def _is_scalar(value):
    return isinstance(value, (Rat, Integral, Fraction))


class Series1:
    """Univariate truncated series: coefficients of t^d for d <= order."""

    __slots__ = ("_c", "order")

    def __init__(self, coeffs=(), order=0):
        if not isinstance(order, Integral) or order < 0:
            raise ValueError(f"order must be a non-negative integer, got {order!r}")
        items = coeffs.items() if hasattr(coeffs, "items") else coeffs
        c = {}
        for d, v in items:
            if d < 0:
                raise ValueError(f"negative degree {d}")
            if d <= order:
                v = rat(v)
                if v:
                    c[int(d)] = c.get(int(d), ZERO) + v
        self._c = {d: v for d, v in c.items() if v}
        self.order = int(order)

    @classmethod
    def _raw(cls, c, order):
        s = object.__new__(cls)
        s._c = c
        s.order = order
        return s

    @classmethod
    def t(cls, order):
        return cls._raw({1: ONE} if order >= 1 else {}, order)

    @classmethod
    def const(cls, value, order):
        v = rat(value)
        return cls._raw({0: v} if v else {}, order)

    @classmethod
    def from_list(cls, coeffs, order=None):
        """Build from dense coefficients [c0, c1, ...]; order defaults to len - 1."""
        if order is None:
            order = len(coeffs) - 1
        return cls(enumerate(coeffs), order)

    # -- access -------------------------------------------------------------
    def coeff(self, d):
        if d > self.order:
            raise IndexError(f"degree {d} beyond validity order {self.order}")
        return self._c.get(d, ZERO)

    def __getitem__(self, d):
        return self.coeff(d)

    def items(self):
        return sorted(self._c.items())

    def to_list(self):
        return [self._c.get(d, ZERO) for d in range(self.order + 1)]

    def is_zero(self):
        return not self._c

    def valuation(self):
        return min(self._c) if self._c else None

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return Series1._raw({d: v for d, v in self._c.items() if d <= order}, order)

    def agrees(self, other, order=None):
        n = min(self.order, other.order) if order is None else order
        return self.truncate(n) == other.truncate(n)

    # -- ring operations ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Series1):
            return other
        if _is_scalar(other):
            return Series1.const(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        c = {d: v for d, v in self._c.items() if d <= n}
        for d, v in other._c.items():
            if d <= n:
                s = c.get(d, ZERO) + v
                if s:
                    c[d] = s
                else:
                    c.pop(d, None)
        return Series1._raw(c, n)

    __radd__ = __add__

    def __neg__(self):
        return Series1._raw({d: -v for d, v in self._c.items()}, self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            v = rat(other)
            if not v:
                return Series1._raw({}, self.order)
            return Series1._raw({d: c * v for d, c in self._c.items()}, self.order)
        if not isinstance(other, Series1):
            return NotImplemented
        n = min(self.order, other.order)
        out = {}
        b = sorted(other._c.items())
        for d1, c1 in self._c.items():
            room = n - d1
            for d2, c2 in b:
                if d2 > room:
                    break
                k = d1 + d2
                out[k] = out.get(k, ZERO) + c1 * c2
        return Series1._raw({d: v for d, v in out.items() if v}, n)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, Integral) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Series1.const(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Series1):
            return NotImplemented
        return self.order == other.order and self._c == other._c

    def __hash__(self):
        return hash((self.order, frozenset(self._c.items())))

    # -- calculus and composition -------------------------------------------
    def compose(self, inner):
        """Evaluate self at a series ``inner`` (Series1 or Series2) with zero constant term.

        The result keeps the smaller of the two validity orders.
        """
        if inner.coeff(*_origin(inner)) != 0:
            raise NonzeroConstantTerm("inner series must vanish at the origin")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        result = type(inner).const(self._c.get(n, ZERO), n)
        for d in range(n - 1, -1, -1):
            result = result * inner + self._c.get(d, ZERO)
        return result

    def __call__(self, inner):
        return self.compose(inner)

    def derivative(self):
        if self.order == 0:
            raise ValueError("cannot differentiate a series of order 0")
        return Series1._raw({d - 1: v * d for d, v in self._c.items() if d >= 1}, self.order - 1)

    def lift(self, var):
        """View t -> h(t) as the bivariate series h(x) (var='x') or h(y) (var='y')."""
        if var == "x":
            return Series2._raw({(d, 0): v for d, v in self._c.items()}, self.order)
        if var == "y":
            return Series2._raw({(0, d): v for d, v in self._c.items()}, self.order)
        raise ValueError(f"unknown variable {var!r}")

    def __repr__(self):
        from .expr import format_series

        return f"Series1({format_series(self)}, order={self.order})"


def _origin(s):
    return (0, 0) if isinstance(s, Series2) else (0,)


class Series2:
    """Bivariate truncated series: coefficients of x^r y^s for r + s <= order."""

    __slots__ = ("_c", "order")

    def __init__(self, coeffs=(), order=0):
        if not isinstance(order, Integral) or order < 0:
            raise ValueError(f"order must be a non-negative integer, got {order!r}")
        items = coeffs.items() if hasattr(coeffs, "items") else coeffs
        c = {}
        for (r, s), v in items:
            if r < 0 or s < 0:
                raise ValueError(f"negative exponent in {(r, s)}")
            if r + s <= order:
                key = (int(r), int(s))
                c[key] = c.get(key, ZERO) + rat(v)
        self._c = {k: v for k, v in c.items() if v}
        self.order = int(order)

    @classmethod
    def _raw(cls, c, order):
        s = object.__new__(cls)
        s._c = c
        s.order = order
        return s

    @classmethod
    def x(cls, order):
        return cls._raw({(1, 0): ONE} if order >= 1 else {}, order)

    @classmethod
    def y(cls, order):
        return cls._raw({(0, 1): ONE} if order >= 1 else {}, order)

    @classmethod
    def const(cls, value, order):
        v = rat(value)
        return cls._raw({(0, 0): v} if v else {}, order)

    @classmethod
    def monomial(cls, r, s, order, coeff=1):
        return cls({(r, s): coeff}, order)

    # -- access -------------------------------------------------------------
    def coeff(self, r, s):
        if r + s > self.order:
            raise IndexError(f"degree {r + s} beyond validity order {self.order}")
        return self._c.get((r, s), ZERO)

    def __getitem__(self, key):
        return self.coeff(*key)

    def items(self):
        """Nonzero terms as ((r, s), c), by total degree then descending x-exponent."""
        return sorted(self._c.items(), key=lambda kv: (kv[0][0] + kv[0][1], -kv[0][0]))

    def is_zero(self):
        return not self._c

    def lowest_degree(self):
        return min(r + s for r, s in self._c) if self._c else None

    def homogeneous(self, n):
        """Homogeneous component of total degree n, as a Series2 of the same order."""
        return Series2._raw({k: v for k, v in self._c.items() if sum(k) == n}, self.order)

    def lowest_part(self):
        n = self.lowest_degree()
        return self.homogeneous(n) if n is not None else self

    def depends_on_y(self):
        return any(s for _, s in self._c)

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return Series2._raw({k: v for k, v in self._c.items() if sum(k) <= order}, order)

    def agrees(self, other, order=None):
        n = min(self.order, other.order) if order is None else order
        return self.truncate(n) == other.truncate(n)

    def linear_coeffs(self):
        return self.coeff(1, 0), self.coeff(0, 1)

    # -- ring operations ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Series2):
            return other
        if _is_scalar(other):
            return Series2.const(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        c = {k: v for k, v in self._c.items() if k[0] + k[1] <= n}
        for k, v in other._c.items():
            if k[0] + k[1] <= n:
                s = c.get(k, ZERO) + v
                if s:
                    c[k] = s
                else:
                    c.pop(k, None)
        return Series2._raw(c, n)

    __radd__ = __add__

    def __neg__(self):
        return Series2._raw({k: -v for k, v in self._c.items()}, self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            v = rat(other)
            if not v:
                return Series2._raw({}, self.order)
            return Series2._raw({k: c * v for k, c in self._c.items()}, self.order)
        if not isinstance(other, Series2):
            return NotImplemented
        n = min(self.order, other.order)
        b = sorted(((r + s, r, s, c) for (r, s), c in other._c.items()))
        out = {}
        get = out.get
        for (r1, s1), c1 in self._c.items():
            room = n - r1 - s1
            if room < 0:
                continue
            for d2, r2, s2, c2 in b:
                if d2 > room:
                    break
                k = (r1 + r2, s1 + s2)
                out[k] = get(k, ZERO) + c1 * c2
        return Series2._raw({k: v for k, v in out.items() if v}, n)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, Integral) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Series2.const(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Series2):
            return NotImplemented
        return self.order == other.order and self._c == other._c

    def __hash__(self):
        return hash((self.order, frozenset(self._c.items())))

    # -- substitutions ------------------------------------------------------
    def scale(self, a, b):
        """f(a*x, b*y)."""
        a, b = rat(a), rat(b)
        c = {(r, s): v * a**r * b**s for (r, s), v in self._c.items()}
        return Series2._raw({k: v for k, v in c.items() if v}, self.order)

    def swap(self):
        """f(y, x)."""
        return Series2._raw({(s, r): v for (r, s), v in self._c.items()}, self.order)

    def compose(self, m):
        return compose2(self, m)

    def dx(self):
        return dx(self)

    def dy(self):
        return dy(self)

    def __repr__(self):
        from .expr import format_series

        return f"Series2({format_series(self)}, order={self.order})"


@dataclass(frozen=True)
class PlaneMap:
    """A formal plane map (x, y) -> (first, second) fixing the origin."""

    first: Series2
    second: Series2

    def __post_init__(self):
        if self.first.coeff(0, 0) or self.second.coeff(0, 0):
            raise NonzeroConstantTerm("plane map must fix the origin")
        n = min(self.first.order, self.second.order)
        if self.first.order != n:
            object.__setattr__(self, "first", self.first.truncate(n))
        if self.second.order != n:
            object.__setattr__(self, "second", self.second.truncate(n))

    @property
    def order(self):
        return self.first.order

    @classmethod
    def identity(cls, order):
        return cls(Series2.x(order), Series2.y(order))

    @classmethod
    def linear(cls, a, b, c, d, order):
        """(x, y) -> (a x + b y, c x + d y)."""
        x, y = Series2.x(order), Series2.y(order)
        return cls(x * a + y * b, x * c + y * d)

    def linear_part(self):
        (a, b), (c, d) = self.first.linear_coeffs(), self.second.linear_coeffs()
        return (a, b), (c, d)

    def det(self):
        (a, b), (c, d) = self.linear_part()
        return a * d - b * c

    def __call__(self, f):
        return compose2(f, self)

    def after(self, inner):
        """self o inner."""
        return PlaneMap(compose2(self.first, inner), compose2(self.second, inner))

    def power(self, k):
        result = PlaneMap.identity(self.order)
        for _ in range(k):
            result = self.after(result)
        return result

    def truncate(self, order):
        return PlaneMap(self.first.truncate(order), self.second.truncate(order))

    def inverse(self):
        return invert_map(self)

    def is_identity(self):
        return self == PlaneMap.identity(self.order)


# -- composition, reversion, division ------------------------------------------


def compose2(f: Series2, m: PlaneMap) -> Series2:
    """f(m.first, m.second), truncated to the smallest validity order involved."""
    p, q = m.first, m.second
    if p.coeff(0, 0) or q.coeff(0, 0):
        raise NonzeroConstantTerm("substituted series must vanish at the origin")
    n = min(f.order, p.order, q.order)
    if f.order > n:
        f = f.truncate(n)
    if p.order > n:
        p, q = p.truncate(n), q.truncate(n)
    elif q.order > n:
        q = q.truncate(n)
    if not f._c:
        return Series2._raw({}, n)
    rows = {}
    for (r, s), c in f._c.items():
        rows.setdefault(r, {})[s] = c
    top_s = max(s for _, s in f._c)
    qpow = [Series2.const(1, n)]
    for _ in range(top_s):
        qpow.append(qpow[-1] * q)

    def row_value(r):
        acc = {}
        for s, c in rows.get(r, {}).items():
            for k, v in qpow[s]._c.items():
                acc[k] = acc.get(k, ZERO) + c * v
        return Series2._raw({k: v for k, v in acc.items() if v}, n)

    top_r = max(rows)
    result = row_value(top_r)
    for r in range(top_r - 1, -1, -1):
        result = result * p
        if r in rows:
            result = result + row_value(r)
    return result


def restrict_line(f: Series2, a, b) -> Series1:
    """The univariate series t -> f(a t, b t)."""
    a, b = rat(a), rat(b)
    out = {}
    for (r, s), c in f._c.items():
        out[r + s] = out.get(r + s, ZERO) + c * a**r * b**s
    return Series1._raw({d: v for d, v in out.items() if v}, f.order)


def invert1(h: Series1) -> Series1:
    """Compositional inverse of a formal line diffeomorphism h(t) = h1 t + ..."""
    if h.coeff(0):
        raise NotInvertible("constant term must vanish")
    if h.order == 0:
        raise NotInvertible("order 0 series carries no linear coefficient")
    h1 = h.coeff(1)
    if not h1:
        raise NotInvertible("linear coefficient is zero")
    higher = Series1._raw({d: v for d, v in h._c.items() if d >= 2}, h.order)
    inv1 = 1 / h1
    g = Series1._raw({1: inv1}, 1)
    for n in range(2, h.order + 1):
        g = Series1._raw(dict(g._c), n)
        correction = higher.truncate(n).compose(g)
        g = (Series1.t(n) - correction) * inv1
    return g


def _apply_linear(mat, u, v):
    (a, b), (c, d) = mat
    return u * a + v * b, u * c + v * d


def invert_map(m: PlaneMap) -> PlaneMap:
    """Compositional inverse of a plane map with invertible linear part."""
    if m.order < 1:
        raise NotInvertible("order 0 map carries no linear part")
    (a, b), (c, d) = m.linear_part()
    det = a * d - b * c
    if not det:
        raise NotInvertible("linear part of the map is singular")
    inv = ((d / det, -b / det), (-c / det, a / det))
    N = m.order
    x, y = Series2.x(N), Series2.y(N)
    h1 = m.first - (x * a + y * b)
    h2 = m.second - (x * c + y * d)
    u, v = _apply_linear(inv, x.truncate(1), y.truncate(1))
    for n in range(2, N + 1):
        w = PlaneMap(Series2._raw(dict(u._c), n), Series2._raw(dict(v._c), n))
        e1 = compose2(h1.truncate(n), w)
        e2 = compose2(h2.truncate(n), w)
        u, v = _apply_linear(inv, x.truncate(n) - e1, y.truncate(n) - e2)
    return PlaneMap(u, v)


def div_exact(f: Series2, d: str) -> Series2:
    """Exact quotient of f by one of the linear forms "x", "y", "x-y".

    The validity order drops by one.  Raises InexactDivision naming the
    first homogeneous degree where the division fails.
    """
    if f.order == 0:
        raise ValueError("cannot divide a series of order 0")
    if d == "x":
        bad = [r + s for (r, s) in f._c if r == 0]
        if bad:
            raise InexactDivision(d, min(bad))
        return Series2._raw({(r - 1, s): v for (r, s), v in f._c.items()}, f.order - 1)
    if d == "y":
        bad = [r + s for (r, s) in f._c if s == 0]
        if bad:
            raise InexactDivision(d, min(bad))
        return Series2._raw({(r, s - 1): v for (r, s), v in f._c.items()}, f.order - 1)
    if d in ("x-y", "x - y"):
        by_degree = {}
        for (r, s), v in f._c.items():
            by_degree.setdefault(r + s, {})[r] = v
        out = {}
        for n in sorted(by_degree):
            comp = by_degree[n]
            if sum(comp.values()):
                raise InexactDivision("x-y", n)
            # h_k = q_{k-1} - q_k  =>  q_{k-1} = sum_{j >= k} h_j
            acc = ZERO
            for k in range(n, 0, -1):
                acc += comp.get(k, ZERO)
                if acc:
                    out[(k - 1, n - k)] = acc
        return Series2._raw(out, f.order - 1)
    raise ValueError(f"unsupported divisor {d!r}; use 'x', 'y' or 'x-y'")


def dx(f: Series2) -> Series2:
    if f.order == 0:
        raise ValueError("cannot differentiate a series of order 0")
    return Series2._raw({(r - 1, s): v * r for (r, s), v in f._c.items() if r}, f.order - 1)


def dy(f: Series2) -> Series2:
    if f.order == 0:
        raise ValueError("cannot differentiate a series of order 0")
    return Series2._raw({(r, s - 1): v * s for (r, s), v in f._c.items() if s}, f.order - 1)


def log1p(u):
    """log(1 + u) for a Series1 or Series2 u vanishing at the origin."""
    if u.coeff(*_origin(u)):
        raise NonzeroConstantTerm("log1p needs a series vanishing at the origin")
    result = u * 0
    power = u
    for k in range(1, u.order + 1):
        if power.is_zero():
            break
        term = power * mpq(1, k)
        result = result + term if k % 2 else result - term
        power = power * u
    return result
