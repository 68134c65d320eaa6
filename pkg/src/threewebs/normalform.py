"""Normal form x + y + x*y*(x - y)*g(x, y) of a 3-web (x, y, f) and the homothety action on g.

The reduction runs in four steps:

1. rescale the axes so the linear part of f is x + y;
2. reparametrize each axis by the inverse of the boundary restriction, so
   that f(t, 0) = t and f(0, t) = t;
3. linearize the diagonal restriction c(t) = f(t, t) = 2t + ... by solving
   the conjugacy k(2t) = c(k(t));
4. relabel leaves by k^-1.

The result is certified afterwards by checking the three line identities,
so none of the intermediate steps has to be trusted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadLinearCoefficient, DegenerateLinearPart, NonzeroConstantTerm, ResidualError, ZeroLambda
from .series import PlaneMap, Series1, Series2, div_exact, invert1, rat, restrict_line


@dataclass(frozen=True)
class Web:
    """The 3-web given by verticals, horizontals and the level sets of f."""

    f: Series2

    def __post_init__(self):
        if self.f.order < 1:
            raise DegenerateLinearPart("web function needs validity order >= 1")
        if self.f.coeff(0, 0):
            raise NonzeroConstantTerm("web function must vanish at the origin")
        a, b = self.f.linear_coeffs()
        if not a or not b:
            raise DegenerateLinearPart("level sets of f must be transversal to both axes")

    @property
    def order(self):
        return self.f.order

    @classmethod
    def from_g(cls, g: Series2, order=None):
        """The web in normal form x + y + x*y*(x - y)*g; order defaults to g.order + 3."""
        n = g.order + 3 if order is None else order
        x, y = Series2.x(n), Series2.y(n)
        # terms of g past n - 3 only reach degrees beyond n
        g = Series2(_lift_order(g, n - 3).items(), n)
        return cls(x + y + x * y * (x - y) * g)


def _lift_order(g, n):
    # g of order >= n read as a polynomial at order n (extra terms beyond n are dropped)
    return Series2(g.items(), n) if g.order < n else g.truncate(n)


@dataclass(frozen=True)
class NormalForm:
    """Coordinates (X, Y), leaf relabeling Z and the residual g.

    f is the normalized function Z(f_orig(X(x), Y(y))) = x + y + x*y*(x - y)*g.
    g carries validity order f.order - 3.
    """

    X: Series1
    Y: Series1
    Z: Series1
    g: Series2
    f: Series2

    @property
    def web(self):
        return Web(self.f)

    def is_flat(self):
        return self.g.is_zero()


def boundary_and_diagonal(w: Web):
    """Restrictions a(t) = f(t, 0), b(t) = f(0, t), c(t) = f(t, t)."""
    f = w.f
    if not f.coeff(1, 0) or not f.coeff(0, 1):
        raise DegenerateLinearPart("a first partial derivative vanishes at the origin")
    return restrict_line(f, 1, 0), restrict_line(f, 0, 1), restrict_line(f, 1, 1)


def sternberg_k(c: Series1) -> Series1:
    """Solve k(2t) = c(k(t)) for k = t + O(t^2).

    Comparing t^n coefficients gives (2^n - 2) k_n = [c(k_<n)]_n, where k_<n
    is k truncated below degree n.
    """
    if c.order >= 1 and c.coeff(0):
        raise BadLinearCoefficient("c must vanish at the origin")
    if c.order < 1 or c.coeff(1) != 2:
        raise BadLinearCoefficient(f"c'(0) must equal 2, got {c.coeff(1) if c.order >= 1 else None}")
    N = c.order
    k = {1: rat(1)}
    for n in range(2, N + 1):
        denom = 2**n - 2
        assert denom != 0
        partial = Series1(k.items(), n)
        value = c.truncate(n).compose(partial).coeff(n)
        if value:
            k[n] = value / denom
    return Series1(k.items(), N)


def _line_map(X: Series1, Y: Series1):
    return PlaneMap(X.lift("x"), Y.lift("y"))


def reconstruct(f: Series2, X: Series1, Y: Series1, Z: Series1) -> Series2:
    """Z(f(X(x), Y(y)))."""
    return Z.compose(_line_map(X, Y)(f))


def check_identities(f: Series2) -> bool:
    """True iff f(t, 0) = t, f(0, t) = t and f(t, t) = 2t to the validity order of f."""
    t = Series1.t(f.order)
    return (restrict_line(f, 1, 0) == t and restrict_line(f, 0, 1) == t
            and restrict_line(f, 1, 1) == t * 2)


def extract_g(f: Series2) -> Series2:
    """g with f = x + y + x*y*(x - y)*g; order drops by 3."""
    x, y = Series2.x(f.order), Series2.y(f.order)
    rest = f - x - y
    return div_exact(div_exact(div_exact(rest, "y"), "x"), "x-y")


def normalize(w: Web) -> NormalForm:
    """Bring a web to the normal form x + y + x*y*(x - y)*g."""
    f = w.f
    N = f.order
    c1, c2 = f.linear_coeffs()
    if not c1 or not c2:
        raise DegenerateLinearPart("a first partial derivative vanishes at the origin")
    t = Series1.t(N)
    s1, s2 = t * (1 / c1), t * (1 / c2)
    f1 = f.scale(1 / c1, 1 / c2)

    a, b, _ = boundary_and_diagonal(Web(f1))
    a_inv, b_inv = invert1(a), invert1(b)
    f2 = _line_map(a_inv, b_inv)(f1)

    k = sternberg_k(restrict_line(f2, 1, 1))
    X = s1.compose(a_inv.compose(k))
    Y = s2.compose(b_inv.compose(k))
    Z = invert1(k)

    ft = reconstruct(f, X, Y, Z)
    if not check_identities(ft):
        raise ResidualError("normalized function fails the line identities")
    return NormalForm(X, Y, Z, extract_g(ft), ft)


def lambda_action(g: Series2, lam) -> Series2:
    """Residual of the homothety-rescaled web: g_rs -> g_rs * lam^(r+s+2)."""
    lam = rat(lam)
    if not lam:
        raise ZeroLambda("homothety factor must be nonzero")
    return Series2({(r, s): c * lam ** (r + s + 2) for (r, s), c in g.items()}, g.order)


def rescale_web(f: Series2, lam) -> Series2:
    """f(lam x, lam y) / lam: the web pushed through the homothety of ratio lam."""
    lam = rat(lam)
    if not lam:
        raise ZeroLambda("homothety factor must be nonzero")
    return f.scale(lam, lam) * (1 / lam)


@dataclass(frozen=True)
class ScaleEquivalence:
    """Certificate that g2 = lambda_action(g1, lam) for some real lam != 0.

    ``value`` is the exact rational lam^exponent read off the anchor
    coefficient; ``sign`` is the sign of lam when it is forced (None if
    both signs work).  ``checks`` lists, for every other monomial (r, s),
    the exact identity ratio^exponent == value^(r+s+2) that was verified.
    """

    exponent: int
    value: object
    anchor: tuple | None
    sign: int | None
    checks: tuple


def scale_equivalent(g1: Series2, g2: Series2):
    """Decide whether g2 = lambda_action(g1, lam) for a real lam != 0.

    Returns a ScaleEquivalence or None.  Comparison is made to the common
    validity order.
    """
    n = min(g1.order, g2.order)
    g1, g2 = g1.truncate(n), g2.truncate(n)
    support = {k for k, _ in g1.items()}
    if support != {k for k, _ in g2.items()}:
        return None
    if not support:
        return ScaleEquivalence(2, rat(1), None, None, ())
    # anchor: lowest total degree, then lexicographic (r first)
    r0, s0 = min(support, key=lambda k: (k[0] + k[1], k[0], k[1]))
    e0 = r0 + s0 + 2
    rho = g2.coeff(r0, s0) / g1.coeff(r0, s0)
    odd_signs = set()
    if e0 % 2:
        odd_signs.add(1 if rho > 0 else -1)
    elif rho < 0:
        return None
    checks = []
    for r, s in sorted(support):
        if (r, s) == (r0, s0):
            continue
        e = r + s + 2
        q = g2.coeff(r, s) / g1.coeff(r, s)
        if abs(q) ** e0 != abs(rho) ** e:
            return None
        if e % 2:
            odd_signs.add(1 if q > 0 else -1)
        elif q < 0:
            return None
        checks.append(((r, s), q))
    if len(odd_signs) > 1:
        return None
    sign = odd_signs.pop() if odd_signs else None
    return ScaleEquivalence(e0, rho, (r0, s0), sign, tuple(checks))
