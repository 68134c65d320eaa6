"""Synthesis of 3-webs with a circular symmetry.

A circular symmetry phi with phi^3 = Id (or phi^6 = Id) is conjugate to its
linear part L:  phi = psi^-1 o L o psi, psi = (A, B), psi^-1 = (U, V).
Requiring phi to send verticals to horizontals means its second component
G = V(L(A, B)) depends on x only, G = mu(x).  Given V = y + Vt and mu, the
pair (A, B) is the fixed point of

    A = s * (mu(x) - Vt(L(A, B)))      (s = +1 for ORDER3, -1 for ORDER6)
    B = y - Vt(A, B)

and, since Vt has no terms below degree 2, each pass fixes one more
degree.  Then U comes from inverting psi, F = U(L(A, B)), and the web is
(x, y, f) with f = -F.

For ORDER3 every admissible (V, mu) yields a circular symmetry.  For ORDER6
phi^3 must also preserve the verticals, which is not automatic; odd V and
odd mu make psi odd and hence phi^3 = -Id, which suffices.  Since the
ORDER6 action is minus the ORDER3 action, the closed-form shortcut needs P
with P(x + y, -x) = -P(x, y), i.e. P odd and ORDER3-invariant; an
ORDER6-invariant P is even and does not give a circular symmetry.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from .errors import BadJet, BadLinearPart, NotCircular, NotInvariant, ResidualError
from .expr import format_series
from .normalform import Web, check_identities, normalize
from .series import PlaneMap, Series1, Series2, compose2, invert_map, rat, restrict_line
from .symmetry import FoliationPermutation, SimpleClass, SimpleTag, classify_simple, foliation_permutation


class LinearModel(enum.Enum):
    ORDER3 = "order3"  # (x, y) -> (-x - y, x)
    ORDER6 = "order6"  # (x, y) -> (x + y, -x)

    @property
    def period(self):
        return 3 if self is LinearModel.ORDER3 else 6

    @property
    def mu_sign(self):
        """Linear coefficient of the second component of the action."""
        return 1 if self is LinearModel.ORDER3 else -1

    def apply(self, a, b):
        if self is LinearModel.ORDER3:
            return -a - b, a
        return a + b, -a

    def action(self, order):
        return PlaneMap(*self.apply(Series2.x(order), Series2.y(order)))

    def default_mu(self, order):
        return Series1.t(order) * self.mu_sign


@dataclass(frozen=True)
class VerificationReport:
    residuals: dict  # label -> Series2 that must vanish
    period_ok: bool
    permutation: FoliationPermutation
    flatness: SimpleClass
    checks: dict = field(default_factory=dict)  # label -> bool

    @property
    def ok(self):
        return (all(r.is_zero() for r in self.residuals.values()) and self.period_ok
                and self.permutation.is_three_cycle() and all(self.checks.values()))

    def failures(self):
        bad = [k for k, r in self.residuals.items() if not r.is_zero()]
        if not self.period_ok:
            bad.append("period")
        if not self.permutation.is_three_cycle():
            bad.append("permutation")
        bad.extend(k for k, v in self.checks.items() if not v)
        return bad


@dataclass(frozen=True)
class CircularResult:
    model: LinearModel
    order: int
    V: Series2
    mu: Series1
    A: Series2
    B: Series2
    U: Series2
    F: Series2
    G: Series1
    f: Series2
    report: VerificationReport
    theta: Series2 | None = None  # F = -(x + y + 3*theta) for ORDER3, +(...) for ORDER6

    @property
    def phi(self):
        return PlaneMap(self.F, self.G.lift("x"))

    @property
    def web(self):
        return Web(self.f)

    @property
    def g(self):
        return normalize(self.web).g


def _check_jet(P):
    if P.order < 2:
        raise BadJet("P needs validity order >= 2")
    if P.coeff(0, 0) or any(P.linear_coeffs()):
        raise BadJet("P must have a vanishing 1-jet")


def is_linear_invariant(P: Series2, model: LinearModel) -> bool:
    """True iff P(L(x, y)) = P(x, y) to the validity order."""
    return compose2(P, model.action(P.order)) == P


def _relabel(s, n):
    # same coefficients, read at order n (the caller fills in degree n next)
    return Series2({k: v for k, v in s.items()}, n)


def solve_circular(V: Series2, mu: Series1, model=LinearModel.ORDER3, order=None,
                   verify=True) -> CircularResult:
    """Solve for psi = (A, B), psi^-1 = (U, V) and phi = (F, mu(x)) to the given order.

    Residual or period failures raise ResidualError.  If phi does not
    permute the three foliations cyclically, ORDER6 raises NotCircular
    (a property of the data) unless ``verify`` is false, in which case the
    result is returned with the failed permutation in its report.
    """
    N = min(V.order, mu.order) if order is None else order
    if N < 2:
        raise BadLinearPart("circular synthesis needs order >= 2")
    if V.order < N or mu.order < N:
        raise BadLinearPart(f"inputs are only valid to order {min(V.order, mu.order)} < {N}")
    V, mu = V.truncate(N), mu.truncate(N)
    if V.coeff(0, 0) or V.linear_coeffs() != (0, 1):
        raise BadLinearPart("V must be y + higher order terms")
    sign = model.mu_sign
    if mu.coeff(0) or mu.coeff(1) != sign:
        raise BadLinearPart(f"mu must be {'' if sign > 0 else '-'}x + higher order terms")

    x, y = Series2.x(N), Series2.y(N)
    Vt = V - y
    mu_x = mu.lift("x")
    A, B = x.truncate(1), y.truncate(1)
    for n in range(2, N + 1):
        A, B = _relabel(A, n), _relabel(B, n)
        Vn = Vt.truncate(n)
        image = PlaneMap(*model.apply(A, B))
        A, B = (mu_x.truncate(n) - compose2(Vn, image)) * sign, y.truncate(n) - compose2(Vn, PlaneMap(A, B))

    psi = PlaneMap(A, B)
    psi_inv = invert_map(psi)
    U = psi_inv.first
    image = PlaneMap(*model.apply(A, B))
    F = compose2(U, image)
    G2 = compose2(V, image)
    G = Series1({r: c for (r, s), c in G2.items() if s == 0}, N)
    f = -F

    residuals = {
        "U(A,B) - x": compose2(U, psi) - x,
        "V(A,B) - y": compose2(V, psi) - y,
        "F - U(L(A,B))": F - compose2(U, image),
        "G - V(L(A,B))": G.lift("x") - G2,
        "V(L(A,B)) - mu(x)": G2 - mu_x,
        "inverse second component - V": psi_inv.second - V,
    }
    phi = PlaneMap(F, G.lift("x"))
    report = VerificationReport(
        residuals=residuals,
        period_ok=phi.power(model.period).is_identity(),
        permutation=foliation_permutation(phi, Web(f)),
        flatness=classify_simple(normalize(Web(f)).g),
    )
    algebra = [k for k in report.failures() if k != "permutation"]
    if algebra:
        raise ResidualError(f"circular solve failed verification: {algebra}")
    if not report.permutation.is_three_cycle() and (verify or model is LinearModel.ORDER3):
        if model is LinearModel.ORDER3:
            raise ResidualError(f"phi is not a circular symmetry: {report.permutation}")
        raise NotCircular("phi^3 does not preserve the foliations for these (V, mu); "
                          "odd V and odd mu are sufficient")
    return CircularResult(model, N, V, mu, A, B, U, F, G, f, report)


def _fixed_point(P, N, step):
    # iterate z <- step(z) gaining one degree per pass, z = O(2)
    z = Series2({}, 1)
    for n in range(2, N + 1):
        z = step(P.truncate(n), _relabel(z, n), n)
    return z


def solve_theta(P: Series2, order=None) -> Series2:
    """The solution theta = O(2) of theta + P(x + theta, y + theta) = 0."""
    _check_jet(P)
    N = P.order if order is None else order
    P = P.truncate(N)

    def step(Pn, th, n):
        return -compose2(Pn, PlaneMap(Series2.x(n) + th, Series2.y(n) + th))

    theta = _fixed_point(P, N, step)
    x, y = Series2.x(N), Series2.y(N)
    if not (theta + compose2(P, PlaneMap(x + theta, y + theta))).is_zero():
        raise ResidualError("theta equation residual does not vanish")
    return theta


def lemma1_admissible(P: Series2, model: LinearModel) -> bool:
    """P(L(x, y)) = P(x, y) for ORDER3, P(L(x, y)) = -P(x, y) for ORDER6."""
    image = compose2(P, model.action(P.order))
    return image == P if model is LinearModel.ORDER3 else image == -P


def lemma1_synthesize(P: Series2, model=LinearModel.ORDER3, order=None) -> CircularResult:
    """Circular synthesis from V = y + P and mu = +-x, with the closed form for F.

    With theta solving theta + P(x + theta, y + theta) = 0, the answer is
    F = -x - y - 3*theta for ORDER3 and F = x + y + 3*theta for ORDER6; both
    are asserted against the general solver.
    """
    N = P.order if order is None else order
    _check_jet(P)
    P = P.truncate(N)
    if not lemma1_admissible(P, model):
        if model is LinearModel.ORDER3:
            raise NotInvariant("P is not invariant under (x, y) -> (-x - y, x)")
        raise NotInvariant("ORDER6 needs P(x + y, -x) = -P(x, y) (P odd and ORDER3-invariant); "
                           "an ORDER6-invariant P does not yield a circular symmetry")
    x, y = Series2.x(N), Series2.y(N)
    result = solve_circular(y + P, model.default_mu(N), model, N)
    theta = solve_theta(P, N)
    closed = (x + y + theta * 3) * (-model.mu_sign)
    ok = closed == result.F
    checks = {**result.report.checks, "closed form": ok}
    result = replace(result, report=replace(result.report, checks=checks), theta=theta)
    if not ok:
        raise ResidualError("closed form for F disagrees with the general solver")
    return result


def p0(order):
    """x*y*(x - y)*(x + y)*(2x + y)*(x + 2y), invariant under both linear models."""
    x, y = Series2.x(order), Series2.y(order)
    return x * y * (x - y) * (x + y) * (x * 2 + y) * (x + y * 2)


# points (a, b) with f(a t, b t) = t on the example web
LINE_POINTS = ((-1, 2), (0, 1), (rat("1/2"), rat("1/2")), (1, 0), (2, -1))


def theorem3_example(order=10) -> CircularResult:
    """The non-flat web with circular symmetry built from V = y + x*y*(x-y)*(x+y)*(2x+y)*(x+2y)."""
    if order < 8:
        raise ValueError("the example needs order >= 8 to see past its flat 7-jet")
    result = lemma1_synthesize(p0(order), LinearModel.ORDER3, order)
    f = result.f
    t = Series1.t(order)
    checks = dict(result.report.checks)
    checks["normal form identities"] = check_identities(f)
    for a, b in LINE_POINTS:
        label = f"f({format_series(Series1({1: a}, 1))}, {format_series(Series1({1: b}, 1))}) = t"
        checks[label] = restrict_line(f, a, b) == t
    checks["non-flat"] = result.report.flatness.tag is not SimpleTag.FLAT_TO_ORDER
    result = replace(result, report=replace(result.report, checks=checks))
    if not result.report.ok:
        raise ResidualError(f"example failed verification: {result.report.failures()}")
    return result
