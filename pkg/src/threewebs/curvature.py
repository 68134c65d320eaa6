"""Blaschke curvature of a web (x, y, f): an independent flatness test.

K = d/dx d/dy log(f_x / f_y) vanishes identically exactly when the web is
hexagonal.  Writing f_x = c1 (1 + u) and f_y = c2 (1 + v), the constants
log c1 and log c2 are killed by the mixed derivative, so

    K = d/dx d/dy (log1p(u) - log1p(v))

stays in exact rational arithmetic.  K has validity order f.order - 3.
"""

from .errors import DegenerateLinearPart
from .normalform import Web
from .series import Series2, dx, dy, log1p


def blaschke_curvature(w: Web) -> Series2:
    f = w.f
    if f.order < 3:
        raise ValueError("curvature needs a web of validity order >= 3")
    fx, fy = dx(f), dy(f)
    c1, c2 = fx.coeff(0, 0), fy.coeff(0, 0)
    if not c1 or not c2:
        raise DegenerateLinearPart("a first partial derivative vanishes at the origin")
    u = fx * (1 / c1) - 1
    v = fy * (1 / c2) - 1
    return dy(dx(log1p(u) - log1p(v)))
