"""Simple and mirror symmetries read off the normal-form residual g.

In normal coordinates every symmetry that exists is linear:

* (-x, -y) fixes all three foliations iff g(-x, -y) = g(x, y);
* (y, x) swaps verticals and horizontals iff g(y, x) = -g(x, y);
* (-y, -x) does the same iff g(-y, -x) = -g(x, y).

The last kind is the one labelled "phi^4 = Id" in the classical
statement; its normal-coordinate witness is nevertheless an involution.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import NotInvertible, ResidualError
from .normalform import NormalForm, Web
from .series import PlaneMap, Series2, dx, dy, invert1


class Foliation(enum.Enum):
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"
    LEVEL = "level"


FOLIATIONS = (Foliation.VERTICAL, Foliation.HORIZONTAL, Foliation.LEVEL)


class SimpleTag(enum.Enum):
    FLAT_TO_ORDER = "FlatToOrder"
    ONLY_ID = "OnlyId"
    ID_AND_INVOLUTION = "IdAndInvolution"


@dataclass(frozen=True)
class SimpleClass:
    tag: SimpleTag
    order: int  # validity order of the g the verdict rests on


@dataclass(frozen=True)
class MirrorClass:
    swap_mirror: bool
    antiswap_mirror: bool

    def count(self):
        return int(self.swap_mirror) + int(self.antiswap_mirror)


@dataclass(frozen=True)
class FoliationPermutation:
    """Where a map sends each foliation; ``images`` is None when it is not a web symmetry."""

    images: dict | None

    @property
    def present(self):
        return self.images is not None

    def fixed(self):
        if self.images is None:
            return ()
        return tuple(k for k in FOLIATIONS if self.images[k] is k)

    def is_identity(self):
        return self.present and len(self.fixed()) == 3

    def is_transposition(self):
        return self.present and len(self.fixed()) == 1

    def is_three_cycle(self):
        return self.present and len(self.fixed()) == 0

    def __str__(self):
        if self.images is None:
            return "not a symmetry"
        return ", ".join(f"{k.value}->{self.images[k].value}" for k in FOLIATIONS)


THREE_CYCLE = FoliationPermutation({
    Foliation.VERTICAL: Foliation.HORIZONTAL,
    Foliation.HORIZONTAL: Foliation.LEVEL,
    Foliation.LEVEL: Foliation.VERTICAL,
})


@dataclass(frozen=True)
class Witness:
    kind: str  # "simple-involution", "swap-mirror", "antiswap-mirror"
    map: PlaneMap
    permutation: FoliationPermutation


def classify_simple(g: Series2) -> SimpleClass:
    if g.is_zero():
        return SimpleClass(SimpleTag.FLAT_TO_ORDER, g.order)
    if all((r + s) % 2 == 0 for (r, s), _ in g.items()):
        return SimpleClass(SimpleTag.ID_AND_INVOLUTION, g.order)
    return SimpleClass(SimpleTag.ONLY_ID, g.order)


def classify_mirror(g: Series2) -> MirrorClass:
    """Exact coefficient tests for g(y, x) = -g(x, y) and g(-y, -x) = -g(x, y)."""
    swapped = g.swap()
    return MirrorClass(
        swap_mirror=(swapped == -g),
        antiswap_mirror=(swapped.scale(-1, -1) == -g),
    )


def _wedge_vanishes(h: Series2, u: Series2) -> bool:
    return (dx(h) * dy(u) - dy(h) * dx(u)).is_zero()


def foliation_permutation(m: PlaneMap, w: Web) -> FoliationPermutation:
    """Which foliation of w each foliation is carried to by m.

    Foliation i goes to foliation j when u_j o m is a function of u_i, tested
    by the vanishing of d(u_j o m) ^ d(u_i) to the common validity order.
    """
    if m.order < 1 or not m.det():
        raise NotInvertible("candidate map must have invertible linear part")
    n = min(m.order, w.order)
    m = m.truncate(n)
    f = w.f.truncate(n)
    u = {
        Foliation.VERTICAL: Series2.x(n),
        Foliation.HORIZONTAL: Series2.y(n),
        Foliation.LEVEL: f,
    }
    pulled = {j: m(u[j]) for j in FOLIATIONS}
    images = {}
    for i in FOLIATIONS:
        hits = [j for j in FOLIATIONS if _wedge_vanishes(pulled[j], u[i])]
        if len(hits) != 1:
            return FoliationPermutation(None)
        images[i] = hits[0]
    if len(set(images.values())) != 3:
        return FoliationPermutation(None)
    return FoliationPermutation(images)


def _conjugate_to_original(phi: PlaneMap, nf: NormalForm) -> PlaneMap:
    # normal coords -> original coords is (x, y) -> (X(x), Y(y))
    to_orig = PlaneMap(nf.X.lift("x"), nf.Y.lift("y"))
    to_normal = PlaneMap(invert1(nf.X).lift("x"), invert1(nf.Y).lift("y"))
    return to_orig.after(phi.after(to_normal))


def symmetry_witnesses(nf: NormalForm, original_coordinates=False, original_web=None):
    """Explicit non-identity simple and mirror symmetries, each verified.

    Maps are given in normal coordinates unless ``original_coordinates`` is
    set, in which case they are conjugated by (X, Y) and verified against
    ``original_web`` (required then).
    """
    n = nf.f.order
    g = nf.g
    simple = classify_simple(g)
    mirror = classify_mirror(g)
    candidates = []
    if simple.tag is not SimpleTag.ONLY_ID:
        candidates.append(("simple-involution", PlaneMap.linear(-1, 0, 0, -1, n)))
    if mirror.swap_mirror:
        candidates.append(("swap-mirror", PlaneMap.linear(0, 1, 1, 0, n)))
    if mirror.antiswap_mirror:
        candidates.append(("antiswap-mirror", PlaneMap.linear(0, -1, -1, 0, n)))

    web = nf.web
    if original_coordinates:
        if original_web is None:
            raise ValueError("original_web is required for original coordinates")
        web = original_web
    out = []
    for kind, phi in candidates:
        if original_coordinates:
            phi = _conjugate_to_original(phi, nf)
        perm = foliation_permutation(phi, web)
        expected_fixed = 3 if kind == "simple-involution" else 1
        if len(perm.fixed()) != expected_fixed or Foliation.LEVEL not in perm.fixed():
            raise ResidualError(f"{kind} witness failed verification: {perm}")
        out.append(Witness(kind, phi, perm))
    return out
