"""Stable and rational conjugacy classes of unramified maximal tori.

The parameter space for lifts of a Weyl element w, modulo the kernel of the
w-twisted Kottwitz map, is a torsor under the twisted coinvariant lattice;
its intersection with a basic class is cut out by matching the Newton point
and the Kottwitz class, and rational classes are the orbits of the twisted
centralizer acting on that intersection.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .lattice import FiniteAbelianGroup, Vec
from .affine import (
    ExtAffineElt,
    NewtonPoint,
    beta_image,
    coweight_coinvariants,
    kottwitz_class,
    newton_point,
    pi1_coinvariants,
    sigma_on_affine,
)
from .rootdata import RootDatum
from .weyl import WeylElt, twisted_centralizer


@dataclass(frozen=True)
class BasicLabel:
    """A basic class, identified by its two separating invariants."""

    kottwitz: Vec                    # canonical coords in pi_1(G)_Frobenius
    newton_dominant: tuple[Fraction, ...]


def basic_label_of(d: RootDatum, x: ExtAffineElt,
                   pi1: Optional[FiniteAbelianGroup] = None) -> BasicLabel:
    return BasicLabel(
        kottwitz=kottwitz_class(d, x, pi1),
        newton_dominant=newton_point(d, x).dominant,
    )


@dataclass(frozen=True)
class LiftClass:
    """A lift of w modulo ker of the twisted Kottwitz map: a coset label."""

    coset: Vec  # canonical coordinates in X_*(T)_{w-twisted}


@dataclass(frozen=True)
class LiftTorsor:
    """The set of lifts of w mod kernel, as a torsor under the coinvariants."""

    base: WeylElt
    group: FiniteAbelianGroup  # X_*(T) / (w sigma - 1)

    def classes(self, free_box: int = 3) -> Iterable[LiftClass]:
        """All classes with free coordinates ranging over [-box, box]."""
        ranges = [range(dd) if dd > 0 else range(-free_box, free_box + 1)
                  for dd in self.group.invariant_factors]
        return (LiftClass(tuple(t)) for t in itertools.product(*ranges))

    def lift(self, cls: LiftClass, d: RootDatum) -> ExtAffineElt:
        amb = self.group.lift_element(cls.coset)
        return ExtAffineElt(self.base, amb)


def lifts_mod_kernel(d: RootDatum, w: WeylElt) -> LiftTorsor:
    return LiftTorsor(base=w, group=coweight_coinvariants(d, w))


def nonemptiness_predicate(d: RootDatum, torsor: LiftTorsor, cls: LiftClass,
                           label: BasicLabel,
                           pi1: Optional[FiniteAbelianGroup] = None) -> bool:
    """Necessary condition for the covering space attached to cls over the
    class of label to be nonempty: matching Kottwitz invariants."""
    g = pi1 if pi1 is not None else pi1_coinvariants(d)
    x = torsor.lift(cls, d)
    return kottwitz_class(d, x, g) == label.kottwitz


def basic_fiber(d: RootDatum, w: WeylElt, label: BasicLabel,
                free_box: Optional[int] = None) -> list[LiftClass]:
    """All lift classes whose (Newton, Kottwitz) pair matches the label.

    The free directions of the coinvariant lattice are swept over a box whose
    radius defaults to 2 * (torsion exponent + 1); completeness is certified
    by the torsor law (see ``check_torsor_law``).
    """
    torsor = lifts_mod_kernel(d, w)
    pi1 = pi1_coinvariants(d)
    if free_box is None:
        free_box = 2 * (torsor.group.exponent() + 1)
    out = []
    for cls in torsor.classes(free_box=free_box):
        x = torsor.lift(cls, d)
        if kottwitz_class(d, x, pi1) != label.kottwitz:
            continue
        if newton_point(d, x).dominant != label.newton_dominant:
            continue
        out.append(cls)
    return out


def check_torsor_law(d: RootDatum, w: WeylElt, fiber: Sequence[LiftClass],
                     label: BasicLabel) -> bool:
    """Differences of fiber elements lie in the torsion of the beta image, and
    the fiber is stable under adding any element of that torsion."""
    img = beta_image(d, w)
    torsor = lifts_mod_kernel(d, w)
    group = torsor.group
    fiber_set = {c.coset for c in fiber}
    for a, b in itertools.combinations(fiber, 2):
        diff = group.add(a.coset, group.neg(b.coset))
        if not img.contains_in_torsion(diff):
            return False
    # stability under the torsion subgroup of the image
    for cls in fiber:
        for tors_elt in _beta_torsion_elements(d, w, img, group):
            moved = group.add(cls.coset, tors_elt)
            if moved not in fiber_set:
                return False
    return True


def _beta_torsion_elements(d: RootDatum, w: WeylElt, img, group) -> list[Vec]:
    """Elements of the torsion part of the beta image, in coinvariant coords."""
    out = []
    for cand in group.torsion_elements():
        if img.contains_in_torsion(cand):
            out.append(cand)
    return out


@dataclass(frozen=True)
class RationalClassReport:
    fiber_size: int
    orbit_count: int
    orbits: tuple[tuple[Vec, ...], ...]
    action_is_trivial: bool


def rational_class_count(d: RootDatum, w: WeylElt, label: BasicLabel,
                         weyl_group: Iterable[WeylElt],
                         fiber: Optional[Sequence[LiftClass]] = None) -> RationalClassReport:
    """Count orbits of the twisted centralizer on the basic fiber.

    The action of v sends a lift x to v^{-1} x sigma(v) (computed in the
    extended affine group with the zero-translation lift of v), then reduces
    back to the coset group.
    """
    if fiber is None:
        fiber = basic_fiber(d, w, label)
    torsor = lifts_mod_kernel(d, w)
    group = torsor.group
    cent = twisted_centralizer(d, weyl_group, w)
    fiber_cosets = {c.coset for c in fiber}
    moved_nontrivially = False
    remaining = set(fiber_cosets)
    orbits = []
    while remaining:
        seed = remaining.pop()
        orbit = {seed}
        frontier = [seed]
        while frontier:
            cur = frontier.pop()
            x = ExtAffineElt(torsor.base, group.lift_element(cur))
            for v in cent:
                vt = ExtAffineElt(v, (0,) * d.rank)
                moved = vt.inverse() * x * sigma_on_affine(d, vt)
                if moved.finite_part.matrix != torsor.base.matrix:
                    raise AssertionError("centralizer action left the fiber of w")
                img = group.reduce(moved.translation)
                if img != cur:
                    moved_nontrivially = True
                if img not in fiber_cosets:
                    raise AssertionError("centralizer action left the basic fiber")
                if img in remaining:
                    remaining.discard(img)
                    orbit.add(img)
                    frontier.append(img)
        orbits.append(tuple(sorted(orbit)))
    return RationalClassReport(
        fiber_size=len(fiber_cosets),
        orbit_count=len(orbits),
        orbits=tuple(orbits),
        action_is_trivial=not moved_nontrivially,
    )
