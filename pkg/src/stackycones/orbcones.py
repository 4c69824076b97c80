"""The distinguished dual pair of bases of the orbifold curve/divisor
spaces, orbifold classes of one-parameter subgroups, the movable cone of
curve classes, the pseudo-effective generators, and the verifier that
checks the generator description against an independent dual-cone
computation.

For each ray rho put bb_rho = c_rho * v_rho.  The basis of V_orb indexed
by eta in {rays} + {twisted sectors} is

    Xi_rho = bb_rho,
    Xi_Y   = v_Y + sum_rho a_rho(Y) * bb_rho,

with dual basis in U_orb

    Xi*_rho = (1/c_rho) u_rho - sum_Y a_rho(Y) u_Y,
    Xi*_Y   = u_Y.

The movable cone is cone{Xi_eta} intersected with the curve space.  Since
{Xi_eta} is a basis, the inequality description of cone{Xi_eta} is exactly
{<Xi*_eta, .> >= 0}, so the intersection is computed by restricting each
Xi*_eta to the curve basis and dualizing in the curve coordinates.  The
verifier then feeds the movable cone's generators to the generic double
description dual (no use of Xi* on that route) and compares against the
cone on the lambda_orb(Xi*_eta); the two routes are algorithmically
independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Optional, Sequence

from .boxes import BoxElement, minimal_cone_coeffs, q_reduce, twisted_sectors
from .cones import Cone
from .fan import NElement, StackyFan
from .linalg import IntVec, RatVec, det, dot, unit_vector
from .neron_severi import (
    AmbientSpaces,
    OrbDivisorClass,
    build_spaces,
    lambda_orb,
)


@dataclass(frozen=True)
class XiSystem:
    """The dual pair of bases, indexed by rays then sectors."""

    labels: tuple[str, ...]
    xi: tuple[RatVec, ...]        # vectors in V_orb
    xi_star: tuple[RatVec, ...]   # vectors in U_orb
    b_bold: tuple[IntVec, ...]    # bb_rho = c_rho * v_rho, rays only


@dataclass(frozen=True)
class OnePSClass:
    """Orbifold class of the one-parameter subgroup attached to b in N."""

    b: NElement
    class_vector: RatVec          # in V_orb
    sector: BoxElement            # q(b); may be the untwisted element
    ray_multiplicities: tuple[int, ...]  # floor(a_rho(b)) per ray

    def decomposition_label(self, labels: Sequence[str],
                            sector_index: Optional[int]) -> str:
        terms = []
        if sector_index is not None:
            terms.append(f"Xi[{labels[len(self.ray_multiplicities) + sector_index]}]")
        for i, m in enumerate(self.ray_multiplicities):
            if m:
                terms.append(f"{m}*Xi[{labels[i]}]")
        return " + ".join(terms) if terms else "0"


def build_xi(fan: StackyFan, sectors: Sequence[BoxElement],
             spaces: AmbientSpaces) -> XiSystem:
    """Construct both bases and assert the exact dual-basis identity and
    the basis property."""
    n, t = spaces.n, spaces.t
    dim = n + t
    b_bold = tuple(tuple(c if j == i else 0 for j in range(dim))
                   for i, c in enumerate(spaces.ray_cs))
    xi = list(b_bold)
    for j, sector in enumerate(sectors):
        v = [Fraction(0)] * dim
        v[n + j] = Fraction(1)
        for i, a in sector.coeffs.items():
            v[i] += a * spaces.ray_cs[i]
        xi.append(tuple(v))
    xi_star = []
    for i, c in enumerate(spaces.ray_cs):
        u = [Fraction(0)] * dim
        u[i] = Fraction(1, c)
        for j, sector in enumerate(sectors):
            a = sector.coeffs.get(i)
            if a:
                u[n + j] = -a
        xi_star.append(tuple(u))
    for j in range(t):
        xi_star.append(unit_vector(dim, n + j))
    for a, star in enumerate(xi_star):
        for b, v in enumerate(xi):
            expected = 1 if a == b else 0
            if dot(star, v) != expected:
                raise AssertionError(
                    f"dual-basis identity fails at ({a}, {b}): "
                    f"<{star}, {v}> != {expected}")
    if det(xi) == 0:
        raise AssertionError("Xi vectors do not form a basis")
    return XiSystem(labels=spaces.labels, xi=tuple(xi),
                    xi_star=tuple(xi_star), b_bold=b_bold)


def one_ps_class(fan: StackyFan, sectors: Sequence[BoxElement],
                 spaces: AmbientSpaces, b: NElement) -> OnePSClass:
    """Class vector sum_rho a_rho(b) bb_rho + v_{q(b)} together with its
    decomposition data (floor multiplicities per ray, sector via q)."""
    b = b.reduced(fan.group)
    coeffs = minimal_cone_coeffs(fan, b.free)
    sector = q_reduce(fan, b)
    dim = spaces.n + spaces.t
    v = [Fraction(0)] * dim
    multiplicities = [0] * spaces.n
    for i, a in coeffs.items():
        v[i] = a * spaces.ray_cs[i]
        multiplicities[i] = floor(a)
    if not sector.is_untwisted:
        v[spaces.n + sector_index(sectors, sector)] = Fraction(1)
    return OnePSClass(b=b, class_vector=tuple(v), sector=sector,
                      ray_multiplicities=tuple(multiplicities))


def sector_index(sectors: Sequence[BoxElement], sector: BoxElement) -> int:
    """Position of a twisted sector in the canonical sector list."""
    key = (sector.rig, sector.torsion)
    for j, s in enumerate(sectors):
        if (s.rig, s.torsion) == key:
            return j
    raise KeyError(f"sector {key} missing from the canonical list; "
                   "box enumeration and q disagree")


def restricted_functionals(spaces: AmbientSpaces, xi: XiSystem) -> tuple[RatVec, ...]:
    """Each Xi*_eta restricted to the curve basis: the vector of pairings
    with the basis vectors.  These are simultaneously the inequality
    normals of cone{Xi_eta} on the curve space and the pairing vectors of
    the pseudo-effective generators."""
    return tuple(tuple(dot(star, k) for k in spaces.curve_basis)
                 for star in xi.xi_star)


def mov_cone(spaces: AmbientSpaces, xi: XiSystem) -> Cone:
    """Movable cone of orbifold curve classes, in curve-basis coordinates:
    cone{Xi_eta} cut to the curve space via the Xi* inequality description,
    then dualized."""
    constraints = restricted_functionals(spaces, xi)
    return Cone(spaces.dim_ns_orb, constraints).dual()


def peff_generators(spaces: AmbientSpaces, xi: XiSystem) -> tuple[OrbDivisorClass, ...]:
    """The generator description of the pseudo-effective cone: the classes
    lambda_orb(Xi*_eta), rays first then sectors."""
    return tuple(lambda_orb(spaces, star) for star in xi.xi_star)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of the generator-description check for one stacky fan."""

    fan_name: str
    equal: bool
    labels: tuple[str, ...]
    mov_generators: tuple[IntVec, ...]
    dual_of_mov_generators: tuple[IntVec, ...]
    corollary_classes: tuple[RatVec, ...]
    corollary_generators: tuple[IntVec, ...]
    separating: Optional[tuple[str, IntVec]] = None  # (side, vector)


def verify_duality(fan: StackyFan,
                   sectors: Optional[Sequence[BoxElement]] = None,
                   spaces: Optional[AmbientSpaces] = None,
                   xi: Optional[XiSystem] = None) -> VerificationReport:
    """Check that the generic dual of the movable cone equals the cone on
    the predicted pseudo-effective generators, exactly.

    The movable cone uses the Xi* shortcut; its dual here is recomputed by
    the generic double description from the movable cone's generator list,
    so agreement of the two sides is a genuine cross-check rather than a
    computation verified against itself.
    """
    if sectors is None:
        sectors = twisted_sectors(fan)
    if spaces is None:
        spaces = build_spaces(fan, sectors)
    if xi is None:
        xi = build_xi(fan, sectors, spaces)
    mov = mov_cone(spaces, xi)
    dual_of_mov = mov.dual()
    classes = restricted_functionals(spaces, xi)
    corollary = Cone(spaces.dim_ns_orb, classes)
    equal = dual_of_mov.equals(corollary)
    separating = None
    if not equal:
        for g in dual_of_mov.generators:
            if not corollary.contains(g):
                separating = ("dual_of_mov_only", g)
                break
        else:
            for g in corollary.generators:
                if not dual_of_mov.contains(g):
                    separating = ("corollary_only", g)
                    break
    return VerificationReport(
        fan_name=fan.name,
        equal=equal,
        labels=spaces.labels,
        mov_generators=mov.generators,
        dual_of_mov_generators=dual_of_mov.generators,
        corollary_classes=classes,
        corollary_generators=corollary.canonical_generators(),
        separating=separating,
    )
