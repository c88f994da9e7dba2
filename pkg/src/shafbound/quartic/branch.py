"""From seven points in the plane to the branch quartic of the anticanonical double cover.

The cubics through seven points in general position form a net F = (F0, F1, F2)
giving a rational map of degree 2 onto the plane.  Its ramification curve is
the Jacobian sextic J, and the branch quartic B is characterized by the
pullback identity B(F0, F1, F2) = c * J^2, which is linear in the 15
coefficients of B and the scalar c.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import CertificateError, DegeneracyError
from ..geomkernel.forms import TernaryForm, compose, monomials, multiply, n_monomials
from ..geomkernel.geometry import ProjPointQ, general_position
from ..geomkernel.linalg import integer_kernel, kernel, primitive_vector
from .curves import QuarticCurve
from .macaulay import DEFAULT_SEED


@dataclass(frozen=True)
class CubicNet:
    """Three independent cubics spanning the cubics through ``points``."""

    cubics: tuple[TernaryForm, TernaryForm, TernaryForm]
    points: tuple[ProjPointQ, ...]

    def __post_init__(self) -> None:
        if len(self.cubics) != 3 or any(f.degree != 3 for f in self.cubics):
            raise ValueError("a cubic net has exactly three cubics")
        for f in self.cubics:
            if any(f.evaluate(p.coords) for p in self.points):
                raise CertificateError("net cubic does not vanish at a base point")

    def change_basis(self, M: Sequence[Sequence[int]]) -> CubicNet:
        """The net with basis G_i = sum_j M[i][j] F_j."""
        new = []
        for row in M:
            g = TernaryForm.zero(3)
            for c, f in zip(row, self.cubics):
                g = g + f.scale(c)
            new.append(g)
        return CubicNet(tuple(new), self.points)

    def to_json(self) -> dict:
        return {"cubics": [f.to_json() for f in self.cubics], "points": [p.to_json() for p in self.points]}


def cubic_net_through_7(points: Sequence[ProjPointQ]) -> CubicNet:
    """Saturated integer basis, in Hermite normal form, of the cubics through seven points."""
    points = tuple(points)
    if len(points) != 7:
        raise ValueError(f"the net needs exactly seven points, got {len(points)}")
    gp = general_position(points)
    if not gp:
        raise ValueError(f"points are not in general position: {gp.predicate} on {gp.subset}")
    mons = monomials(3)
    rows = [[x**i * y**j * z**k for i, j, k in mons] for x, y, z in (p.coords for p in points)]
    basis = integer_kernel(rows, len(mons))
    if len(basis) != 3:
        raise DegeneracyError(f"cubics through the points form a space of dimension {len(basis)}, not 3")
    return CubicNet(tuple(TernaryForm(3, tuple(Fraction(c) for c in v)) for v in basis), points)


def _det3_forms(m: Sequence[Sequence[TernaryForm]]) -> TernaryForm:
    def minor(a: TernaryForm, b: TernaryForm, c: TernaryForm, d: TernaryForm) -> TernaryForm:
        return multiply(a, d) - multiply(b, c)

    return (
        multiply(m[0][0], minor(m[1][1], m[1][2], m[2][1], m[2][2]))
        - multiply(m[0][1], minor(m[1][0], m[1][2], m[2][0], m[2][2]))
        + multiply(m[0][2], minor(m[1][0], m[1][1], m[2][0], m[2][1]))
    )


def jacobian_sextic(net: CubicNet) -> TernaryForm:
    """det(dF_i / dx_j), a sextic singular at the seven base points."""
    J = _det3_forms([f.gradient() for f in net.cubics])
    if J.is_zero():
        raise DegeneracyError("the Jacobian of the net vanishes identically")
    return J


def branch_quartic(net: CubicNet, J: TernaryForm | None = None) -> tuple[TernaryForm, Fraction]:
    """The primitive integral quartic B and scalar c with B(F) = c J^2."""
    if J is None:
        J = jacobian_sextic(net)
    quartic_mons = monomials(4)
    # Column k holds the degree-12 coefficients of F^m_k; the last column is -J^2.
    images = [compose(TernaryForm.from_terms(4, {m: 1}), net.cubics) for m in quartic_mons]
    J2 = multiply(J, J)
    columns = [img.coeffs for img in images] + [(-J2).coeffs]
    n_eq = n_monomials(12)
    system = [[col[r] for col in columns] for r in range(n_eq)]
    sol = kernel(system, len(columns))
    if len(sol) != 1:
        raise DegeneracyError(f"pullback system has a {len(sol)}-dimensional solution space")
    v = sol[0]
    if v[-1] == 0:
        raise DegeneracyError("pullback system forces c = 0")
    b = primitive_vector(v[:-1])
    # Rescale c to the primitive B; b is a positive multiple of +-v[:-1].
    ratio = next(Fraction(x, y) for x, y in zip(b, v) if y)
    c = ratio * v[-1]
    B = TernaryForm(4, tuple(Fraction(x) for x in b))
    if compose(B, net.cubics) != J2.scale(c):
        raise CertificateError("pullback identity B(F) = c J^2 fails")
    return B, c


@dataclass(frozen=True)
class BranchResult:
    """Everything produced on the way from a configuration to its quartic."""

    net: CubicNet
    jacobian: TernaryForm
    quartic: TernaryForm
    c: Fraction
    curve: QuarticCurve
    excess_primes: tuple[int, ...]
    certified: bool

    def to_json(self) -> dict:
        return {
            "quartic": self.quartic.to_json(),
            "c": f"{self.c.numerator}/{self.c.denominator}",
            "discriminant_support": list(self.curve.bad_primes),
            "excess_primes": list(self.excess_primes),
            "smooth": self.curve.smooth,
            "pullback_identity": True,
            "certified": self.certified,
        }


def quartic_from_dp_config(config, seed: int = DEFAULT_SEED) -> BranchResult:
    """Branch quartic of a degree-2 configuration, with the pullback identity checked.

    Bad primes of the quartic that fall outside S are kept in ``excess_primes``
    rather than discarded.
    """
    from ..delpezzo import integral_general_position

    if config.degree != 2:
        raise ValueError(f"branch quartics come from degree-2 configurations, got degree {config.degree}")
    cert = integral_general_position(config)
    net = cubic_net_through_7(config.points)
    J = jacobian_sextic(net)
    B, c = branch_quartic(net, J)
    curve = QuarticCurve.of(B, seed, known=tuple(config.S))
    if not curve.smooth:
        raise CertificateError("branch quartic of a configuration in general position is singular")
    excess = tuple(p for p in curve.bad_primes if p not in config.S)
    return BranchResult(net, J, B, c, curve, excess, cert.verdict)
