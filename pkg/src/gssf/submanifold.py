"""Pointwise submanifold data and derived curvature invariants.

A point bundles an orthonormal tangent frame whose last two vectors are
the structure vectors xi_1, xi_2, the orthonormal complement as normal
frame, and formal second fundamental form coefficients sigma[r][i][j].
The coefficients are input data, not derived from an immersion: every
implemented identity and bound is frame algebra, so it holds for formal
data and can be fuzzed.  Constraints coming from genuine geometry (for
instance sigma(X, xi_alpha) = 0 over a flat-normal structure) are
opt-in flags.

Induced curvature follows the Gauss equation

    R(X, Y, Z, W) = R~(X, Y, Z, W)
                    + g(sigma(X, W), sigma(Y, Z))
                    - g(sigma(X, Z), sigma(Y, W)),

with the ambient R~ evaluated in the seven-function model; the
tangential/normal split of f is fX = TX + NX.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .ambient import AmbientModel, StructureFunctions, ambient_curvature, frame_sectional
from .config import DEFAULT, Tolerances
from .errors import (
    BadShape,
    DependentInput,
    NotInL,
    NotTangent,
    NotUnitVector,
    XiNotTangent,
)
from .frames import Basis, Vec, as_vec, complete_basis, gram_schmidt, project


@dataclass(frozen=True, eq=False)
class SecondFundamentalForm:
    """Formal coefficients sigma[r][i][j] over normal and tangent frames.

    The first axis indexes the normal frame, the last two the tangent
    frame; symmetry in (i, j) is required exactly.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim != 3 or c.shape[1] != c.shape[2]:
            raise BadShape("coefficients must have shape (normals, t, t)")
        if not np.all(np.isfinite(c)):
            raise BadShape("coefficients must be finite")
        if not np.array_equal(c, np.swapaxes(c, 1, 2)):
            raise BadShape("coefficients must be symmetric in the tangent indices")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zeros(cls, normal_rank: int, tangent_dim: int) -> "SecondFundamentalForm":
        return cls(np.zeros((normal_rank, tangent_dim, tangent_dim)))

    @property
    def normal_rank(self) -> int:
        return self.coeffs.shape[0]

    @property
    def tangent_dim(self) -> int:
        return self.coeffs.shape[1]


@dataclass(frozen=True)
class PointFlags:
    #: enforce sigma(X, xi_alpha) = 0, the constraint a flat-normal
    #: ambient structure imposes on genuine immersions
    c_compatible: bool = False


@dataclass(frozen=True)
class SlantResult:
    """Outcome of probing the angle between f X and the tangent space."""

    kind: str  # "slant" | "not_slant" | "indeterminate"
    angle: float | None
    spread: float

    @property
    def is_slant(self) -> bool:
        return self.kind == "slant"


@dataclass(frozen=True)
class InvariantReport:
    h_normal: np.ndarray  # mean curvature vector in normal-frame coordinates
    h_norm_sq: float
    sigma_norm_sq: float
    t_norm_sq: float
    n_norm_sq: float
    tau: float
    slant: SlantResult


@dataclass(frozen=True)
class ScalarIdentityReport:
    """Twice the scalar curvature against its closed form."""

    lhs: float
    rhs: float
    abs_diff: float


@dataclass(frozen=True)
class SffClassification:
    minimal: bool
    totally_geodesic: bool
    totally_umbilical: bool
    totally_f_geodesic: bool
    totally_f_umbilical: bool

    def as_dict(self) -> dict[str, bool]:
        return {
            "minimal": self.minimal,
            "totally_geodesic": self.totally_geodesic,
            "totally_umbilical": self.totally_umbilical,
            "totally_f_geodesic": self.totally_f_geodesic,
            "totally_f_umbilical": self.totally_f_umbilical,
        }


@dataclass(frozen=True, eq=False)
class SubmanifoldPoint:
    """Immutable pointwise data; all derived quantities are pure queries."""

    ambient: AmbientModel
    functions: StructureFunctions
    tangent: Basis
    normal: Basis
    sff: SecondFundamentalForm
    flags: PointFlags = field(default_factory=PointFlags)

    @property
    def n(self) -> int:
        """Dimension of the distribution orthogonal to the structure vectors."""
        return len(self.tangent) - 2

    @property
    def normal_rank(self) -> int:
        return len(self.normal)

    @cached_property
    def phi(self) -> np.ndarray:
        """phi[i, j] = <e_i, f e_j> over the tangent frame."""
        e = self.tangent.matrix
        return e @ self.ambient.f_matrix @ e.T

    @cached_property
    def eta_frame(self) -> np.ndarray:
        """eta[i, a] = eta_a(e_i) over the tangent frame."""
        return self.tangent.matrix @ self.ambient.xi.T

    @cached_property
    def sectional_matrix(self) -> np.ndarray:
        """Induced plane curvatures K(e_i ^ e_j) over the tangent frame."""
        k = frame_sectional(self.functions, self.phi, self.eta_frame)
        k = k + _gauss_matrix(self.sff.coeffs)
        np.fill_diagonal(k, 0.0)
        return k

    @cached_property
    def tau(self) -> float:
        """Scalar curvature: half the sum of K over ordered frame pairs."""
        return float(np.triu(self.sectional_matrix, 1).sum())

    @cached_property
    def h_normal(self) -> np.ndarray:
        """Mean curvature vector in normal-frame coordinates."""
        traces = np.einsum("rii->r", self.sff.coeffs)
        return traces / (self.n + 2)

    @cached_property
    def h_norm_sq(self) -> float:
        return float(self.h_normal @ self.h_normal)

    @cached_property
    def t_norm_sq(self) -> float:
        n = self.n
        return float(np.sum(self.phi[:n, :n] ** 2))

    def tangent_coords(self, x, tol: Tolerances = DEFAULT) -> np.ndarray:
        """Coordinates of a tangent vector in the tangent frame."""
        v = as_vec(x, dim=self.ambient.dim)
        coords = self.tangent.matrix @ v
        residual = np.linalg.norm(v - self.tangent.matrix.T @ coords)
        if residual > tol.tangency:
            raise NotTangent(f"vector is off the tangent space by {residual:.3e}")
        return coords

    def l_coords(self, x, tol: Tolerances = DEFAULT) -> np.ndarray:
        """Tangent-frame coordinates of a vector required to lie in L."""
        try:
            coords = self.tangent_coords(x, tol)
        except NotTangent as exc:
            raise NotInL(str(exc)) from exc
        xi_part = np.max(np.abs(coords[self.n:])) if self.n < len(coords) else 0.0
        if xi_part > tol.tangency:
            raise NotInL(
                f"vector has structure-vector components of size {xi_part:.3e}"
            )
        return coords


def _gauss_matrix(sigma: np.ndarray) -> np.ndarray:
    """Second-fundamental-form contribution to frame plane curvatures."""
    diag = np.einsum("rii->ri", sigma)
    return np.einsum("ri,rj->ij", diag, diag) - np.einsum("rij,rij->ij", sigma, sigma)


def attach_point(ambient: AmbientModel, functions: StructureFunctions,
                 raw_tangent, sff: SecondFundamentalForm,
                 flags: PointFlags | None = None,
                 tol: Tolerances = DEFAULT) -> SubmanifoldPoint:
    """Assemble and validate a submanifold point from raw tangent data.

    The raw vectors must be linearly independent and their span must
    contain both structure vectors.  The returned tangent frame holds an
    orthonormalized L-part (input order preserved) followed by xi_1,
    xi_2 exactly; the normal frame is the orthonormal complement.
    """
    flags = flags or PointFlags()
    vecs = [as_vec(v, dim=ambient.dim) for v in raw_tangent]
    if len(vecs) < 2:
        raise BadShape("the tangent span must contain both structure vectors")

    raw_basis = gram_schmidt(vecs, tol=tol)  # DependentInput on rank deficiency
    for alpha in range(2):
        xi = ambient.xi[alpha]
        residual = float(np.linalg.norm(xi - project(xi, raw_basis)))
        if residual > tol.tangency:
            raise XiNotTangent(
                f"xi_{alpha + 1} is off the tangent span by {residual:.3e}"
            )

    # Strip structure components, then orthonormalize what is left of each
    # input vector; vectors that were pure xi combinations drop out.
    l_rows: list[Vec] = []
    for v in vecs:
        w = v - ambient.xi.T @ (ambient.xi @ v)
        for _ in range(2):
            for u in l_rows:
                w -= (w @ u) * u
        norm = float(np.linalg.norm(w))
        if norm > tol.tangency:
            l_rows.append(w / norm)
    if len(l_rows) != len(vecs) - 2:
        raise DependentInput(
            "tangent span does not split into an L-part plus the structure vectors"
        )

    tangent_rows = np.vstack(l_rows + [ambient.xi[0], ambient.xi[1]]) \
        if l_rows else np.vstack([ambient.xi[0], ambient.xi[1]])
    tangent = Basis(tangent_rows)
    n = len(tangent) - 2
    normal_rows = complete_basis(tangent.matrix, ambient.dim - len(tangent))
    normal = Basis(normal_rows)

    expected = (len(normal), n + 2, n + 2)
    if sff.coeffs.shape != expected:
        raise BadShape(
            f"second fundamental form has shape {sff.coeffs.shape}, expected {expected}"
        )
    if flags.c_compatible and sff.coeffs.size:
        xi_block = sff.coeffs[:, n:, :]
        if np.any(xi_block != 0.0):
            raise BadShape(
                "c_compatible flag requires sigma(., xi_alpha) = 0 exactly"
            )
    return SubmanifoldPoint(ambient=ambient, functions=functions,
                            tangent=tangent, normal=normal, sff=sff, flags=flags)


def tn_decompose(point: SubmanifoldPoint, x, tol: Tolerances = DEFAULT) -> tuple[Vec, Vec]:
    """Split f X into tangential and normal parts (TX, NX), TX + NX = fX."""
    v = as_vec(x, dim=point.ambient.dim)
    point.tangent_coords(v, tol)  # NotTangent when X is off the tangent space
    fx = point.ambient.f_matrix @ v
    tx = project(fx, point.tangent)
    return tx, fx - tx


def induced_curvature(point: SubmanifoldPoint, x, y, z, w,
                      tol: Tolerances = DEFAULT) -> float:
    """Gauss-equation curvature R(X, Y, Z, W) for tangent vectors."""
    a = point.tangent_coords(x, tol)
    b = point.tangent_coords(y, tol)
    c = point.tangent_coords(z, tol)
    d = point.tangent_coords(w, tol)
    s = point.sff.coeffs
    sig = lambda p, q: np.einsum("rij,i,j->r", s, p, q)
    amb = ambient_curvature(point.ambient, point.functions, x, y, z, w)
    return float(amb + sig(a, d) @ sig(b, c) - sig(a, c) @ sig(b, d))


def induced_sectional(point: SubmanifoldPoint, i: int, j: int) -> float:
    """K(e_i ^ e_j) for two distinct tangent-frame indices (0-based)."""
    t = point.n + 2
    if not (0 <= i < t and 0 <= j < t):
        raise BadShape(f"frame indices must lie in [0, {t})")
    if i == j:
        raise BadShape("sectional curvature needs two distinct frame directions")
    return float(point.sectional_matrix[i, j])


def slant_probe(point: SubmanifoldPoint, samples: int = 50, seed: int = 0,
                tol: Tolerances = DEFAULT) -> SlantResult:
    """Estimate whether the angle between f X and the tangent space is constant.

    Probes every L-frame vector plus ``samples`` seeded random unit
    combinations in L.  Directions with ``|fX|`` below tolerance are
    skipped; when none survive the result is indeterminate.
    """
    n = point.n
    if n == 0:
        return SlantResult("indeterminate", None, 0.0)
    e_l = point.tangent.matrix[:n]
    rng = np.random.default_rng(seed)
    combos = rng.normal(size=(samples, n))
    norms = np.linalg.norm(combos, axis=1)
    mask = norms > 1e-12
    combos = combos[mask] / norms[mask][:, None]
    directions = np.vstack([np.eye(n), combos]) @ e_l

    fdirs = directions @ point.ambient.f_matrix.T
    f_norms = np.linalg.norm(fdirs, axis=1)
    keep = f_norms > tol.tangency
    if not np.any(keep):
        return SlantResult("indeterminate", None, 0.0)
    tparts = (fdirs[keep] @ point.tangent.matrix.T) @ point.tangent.matrix
    cosines = np.linalg.norm(tparts, axis=1) / f_norms[keep]
    angles = np.arccos(np.clip(cosines, 0.0, 1.0))
    mean = float(np.mean(angles))
    spread = float(np.max(np.abs(angles - mean)))
    if spread < tol.slant_spread:
        return SlantResult("slant", mean, spread)
    return SlantResult("not_slant", None, spread)


def invariant_report(point: SubmanifoldPoint, tol: Tolerances = DEFAULT) -> InvariantReport:
    """All pointwise invariants: H, |sigma|^2, |T|^2, |N|^2, tau, slant."""
    n = point.n
    e_l = point.tangent.matrix[:n]
    f_images = e_l @ point.ambient.f_matrix.T
    t_parts_sq = np.sum(point.phi[:, :n] ** 2, axis=0)
    n_norm_sq = float(np.sum(f_images ** 2) - np.sum(t_parts_sq))
    return InvariantReport(
        h_normal=point.h_normal,
        h_norm_sq=point.h_norm_sq,
        sigma_norm_sq=float(np.sum(point.sff.coeffs ** 2)),
        t_norm_sq=point.t_norm_sq,
        n_norm_sq=n_norm_sq,
        tau=point.tau,
        slant=slant_probe(point, tol=tol),
    )


def scalar_identity_check(point: SubmanifoldPoint) -> ScalarIdentityReport:
    """Brute-force 2*tau against its closed form in H, sigma, T and the scalars.

    The closed form is

        (n+1)(n+2) F1 - 2(n+1)(F11 + F22) + 2 F3
        + 3 F2 |T|^2 + (n+2)^2 |H|^2 - |sigma|^2,

    an identity for arbitrary formal coefficients; the frame summation on
    the left is the independent oracle.
    """
    n = point.n
    f = point.functions
    lhs = 2.0 * point.tau
    rhs = (
        (n + 1) * (n + 2) * f.f1
        - 2.0 * (n + 1) * (f.f11 + f.f22)
        + 2.0 * f.f3
        + 3.0 * f.f2 * point.t_norm_sq
        + (n + 2) ** 2 * point.h_norm_sq
        - float(np.sum(point.sff.coeffs ** 2))
    )
    return ScalarIdentityReport(lhs=lhs, rhs=rhs, abs_diff=abs(lhs - rhs))


def _adapted_l_rotation(point: SubmanifoldPoint, u_l: np.ndarray) -> np.ndarray:
    """Orthogonal (n+2)-frame change putting the unit L-vector first.

    Rows are the new tangent frame in old tangent-frame coordinates; the
    structure directions stay fixed as the last two rows.  The L-block
    is the Householder reflection exchanging the first coordinate
    direction with the given vector, an exactly orthogonal completion.
    """
    n = point.n
    u = u_l[:n] / np.linalg.norm(u_l[:n])
    c = np.eye(n + 2)
    w = u.copy()
    w[0] -= 1.0
    norm_sq = float(w @ w)
    if norm_sq > 1e-14:
        c[:n, :n] -= np.outer(w, w) * (2.0 / norm_sq)
    return c


def _require_unit_l(point: SubmanifoldPoint, u, tol: Tolerances) -> np.ndarray:
    v = as_vec(u, dim=point.ambient.dim)
    if abs(np.linalg.norm(v) - 1.0) > tol.tangency:
        raise NotUnitVector("direction must have unit length")
    return point.l_coords(v, tol)


def ricci_frame_data(point: SubmanifoldPoint, u, tol: Tolerances = DEFAULT):
    """Ricci curvature of a unit L-direction with its adapted-frame data.

    Completes a tangent frame starting at U (structure vectors fixed
    last), rotates the form coefficients into it, and sums the induced
    sectional curvatures of U against the remaining n + 1 directions.
    Returns (ricci, rotated sigma, |TU|^2).
    """
    coords = _require_unit_l(point, u, tol)
    c = _adapted_l_rotation(point, coords)
    phi_rot = c @ point.phi @ c.T
    eta_rot = c @ point.eta_frame
    sigma_rot = np.einsum("ai,bj,rij->rab", c, c, point.sff.coeffs)
    k = frame_sectional(point.functions, phi_rot, eta_rot) + _gauss_matrix(sigma_rot)
    ric = float(np.sum(k[0, 1:]))
    tu_sq = float(np.sum(phi_rot[:, 0] ** 2))
    return ric, sigma_rot, tu_sq


def ricci(point: SubmanifoldPoint, u, tol: Tolerances = DEFAULT) -> float:
    """Ricci curvature Ric(U) of a unit direction in L."""
    value, _, _ = ricci_frame_data(point, u, tol)
    return value


def relative_null_space(point: SubmanifoldPoint, tol: Tolerances = DEFAULT) -> list[Vec]:
    """Orthonormal basis of the kernel of X -> sigma(X, .) in the tangent space."""
    s = point.sff.coeffs
    t = point.n + 2
    m = s.transpose(0, 2, 1).reshape(-1, t)
    _, singulars, vh = np.linalg.svd(m, full_matrices=True) if m.size else (None, np.zeros(0), np.eye(t))
    rank = int(np.sum(singulars > tol.null_space_pivot))
    return [row @ point.tangent.matrix for row in vh[rank:]]


def classify_sff(point: SubmanifoldPoint, tol: Tolerances = DEFAULT) -> SffClassification:
    """Classical shape classes of the form coefficients.

    The f-variants test only the L x L block, so a form supported on the
    structure directions can be totally f-geodesic without being totally
    geodesic.
    """
    s = point.sff.coeffs
    n = point.n
    t = point.n + 2
    minimal = math.sqrt(point.h_norm_sq) <= tol.equality
    totally_geodesic = bool(np.max(np.abs(s), initial=0.0) <= tol.equality)

    fitted = s[:, 0, 0] if s.shape[0] else np.zeros(0)
    umb_model = fitted[:, None, None] * np.eye(t)[None, :, :]
    totally_umbilical = bool(np.max(np.abs(s - umb_model), initial=0.0) <= tol.equality)

    l_block = s[:, :n, :n]
    totally_f_geodesic = bool(np.max(np.abs(l_block), initial=0.0) <= tol.equality)
    if n:
        umb_model_l = fitted[:, None, None] * np.eye(n)[None, :, :]
        totally_f_umbilical = bool(
            np.max(np.abs(l_block - umb_model_l), initial=0.0) <= tol.equality
        )
    else:
        totally_f_umbilical = True
    return SffClassification(
        minimal=minimal,
        totally_geodesic=totally_geodesic,
        totally_umbilical=totally_umbilical,
        totally_f_geodesic=totally_f_geodesic,
        totally_f_umbilical=totally_f_umbilical,
    )
