"""Closed-form geometric invariants of a meridian surface of parabolic type,
and an independent finite-difference oracle recomputing them straight from the
frame-field definitions.

The closed forms depend on f, f', f'', f''' (jets) and kappa, d kappa/dv; the
oracle touches none of them: it differences the frame fields built from the
raw embedding.
"""

import math
from dataclasses import dataclass

from .errors import DomainError, FlatPointError, MarginallyTrappedError
from .minkowski import Vec4, minkowski_dot
from .surface import (MeridianSurface, PointCase, classify_point,
                      coordinate_tangents, normal_frame, normal_pair,
                      point_data, tangent_frame)

__all__ = [
    "InvariantRecord",
    "gauss_curvature",
    "mean_curvature",
    "invariant_k",
    "eight_invariants",
    "normal_connection_curvature",
    "oracle_invariants",
    "oracle_second_fundamental",
    "oracle_frame_derivatives",
    "oracle_mean_curvature_vector",
]

_SQRT2 = math.sqrt(2.0)
DEFAULT_ORACLE_STEP = 1e-4


@dataclass(frozen=True)
class InvariantRecord:
    """The frame invariants (gamma1, gamma2, nu1, nu2, lam, mu, beta1, beta2)
    plus the derived quantities K, k, varkappa, the mean curvature data and
    the sign epsilon of <H,H>. ('lam' is the surface invariant usually written
    lambda; renamed to dodge the keyword.)"""

    gamma1: float
    gamma2: float
    nu1: float
    nu2: float
    lam: float
    mu: float
    beta1: float
    beta2: float
    K: float
    k: float
    varkappa: float
    H_n1: float
    H_n2: float
    H_norm: float
    epsilon: int


def gauss_curvature(s: MeridianSurface, u: float) -> float:
    """K = -f''(u)/f(u); intrinsic, independent of v."""
    fj = s.profile.f_jet(u)
    return -fj.d2 / fj.f


def _require_general(s, u, v):
    case = classify_point(s, u, v)
    if case is PointCase.MARGINALLY_TRAPPED:
        raise MarginallyTrappedError(
            f"marginally trapped point at (u, v) = ({u}, {v})")
    if case is not PointCase.GENERAL:
        raise FlatPointError(f"flat point ({case.value}) at (u, v) = ({u}, {v})")


def mean_curvature(s: MeridianSurface, u: float, v: float) -> tuple:
    """(H_n1, H_n2, ||H||, epsilon): components of H along n1, n2, its norm and
    the sign of <H,H>. Only defined at general points."""
    _require_general(s, u, v)
    d = point_data(s, u, v)
    h1 = d.kappa / (2.0 * d.f)
    h2 = -d.q / (2.0 * d.f * d.fp)
    eps = 1 if d.disc > 0 else -1
    norm = math.sqrt(abs(d.disc)) / (2.0 * d.f * abs(d.fp))
    return h1, h2, norm, eps


def invariant_k(s: MeridianSurface, u: float, v: float) -> float:
    """k = -kappa_m^2(u) kappa^2(v) / f^2(u); zero exactly at flat points."""
    d = point_data(s, u, v)
    return -(d.kappa_m**2) * d.kappa**2 / d.f**2


def eight_invariants(s: MeridianSurface, u: float, v: float) -> InvariantRecord:
    """Closed-form record at a general point."""
    _require_general(s, u, v)
    d = point_data(s, u, v)
    eps = 1 if d.disc > 0 else -1
    absdisc = abs(d.disc)     # eps * disc
    root = math.sqrt(absdisc)

    gamma1 = d.fp / (_SQRT2 * d.f)
    nu = root / (2.0 * d.f * d.fp)
    lam = eps * (d.kappa**2 * d.fp**2 + d.f**2 * d.fpp**2 - d.fp**4) \
        / (2.0 * d.f * d.fp * root)
    mu = d.kappa * d.fpp / root

    # d/du of (f f'' + f'^2)/f'
    q_du = ((d.f * d.fppp + 3.0 * d.fp * d.fpp) * d.fp - d.q * d.fpp) / d.fp**2
    cross = d.kappa_dot * d.q / (d.f * d.fp * math.sqrt(d.D))
    beta1 = -d.fp**2 / (_SQRT2 * absdisc) * (d.kappa * q_du - cross)
    beta2 = d.fp**2 / (_SQRT2 * absdisc) * (d.kappa * q_du + cross)

    h1, h2, hnorm, _ = mean_curvature(s, u, v)
    return InvariantRecord(
        gamma1=gamma1, gamma2=-gamma1,
        nu1=nu, nu2=nu, lam=lam, mu=mu,
        beta1=beta1, beta2=beta2,
        K=-d.fpp / d.f,
        k=-(d.kappa_m**2) * d.kappa**2 / d.f**2,
        varkappa=0.0,
        H_n1=h1, H_n2=h2, H_norm=hnorm,
        epsilon=eps,
    )


def normal_connection_curvature(s: MeridianSurface, u: float, v: float) -> float:
    """varkappa = (nu1 - nu2) mu; identically zero here (flat normal connection)."""
    rec = eight_invariants(s, u, v)
    return (rec.nu1 - rec.nu2) * rec.mu


# --- finite-difference oracle -------------------------------------------------

def _check_stencil(s: MeridianSurface, u: float, v: float, h: float):
    u0, u1 = s.profile.domain
    v0, v1 = s.directrix.domain
    if not (u0 <= u - 2 * h and u + 2 * h <= u1 and v0 <= v - 2 * h and v + 2 * h <= v1):
        raise DomainError(
            f"oracle stencil of radius 2h = {2 * h} leaves the domain at ({u}, {v})")


def _d_du(field, u, v, h):
    return (field(u + h, v) - field(u - h, v)) / (2.0 * h)


def _d_dv(field, u, v, h):
    return (field(u, v + h) - field(u, v - h)) / (2.0 * h)


def _directional(field, u, v, h, a, c) -> Vec4:
    """Ambient derivative of a Vec4 field along a*d/du + c*d/dv."""
    out = _d_du(field, u, v, h) * a if a != 0.0 else Vec4(0, 0, 0, 0)
    if c != 0.0:
        out = out + _d_dv(field, u, v, h) * c
    return out


def oracle_invariants(s: MeridianSurface, u: float, v: float,
                      h: float = DEFAULT_ORACLE_STEP) -> InvariantRecord:
    """Recompute the eight invariants from their defining inner products,
    differencing the geometric frame fields x, y, b, l. O(h^2) accurate and
    fully independent of the closed forms."""
    _check_stencil(s, u, v, h)
    _require_general(s, u, v)

    def x_field(uu, vv):
        return tangent_frame(s, uu, vv).xdir

    def y_field(uu, vv):
        return tangent_frame(s, uu, vv).ydir

    def b_field(uu, vv):
        return normal_frame(s, uu, vv).b

    def l_field(uu, vv):
        return normal_frame(s, uu, vv).l

    d = point_data(s, u, v)
    # x = (X + Y)/sqrt2 with X = z_u, Y = z_v/(f sqrt(D)):
    # coordinate-direction coefficients of x and y at the centre point.
    a_x, c_x = 1.0 / _SQRT2, 1.0 / (_SQRT2 * d.f * math.sqrt(d.D))
    a_y, c_y = -a_x, c_x

    frame = normal_frame(s, u, v)
    tf = tangent_frame(s, u, v)
    b, l = frame.b, frame.l
    x, y = tf.xdir, tf.ydir

    Dx_x = _directional(x_field, u, v, h, a_x, c_x)
    Dy_y = _directional(y_field, u, v, h, a_y, c_y)
    Dx_y = _directional(y_field, u, v, h, a_x, c_x)
    Dx_b = _directional(b_field, u, v, h, a_x, c_x)
    Dy_b = _directional(b_field, u, v, h, a_y, c_y)

    nu1 = minkowski_dot(Dx_x, b)
    nu2 = minkowski_dot(Dy_y, b)
    lam = minkowski_dot(Dx_y, b)
    mu = minkowski_dot(Dx_y, l)
    gamma1 = minkowski_dot(Dx_x, y)
    gamma2 = minkowski_dot(Dy_y, x)
    beta1 = minkowski_dot(Dx_b, l)
    beta2 = minkowski_dot(Dy_b, l)

    eps = frame.epsilon
    # derived scalars via their defining relations (not the closed forms)
    k = -4.0 * nu1 * nu2 * mu**2
    varkappa = (nu1 - nu2) * mu
    K = eps * (nu1 * nu2 - lam**2 + mu**2)
    Hvec = oracle_mean_curvature_vector(s, u, v, h)
    hh = minkowski_dot(Hvec, Hvec)
    n1, n2 = normal_pair(s, u, v)
    return InvariantRecord(
        gamma1=gamma1, gamma2=gamma2, nu1=nu1, nu2=nu2,
        lam=lam, mu=mu, beta1=beta1, beta2=beta2,
        K=K, k=k, varkappa=varkappa,
        H_n1=minkowski_dot(Hvec, n1),
        H_n2=-minkowski_dot(Hvec, n2),   # <n2,n2> = -1
        H_norm=math.sqrt(abs(hh)),
        epsilon=eps,
    )


def oracle_mean_curvature_vector(s: MeridianSurface, u: float, v: float,
                                 h: float = DEFAULT_ORACLE_STEP) -> Vec4:
    """Numerical H = (1/2) (D_x x + D_y y)^perp, projecting off the tangent
    plane with the orthonormal pair (X, Y)."""
    _check_stencil(s, u, v, h)

    def x_field(uu, vv):
        return tangent_frame(s, uu, vv).xdir

    def y_field(uu, vv):
        return tangent_frame(s, uu, vv).ydir

    d = point_data(s, u, v)
    a_x, c_x = 1.0 / _SQRT2, 1.0 / (_SQRT2 * d.f * math.sqrt(d.D))
    Dx_x = _directional(x_field, u, v, h, a_x, c_x)
    Dy_y = _directional(y_field, u, v, h, -a_x, c_x)
    W = (Dx_x + Dy_y) * 0.5
    tf = tangent_frame(s, u, v)
    W = W - tf.X * minkowski_dot(W, tf.X) - tf.Y * minkowski_dot(W, tf.Y)
    return W


def oracle_frame_derivatives(s: MeridianSurface, u: float, v: float,
                             h: float = DEFAULT_ORACLE_STEP) -> dict:
    """Ambient derivatives of the frame fields X, Y, n1, n2 along X and Y,
    as Vec4s, keyed 'XX', 'XY', 'YX', 'YY', 'Xn1', 'Yn1', 'Xn2', 'Yn2'."""
    _check_stencil(s, u, v, h)

    def X_field(uu, vv):
        return tangent_frame(s, uu, vv).X

    def Y_field(uu, vv):
        return tangent_frame(s, uu, vv).Y

    def n1_field(uu, vv):
        return normal_pair(s, uu, vv)[0]

    def n2_field(uu, vv):
        return normal_pair(s, uu, vv)[1]

    d = point_data(s, u, v)
    cY = 1.0 / (d.f * math.sqrt(d.D))   # Y = cY * z_v
    out = {}
    for name, field in (("X", X_field), ("Y", Y_field),
                        ("n1", n1_field), ("n2", n2_field)):
        out["X" + name] = _directional(field, u, v, h, 1.0, 0.0)
        out["Y" + name] = _directional(field, u, v, h, 0.0, cY)
    return out


def oracle_second_fundamental(s: MeridianSurface, u: float, v: float,
                              h: float = DEFAULT_ORACLE_STEP) -> dict:
    """Normal components <D_W1 W2, n_i> of the second fundamental form, keyed
    ('XX','n1'), ('XX','n2'), ('XY','n1'), ('XY','n2'), ('YY','n1'),
    ('YY','n2')."""
    derivs = oracle_frame_derivatives(s, u, v, h)
    n1, n2 = normal_pair(s, u, v)
    out = {}
    for pair, vec in (("XX", derivs["XX"]), ("XY", derivs["XY"]),
                      ("YY", derivs["YY"])):
        out[(pair, "n1")] = minkowski_dot(vec, n1)
        out[(pair, "n2")] = minkowski_dot(vec, n2)
    return out
