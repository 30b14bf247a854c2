"""Discrete U(1) bundles, connections, curvature, flatness, CS action.

The bundle is an integer 2-cocycle c (the Chern cocycle); connections are
real 1-cochains on the same base, and curvature follows the affine model
F = dA + 2*pi*c, so the flatness equation dA = -2*pi*c is linear and the
equivalence "flat connection exists iff the real Chern class vanishes" is
exact linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complex_core import Cochain, INT, REAL, apply_d, fundamental_cycle
from .cup import cup, pair_with_fundamental
from .errors import Error
from .homology import basis

FLAT_RTOL = 1e-9


@dataclass(frozen=True)
class U1Bundle:
    """Principal U(1) bundle: base complex plus integer Chern 2-cocycle."""

    base: object
    chern_cocycle: Cochain


@dataclass(frozen=True)
class Connection:
    """Real 1-cochain section of the discrete bundle of connections."""

    values: np.ndarray

    def as_cochain(self):
        return Cochain(1, REAL, self.values)


@dataclass(frozen=True)
class FlatResult:
    connection: Connection
    residual: float
    flat: bool
    obstruction_coords: np.ndarray
    tolerance: float


def make_bundle(complex_, c):
    """Validate the Chern cocycle (degree 2, integer, exactly closed)."""
    if c.degree != 2 or c.ring != INT:
        raise Error("NOT_A_COCYCLE", "Chern cocycle must be an integer 2-cochain")
    if len(c.values) != complex_.n_simplices(2):
        raise Error("BASE_MISMATCH", "cocycle length does not match complex")
    if complex_.dim > 2:
        dc = apply_d(complex_, c)
        if any(int(v) != 0 for v in dc.values):
            raise Error("NOT_A_COCYCLE", "dc != 0 over Z")
    return U1Bundle(complex_, c)


def _check_connection(bundle, a):
    if len(a.values) != bundle.base.n_simplices(1):
        raise Error("BASE_MISMATCH", "connection length does not match base")


def curvature(bundle, a):
    """F = dA + 2*pi*c; Bianchi dF = 0 holds automatically."""
    _check_connection(bundle, a)
    da = apply_d(bundle.base, a.as_cochain()).values
    c = np.asarray([float(v) for v in bundle.chern_cocycle.values])
    return Cochain(2, REAL, da + 2.0 * np.pi * c)


def real_chern_class(bundle):
    """Coordinates of [F] = 2*pi*[c] in the real H^2 basis (any A)."""
    c = np.asarray([float(v) for v in bundle.chern_cocycle.values])
    return 2.0 * np.pi * basis(bundle.base, 2).coordinates(c)


def flatten(bundle):
    """Least-squares flat connection dA = -2*pi*c with verdict.

    The residual vanishes (to solver accuracy) exactly when the real
    Chern class does; both are reported so the equivalence can be
    cross-checked.
    """
    base = bundle.base
    d1 = base.coboundary_dense(1)
    c = np.asarray([float(v) for v in bundle.chern_cocycle.values])
    rhs = -2.0 * np.pi * c
    a_star, *_ = np.linalg.lstsq(d1, rhs, rcond=None)
    if not np.all(np.isfinite(a_star)):
        raise Error("SOLVER_FAILURE", "least-squares produced non-finite A")
    conn = Connection(a_star)
    f = curvature(bundle, conn).values
    residual = float(np.max(np.abs(f))) if f.size else 0.0
    scale = 2.0 * np.pi * float(np.max(np.abs(c))) if c.size else 0.0
    tol = FLAT_RTOL * (1.0 + scale)
    return FlatResult(conn, residual, residual <= tol,
                      real_chern_class(bundle), tol)


def gauge_transform(bundle, a, f, m):
    """A' = A + df + 2*pi*m for a real 0-cochain f, integer 1-cocycle m."""
    _check_connection(bundle, a)
    base = bundle.base
    if m.degree != 1 or m.ring != INT:
        raise Error("M_NOT_COCYCLE", "m must be an integer 1-cochain")
    dm = apply_d(base, m)
    if any(int(v) != 0 for v in dm.values):
        raise Error("M_NOT_COCYCLE", "dm != 0 over Z")
    df = apply_d(base, f).values
    mm = np.asarray([float(v) for v in m.values])
    return Connection(a.values + df + 2.0 * np.pi * mm)


# -- Chern-Simons functional (trivialized bundle) ----------------------


def cs_action(complex_, a):
    """<A u dA, [X]> on a closed oriented 3-manifold."""
    if complex_.dim != 3:
        raise Error("DEGREE_OUT_OF_RANGE", "CS action needs a 3-complex")
    da = apply_d(complex_, a.as_cochain())
    return pair_with_fundamental(complex_, cup(complex_, a.as_cochain(), da))


def _cs_quadratic_matrix(complex_):
    """Matrix C with cs_action(A) = A^T C A, assembled per top simplex."""
    cache = complex_.__dict__.get("_cs_matrix")
    if cache is not None:
        return cache
    n1 = complex_.n_simplices(1)
    c_mat = np.zeros((n1, n1))
    z = fundamental_cycle(complex_)
    d1 = complex_.coboundary_dense(1)
    idx1 = complex_._index[1]
    idx2 = complex_._index[2]
    for eps, tau in zip(z.values, complex_.simplices[3]):
        front = idx1[tau[:2]]
        back = idx2[tau[1:]]
        c_mat[front, :] += float(eps) * d1[back, :]
    complex_._cs_matrix = c_mat
    return c_mat


def cs_gradient(complex_, a):
    """Exact gradient of cs_action in the connection entries."""
    if complex_.dim != 3:
        raise Error("DEGREE_OUT_OF_RANGE", "CS gradient needs a 3-complex")
    c_mat = _cs_quadratic_matrix(complex_)
    return Cochain(1, REAL, (c_mat + c_mat.T) @ a.values)


def cs_gradient_fd(complex_, a, step=1e-6):
    """Central finite-difference gradient of cs_action (oracle path)."""
    vals = a.values.astype(float).copy()
    out = np.zeros_like(vals)
    for i in range(len(vals)):
        vals[i] += step
        plus = cs_action(complex_, Connection(vals))
        vals[i] -= 2 * step
        minus = cs_action(complex_, Connection(vals))
        vals[i] += step
        out[i] = (plus - minus) / (2 * step)
    return Cochain(1, REAL, out)
