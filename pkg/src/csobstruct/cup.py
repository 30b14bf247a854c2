"""Alexander-Whitney cup products and the Poincare duality pairing.

The cochain-level product is the front-face/back-face formula; it is
non-commutative but satisfies the Leibniz rule exactly, which is all the
class-level statements need.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complex_core import Cochain, INT, REAL, fundamental_cycle
from .errors import Error
from .homology import basis

NONDEGENERACY_RTOL = 1e-8


def cup(complex_, alpha, beta):
    """Alexander-Whitney product: (a u b)(v0..vk+l) = a(front) * b(back)."""
    k, l = alpha.degree, beta.degree
    if k + l > complex_.dim:
        raise Error("DEGREE_OVERFLOW",
                    f"cup degree {k}+{l} exceeds dim {complex_.dim}")
    ring = INT if alpha.ring == INT and beta.ring == INT else REAL
    a = alpha.values if alpha.ring == INT else np.asarray(alpha.values)
    b = beta.values if beta.ring == INT else np.asarray(beta.values)
    idx_k = complex_._index[k]
    idx_l = complex_._index[l]
    out = []
    for tau in complex_.simplices[k + l]:
        front = tau[:k + 1]
        back = tau[k:]
        out.append(a[idx_k[front]] * b[idx_l[back]])
    if ring == INT:
        return Cochain(k + l, INT, np.array(out, dtype=object))
    return Cochain(k + l, REAL, np.asarray(out, dtype=float))


def pair_with_fundamental(complex_, omega):
    """Evaluate a top cochain against the fundamental cycle."""
    if omega.degree != complex_.dim:
        raise Error("DEGREE_OUT_OF_RANGE",
                    f"pairing needs degree {complex_.dim}, got {omega.degree}")
    z = fundamental_cycle(complex_)
    if omega.ring == INT:
        return int(sum(int(e) * int(v)
                       for e, v in zip(z.values, omega.values)))
    signs = np.asarray([float(e) for e in z.values])
    return float(signs @ omega.values)


@dataclass(frozen=True)
class PairingMatrix:
    """P[i][j] = <w_i u e_j, [X]> over the H^k and H^{n-k} bases."""

    degree: int
    codegree: int
    matrix: np.ndarray
    nondegenerate: bool


def poincare_pairing_matrix(complex_, k):
    """Cup pairing H^k x H^{n-k} -> R evaluated on the fundamental cycle."""
    n = complex_.dim
    bk = basis(complex_, k)
    bnk = basis(complex_, n - k)
    mat = np.zeros((bk.size, bnk.size))
    for i, wi in enumerate(bk.representative_cochains()):
        for j, wj in enumerate(bnk.representative_cochains()):
            mat[i, j] = pair_with_fundamental(complex_, cup(complex_, wi, wj))
    if mat.size == 0:
        nondeg = bk.size == bnk.size  # 0x0 is vacuously nondegenerate
    else:
        sv = np.linalg.svd(mat, compute_uv=False)
        nondeg = (mat.shape[0] == mat.shape[1]
                  and sv[-1] > NONDEGENERACY_RTOL * sv[0])
    return PairingMatrix(k, n - k, mat, bool(nondeg))
