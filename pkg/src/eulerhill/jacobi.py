"""Independent Fourier-space oracle: the truncated class operator.

The class led by a0 = k*q + l*p obeys the three-term recursion
R(j) (a_{j+1} - a_{j-1}) = lambda~ a_j with R(j) = p^-2 - |a0 + j*p|^-2.
The temporal eigenvalue of the linearised flow carries the advection
prefactor (p^a0) p^2 / 2 = -k p^2 / 2 on top of this recursion, so the
spectrum returned here is scaled by k p^2 / 2 (the sign is immaterial:
the spectrum is symmetric under lambda -> -lambda).  The scale is fixed
by deriving the class block of the vorticity equation in Fourier space
and is confirmed numerically by the Evans-function and monodromy routes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ClassRangeError, EigenError, OracleMismatchError
from .evans import RootSearchConfig, find_roots
from .lattice import CompanionBasis, Wavevector, class_point, companion_basis, representative

__all__ = ["JacobiTruncation", "jacobi_matrix", "jacobi_spectrum", "cross_validate"]


@dataclass(frozen=True)
class JacobiTruncation:
    p: Wavevector
    k: int
    a0: tuple
    half_width: int
    matrix: np.ndarray  # real, side 2*half_width + 1


def _check_range(p: Wavevector, k: int):
    if not 0 < k < p.p_sq:
        raise ClassRangeError(f"need 0 < k < p^2 = {p.p_sq}, got k = {k}")


def jacobi_matrix(p: Wavevector, k: int, M: int | None = None,
                  q: CompanionBasis | None = None) -> JacobiTruncation:
    """Truncated class recursion on modes a0 + j*p, |j| <= M."""
    _check_range(p, k)
    q = q or companion_basis(p)
    M = M if M is not None else 4 * p.p_sq
    if M < p.p_sq:
        raise ClassRangeError(f"half-width M = {M} below p^2 = {p.p_sq}")
    cp = class_point(p, q, k)
    a0 = representative(p, q, cp)
    jj = np.arange(-M, M + 1)
    norms = (a0[0] + jj * p.p1) ** 2 + (a0[1] + jj * p.p2) ** 2
    if np.any(norms == 0):
        raise ClassRangeError("class line passes through the origin")
    R = 1.0 / p.p_sq - 1.0 / norms
    L = np.zeros((2 * M + 1, 2 * M + 1))
    i = np.arange(2 * M)
    L[i, i + 1] = R[:-1]
    L[i + 1, i] = -R[1:]
    return JacobiTruncation(p=p, k=k, a0=a0, half_width=M, matrix=L)


def jacobi_spectrum(p: Wavevector, k: int, M: int | None = None,
                    tol: float = 1e-6, residual_tol: float = 1e-8,
                    q: CompanionBasis | None = None) -> np.ndarray:
    """Temporal eigenvalues of the truncated class operator, |Re| > tol.

    Eigenpairs of the recursion matrix must satisfy the residual contract
    ||L v - lam v|| <= residual_tol ||v||; the returned values carry the
    k p^2 / 2 advection scale.
    """
    trunc = jacobi_matrix(p, k, M, q=q)
    try:
        vals, vecs = np.linalg.eig(trunc.matrix)
    except np.linalg.LinAlgError as exc:
        raise EigenError("dense eigensolver failed") from exc
    scale = 0.5 * k * p.p_sq
    keep = np.abs(vals.real) * scale > tol
    for idx in np.nonzero(keep)[0]:
        v = vecs[:, idx]
        res = np.linalg.norm(trunc.matrix @ v - vals[idx] * v)
        if res > residual_tol * np.linalg.norm(v):
            raise EigenError(f"eigenpair residual {res:.2e} breaks the contract")
    lams = scale * vals[keep]
    return lams[np.lexsort((lams.imag, lams.real))]


def cross_validate(p: Wavevector, k: int, M: int | None = None,
                   cfg: RootSearchConfig | None = None,
                   pair_tol: float = 1e-4) -> dict:
    """Match truncated-operator eigenvalues against Evans roots.

    Each Evans root c of the class (theta(k), d(k)) corresponds to the
    temporal eigenvalue lambda = -i*k*c.  Raises OracleMismatchError when
    counts differ or some eigenvalue has no partner within pair_tol.
    """
    q = companion_basis(p)
    cp = class_point(p, q, k)
    lams_j = list(jacobi_spectrum(p, k, M, q=q))
    rs = find_roots(cp.theta, cp.d, cfg)
    lams_e = []
    for c, m in rs.roots:
        lams_e.extend([-1j * k * c] * m)
    if len(lams_j) != len(lams_e):
        raise OracleMismatchError(
            f"class k={k} of p=({p.p1},{p.p2}): operator gives {len(lams_j)} "
            f"unstable eigenvalues, Evans function gives {len(lams_e)}"
        )
    used = [False] * len(lams_e)
    worst = 0.0
    for lj in lams_j:
        best, best_i = None, None
        for i, le in enumerate(lams_e):
            if used[i]:
                continue
            dist = abs(lj - le)
            if best is None or dist < best:
                best, best_i = dist, i
        if best is None or best > pair_tol:
            raise OracleMismatchError(
                f"eigenvalue {lj} unmatched within {pair_tol} "
                f"(nearest {best})"
            )
        used[best_i] = True
        worst = max(worst, best)
    return {
        "p": (p.p1, p.p2),
        "k": k,
        "count": len(lams_j),
        "lambdas_operator": lams_j,
        "lambdas_evans": lams_e,
        "max_pairing_distance": worst,
    }
