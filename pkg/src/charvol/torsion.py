"""Torsion-side volume forms: rose determinant, circle torsion, nu forms.

The rose volume form is the Reidemeister torsion of the rank-k rose in
geometric bases: on a tuple h of (k-1) dim sl cohomology classes it is
the determinant of the square matrix whose first dim sl columns are the
coboundaries of the frame elements and whose remaining columns are the
stacked coordinates of h.

The circle carries the sign-determined torsion TOR of the two-term
complex sl --(Ad_A - Id)--> sl built from one 0-cell and one 1-cell:

    tor = [v~ b1 : c1] / [b1~ u~ : c0],
    TOR = (-1)^(dim * h0 + dim) * tor     (positively oriented circle),

where b1 is the image of a Hermitian-orthogonal lift b1~, u spans the
kernel, v represents the cokernel, and flipping the orientation
multiplies TOR by (-1)^dim.  The peripheral form is then determined by
nu(^v)^2 = TOR * <^v, ^u> with the duality pairing
<^v, ^u> = det B(v_i, u_j); independently nu is computable as
i^((N-1)(N+2)/2) sqrt(N) det[d sigma_j(v_i)], and the two routes agree
sign included.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

import numpy as np

from .errors import (CohomologyRankError, InvariantViolation, RegularityError,
                     SizeMismatch)
from .matcore import (adjoint_matrix, bilinear_form, char_derivative,
                      check_group_element, check_size, frame_coords,
                      standard_frame)
from .repcoh import (Representation, SurfaceConfig, circle_cohomology,
                     cocycle_combination, cocycle_coords, coboundary,
                     evaluate, extend_cocycle, h1_basis_rose, margin_values)
from .traces import symplectic_eval

KERNEL_TOL = 1e-8


@dataclass
class VolumeFormValue:
    """A scalar form evaluation with a short human-readable context."""
    value: complex
    context: str = ""


@dataclass
class CircleTorsionData:
    """Torsion input/output bundle for one circle holonomy."""
    element: np.ndarray = field(repr=False)
    u_basis: tuple
    v_basis: tuple
    orientation: int
    tor_value: complex
    pairing_value: complex


def rose_volume_eval(rep: Representation, h, frame=None) -> VolumeFormValue:
    """Torsion volume form of the rose on (k-1) dim sl classes.

    Determinant of the kd x kd matrix [delta m_1 .. delta m_d | h~],
    all in stacked frame coordinates; the value only depends on the
    classes of h since coboundary shifts are column operations on the
    first block.
    """
    if frame is None:
        frame = standard_frame(rep.n)
    d = len(frame)
    k = rep.k
    if len(h) != (k - 1) * d:
        raise SizeMismatch(f"rose volume form has arity {(k - 1) * d}, "
                           f"got {len(h)} classes")
    cols = [cocycle_coords(frame, coboundary(rep, mj)) for mj in frame]
    cols.extend(cocycle_coords(frame, coc) for coc in h)
    value = complex(np.linalg.det(np.column_stack(cols)))
    return VolumeFormValue(value=value,
                           context=f"rose rank {k}, SL{rep.n}, "
                                   "coboundary block first")


def _basis_matrix(frame, elements) -> np.ndarray:
    if not elements:
        return np.zeros((len(frame), 0), dtype=complex)
    return np.column_stack([frame_coords(frame, x) for x in elements])


def circle_TOR(a, u_basis, v_basis, orientation: int = 1,
               frame=None, tol: float = KERNEL_TOL) -> complex:
    """Sign-determined torsion of the circle with holonomy A.

    u_basis must span ker(Ad_A - Id), v_basis must represent a basis of
    the cokernel; lifts of the image block are chosen orthogonal to the
    kernel.  Includes the cell-counting sign and the trivial-coefficient
    sign raised to dim sl; orientation=-1 multiplies by (-1)^dim sl.
    """
    a = check_group_element(a)
    if orientation not in (1, -1):
        raise SizeMismatch("orientation must be +1 or -1")
    if frame is None:
        frame = standard_frame(a.shape[0])
    d = len(frame)
    l = adjoint_matrix(a, frame) - np.eye(d, dtype=complex)
    u_svd, s, vh = np.linalg.svd(l)
    cutoff = tol * max(float(s[0]), 1.0)
    h = int(np.sum(s <= cutoff))
    if len(u_basis) != h or len(v_basis) != h:
        raise CohomologyRankError(
            f"kernel dimension {h}, got {len(u_basis)} u / {len(v_basis)} v "
            "vectors")
    u_mat = _basis_matrix(frame, u_basis)
    if h:
        resid = float(np.linalg.norm(l @ u_mat))
        if resid > tol * max(1.0, float(np.linalg.norm(u_mat))):
            raise InvariantViolation(
                f"u_basis not Ad-invariant (residual {resid:.3e})")
        su = np.linalg.svd(u_mat, compute_uv=False)
        if su[-1] <= tol * max(float(su[0]), 1.0):
            raise CohomologyRankError("u_basis is linearly degenerate")
    v_mat = _basis_matrix(frame, v_basis)
    comp = u_svd[:, d - h:]
    if h:
        sv = np.linalg.svd(comp.conj().T @ v_mat, compute_uv=False)
        if sv[-1] <= tol * max(float(sv[0]), 1.0):
            raise CohomologyRankError(
                "v_basis classes do not span the cokernel")
    b_lift = vh[:d - h, :].conj().T  # Hermitian-orthogonal to the kernel
    b_image = l @ b_lift
    num = complex(np.linalg.det(np.column_stack([v_mat, b_image])))
    den = complex(np.linalg.det(np.column_stack([b_lift, u_mat])))
    tor = num / den
    sign = (-1.0) ** ((d * h + d) % 2)
    if orientation == -1:
        sign *= (-1.0) ** d
    return complex(sign * tor)


def circle_pairing(v_basis, u_basis) -> complex:
    """Duality pairing det[B(v_i, u_j)] between H^1 and H^0 of the circle."""
    if len(v_basis) != len(u_basis):
        raise SizeMismatch("pairing needs equally long bases")
    mat = np.array([[bilinear_form(v, u) for u in u_basis] for v in v_basis])
    if mat.size == 0:
        return 1.0 + 0j
    return complex(np.linalg.det(mat))


def circle_torsion_data(a, orientation: int = 1,
                        frame=None) -> CircleTorsionData:
    """Bundle TOR and the duality pairing for A with internally chosen bases."""
    a = check_group_element(a)
    h0, h1 = circle_cohomology(a, frame=frame)
    tor = circle_TOR(a, h0, h1, orientation=orientation, frame=frame)
    return CircleTorsionData(element=a, u_basis=tuple(h0), v_basis=tuple(h1),
                             orientation=orientation, tor_value=tor,
                             pairing_value=circle_pairing(h1, h0))


def nu_squared_via_torsion(a, v_basis, orientation: int = 1,
                           frame=None) -> complex:
    """nu(^v)^2 = TOR * <^v, ^u>, independent of the kernel basis u."""
    a = check_group_element(a)
    h0, _ = circle_cohomology(a, frame=frame)
    tor = circle_TOR(a, h0, v_basis, orientation=orientation, frame=frame)
    return complex(tor * circle_pairing(v_basis, h0))


def _i_power(e: int) -> complex:
    return (1, 1j, -1, -1j)[e % 4]


def nu_prefactor(n: int) -> complex:
    """i^((N-1)(N+2)/2) sqrt(N), the character-coordinate nu scale."""
    check_size(n)
    return _i_power(((n - 1) * (n + 2) // 2)) * np.sqrt(float(n))


def nu_via_sigma(a, v_basis, frame=None) -> complex:
    """Peripheral form via character derivatives:
    nu(^v) = i^((N-1)(N+2)/2) sqrt(N) det[d sigma_j(v_i)]."""
    a = check_group_element(a)
    n = a.shape[0]
    if len(v_basis) != n - 1:
        raise SizeMismatch(f"need {n - 1} classes for SL{n}, "
                           f"got {len(v_basis)}")
    mat = np.array([char_derivative(a, v @ a) for v in v_basis])
    return complex(nu_prefactor(n) * np.linalg.det(mat))


def su_nu_check(thetas) -> tuple[complex, complex]:
    """Two routes to nu on the unitary diagonal diag(e^{i theta}).

    Route A: nu_via_sigma along the angle coordinate fields.
    Route B: 2^(N(N-1)/2) sqrt(N) prod_{i<j} sin((theta_i - theta_j)/2).
    The two agree up to sign.
    """
    thetas = np.asarray(thetas, dtype=float).ravel()
    n = check_size(len(thetas))
    if abs(np.exp(1j * thetas.sum()) - 1.0) > 1e-10:
        raise InvariantViolation("angles must sum to 0 mod 2 pi")
    a = np.diag(np.exp(1j * thetas))
    v_basis = []
    for l in range(n - 1):
        v = np.zeros((n, n), dtype=complex)
        v[l, l] = 1j
        v[n - 1, n - 1] = -1j
        v_basis.append(v)
    route_a = nu_via_sigma(a, v_basis)
    route_b = (2.0 ** (n * (n - 1) // 2) * np.sqrt(float(n))
               * prod(np.sin((thetas[i] - thetas[j]) / 2.0)
                      for i in range(n) for j in range(i + 1, n)))
    return route_a, complex(route_b)


def vandermonde_newton_values(u) -> tuple[complex, complex]:
    """Jacobian of (sum u, sigma_1, ..., sigma_{N-1}) vs the Vandermonde
    product prod_{i>j} (e^{u_i} - e^{u_j}) at a point u in C^N."""
    u = np.asarray(u, dtype=complex).ravel()
    n = check_size(len(u))
    ev = np.exp(u)
    a = np.diag(ev)
    mat = np.zeros((n, n), dtype=complex)
    mat[0, :] = 1.0
    for l in range(n):
        x = np.zeros((n, n), dtype=complex)
        x[l, l] = ev[l]
        mat[1:, l] = char_derivative(a, x)
    lhs = complex(np.linalg.det(mat))
    rhs = complex(prod(ev[i] - ev[j]
                       for i in range(n) for j in range(i)))
    return lhs, rhs


def vandermonde_newton_check(u, tol: float = 1e-8) -> bool:
    """|Jacobian| equals |Vandermonde product| (both -> 0 together)."""
    lhs, rhs = vandermonde_newton_values(u)
    scale = max(abs(lhs), abs(rhs))
    if scale < tol:
        return True
    return abs(abs(lhs) - abs(rhs)) <= tol * scale


def _pfaffian(w: np.ndarray) -> complex:
    m = w.shape[0]
    if m % 2:
        return 0j
    if m == 0:
        return 1.0 + 0j
    total = 0j
    for j in range(1, m):
        keep = [i for i in range(m) if i not in (0, j)]
        total += ((-1.0) ** (j + 1)) * w[0, j] \
            * _pfaffian(w[np.ix_(keep, keep)])
    return complex(total)


_WITTEN_OMEGA = {
    ("s03", 2): None,
    ("s11", 2): "s11_sl2",
    ("s04", 2): "s04_sl2",
    ("s03_sl3", 3): "s03rel_sl3",
}

_WITTEN_MARGINS = {
    "s11": ("s11_chart",),
    "s04": ("s04_chart",),
    "s03": (),
    "s03_sl3": ("sl3_comm_12",),
}


def witten_check(rep: Representation, cfg: SurfaceConfig, frame=None,
                 margin: float = 1e-8) -> dict:
    """Factorization check: rose volume vs symplectic power times nu's.

    Builds an adapted H^1 basis (kernel of the boundary restriction
    first, then lifts that are unimodular against each boundary circle's
    chosen H^1 basis) and compares

        LHS = rose volume on the adapted tuple,
        RHS = Pf[omega(rel_i, rel_j)] * prod_i nu_i(chosen basis),

    with omega taken from the chart registry (an independent route).
    Returns a dict with lhs, rhs, ratio, and measured chart margins.
    """
    key = (cfg.kind, rep.n)
    if key not in _WITTEN_OMEGA:
        raise SizeMismatch(f"no registered factorization for surface "
                           f"{cfg.kind!r} with SL{rep.n}")
    if rep.k != cfg.k:
        raise SizeMismatch(f"surface {cfg.kind!r} needs rank {cfg.k}")
    omega_key = _WITTEN_OMEGA[key]
    if frame is None:
        frame = standard_frame(rep.n)
    d = len(frame)
    r = rep.n - 1
    b = cfg.boundary_count
    basis = h1_basis_rose(rep, frame=frame)
    classes = basis.classes
    res = np.zeros((b * r, len(classes)), dtype=complex)
    circle_data = []
    for i, w in enumerate(cfg.peripheral_words):
        aw = evaluate(rep, w)
        _, h1 = circle_cohomology(aw, frame=frame)
        if len(h1) != r:
            raise RegularityError(
                f"peripheral word {w} is not regular (circle H^1 of "
                f"dimension {len(h1)})")
        vmat = _basis_matrix(frame, h1)
        circle_data.append((aw, h1))
        for c, cls in enumerate(classes):
            val = extend_cocycle(rep, cls, w)
            res[i * r:(i + 1) * r, c] = vmat.conj().T @ frame_coords(frame,
                                                                     val)
    u_svd, s, vh = np.linalg.svd(res, full_matrices=True)
    rank = int(np.sum(s > max(float(s[0]), 1.0) * 1e-8))
    expected_rel = -d * cfg.euler - b * r
    if rank != b * r or len(classes) - rank != expected_rel:
        raise CohomologyRankError(
            f"boundary restriction rank {rank}, expected {b * r}")
    rel = [cocycle_combination(classes, vh[i, :].conj())
           for i in range(rank, len(classes))]
    lift_coeffs = np.linalg.pinv(res)
    lifts = [cocycle_combination(classes, lift_coeffs[:, row])
             for row in range(b * r)]
    lhs = rose_volume_eval(rep, rel + lifts, frame=frame).value
    if omega_key is None:
        if rel:
            raise CohomologyRankError("nonzero relative block without a "
                                      "registered symplectic chart")
        pf = 1.0 + 0j
    else:
        w_mat = np.array([[symplectic_eval(rep, omega_key, hi, hj,
                                           margin=margin)
                           for hj in rel] for hi in rel])
        pf = _pfaffian(w_mat)
    nus = [nu_via_sigma(aw, h1, frame=frame) for aw, h1 in circle_data]
    rhs = complex(pf * prod(nus))
    ratio = lhs / rhs
    return {
        "lhs": complex(lhs),
        "rhs": rhs,
        "ratio": complex(ratio),
        "margins": margin_values(rep, _WITTEN_MARGINS[cfg.kind]),
    }
