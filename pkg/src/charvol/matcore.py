"""Dense matrix layer for SL(N, C) and its Lie algebra, 2 <= N <= 6.

Conventions used throughout the package:

* the invariant bilinear form is B(X, Y) = -tr(XY), complex bilinear
  (no conjugation), positive definite on su(N);
* the fundamental characters sigma_1, ..., sigma_{N-1} of A are the
  elementary symmetric functions of the spectrum, so

      det(z Id - A) = z^N - sigma_1 z^{N-1} + sigma_2 z^{N-2} - ...
                      + (-1)^N sigma_N,

  with sigma_N = det A = 1 on the group;
* an element is regular when its minimal polynomial has degree N,
  equivalently every eigenvalue has a one dimensional eigenspace.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import BudgetExceeded, InvariantViolation, SizeMismatch

MIN_SIZE = 2
MAX_SIZE = 6
DET_TOL = 1e-10
TRACE_TOL = 1e-10
REGULAR_TOL = 1e-6


def check_size(n: int) -> int:
    if not MIN_SIZE <= int(n) <= MAX_SIZE:
        raise SizeMismatch(f"matrix size {n} outside supported range "
                           f"[{MIN_SIZE}, {MAX_SIZE}]")
    return int(n)


def as_square(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise SizeMismatch(f"expected a square matrix, got shape {a.shape}")
    check_size(a.shape[0])
    if not np.all(np.isfinite(a)):
        raise InvariantViolation("matrix has non-finite entries")
    return a


def check_group_element(a, tol: float = DET_TOL) -> np.ndarray:
    """Validate a complex matrix as an element of SL(N, C)."""
    a = as_square(a)
    det = np.linalg.det(a)
    if abs(det - 1.0) > tol:
        raise InvariantViolation(f"|det - 1| = {abs(det - 1.0):.3e} > {tol:g}")
    return a


def check_lie_element(a, tol: float = TRACE_TOL) -> np.ndarray:
    """Validate a complex matrix as an element of sl(N, C)."""
    a = as_square(a)
    scale = max(1.0, float(np.abs(a).max()))
    if abs(np.trace(a)) > tol * scale:
        raise InvariantViolation(f"|trace| = {abs(np.trace(a)):.3e} exceeds "
                                 f"{tol:g} at scale {scale:g}")
    return a


def bilinear_form(x, y) -> complex:
    """B(X, Y) = -tr(XY), the invariant complex-bilinear pairing."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if x.shape != y.shape:
        raise SizeMismatch(f"shape mismatch {x.shape} vs {y.shape}")
    return complex(-np.trace(x @ y))


@lru_cache(maxsize=None)
def standard_frame(n: int) -> tuple[np.ndarray, ...]:
    """B-orthonormal basis of sl(n, C), fixed deterministic order.

    Diagonal part first: i * D_m with D_m real diagonal traceless,
    orthonormal for tr(D^2); then for each pair i < j in lex order the
    two elements (E_ij - E_ji)/sqrt(2) and i(E_ij + E_ji)/sqrt(2).
    These span su(n) over R, hence sl(n, C) over C, and satisfy
    B(m_a, m_b) = delta_ab.
    """
    check_size(n)
    frame = []
    for m in range(1, n):
        d = np.zeros((n, n), dtype=complex)
        norm = np.sqrt(m * (m + 1))
        for l in range(m):
            d[l, l] = 1.0 / norm
        d[m, m] = -m / norm
        frame.append(1j * d)
    s = 1.0 / np.sqrt(2.0)
    for i in range(n):
        for j in range(i + 1, n):
            anti = np.zeros((n, n), dtype=complex)
            anti[i, j] = s
            anti[j, i] = -s
            frame.append(anti)
            sym = np.zeros((n, n), dtype=complex)
            sym[i, j] = 1j * s
            sym[j, i] = 1j * s
            frame.append(sym)
    out = tuple(m.copy() for m in frame)
    for m in out:
        m.setflags(write=False)
    return out


def frame_coords(frame, x) -> np.ndarray:
    """Coordinates of x in a B-orthonormal frame: c_a = B(m_a, x)."""
    return np.array([bilinear_form(m, x) for m in frame])


def frame_from_coords(frame, coords) -> np.ndarray:
    coords = np.asarray(coords, dtype=complex)
    if len(coords) != len(frame):
        raise SizeMismatch(f"{len(coords)} coordinates for a frame of "
                           f"size {len(frame)}")
    return sum(c * m for c, m in zip(coords, frame))


def char_poly_data(a):
    """Characteristic polynomial data of A by the Faddeev-LeVerrier recursion.

    Returns (sigma, adj) where sigma[j] holds sigma_{j+1} for
    j = 0..N-1 (so sigma[-1] = det A) and adj[j] is the coefficient
    matrix such that the directional derivative of sigma_{j+1} at A in
    a matrix direction X is (-1)^j tr(adj[j] X)  (Jacobi's formula
    applied to det(z Id - A)).
    """
    a = as_square(a)
    n = a.shape[0]
    sigma = np.zeros(n, dtype=complex)
    adj = []
    b = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        adj.append(b)
        m = a @ b
        c = -np.trace(m) / k
        sigma[k - 1] = (-1.0) ** k * c
        b = m + c * np.eye(n, dtype=complex)
    return sigma, adj


def sigma(a) -> np.ndarray:
    """Fundamental characters sigma_1..sigma_{N-1} of A.

    sigma_1 = tr A and, when det A = 1, sigma_{N-1} = tr(A^{-1}).
    """
    full, _ = char_poly_data(a)
    return full[:-1].copy()


def char_derivative(a, x) -> np.ndarray:
    """Directional derivatives d sigma_j (j = 1..N-1) at A.

    x is a matrix direction for the path A + t x; for a Weil cocycle
    value v (path (Id + t v) A) pass x = v @ A.
    """
    a = as_square(a)
    x = np.asarray(x, dtype=complex)
    if x.shape != a.shape:
        raise SizeMismatch(f"direction shape {x.shape} vs matrix {a.shape}")
    _, adj = char_poly_data(a)
    n = a.shape[0]
    out = np.zeros(n - 1, dtype=complex)
    for j in range(n - 1):
        out[j] = (-1.0) ** j * np.trace(adj[j] @ x)
    return out


def sigma_derivative_cocycle(a, v) -> np.ndarray:
    """d sigma_j along the deformation (Id + t v) A of A."""
    a = as_square(a)
    v = np.asarray(v, dtype=complex)
    return char_derivative(a, v @ a)


def is_regular(a, tol: float = REGULAR_TOL) -> bool:
    """True iff every eigenvalue cluster of A has a 1-dim eigenspace.

    Eigenvalues within tol of each other are merged into one cluster
    (transitive closure), so a diagonalizable near-double eigenvalue
    counts as non-regular at that tolerance.
    """
    a = as_square(a)
    n = a.shape[0]
    eig = np.linalg.eigvals(a)
    unassigned = list(range(n))
    clusters = []
    while unassigned:
        stack = [unassigned.pop()]
        cluster = []
        while stack:
            i = stack.pop()
            cluster.append(i)
            close = [j for j in unassigned if abs(eig[i] - eig[j]) <= tol]
            for j in close:
                unassigned.remove(j)
            stack.extend(close)
        clusters.append(cluster)
    cutoff = max(5.0 * tol, 1e3 * np.finfo(float).eps * max(1.0, float(np.abs(a).max())))
    for cluster in clusters:
        center = np.mean(eig[cluster])
        s = np.linalg.svd(a - center * np.eye(n), compute_uv=False)
        geometric = int(np.sum(s <= cutoff))
        if geometric != 1:
            return False
    return True


def companion_section(sigmas) -> np.ndarray:
    """Companion matrix with characteristic coefficients sigma_1..sigma_{N-1}.

    Sub-diagonal of ones, last column read off the characteristic
    polynomial z^N - sigma_1 z^{N-1} + ... + (-1)^N; det = 1 by
    construction and the result is always regular (its minimal and
    characteristic polynomials coincide).
    """
    sigmas = np.asarray(sigmas, dtype=complex).ravel()
    n = check_size(len(sigmas) + 1)
    full = np.concatenate([sigmas, [1.0 + 0j]])
    c = np.zeros((n, n), dtype=complex)
    for i in range(1, n):
        c[i, i - 1] = 1.0
    for i in range(n):
        # coefficient of z^i in the characteristic polynomial is
        # (-1)^(N-i) sigma_{N-i}; the companion column negates it.
        c[i, n - 1] = -((-1.0) ** (n - i)) * full[n - i - 1]
    return c


def adjoint_matrix(a, frame=None) -> np.ndarray:
    """Matrix of Ad_A on sl(N, C) in a B-orthonormal frame.

    Column j holds the frame coordinates of A m_j A^{-1}.  Since Ad
    preserves B and the frame is B-orthonormal, M^T M = Id for the
    complex-bilinear transpose and det M = 1.
    """
    a = as_square(a)
    n = a.shape[0]
    if frame is None:
        frame = standard_frame(n)
    inv = np.linalg.inv(a)
    d = len(frame)
    m = np.zeros((d, d), dtype=complex)
    for j, mj in enumerate(frame):
        conj = a @ mj @ inv
        m[:, j] = frame_coords(frame, conj)
    return m


def draw_group_element(rng: np.random.Generator, n: int) -> np.ndarray:
    """One SL(N, C) element from the box sampler attached to rng.

    Entries uniform in [-1, 1] + i[-1, 1]; draws with |det| < 0.01 are
    rejected, the rest are divided by the principal N-th root of det.
    """
    check_size(n)
    for _ in range(1000):
        raw = rng.uniform(-1.0, 1.0, (n, n)) + 1j * rng.uniform(-1.0, 1.0, (n, n))
        det = np.linalg.det(raw)
        if abs(det) < 0.01:
            continue
        return raw / det ** (1.0 / n)
    raise BudgetExceeded("1000 draws rejected by the |det| >= 0.01 filter")


def random_group_element(n: int, seed: int) -> np.ndarray:
    """Deterministic SL(N, C) sample for a given seed."""
    return draw_group_element(np.random.default_rng(seed), n)
