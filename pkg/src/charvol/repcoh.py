"""Free group representations, Weil cocycles, and twisted cohomology.

Words in the free group F_k are tuples of nonzero integers: letter i
(1-based) is the i-th generator, -i its inverse, so (1, 2, -1, -2) is
the commutator of the first two generators.

Tangent vectors at a representation rho are crossed homomorphisms
(Weil cocycles) u with

    u(gamma mu) = u(gamma) + Ad_{rho(gamma)} u(mu),

stored through their values on the generators.  Coboundaries are the
cocycles gamma -> Ad_{rho(gamma)} a - a for a in sl(N, C); the quotient
is H^1 of the rose with k petals, of dimension (k-1)(N^2-1) whenever
the coboundary map is injective.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (BudgetExceeded, CohomologyRankError, InvariantViolation,
                     SizeMismatch)
from .matcore import (adjoint_matrix, check_group_element, check_lie_element,
                      check_size, draw_group_element, frame_coords,
                      frame_from_coords, is_regular, sigma_derivative_cocycle,
                      standard_frame)

COCYCLE_TOL = 1e-8
RANK_TOL = 1e-10


def as_word(word, k: int | None = None) -> tuple[int, ...]:
    """Validate a word: nonzero integer letters, bounded by k if given."""
    letters = tuple(int(l) for l in word)
    for l in letters:
        if l == 0:
            raise SizeMismatch("word letters must be nonzero integers")
        if k is not None and abs(l) > k:
            raise SizeMismatch(f"letter {l} outside rank-{k} free group")
    return letters


def word_inverse(word) -> tuple[int, ...]:
    return tuple(-l for l in reversed(as_word(word)))


@dataclass(frozen=True)
class SurfaceConfig:
    """A supported surface (or rose) with its frozen peripheral words."""
    kind: str
    k: int
    genus: int | None
    boundary_count: int
    euler: int
    peripheral_words: tuple[tuple[int, ...], ...]


_SURFACES = {
    "s03": SurfaceConfig("s03", 2, 0, 3, -1, ((1,), (2,), (1, 2))),
    "s11": SurfaceConfig("s11", 2, 1, 1, -1, ((1, 2, -1, -2),)),
    "s04": SurfaceConfig("s04", 3, 0, 4, -2, ((1,), (2,), (3,), (1, 2, 3))),
}
_SURFACES["s03_sl3"] = SurfaceConfig("s03_sl3", 2, 0, 3, -1,
                                     _SURFACES["s03"].peripheral_words)
_SURFACES["s04_sl3"] = SurfaceConfig("s04_sl3", 3, 0, 4, -2,
                                     _SURFACES["s04"].peripheral_words)


def surface_config(kind: str, k: int | None = None) -> SurfaceConfig:
    """Look up a surface by kind; 'rose' additionally needs the rank k."""
    kind = kind.lower()
    if kind == "rose":
        if k is None or k < 2:
            raise SizeMismatch("rose needs a rank k >= 2")
        return SurfaceConfig("rose", int(k), None, 0, 1 - int(k), ())
    try:
        return _SURFACES[kind]
    except KeyError:
        raise SizeMismatch(f"unknown surface kind {kind!r}") from None


@dataclass
class Representation:
    """A k-tuple of SL(N, C) matrices, images of the free generators."""
    generators: tuple

    def __post_init__(self):
        gens = tuple(check_group_element(g) for g in self.generators)
        if not gens:
            raise SizeMismatch("need at least one generator")
        n = gens[0].shape[0]
        if any(g.shape[0] != n for g in gens):
            raise SizeMismatch("generators of mixed size")
        self.generators = gens
        self.inverses = tuple(np.linalg.inv(g) for g in gens)

    @property
    def n(self) -> int:
        return self.generators[0].shape[0]

    @property
    def k(self) -> int:
        return len(self.generators)

    def letter(self, l: int) -> np.ndarray:
        """Image of a single signed letter."""
        if l > 0:
            return self.generators[l - 1]
        return self.inverses[-l - 1]


def evaluate(rep: Representation, word) -> np.ndarray:
    """rho(w): ordered product of generator images."""
    word = as_word(word, rep.k)
    out = np.eye(rep.n, dtype=complex)
    for l in word:
        out = out @ rep.letter(l)
    return out


@dataclass
class Cocycle:
    """A Weil cocycle through its values on the generators."""
    values: tuple

    def __post_init__(self):
        self.values = tuple(check_lie_element(v, tol=COCYCLE_TOL)
                            for v in self.values)


def zero_cocycle(rep: Representation) -> Cocycle:
    n = rep.n
    return Cocycle(tuple(np.zeros((n, n), dtype=complex)
                         for _ in range(rep.k)))


def cocycle_combination(cocycles, coeffs) -> Cocycle:
    """Linear combination of cocycles with complex coefficients."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if len(coeffs) != len(cocycles) or not cocycles:
        raise SizeMismatch("coefficient/cocycle count mismatch")
    k = len(cocycles[0].values)
    n = cocycles[0].values[0].shape[0]
    vals = [np.zeros((n, n), dtype=complex) for _ in range(k)]
    for c, coc in zip(coeffs, cocycles):
        for i, v in enumerate(coc.values):
            vals[i] = vals[i] + c * v
    return Cocycle(tuple(vals))


def extend_cocycle(rep: Representation, coc: Cocycle, word) -> np.ndarray:
    """Value u(w) of a cocycle on an arbitrary word.

    Uses the crossed rule left to right; on an inverse letter
    u(gamma^-1) = -Ad_{rho(gamma)^-1} u(gamma).
    """
    word = as_word(word, rep.k)
    if len(coc.values) != rep.k:
        raise SizeMismatch("cocycle rank does not match representation")
    n = rep.n
    val = np.zeros((n, n), dtype=complex)
    g = np.eye(n, dtype=complex)
    g_inv = np.eye(n, dtype=complex)
    for l in word:
        m = rep.letter(l)
        m_inv = rep.letter(-l)
        if l > 0:
            u_l = coc.values[l - 1]
        else:
            u_l = -(m @ coc.values[-l - 1] @ m_inv)
        val = val + g @ u_l @ g_inv
        g = g @ m
        g_inv = m_inv @ g_inv
    return val


def coboundary(rep: Representation, a) -> Cocycle:
    """Inner cocycle gamma -> Ad_{rho(gamma)} a - a."""
    a = check_lie_element(a, tol=COCYCLE_TOL)
    vals = tuple(g @ a @ gi - a
                 for g, gi in zip(rep.generators, rep.inverses))
    return Cocycle(vals)


def cocycle_coords(frame, coc: Cocycle) -> np.ndarray:
    """Stacked frame coordinates of all generator values."""
    return np.concatenate([frame_coords(frame, v) for v in coc.values])


def cocycle_from_coords(frame, k: int, coords) -> Cocycle:
    coords = np.asarray(coords, dtype=complex).ravel()
    d = len(frame)
    if len(coords) != k * d:
        raise SizeMismatch(f"expected {k * d} coordinates, got {len(coords)}")
    vals = tuple(frame_from_coords(frame, coords[i * d:(i + 1) * d])
                 for i in range(k))
    return Cocycle(vals)


@dataclass
class CohomologyBasis:
    """A chosen basis of (a subspace of) H^1 with its ambient data."""
    ambient_dim: int
    coboundary_rank: int
    classes: tuple
    projector: np.ndarray = field(repr=False)


def h1_basis_rose(rep: Representation, frame=None) -> CohomologyBasis:
    """Basis of H^1 of the rose as the Hermitian complement of B^1.

    Coboundary rank must be full (= dim sl), otherwise the input has a
    nontrivial centralizer and is rejected.  The projector maps stacked
    cocycle coordinates onto the chosen complement along B^1.
    """
    if frame is None:
        frame = standard_frame(rep.n)
    d = len(frame)
    k = rep.k
    dmat = np.zeros((k * d, d), dtype=complex)
    for j, mj in enumerate(frame):
        dmat[:, j] = cocycle_coords(frame, coboundary(rep, mj))
    u, s, _ = np.linalg.svd(dmat, full_matrices=True)
    rank = int(np.sum(s > max(float(s[0]), 1.0) * RANK_TOL))
    if rank < d:
        raise CohomologyRankError(
            f"coboundary rank {rank} < {d}: nontrivial centralizer "
            "(input not good)")
    col = u[:, :d]
    comp = u[:, d:]
    projector = np.eye(k * d, dtype=complex) - col @ col.conj().T
    classes = tuple(cocycle_from_coords(frame, k, comp[:, i])
                    for i in range(comp.shape[1]))
    return CohomologyBasis(ambient_dim=k * d, coboundary_rank=d,
                           classes=classes, projector=projector)


def circle_cohomology(a, frame=None, tol: float = COCYCLE_TOL):
    """(H^0, H^1) bases for the circle with holonomy A.

    H^0 is the kernel of Ad_A - Id on sl(N, C); H^1 is represented by
    the Hermitian-orthogonal complement of its image.  Both have
    dimension N - 1 exactly when A is regular.
    """
    a = check_group_element(a)
    if frame is None:
        frame = standard_frame(a.shape[0])
    d = len(frame)
    l = adjoint_matrix(a, frame) - np.eye(d, dtype=complex)
    u, s, vh = np.linalg.svd(l)
    cutoff = tol * max(float(s[0]), 1.0)
    null = int(np.sum(s <= cutoff))
    rank = d - null
    h0 = [frame_from_coords(frame, vh[i, :].conj()) for i in range(rank, d)]
    h1 = [frame_from_coords(frame, u[:, i]) for i in range(rank, d)]
    return h0, h1


def bending_cocycle(rep: Representation, moved, a,
                    invariant_under=None, tol: float = COCYCLE_TOL) -> Cocycle:
    """Twist cocycle: zero off the moved generators, a - Ad_{rho(g_j)} a on them.

    Tangent to the path conjugating the moved generators by exp(t a).
    If invariant_under is a word, a is required to commute with its
    image to within tol (the deformation then fixes that curve's trace).
    """
    a = check_lie_element(a, tol=tol)
    moved = {int(j) for j in moved}
    if not moved or any(j < 1 or j > rep.k for j in moved):
        raise SizeMismatch(f"moved generator indices {moved} out of range")
    if invariant_under is not None:
        w = evaluate(rep, invariant_under)
        resid = np.linalg.norm(w @ a @ np.linalg.inv(w) - a)
        if resid > tol * max(1.0, float(np.linalg.norm(a))):
            raise InvariantViolation(
                f"bending direction not invariant under the splitting curve "
                f"(residual {resid:.3e})")
    vals = []
    for j in range(1, rep.k + 1):
        if j in moved:
            g, gi = rep.generators[j - 1], rep.inverses[j - 1]
            vals.append(a - g @ a @ gi)
        else:
            vals.append(np.zeros((rep.n, rep.n), dtype=complex))
    return Cocycle(tuple(vals))


def is_good(rep: Representation, tol: float = 1e-8) -> bool:
    """Burnside test: words in the generators span the full matrix algebra.

    Grows the span W <- W + sum_g g W over generators and inverses until
    it stabilizes (bounded by 2 N^2 rounds, enough for all words of
    length <= 2 N^2); irreducible means rank N^2, and for SL(N) that is
    equivalent to the centralizer being the center.
    """
    n = rep.n
    target = n * n
    gens = list(rep.generators) + list(rep.inverses)
    basis = (np.eye(n, dtype=complex) / np.sqrt(n)).reshape(1, target)
    rank = 1
    for _ in range(2 * target):
        mats = basis.reshape(-1, n, n)
        cand = [basis]
        for g in gens:
            cand.append(np.einsum("ij,bjk->bik", g, mats).reshape(-1, target))
        x = np.vstack(cand)
        x = x / np.linalg.norm(x, axis=1)[:, None]
        _, s, vh = np.linalg.svd(x, full_matrices=False)
        new_rank = int(np.sum(s > float(s[0]) * tol))
        basis = vh[:new_rank]
        if new_rank == target:
            return True
        if new_rank == rank:
            return False
        rank = new_rank
    return rank == target


def is_boundary_regular(rep: Representation, cfg: SurfaceConfig,
                        tol: float = 1e-6) -> bool:
    """True when every peripheral word maps to a regular element."""
    return all(is_regular(evaluate(rep, w), tol=tol)
               for w in cfg.peripheral_words)


def relative_tangent_basis(rep: Representation, cfg: SurfaceConfig,
                           frame=None) -> CohomologyBasis:
    """Sub-basis of H^1 killing every peripheral character derivative.

    Rows are d sigma_j along each peripheral word; the kernel has
    dimension -chi * dim sl - (number of boundaries)(N-1) exactly when
    the boundary restriction is onto, otherwise the input is rejected
    as not boundary-regular enough.
    """
    if frame is None:
        frame = standard_frame(rep.n)
    basis = h1_basis_rose(rep, frame=frame)
    d = len(frame)
    r = rep.n - 1
    b = cfg.boundary_count
    expected = -d * cfg.euler - b * r
    if not cfg.peripheral_words:
        raise SizeMismatch(f"surface {cfg.kind!r} has no peripheral words")
    rows = np.zeros((b * r, len(basis.classes)), dtype=complex)
    for i, w in enumerate(cfg.peripheral_words):
        aw = evaluate(rep, w)
        for c, cls in enumerate(basis.classes):
            rows[i * r:(i + 1) * r, c] = sigma_derivative_cocycle(
                aw, extend_cocycle(rep, cls, w))
    u, s, vh = np.linalg.svd(rows, full_matrices=True)
    rank = int(np.sum(s > max(float(s[0]), 1.0) * 1e-8))
    nullity = len(basis.classes) - rank
    if nullity != expected:
        raise CohomologyRankError(
            f"relative dimension {nullity} != {expected}: boundary "
            "restriction degenerate (input not boundary-regular)")
    classes = tuple(
        cocycle_combination(basis.classes, vh[i, :].conj())
        for i in range(rank, len(basis.classes)))
    return CohomologyBasis(ambient_dim=basis.ambient_dim,
                           coboundary_rank=basis.coboundary_rank,
                           classes=classes, projector=basis.projector)


def _tr(rep: Representation, word) -> complex:
    return complex(np.trace(evaluate(rep, word)))


def sl3_chart_delta(rep: Representation, i: int = 3) -> complex:
    """2x2 bending-pairing determinant controlling the SL3 chart at petal i."""
    return ((_tr(rep, (1, 2, i)) - _tr(rep, (1, i, 2)))
            * (_tr(rep, (-1, -2, -i)) - _tr(rep, (-1, -i, -2)))
            - (_tr(rep, (1, -2, -i)) - _tr(rep, (1, -i, -2)))
            * (_tr(rep, (-1, 2, i)) - _tr(rep, (-1, i, 2))))


MARGINS = {
    "s11_chart": lambda rep: abs(_tr(rep, (1, 2)) - _tr(rep, (1, -2))),
    "f3_chart": lambda rep: abs(_tr(rep, (1, 2, 3)) - _tr(rep, (2, 1, 3))),
    "f4_chart": lambda rep: abs(_tr(rep, (1, 2, 4)) - _tr(rep, (2, 1, 4))),
    "s04_chart": lambda rep: abs(_tr(rep, (1, 2, 2, 3)) - _tr(rep, (1, 2, 3, 2))),
    "sl3_comm_12": lambda rep: abs(_tr(rep, (1, 2, -1, -2))
                                   - _tr(rep, (2, 1, -2, -1))),
    "sl3_comm_13": lambda rep: abs(_tr(rep, (1, 3, -1, -3))
                                   - _tr(rep, (3, 1, -3, -1))),
    "sl3_delta_23": lambda rep: abs(sl3_chart_delta(rep, 3)),
}


def margin_values(rep: Representation, names) -> dict:
    return {name: float(MARGINS[name](rep)) for name in names}


def random_good_rep(n: int, k: int, cfg: SurfaceConfig | None = None,
                    margins: dict | None = None, seed: int = 0,
                    budget: int = 10000) -> Representation:
    """Rejection-sample a good representation meeting chart margins.

    margins maps margin names (see MARGINS) to minimum values; cfg, when
    given, additionally requires every peripheral image to be regular.
    Deterministic per seed.
    """
    check_size(n)
    rng = np.random.default_rng(seed)
    margins = margins or {}
    for name in margins:
        if name not in MARGINS:
            raise SizeMismatch(f"unknown margin {name!r}")
    for _ in range(budget):
        gens = tuple(draw_group_element(rng, n) for _ in range(k))
        rep = Representation(gens)
        if any(MARGINS[name](rep) <= bound for name, bound in margins.items()):
            continue
        if cfg is not None and not is_boundary_regular(rep, cfg):
            continue
        if not is_good(rep):
            continue
        return rep
    raise BudgetExceeded(f"no good representation within {budget} draws")
