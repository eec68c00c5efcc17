"""Trace coordinates and the coordinate volume/symplectic form registry.

Trace functions t_w(rho) = tr rho(w) serve as holomorphic coordinates
on character varieties of free groups; their differentials along a Weil
cocycle u are d t_w(u) = tr(u(w) rho(w)).  The registry below collects
the closed-form volume and symplectic forms in these coordinates,
each as a coframe of words plus a scalar prefactor, so that evaluating
a form on a tuple of cocycles is a determinant of trace derivatives.

All registered prefactors carry an overall sign convention that is
fixed arbitrarily once; cross-checks against torsion-side evaluations
therefore compare against +-1.
"""

from __future__ import annotations

import numpy as np

from .errors import MarginError, SizeMismatch
from .repcoh import (Cocycle, Representation, as_word, evaluate,
                     extend_cocycle, sl3_chart_delta)

SQRT2 = np.sqrt(2.0)
SQRT_M3 = 1j * np.sqrt(3.0)  # principal square root of -3

DEFAULT_MARGIN = 1e-8


def t(rep: Representation, word) -> complex:
    """Trace coordinate t_w = tr rho(w)."""
    return complex(np.trace(evaluate(rep, word)))


def d_t(rep: Representation, word, coc: Cocycle) -> complex:
    """Derivative of t_w along a cocycle: tr(u(w) rho(w))."""
    word = as_word(word, rep.k)
    return complex(np.trace(extend_cocycle(rep, coc, word)
                            @ evaluate(rep, word)))


def variation_sl2(a) -> np.ndarray:
    """Trace-variation matrix (tr A / 2) Id - A = -(A - A^{-1})/2 in SL2."""
    a = np.asarray(a, dtype=complex)
    if a.shape != (2, 2):
        raise SizeMismatch("variation matrix is specific to 2x2 input")
    return (np.trace(a) / 2.0) * np.eye(2, dtype=complex) - a


def fricke_identity_check(a, b) -> tuple[float, float]:
    """Residuals of the SL2 product rule and commutator trace polynomial.

    Returns (|t1 t2 - t12 - t12'|, |t_comm - poly|) where t12' is the
    trace of A B^{-1} and poly = t1^2 + t2^2 + t12^2 - t1 t2 t12 - 2.
    """
    rep = Representation((a, b))
    t1, t2 = t(rep, (1,)), t(rep, (2,))
    t12, t12i = t(rep, (1, 2)), t(rep, (1, -2))
    res_product = abs(t1 * t2 - t12 - t12i)
    t_comm = t(rep, (1, 2, -1, -2))
    poly = t1 ** 2 + t2 ** 2 + t12 ** 2 - t1 * t2 * t12 - 2.0
    return float(res_product), float(abs(t_comm - poly))


def f3_quadratic_check(rep: Representation) -> dict:
    """Residuals of the rank-3 quadratic relation z^2 - R z + S = 0.

    The two triple traces t123 and t213 are the roots; R and S are the
    first/second symmetric polynomial expressions in the six basic
    traces.  Returns residuals at both roots and for root sum/product.
    """
    if rep.n != 2 or rep.k != 3:
        raise SizeMismatch("quadratic trace relation needs SL2 and rank 3")
    t1, t2, t3 = (t(rep, (i,)) for i in (1, 2, 3))
    t12, t13, t23 = t(rep, (1, 2)), t(rep, (1, 3)), t(rep, (2, 3))
    t123, t213 = t(rep, (1, 2, 3)), t(rep, (2, 1, 3))
    big_r = t1 * t23 + t2 * t13 + t3 * t12 - t1 * t2 * t3
    big_s = (t1 ** 2 + t2 ** 2 + t3 ** 2 + t12 ** 2 + t13 ** 2 + t23 ** 2
             + t12 * t13 * t23 - t1 * t2 * t12 - t1 * t3 * t13
             - t2 * t3 * t23 - 4.0)
    return {
        "root_123": float(abs(t123 ** 2 - big_r * t123 + big_s)),
        "root_213": float(abs(t213 ** 2 - big_r * t213 + big_s)),
        "sum": float(abs(t123 + t213 - big_r)),
        "product": float(abs(t123 * t213 - big_s)),
    }


def goldman_bracket(rep: Representation, key: str) -> complex:
    """Poisson bracket of the two chart trace functions, via variations.

    Evaluates sum_p eps(p) B(var, var) with B(X, Y) = -tr(XY) and the
    first intersection sign fixed to +1 (the global sign is a
    convention).  Keys: 's11' for the one-point pair (t_1, t_2) on the
    one-holed torus, 's04' for the two-point pair (t_12, t_23) on the
    four-holed sphere, where the second point contributes with the
    opposite sign and transported loops (A1 A2, A1 A2 A3 A1^{-1}).
    """
    key = key.lower()
    if key == "s11":
        if rep.n != 2 or rep.k != 2:
            raise SizeMismatch("s11 bracket needs SL2 and rank 2")
        v1 = variation_sl2(rep.generators[0])
        v2 = variation_sl2(rep.generators[1])
        return complex(-np.trace(v1 @ v2))
    if key == "s04":
        if rep.n != 2 or rep.k != 3:
            raise SizeMismatch("s04 bracket needs SL2 and rank 3")
        lam = evaluate(rep, (1, 2))
        mu = evaluate(rep, (2, 3))
        mu_transported = evaluate(rep, (1, 2, 3, -1))
        c1 = -np.trace(variation_sl2(lam) @ variation_sl2(mu))
        c2 = -np.trace(variation_sl2(lam) @ variation_sl2(mu_transported))
        return complex(c1 - c2)
    raise SizeMismatch(f"unknown bracket key {key!r}")


def _guarded(denoms, margin, key):
    for val in denoms:
        if abs(val) < margin:
            raise MarginError(f"chart denominator {abs(val):.3e} below "
                              f"margin {margin:g} for {key!r}")
    return denoms


SYMPLECTIC_KEYS = ("s11_sl2", "s04_sl2", "s03rel_sl3")


def _symplectic_data(key: str):
    if key == "s11_sl2":
        return 2, 2, ((1,), (2,)), ((1, 2), (1, -2)), 2.0
    if key == "s04_sl2":
        return 2, 3, ((1, 2), (2, 3)), ((1, 2, 2, 3), (1, 2, 3, 2)), 1.0
    if key == "s03rel_sl3":
        return 3, 2, ((1, -2), (-1, 2)), ((2, 1, -2, -1), (1, 2, -1, -2)), 1.0
    raise SizeMismatch(f"unknown symplectic key {key!r}")


def symplectic_eval(rep: Representation, key: str, a: Cocycle, b: Cocycle,
                    margin: float = DEFAULT_MARGIN) -> complex:
    """Relative symplectic form on two cocycles, in chart coordinates.

    omega(a, b) = scale * (dx(a) dy(b) - dx(b) dy(a)) / (t_+ - t_-)
    with (x, y) the chart pair and t_+ - t_- the chart denominator of
    the registered key.
    """
    n, k, (wx, wy), (plus, minus), scale = _symplectic_data(key)
    if rep.n != n or rep.k != k:
        raise SizeMismatch(f"form {key!r} expects SL{n} rank {k}")
    denom = t(rep, plus) - t(rep, minus)
    _guarded([denom], margin, key)
    xa, xb = d_t(rep, wx, a), d_t(rep, wx, b)
    ya, yb = d_t(rep, wy, a), d_t(rep, wy, b)
    return complex(scale * (xa * yb - xb * ya) / denom)


VOLUME_KEY_EXAMPLES = ("f2_sl2", "fk_sl2:4", "f3_sl2", "f2_sl3", "fk_sl3:3")


def _parse_volume_key(key: str):
    key = key.lower()
    if key.startswith("fk_sl2:") or key.startswith("fk_sl3:"):
        base, _, rank = key.partition(":")
        try:
            k = int(rank)
        except ValueError:
            raise SizeMismatch(f"bad rank suffix in {key!r}") from None
        if k < 3:
            raise SizeMismatch(f"{base} registry needs rank >= 3")
        return base, k
    if key in ("f2_sl2", "f3_sl2", "f2_sl3"):
        return key, {"f2_sl2": 2, "f3_sl2": 3, "f2_sl3": 2}[key]
    raise SizeMismatch(f"unknown volume form key {key!r}")


def volume_coframe(key: str) -> tuple:
    """Ordered tuple of coordinate words for a registered volume form."""
    base, k = _parse_volume_key(key)
    if base == "f2_sl2":
        return ((1,), (2,), (1, 2))
    if base == "fk_sl2":
        words = [(1,), (2,), (1, 2)]
        for i in range(3, k + 1):
            words += [(i,), (1, i), (2, i)]
        return tuple(words)
    if base == "f3_sl2":
        return ((1,), (2,), (3,), (1, 2), (1, 3), (2, 3))
    if base == "f2_sl3":
        return ((1,), (-1,), (2,), (-2,), (1, 2), (-1, -2), (1, -2), (-1, 2))
    # fk_sl3: symplectic pair then peripheral pairs, per petal block
    words = [(1, -2), (-1, 2), (1,), (-1,), (2,), (-2,), (1, 2), (-1, -2)]
    for i in range(3, k + 1):
        words += [(1, -i), (-1, i), (i,), (-i,), (1, i), (-1, -i),
                  (2, i), (-2, -i)]
    return tuple(words)


def volume_group_rank(key: str) -> tuple[int, int]:
    base, k = _parse_volume_key(key)
    n = 3 if base.endswith("sl3") else 2
    return n, k


def volume_prefactor(rep: Representation, key: str,
                     margin: float = DEFAULT_MARGIN) -> complex:
    """Scalar prefactor of a registered volume form at rep.

    Raises MarginError when any chart denominator falls below margin.
    """
    base, k = _parse_volume_key(key)
    n, _ = volume_group_rank(key)
    if rep.n != n or rep.k != k:
        raise SizeMismatch(f"form {key!r} expects SL{n} rank {k}, got "
                           f"SL{rep.n} rank {rep.k}")
    if base == "f2_sl2":
        return 2.0 * SQRT2
    if base == "fk_sl2":
        pref = 2.0 * SQRT2
        for i in range(3, k + 1):
            denom = t(rep, (1, 2, i)) - t(rep, (2, 1, i))
            _guarded([denom], margin, key)
            pref *= SQRT2 / denom
        return complex(pref)
    if base == "f3_sl2":
        denom = t(rep, (1, 2, 3)) - t(rep, (2, 1, 3))
        _guarded([denom], margin, key)
        return complex(4.0 / denom)
    if base == "f2_sl3":
        denom = t(rep, (2, 1, -2, -1)) - t(rep, (1, 2, -1, -2))
        _guarded([denom], margin, key)
        return complex(3.0 * SQRT_M3 / denom)
    pref = SQRT_M3 ** 3
    denom = t(rep, (1, 2, -1, -2)) - t(rep, (2, 1, -2, -1))
    _guarded([denom], margin, key)
    pref /= denom
    for i in range(3, k + 1):
        denom_i = t(rep, (1, i, -1, -i)) - t(rep, (i, 1, -i, -1))
        delta_i = sl3_chart_delta(rep, i)
        _guarded([denom_i, delta_i], margin, key)
        pref *= SQRT_M3 ** 3 / (denom_i * 3.0 * delta_i)
    return complex(pref)


def coordinate_volume(rep: Representation, key: str, h,
                      margin: float = DEFAULT_MARGIN) -> complex:
    """Evaluate a registered coordinate volume form on a cocycle tuple.

    Computes prefactor * det[d t_w (h_i)] over the registered coframe;
    h must have exactly as many cocycles as the coframe has words.
    """
    coframe = volume_coframe(key)
    if len(h) != len(coframe):
        raise SizeMismatch(f"form {key!r} has arity {len(coframe)}, "
                           f"got {len(h)} cocycles")
    pref = volume_prefactor(rep, key, margin=margin)
    mat = np.array([[d_t(rep, w, hi) for w in coframe] for hi in h])
    return complex(pref * np.linalg.det(mat))


def sl3_invariant_pair(a) -> tuple[np.ndarray, np.ndarray]:
    """Traceless projections of A and A^{-1}: a basis of sl3^{Ad_A}
    for regular A (the centralizer algebra is spanned by them)."""
    a = np.asarray(a, dtype=complex)
    if a.shape != (3, 3):
        raise SizeMismatch("invariant pair is specific to 3x3 input")
    inv = np.linalg.inv(a)
    eye = np.eye(3, dtype=complex)
    x = a - (np.trace(a) / 3.0) * eye
    y = inv - (np.trace(inv) / 3.0) * eye
    return x, y


def nu_delta_values(rep: Representation) -> tuple[complex, complex]:
    """Bending-pairing determinant vs the SL3 chart determinant.

    Bends the third generator by the two centralizer directions of the
    first generator's image and pairs against the (2,3) / (-2,-3) trace
    coordinates; up to sign this 2x2 determinant equals the chart
    determinant of petal 3.
    """
    if rep.n != 3 or rep.k != 3:
        raise SizeMismatch("needs SL3 and rank 3")
    from .repcoh import bending_cocycle
    x, y = sl3_invariant_pair(rep.generators[0])
    bx = bending_cocycle(rep, {3}, x, invariant_under=(1,))
    by = bending_cocycle(rep, {3}, y, invariant_under=(1,))
    mat = np.array([
        [d_t(rep, (2, 3), bx), d_t(rep, (2, 3), by)],
        [d_t(rep, (-2, -3), bx), d_t(rep, (-2, -3), by)],
    ])
    return complex(np.linalg.det(mat)), complex(sl3_chart_delta(rep, 3))


def nu_delta_check(rep: Representation) -> float:
    """Relative mismatch of |bending determinant| against |chart det|."""
    det, delta = nu_delta_values(rep)
    return float(abs(abs(det) - abs(delta)) / max(abs(delta), 1e-300))
