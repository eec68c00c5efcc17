"""JSON encodings for matrices, representations, and words.

A complex scalar is a two-element list [re, im]; a matrix is
{"n": N, "entries": [[[re, im], ...], ...]} with row-major entries;
a representation is {"n": N, "k": k, "generators": [matrix, ...]};
a word is {"letters": [1, 2, -1, -2]}.
"""

from __future__ import annotations

import numpy as np

from .errors import SizeMismatch
from .repcoh import Representation, as_word


def scalar_to_json(z) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def scalar_from_json(obj) -> complex:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise SizeMismatch(f"scalar must be [re, im], got {obj!r}")
    return complex(float(obj[0]), float(obj[1]))


def matrix_to_json(a) -> dict:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise SizeMismatch(f"expected square matrix, got shape {a.shape}")
    return {
        "n": int(a.shape[0]),
        "entries": [[scalar_to_json(a[i, j]) for j in range(a.shape[1])]
                    for i in range(a.shape[0])],
    }


def matrix_from_json(obj) -> np.ndarray:
    try:
        n = int(obj["n"])
        entries = obj["entries"]
    except (KeyError, TypeError):
        raise SizeMismatch("matrix JSON needs keys 'n' and 'entries'") \
            from None
    if len(entries) != n or any(len(row) != n for row in entries):
        raise SizeMismatch(f"entries do not form an {n}x{n} matrix")
    out = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(entries):
        for j, cell in enumerate(row):
            out[i, j] = scalar_from_json(cell)
    return out


def representation_to_json(rep: Representation) -> dict:
    return {
        "n": rep.n,
        "k": rep.k,
        "generators": [matrix_to_json(g) for g in rep.generators],
    }


def representation_from_json(obj) -> Representation:
    try:
        n = int(obj["n"])
        k = int(obj["k"])
        gens = obj["generators"]
    except (KeyError, TypeError):
        raise SizeMismatch(
            "representation JSON needs keys 'n', 'k', 'generators'") from None
    if len(gens) != k:
        raise SizeMismatch(f"expected {k} generators, got {len(gens)}")
    mats = []
    for g in gens:
        m = matrix_from_json(g)
        if m.shape[0] != n:
            raise SizeMismatch(f"generator of size {m.shape[0]}, expected {n}")
        mats.append(m)
    return Representation(tuple(mats))


def word_to_json(word) -> dict:
    return {"letters": list(as_word(word))}


def word_from_json(obj) -> tuple:
    try:
        letters = obj["letters"]
    except (KeyError, TypeError):
        raise SizeMismatch("word JSON needs key 'letters'") from None
    return as_word(letters)
