"""Built-in matrix groups used by the CLI and the verification corpus."""
from __future__ import annotations

import math

import numpy as np

from .matgroup import FiniteOrthogonalGroup, generate_group

BUILTINS = ("trivial", "cyclic", "dihedral", "sym", "alt", "hyperoctahedral")


def perm_matrix(p) -> np.ndarray:
    """Matrix sending e_i to e_{p[i]} (0-based)."""
    n = len(p)
    m = np.zeros((n, n))
    m[list(p), range(n)] = 1.0
    return m


def rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def block_diag(*blocks) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n))
    k = 0
    for b in blocks:
        d = b.shape[0]
        out[k:k + d, k:k + d] = b
        k += d
    return out


def trivial(ambient: int = 2, **kw) -> FiniteOrthogonalGroup:
    return generate_group([np.eye(ambient)], **kw)


def cyclic(m: int, action: str = "rotation", ambient: int | None = None,
           **kw) -> FiniteOrthogonalGroup:
    """Z_m acting by a rotation, or with a generator of determinant -1.

    The reflection action needs m even.  For m = 2 the generator is
    diag(-1, 1, ..., 1); for m > 2 it is rotation(2 pi/m) + (-1) on R^3.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if action == "rotation":
        ambient = 2 if ambient is None else ambient
        if ambient < 2 and m > 2:
            raise ValueError("a rotation of order > 2 needs ambient dimension >= 2")
        if ambient == 1:
            gen = np.eye(1)
        else:
            gen = block_diag(rotation(2 * math.pi / m), np.eye(ambient - 2))
    elif action == "reflection":
        if m % 2:
            raise ValueError("an orientation-reversing Z_m action needs m even")
        if m == 2:
            ambient = 1 if ambient is None else ambient
            gen = np.diag([-1.0] + [1.0] * (ambient - 1))
        else:
            ambient = 3 if ambient is None else ambient
            if ambient < 3:
                raise ValueError("reflection action of order > 2 needs ambient dimension >= 3")
            gen = block_diag(rotation(2 * math.pi / m), -np.eye(1), np.eye(ambient - 3))
    else:
        raise ValueError(f"unknown cyclic action {action!r}")
    return generate_group([gen], **kw)


def dihedral(m: int, **kw) -> FiniteOrthogonalGroup:
    """Symmetries of the regular m-gon, order 2m, on R^2."""
    return generate_group([rotation(2 * math.pi / m), np.diag([1.0, -1.0])], **kw)


def _sym_generators(n: int) -> list[np.ndarray]:
    if n == 1:
        return [np.eye(1)]
    swap = perm_matrix([1, 0] + list(range(2, n)))
    cycle = perm_matrix(list(range(1, n)) + [0])
    return [swap, cycle] if n > 2 else [swap]


def sym(n: int, **kw) -> FiniteOrthogonalGroup:
    """S_n permuting the coordinates of R^n."""
    if n < 1:
        raise ValueError("n must be positive")
    return generate_group(_sym_generators(n), **kw)


def alt(n: int, **kw) -> FiniteOrthogonalGroup:
    """A_n permuting coordinates, generated by the 3-cycles (0 1 k)."""
    if n < 3:
        raise ValueError("alt needs n >= 3")
    gens = []
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(perm_matrix(p))
    return generate_group(gens, **kw)


def hyperoctahedral(n: int, **kw) -> FiniteOrthogonalGroup:
    """Signed permutation matrices on R^n, order 2^n n!."""
    flip = np.diag([-1.0] + [1.0] * (n - 1))
    gens = _sym_generators(n) if n > 1 else []
    return generate_group(gens + [flip], **kw)


def builtin(name: str, *, m: int | None = None, n: int | None = None,
            action: str = "rotation", ambient: int | None = None,
            **kw) -> FiniteOrthogonalGroup:
    if name == "trivial":
        return trivial(2 if ambient is None else ambient, **kw)
    if name == "cyclic":
        return cyclic(_need(m, "m"), action, ambient, **kw)
    if name == "dihedral":
        return dihedral(_need(m, "m"), **kw)
    if name == "sym":
        return sym(_need(n, "n"), **kw)
    if name == "alt":
        return alt(_need(n, "n"), **kw)
    if name == "hyperoctahedral":
        return hyperoctahedral(_need(n, "n"), **kw)
    raise ValueError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")


def _need(v, name):
    if v is None:
        raise ValueError(f"this builtin needs --{name}")
    return v

