"""Named function families used as extremal examples."""

from __future__ import annotations

import numpy as np

from .core import DEFAULT_CAPS, BooleanFunction, Caps, popcounts


def _bits(n: int) -> np.ndarray:
    """``(2**n, n)`` array whose column ``j`` is ``x_{j+1}``."""
    idx = np.arange(1 << n)
    return ((idx[:, None] >> np.arange(n)[None, :]) & 1).astype(np.uint8)


def and_f(n: int, caps: Caps = DEFAULT_CAPS) -> BooleanFunction:
    caps.check("max_n", n)
    t = np.zeros(1 << n, dtype=np.uint8)
    t[-1] = 1
    return BooleanFunction(n, t)


def or_f(n: int, caps: Caps = DEFAULT_CAPS) -> BooleanFunction:
    caps.check("max_n", n)
    t = np.ones(1 << n, dtype=np.uint8)
    t[0] = 0
    return BooleanFunction(n, t)


def parity_f(n: int, caps: Caps = DEFAULT_CAPS) -> BooleanFunction:
    caps.check("max_n", n)
    return BooleanFunction(n, (popcounts(n) & 1).astype(np.uint8))


def constant_f(n: int, value: int, caps: Caps = DEFAULT_CAPS) -> BooleanFunction:
    caps.check("max_n", n)
    return BooleanFunction(n, np.full(1 << n, value, dtype=np.uint8))


def dictator_f(n: int, i: int = 1, caps: Caps = DEFAULT_CAPS) -> BooleanFunction:
    caps.check("max_n", n)
    if not 1 <= i <= n:
        raise ValueError(f"variable {i} outside [1, {n}]")
    return BooleanFunction(n, ((np.arange(1 << n) >> (i - 1)) & 1).astype(np.uint8))


def and_of_ors(k: int, caps: Caps = DEFAULT_CAPS) -> BooleanFunction:
    """AND of ``k`` ORs, each over ``k`` variables; ``x_{(i-1)k + j}`` is variable ``j`` of OR ``i``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    n = k * k
    caps.check("max_n", n)
    blocks = _bits(n).reshape(-1, k, k)
    return BooleanFunction(n, blocks.any(axis=2).all(axis=1).astype(np.uint8))


def rubinstein(k: int, pairing: str = "aligned", caps: Caps = DEFAULT_CAPS) -> BooleanFunction:
    """Rubinstein's function on ``n = k**2`` variables split into ``k`` blocks of ``k``.

    A block fires when it holds exactly two ones and they sit next to each
    other; the function is the OR over blocks.  With ``pairing="aligned"``
    the two ones must occupy a pair of positions ``(2m-1, 2m)`` inside the
    block, which gives sensitivity ``k`` and block sensitivity ``k**2/2``.
    ``pairing="any"`` accepts any adjacent pair ``(j, j+1)``; a block holding
    a single one is then sensitive on both sides of it, so sensitivity
    doubles to ``2k``.
    """
    if k < 2 or k % 2:
        raise ValueError("k must be even and at least 2")
    if pairing not in ("aligned", "any"):
        raise ValueError("pairing must be 'aligned' or 'any'")
    n = k * k
    caps.check("max_n", n)
    blocks = _bits(n).reshape(-1, k, k)
    weight2 = blocks.sum(axis=2) == 2
    adjacent = blocks[:, :, :-1] & blocks[:, :, 1:]
    if pairing == "aligned":
        adjacent = adjacent[:, :, ::2]
    fires = weight2 & adjacent.any(axis=2)
    return BooleanFunction(n, fires.any(axis=1).astype(np.uint8))


def e3(caps: Caps = DEFAULT_CAPS) -> BooleanFunction:
    """Not-all-equal on three bits: ``x + y + z - xy - yz - zx``."""
    w = popcounts(3)
    return BooleanFunction(3, ((w == 1) | (w == 2)).astype(np.uint8))


def e3_tree(depth: int, caps: Caps = DEFAULT_CAPS) -> BooleanFunction:
    """E3 composed in a complete ternary tree of the given depth on ``3**depth`` leaves.

    Leaves ``3m+1, 3m+2, 3m+3`` feed the same bottom gate.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    n = 3 ** depth
    caps.check("max_n", n)
    level = _bits(n).astype(bool)
    while level.shape[1] > 1:
        w = level.reshape(level.shape[0], -1, 3).sum(axis=2)
        level = (w == 1) | (w == 2)
    return BooleanFunction(n, level[:, 0].astype(np.uint8))


FAMILIES = {
    "and": lambda k=None, depth=None, n=None: and_f(_need(n, "n")),
    "or": lambda k=None, depth=None, n=None: or_f(_need(n, "n")),
    "parity": lambda k=None, depth=None, n=None: parity_f(_need(n, "n")),
    "and_of_ors": lambda k=None, depth=None, n=None: and_of_ors(_need(k, "k")),
    "rubinstein": lambda k=None, depth=None, n=None: rubinstein(_need(k, "k")),
    "e3_tree": lambda k=None, depth=None, n=None: e3_tree(_need(depth, "depth")),
}


def _need(value, name):
    if value is None:
        raise ValueError(f"this family needs --{name}")
    return value


def family(name: str, k: int | None = None, depth: int | None = None, n: int | None = None) -> BooleanFunction:
    """Look up a family by its CLI name."""
    try:
        build = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    return build(k=k, depth=depth, n=n)
