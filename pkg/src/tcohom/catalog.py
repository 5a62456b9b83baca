"""Multiplication tables for every group of order at most 8.

Element 0 is always the identity.  Tables are generated from small
explicit models (residues, permutations, quaternion units) so each one
can be audited by eye.
"""

from __future__ import annotations

from itertools import product

import numpy as np

__all__ = ["GROUP_NAMES", "group_table", "groups_of_order", "cyclic_table", "product_table"]


def cyclic_table(n: int) -> np.ndarray:
    x = np.arange(n)
    return (x[:, None] + x[None, :]) % n


def product_table(*orders: int) -> np.ndarray:
    """Table of Z_{n1} x Z_{n2} x ... with elements in lexicographic order."""
    elems = list(product(*(range(n) for n in orders)))
    index = {e: i for i, e in enumerate(elems)}
    T = np.empty((len(elems), len(elems)), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            T[i, j] = index[tuple((u + v) % n for u, v, n in zip(a, b, orders))]
    return T


def _from_permutations(gens: list[tuple[int, ...]]) -> np.ndarray:
    """Table of the permutation group generated by ``gens`` (closure, BFS order)."""
    ident = tuple(range(len(gens[0])))
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(len(g)))
                if q not in seen:
                    seen.add(q)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    T = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            # (a*b)(k) = a(b(k))
            T[i, j] = index[tuple(a[b[k]] for k in range(len(a)))]
    return T


def _quaternion_table() -> np.ndarray:
    # units 1, i, j, k with sign; element (s, u) -> index 4*s + u
    mult = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }
    T = np.empty((8, 8), dtype=np.int64)
    for a in range(8):
        for b in range(8):
            sa, ua = divmod(a, 4)
            sb, ub = divmod(b, 4)
            s, u = mult[(ua, ub)]
            T[a, b] = 4 * ((sa + sb + s) % 2) + u
    return T


_BUILDERS = {
    "Z1": lambda: cyclic_table(1),
    "Z2": lambda: cyclic_table(2),
    "Z3": lambda: cyclic_table(3),
    "Z4": lambda: cyclic_table(4),
    "Z5": lambda: cyclic_table(5),
    "Z6": lambda: cyclic_table(6),
    "Z7": lambda: cyclic_table(7),
    "Z8": lambda: cyclic_table(8),
    "Z2^2": lambda: product_table(2, 2),
    "Z2^3": lambda: product_table(2, 2, 2),
    "Z4xZ2": lambda: product_table(4, 2),
    "S3": lambda: _from_permutations([(1, 0, 2), (1, 2, 0)]),
    "D4": lambda: _from_permutations([(1, 2, 3, 0), (0, 3, 2, 1)]),
    "Q8": _quaternion_table,
}

GROUP_NAMES: tuple[str, ...] = tuple(_BUILDERS)


def group_table(name: str) -> np.ndarray:
    try:
        T = _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown group {name!r}; known: {', '.join(GROUP_NAMES)}") from None
    T = np.asarray(T, dtype=np.int64)
    T.setflags(write=False)
    return T


def groups_of_order(n: int) -> list[str]:
    """Catalog names of one representative per isomorphism class of order ``n``."""
    if not 1 <= n <= 8:
        raise ValueError("the catalog covers orders 1 through 8")
    return [name for name in GROUP_NAMES if len(group_table(name)) == n]
