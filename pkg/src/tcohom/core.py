"""
Finite ternary structures: heaps, para-associative sets and ternary shelves.

A :class:`TernaryTable` stores an operation on ``{0, ..., n-1}`` as a dense
``n x n x n`` array.  The axiom checks are exhaustive and report the
lexicographically least counterexample, so failures are reproducible.

>>> t = affine_table(2, 1, 1, 1)          # x + y + z on Z_2
>>> check_heap(t)
True
>>> check_degeneracy(affine_table(3, 1, 1, 1))[0].witness
(1, 0)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Callable, Sequence

import numpy as np

from . import catalog

__all__ = [
    "AXIOMS",
    "AxiomError",
    "AxiomReport",
    "FiniteCarrier",
    "GroupTable",
    "TernaryTable",
    "abelian_heap",
    "affine_table",
    "trivial_shelf",
    "check_para_associativity",
    "check_degeneracy",
    "check_heap",
    "check_tsd",
    "check_axiom",
    "heap_to_group",
    "group_to_heap",
    "catalog_group",
    "enumerate_heaps",
    "brute_force_heaps",
]

AXIOMS = ("PA0", "PA1", "PA2", "DEG_LEFT", "DEG_RIGHT", "TSD")


@dataclass(frozen=True)
class FiniteCarrier:
    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("a carrier needs at least one element")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.size:
                raise ValueError(f"{len(labels)} labels for {self.size} elements")
            if len(set(labels)) != len(labels):
                raise ValueError("labels must be distinct")
            object.__setattr__(self, "labels", labels)

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def __iter__(self):
        return iter(range(self.size))

    def __len__(self):
        return self.size


def _frozen(a, shape, n) -> np.ndarray:
    a = np.array(a, dtype=np.int64).reshape(shape)
    if a.size and (a.min() < 0 or a.max() >= n):
        raise ValueError(f"table entries must lie in 0..{n - 1}")
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class TernaryTable:
    """A total ternary operation on a finite carrier."""

    carrier: FiniteCarrier
    table: np.ndarray

    def __post_init__(self):
        n = self.carrier.size
        object.__setattr__(self, "table", _frozen(self.table, (n, n, n), n))

    @classmethod
    def from_array(cls, table, labels=None) -> "TernaryTable":
        a = np.asarray(table)
        n = round(a.size ** (1 / 3))
        if n**3 != a.size:
            raise ValueError(f"table of {a.size} entries is not n^3 for an integer n")
        return cls(FiniteCarrier(n, labels), a.reshape(n, n, n))

    @classmethod
    def from_function(cls, n: int, f: Callable[[int, int, int], int]) -> "TernaryTable":
        t = np.empty((n, n, n), dtype=np.int64)
        for x, y, z in product(range(n), repeat=3):
            t[x, y, z] = f(x, y, z)
        return cls(FiniteCarrier(n), t)

    @property
    def size(self) -> int:
        return self.carrier.size

    def __call__(self, x, y, z):
        return self.table[x, y, z]

    def __eq__(self, other):
        return isinstance(other, TernaryTable) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"TernaryTable(n={self.size}, flat={self.table.ravel().tolist()})"

    def relabel(self, perm: Sequence[int]) -> "TernaryTable":
        """Transport along the bijection ``x -> perm[x]``."""
        p = np.asarray(perm, dtype=np.int64)
        q = np.argsort(p)
        return TernaryTable(FiniteCarrier(self.size), p[self.table[np.ix_(q, q, q)]])


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group given by its multiplication table (checked on construction)."""

    carrier: FiniteCarrier
    product: np.ndarray
    identity: int
    inverse: np.ndarray = field(init=False)

    def __post_init__(self):
        n = self.carrier.size
        P = _frozen(self.product, (n, n), n)
        object.__setattr__(self, "product", P)
        e = int(self.identity)
        if not 0 <= e < n:
            raise ValueError("identity outside the carrier")
        x = np.arange(n)
        if not (np.array_equal(P[e], x) and np.array_equal(P[:, e], x)):
            raise ValueError(f"{e} is not a two-sided identity")
        if not np.array_equal(P[P[:, :, None], x[None, None, :]], P[x[:, None, None], P[None, :, :]]):
            raise ValueError("product is not associative")
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.flatnonzero(P[a] == e)
            if len(hits) != 1 or P[hits[0], a] != e:
                raise ValueError(f"element {a} has no two-sided inverse")
            inv[a] = hits[0]
        inv.setflags(write=False)
        object.__setattr__(self, "inverse", inv)

    @classmethod
    def from_array(cls, product, identity: int = 0, labels=None) -> "GroupTable":
        P = np.asarray(product)
        return cls(FiniteCarrier(P.shape[0], labels), P, identity)

    @property
    def size(self) -> int:
        return self.carrier.size

    def mul(self, x, y):
        return self.product[x, y]

    def inv(self, x):
        return self.inverse[x]

    def __eq__(self, other):
        return (
            isinstance(other, GroupTable)
            and self.identity == other.identity
            and np.array_equal(self.product, other.product)
        )

    def __hash__(self):
        return hash((self.identity, self.product.tobytes()))

    def __repr__(self):
        return f"GroupTable(n={self.size}, identity={self.identity})"

    def relabel(self, perm: Sequence[int]) -> "GroupTable":
        p = np.asarray(perm, dtype=np.int64)
        q = np.argsort(p)
        return GroupTable(FiniteCarrier(self.size), p[self.product[np.ix_(q, q)]], int(p[self.identity]))


# ----------------------------------------------------------------------
# Standard tables
# ----------------------------------------------------------------------


def affine_table(n: int, a: int, b: int, c: int) -> TernaryTable:
    """``(a x + b y + c z) mod n``."""
    x = np.arange(n)
    t = (a * x[:, None, None] + b * x[None, :, None] + c * x[None, None, :]) % n
    return TernaryTable(FiniteCarrier(n), t)


def abelian_heap(n: int) -> TernaryTable:
    """The group heap ``x - y + z`` of ``Z_n``."""
    return affine_table(n, 1, -1, 1)


def trivial_shelf(n: int) -> TernaryTable:
    """``T(x, y, z) = x``."""
    return affine_table(n, 1, 0, 0)


def catalog_group(name: str) -> GroupTable:
    return GroupTable.from_array(catalog.group_table(name), 0)


# ----------------------------------------------------------------------
# Axioms
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    holds: bool
    witness: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.axiom not in AXIOMS:
            raise ValueError(f"unknown axiom {self.axiom!r}")
        if self.holds != (self.witness is None):
            raise ValueError("a report holds exactly when it has no witness")
        if self.witness is not None:
            object.__setattr__(self, "witness", tuple(int(v) for v in self.witness))

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        return {"axiom": self.axiom, "holds": self.holds, "witness": list(self.witness) if self.witness else None}


class AxiomError(ValueError):
    """Raised when a structure fails an axiom an operation requires."""

    def __init__(self, report: AxiomReport, context: str = ""):
        self.report = report
        msg = f"{report.axiom} fails at {report.witness}"
        super().__init__(f"{context}: {msg}" if context else msg)


def _report(axiom: str, lhs: np.ndarray, rhs: np.ndarray) -> AxiomReport:
    bad = np.argwhere(lhs != rhs)
    if len(bad) == 0:
        return AxiomReport(axiom, True)
    return AxiomReport(axiom, False, tuple(bad[0]))


def _vars(n: int, k: int):
    return np.indices((n,) * k, dtype=np.int64)


def axiom_sides(t: TernaryTable, axiom: str):
    """Both sides of ``axiom`` evaluated on every tuple (arrays of shape (n,)*arity)."""
    T = t.table
    n = t.size
    if axiom in ("PA0", "PA1", "PA2"):
        x1, x2, x3, x4, x5 = _vars(n, 5)
        left = T[T[x1, x2, x3], x4, x5]
        right = T[x1, x2, T[x3, x4, x5]]
        middle = T[x1, T[x4, x3, x2], x5]
        return {"PA0": (left, right), "PA1": (left, middle), "PA2": (right, middle)}[axiom]
    if axiom == "DEG_LEFT":
        x, y = _vars(n, 2)
        return T[x, x, y], y
    if axiom == "DEG_RIGHT":
        x, y = _vars(n, 2)
        return T[x, y, y], x
    if axiom == "TSD":
        x, y, z, u, v = _vars(n, 5)
        return T[T[x, y, z], u, v], T[T[x, u, v], T[y, u, v], T[z, u, v]]
    raise ValueError(f"unknown axiom {axiom!r}")


def check_axiom(t: TernaryTable, axiom: str) -> AxiomReport:
    return _report(axiom, *axiom_sides(t, axiom))


def check_para_associativity(t: TernaryTable, kind: int) -> AxiomReport:
    """Type ``kind`` para-associativity, exhaustively over X^5.

    type 0: [[a,b,c],d,e] = [a,b,[c,d,e]]
    type 1: [[a,b,c],d,e] = [a,[d,c,b],e]
    type 2: [a,b,[c,d,e]] = [a,[d,c,b],e]
    """
    if kind not in (0, 1, 2):
        raise ValueError("kind must be 0, 1 or 2")
    return check_axiom(t, f"PA{kind}")


def check_degeneracy(t: TernaryTable) -> tuple[AxiomReport, AxiomReport]:
    """``[x,x,y] = y`` and ``[x,y,y] = x``; witnesses are ``(x, y)``."""
    return check_axiom(t, "DEG_LEFT"), check_axiom(t, "DEG_RIGHT")


def heap_reports(t: TernaryTable) -> list[AxiomReport]:
    return [check_axiom(t, a) for a in ("PA0", "PA1", "PA2", "DEG_LEFT", "DEG_RIGHT")]


def check_heap(t: TernaryTable) -> bool:
    return all(heap_reports(t))


def check_tsd(t: TernaryTable) -> AxiomReport:
    return check_axiom(t, "TSD")


def is_para_associative(t: TernaryTable) -> bool:
    return all(check_para_associativity(t, k) for k in (0, 1, 2))


def require(t: TernaryTable, axioms: Sequence[str], context: str = "") -> None:
    for a in axioms:
        r = check_axiom(t, a)
        if not r:
            raise AxiomError(r, context)


def require_heap(t: TernaryTable, context: str = "") -> None:
    require(t, ("PA0", "PA1", "PA2", "DEG_LEFT", "DEG_RIGHT"), context)


# ----------------------------------------------------------------------
# Groups and heaps
# ----------------------------------------------------------------------


def heap_to_group(t: TernaryTable, e: int) -> GroupTable:
    """The group ``x*y = [x, e, y]`` with identity ``e``."""
    require_heap(t, "heap_to_group")
    if not 0 <= e < t.size:
        raise ValueError("base point outside the carrier")
    return GroupTable(t.carrier, t.table[:, e, :], e)


def group_to_heap(g: GroupTable) -> TernaryTable:
    """The heap ``[x, y, z] = x y^{-1} z``."""
    P, inv = g.product, g.inverse
    x = np.arange(g.size)
    t = P[P[x[:, None], inv[None, :]][:, :, None], x[None, None, :]]
    return TernaryTable(g.carrier, t)


def _holomorph_relabelings(base: np.ndarray, chunk: int = 5040) -> set[bytes]:
    n = base.shape[0]
    flat = base.ravel()
    out: set[bytes] = set()
    # translations are heap automorphisms and act transitively, so
    # bijections fixing 0 already reach every relabeled table
    perms = ((0, *rest) for rest in permutations(range(1, n)))
    while True:
        P = np.array(list(_take(perms, chunk)), dtype=np.int64)
        if P.size == 0:
            break
        Q = np.argsort(P, axis=1)
        # new[x,y,z] = p[old[q x, q y, q z]]
        idx = (Q[:, :, None, None] * n * n + Q[:, None, :, None] * n + Q[:, None, None, :]).reshape(len(P), -1)
        vals = flat[idx]
        new = np.take_along_axis(P, vals, axis=1).astype(np.uint8)
        for row in np.unique(new, axis=0):
            out.add(row.tobytes())
    return out


def _take(it, k):
    for _, v in zip(range(k), it):
        yield v


def enumerate_heaps(n: int) -> tuple[TernaryTable, ...]:
    """Every heap table on ``{0..n-1}`` (``n <= 8``), in byte order of the flat table.

    Obtained by relabeling the group heap of each catalog group of order
    ``n`` and removing duplicate tables.
    """
    if not 1 <= n <= 8:
        raise ValueError("enumeration is limited to 1 <= n <= 8 by the group catalog")
    found: set[bytes] = set()
    for name in catalog.groups_of_order(n):
        found |= _holomorph_relabelings(group_to_heap(catalog_group(name)).table)
    tables = sorted(found)
    return tuple(TernaryTable.from_array(np.frombuffer(b, dtype=np.uint8).astype(np.int64)) for b in tables)


def brute_force_heaps(n: int) -> tuple[TernaryTable, ...]:
    """Scan all ``n^(n^3)`` tables; only feasible for ``n <= 2``."""
    if n > 2:
        raise ValueError("brute force is only feasible for n <= 2")
    out = []
    for flat in product(range(n), repeat=n**3):
        t = TernaryTable.from_array(flat)
        if check_heap(t):
            out.append(t)
    return tuple(sorted(out, key=lambda t: t.table.astype(np.uint8).tobytes()))
