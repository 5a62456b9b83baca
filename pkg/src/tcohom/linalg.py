"""
Exact arithmetic in finitely generated abelian groups.

Everything here works over the integers.  A group is a direct sum of
cyclic groups ``Z/d`` (``d = 0`` meaning ``Z``); an element is an integer
vector reduced against those moduli; a subgroup is the lattice spanned by
its generators together with the relations of the parent.  Kernels,
images, intersections and quotients are all reduced to Smith normal form.

>>> G = FinAbGroup((4,))
>>> q = quotient_invariants(Subgroup.whole(G), Subgroup(G, [[2]]))
>>> print(q)
Z_2
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "SmithForm",
    "smith_normal_form",
    "snf",
    "integer_kernel",
    "FinAbGroup",
    "AbElement",
    "AbHom",
    "Subgroup",
    "Quotient",
    "hom_kernel",
    "hom_image",
    "quotient_invariants",
    "subgroup_contains",
    "subgroup_express",
    "subgroup_members",
    "subgroup_intersection",
    "subgroup_sum",
    "lattice_basis",
]

# int64 entries are kept below this bound; past it everything moves to
# Python ints (object arrays).
_SAFE = 1 << 62
_RETIGHTEN = 1 << 40


def as_int_matrix(M, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Coerce ``M`` to a 2-d integer array (int64, or object if too large)."""
    if isinstance(M, np.ndarray) and M.ndim == 2 and M.dtype in (np.int64, object):
        A = M
    else:
        try:
            A = np.asarray(M, dtype=np.int64)
        except OverflowError:
            A = np.asarray(M, dtype=object)
            A = np.vectorize(int, otypes=[object])(A) if A.size else A
    if A.ndim == 1 and A.size == 0 and rows is not None:
        A = A.reshape(rows, 0 if cols is None else cols)
    if A.ndim != 2:
        if A.size == 0:
            A = A.reshape(rows or 0, cols or 0)
        else:
            raise ValueError(f"expected a matrix, got shape {A.shape}")
    if A.dtype == object:
        return A
    if A.size and np.abs(A).max() >= _SAFE >> 2:
        return A.astype(object)
    return A


def _maxabs(A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    return int(np.abs(A).max())


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact integer product, promoting to Python ints when int64 could overflow."""
    if A.dtype == object or B.dtype == object:
        return np.dot(A.astype(object), B.astype(object))
    inner = A.shape[1] if A.ndim == 2 else A.shape[0]
    if _maxabs(A) * _maxabs(B) * max(inner, 1) < _SAFE:
        return A @ B
    return np.dot(A.astype(object), B.astype(object))


# ----------------------------------------------------------------------
# Smith normal form
# ----------------------------------------------------------------------


@dataclass
class SmithForm:
    """Result of :func:`snf`: ``U @ M @ V == D`` with ``D`` diagonal.

    ``diag`` lists the nonzero diagonal entries ``d_0 | d_1 | ...``; the
    transforms that were not requested are ``None``.
    """

    shape: tuple[int, int]
    diag: list[int]
    U: np.ndarray | None = None
    Uinv: np.ndarray | None = None
    V: np.ndarray | None = None
    Vinv: np.ndarray | None = None

    @property
    def rank(self) -> int:
        return len(self.diag)

    @property
    def D(self) -> np.ndarray:
        D = np.zeros(self.shape, dtype=object if any(d >= _SAFE for d in self.diag) else np.int64)
        for i, d in enumerate(self.diag):
            D[i, i] = d
        return D


class _Tracked:
    """An array plus a cheap upper bound on its entries' absolute values."""

    __slots__ = ("a", "bound")

    def __init__(self, a: np.ndarray):
        self.a = a
        self.bound = _maxabs(a)

    def grow(self, factor: int) -> None:
        # after x -> x - q*y with |q| <= factor and both bounded by `bound`
        self.bound = self.bound * (1 + factor)
        if self.a.dtype != object and self.bound >= _RETIGHTEN:
            self.bound = _maxabs(self.a)

    def needs_object(self, factor: int) -> bool:
        return self.a.dtype != object and self.bound * (1 + factor) >= _SAFE

    def promote(self) -> None:
        if self.a.dtype != object:
            self.a = self.a.astype(object)


def snf(M, *, u: bool = False, uinv: bool = False, v: bool = False, vinv: bool = False) -> SmithForm:
    """Smith normal form with optional unimodular transforms.

    Pivoting is deterministic: the entry of least absolute value in the
    active block, ties broken in row-major order.
    """
    A = _Tracked(as_int_matrix(M).copy())
    m, n = A.a.shape

    def eye(k):
        return _Tracked(np.eye(k, dtype=np.int64))

    U = eye(m) if u else None
    Ui = eye(m) if uinv else None
    V = eye(n) if v else None
    Vi = eye(n) if vinv else None
    tracked = [x for x in (A, U, Ui, V, Vi) if x is not None]
    if A.a.dtype == object:
        for x in tracked:
            x.promote()

    def guard(q):
        f = _maxabs(q)
        if q.dtype == object or any(x.needs_object(f) for x in tracked):
            for x in tracked:
                x.promote()
            q = q.astype(object)
        return q, f

    def swap_rows(i, j):
        if i == j:
            return
        A.a[[i, j]] = A.a[[j, i]]
        if U is not None:
            U.a[[i, j]] = U.a[[j, i]]
        if Ui is not None:
            Ui.a[:, [i, j]] = Ui.a[:, [j, i]]

    def swap_cols(i, j):
        if i == j:
            return
        A.a[:, [i, j]] = A.a[:, [j, i]]
        if V is not None:
            V.a[:, [i, j]] = V.a[:, [j, i]]
        if Vi is not None:
            Vi.a[[i, j]] = Vi.a[[j, i]]

    diag: list[int] = []
    t = 0
    while t < min(m, n):
        sub = A.a[t:, t:]
        nz = sub != 0
        if not nz.any():
            break
        absv = np.abs(sub)
        big = int(absv.max()) + 1
        k = int(np.argmin(np.where(nz, absv, big)))
        i, j = divmod(k, sub.shape[1])
        swap_rows(t, t + i)
        swap_cols(t, t + j)
        while True:
            p = A.a[t, t]
            col = A.a[t + 1:, t]
            if col.any():
                q, f = guard(col // p)
                A.a[t + 1:, t:] -= np.outer(q, A.a[t, t:])
                A.grow(f)
                if U is not None:
                    U.a[t + 1:] -= np.outer(q, U.a[t])
                    U.grow(f)
                if Ui is not None:
                    Ui.a[:, t] += Ui.a[:, t + 1:] @ q if Ui.a.dtype != object else np.dot(Ui.a[:, t + 1:], q)
                    Ui.grow(f * max(1, len(q)))
            row = A.a[t, t + 1:]
            if row.any():
                q, f = guard(row // p)
                A.a[t:, t + 1:] -= np.outer(A.a[t:, t], q)
                A.grow(f)
                if V is not None:
                    V.a[:, t + 1:] -= np.outer(V.a[:, t], q)
                    V.grow(f)
                if Vi is not None:
                    Vi.a[t] += q @ Vi.a[t + 1:] if Vi.a.dtype != object else np.dot(q, Vi.a[t + 1:])
                    Vi.grow(f * max(1, len(q)))
            col = A.a[t + 1:, t]
            row = A.a[t, t + 1:]
            if col.any() or row.any():
                ca = np.abs(col)
                ra = np.abs(row)
                big = max(_maxabs(col), _maxabs(row)) + 1
                ci = int(np.argmin(np.where(col != 0, ca, big))) if col.size else -1
                ri = int(np.argmin(np.where(row != 0, ra, big))) if row.size else -1
                cv = ca[ci] if ci >= 0 and col[ci] != 0 else big
                rv = ra[ri] if ri >= 0 and row[ri] != 0 else big
                if cv <= rv:
                    swap_rows(t, t + 1 + ci)
                else:
                    swap_cols(t, t + 1 + ri)
                continue
            rest = A.a[t + 1:, t + 1:]
            if rest.size:
                bad = (rest % p) != 0
                if bad.any():
                    i = int(np.argmax(bad.any(axis=1)))
                    r = t + 1 + i
                    A.a[t] += A.a[r]
                    A.grow(1)
                    if U is not None:
                        U.a[t] += U.a[r]
                        U.grow(1)
                    if Ui is not None:
                        Ui.a[:, r] -= Ui.a[:, t]
                        Ui.grow(1)
                    continue
            break
        if A.a[t, t] < 0:
            A.a[t] *= -1
            if U is not None:
                U.a[t] *= -1
            if Ui is not None:
                Ui.a[:, t] *= -1
        diag.append(int(A.a[t, t]))
        t += 1

    return SmithForm(
        (m, n),
        diag,
        U.a if U is not None else None,
        Ui.a if Ui is not None else None,
        V.a if V is not None else None,
        Vi.a if Vi is not None else None,
    )


def smith_normal_form(M) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D``, ``U``/``V`` unimodular.

    >>> U, D, V = smith_normal_form([[2, 4], [6, 8]])
    >>> D.tolist()
    [[2, 0], [0, 4]]
    """
    s = snf(M, u=True, v=True)
    return s.U, s.D, s.V


def integer_kernel(M) -> np.ndarray:
    """Columns form a Z-basis of ``{x in Z^n : M x = 0}``."""
    M = as_int_matrix(M)
    s = snf(M, v=True)
    return s.V[:, s.rank:]


def _kernel_mod(M: np.ndarray, L: int) -> np.ndarray:
    """Generators of ``{x in Z^n : M x = 0 (mod L)}``; ``L = 0`` means exactly."""
    n = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    s = snf(M, v=True)
    V = s.V
    if L == 0:
        return V[:, s.rank:]
    scale = np.array([L // math.gcd(d, L) for d in s.diag] + [1] * (n - s.rank), dtype=object)
    return as_int_matrix(V.astype(object) * scale[np.newaxis, :], n, n)


def lattice_basis(G) -> np.ndarray:
    """A Z-basis (as columns) of the lattice spanned by the columns of ``G``."""
    G = as_int_matrix(G)
    if G.shape[1] == 0:
        return G
    s = snf(G, uinv=True)
    B = s.Uinv[:, : s.rank]
    d = np.array(s.diag, dtype=object if B.dtype == object else np.int64)
    return as_int_matrix(B * d[np.newaxis, :])


# ----------------------------------------------------------------------
# Groups, elements, homomorphisms
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class FinAbGroup:
    """Direct sum ``Z/d_1 + ... + Z/d_k`` of cyclic groups (``d = 0`` is ``Z``).

    The stored decomposition is whatever the caller supplied (cochain
    groups repeat the coefficient factors once per tuple); factors equal
    to 1 are dropped.  :attr:`invariant_factors` gives the canonical form.
    """

    moduli: tuple[int, ...]

    def __init__(self, moduli: Sequence[int] = ()):
        mods = tuple(int(d) for d in moduli)
        if any(d < 0 for d in mods):
            raise ValueError(f"moduli must be non-negative: {mods}")
        object.__setattr__(self, "moduli", tuple(d for d in mods if d != 1))

    @classmethod
    def cyclic(cls, d: int) -> "FinAbGroup":
        return cls((d,))

    @classmethod
    def free(cls, rank: int) -> "FinAbGroup":
        return cls((0,) * rank)

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls(())

    @property
    def rank(self) -> int:
        """Number of cyclic summands in the stored decomposition."""
        return len(self.moduli)

    @property
    def is_finite(self) -> bool:
        return 0 not in self.moduli

    @property
    def order(self) -> int | None:
        return math.prod(self.moduli) if self.is_finite else None

    @cached_property
    def invariant_factors(self) -> tuple[int, ...]:
        """Canonical factors: nontrivial torsion in divisibility order, then zeros."""
        tors = [d for d in self.moduli if d]
        free = len(self.moduli) - len(tors)
        if not tors:
            return (0,) * free
        s = snf(np.diag(np.array(tors, dtype=object)))
        return tuple(d for d in s.diag if d != 1) + (0,) * free

    def is_isomorphic(self, other: "FinAbGroup") -> bool:
        return self.invariant_factors == other.invariant_factors

    def __str__(self) -> str:
        inv = self.invariant_factors
        if not inv:
            return "0"
        return " x ".join("Z" if d == 0 else f"Z_{d}" for d in inv)

    def __repr__(self) -> str:
        return f"FinAbGroup({list(self.moduli)})"

    def repeat(self, times: int) -> "FinAbGroup":
        return FinAbGroup(self.moduli * times)

    def direct_sum(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup(self.moduli + other.moduli)

    @cached_property
    def _mod_array(self) -> np.ndarray:
        return np.array(self.moduli, dtype=np.int64)

    def reduce(self, x) -> np.ndarray:
        """Reduce a coordinate vector (or the columns of a matrix) into canonical range."""
        x = np.asarray(x)
        if x.dtype != object:
            x = x.astype(np.int64)
        mods = self._mod_array if x.dtype != object else np.array(self.moduli, dtype=object)
        if x.shape[0] != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {x.shape[0]}")
        if self.rank == 0:
            return x.copy()
        shape = (-1,) + (1,) * (x.ndim - 1)
        m = mods.reshape(shape)
        safe = np.where(m == 0, 1, m)
        return np.where(m == 0, x, x % safe)

    def relations(self) -> np.ndarray:
        """Columns ``d_i e_i`` for the finite summands."""
        idx = [i for i, d in enumerate(self.moduli) if d]
        R = np.zeros((self.rank, len(idx)), dtype=np.int64)
        for c, i in enumerate(idx):
            R[i, c] = self.moduli[i]
        return R

    def zero(self) -> "AbElement":
        return AbElement(self, np.zeros(self.rank, dtype=np.int64))

    def element(self, coords) -> "AbElement":
        return AbElement(self, coords)

    def gens(self) -> list["AbElement"]:
        return [AbElement(self, np.eye(self.rank, dtype=np.int64)[i]) for i in range(self.rank)]

    def elements(self) -> Iterator[tuple[int, ...]]:
        """All elements as coordinate tuples, in lexicographic order."""
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        return product(*(range(d) for d in self.moduli))

    def index_of(self, coords) -> int:
        """Position of an element in :meth:`elements` order."""
        c = self.reduce(np.asarray(coords))
        i = 0
        for d, v in zip(self.moduli, c):
            i = i * d + int(v)
        return i

    def element_at(self, index: int) -> np.ndarray:
        out = []
        for d in reversed(self.moduli):
            index, r = divmod(index, d)
            out.append(r)
        return np.array(out[::-1], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class AbElement:
    parent: FinAbGroup
    coords: np.ndarray

    def __post_init__(self):
        c = self.parent.reduce(np.asarray(self.coords))
        if c.dtype != object:
            c = c.astype(np.int64)
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    def _other(self, other):
        if isinstance(other, AbElement):
            if other.parent != self.parent:
                raise ValueError("elements of different groups")
            return other.coords
        return np.asarray(other)

    def __add__(self, other):
        return AbElement(self.parent, self.coords + self._other(other))

    def __sub__(self, other):
        return AbElement(self.parent, self.coords - self._other(other))

    def __neg__(self):
        return AbElement(self.parent, -self.coords)

    def __rmul__(self, k: int):
        return AbElement(self.parent, int(k) * self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, AbElement)
            and other.parent == self.parent
            and np.array_equal(self.coords, other.coords)
        )

    def __hash__(self):
        return hash((self.parent, tuple(int(v) for v in self.coords)))

    def is_zero(self) -> bool:
        return not np.any(self.coords)

    def __repr__(self):
        return f"AbElement({[int(v) for v in self.coords]} in {self.parent})"


@dataclass(frozen=True, eq=False)
class AbHom:
    """Additive map; column ``j`` of ``matrix`` is the image of source generator ``j``."""

    source: FinAbGroup
    target: FinAbGroup
    matrix: np.ndarray

    def __post_init__(self):
        M = as_int_matrix(self.matrix, self.target.rank, self.source.rank)
        if M.shape != (self.target.rank, self.source.rank):
            raise ValueError(
                f"matrix shape {M.shape} does not match {self.target.rank}x{self.source.rank}"
            )
        M = M.copy()
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)
        bad = self._ill_defined_column()
        if bad is not None:
            raise ValueError(f"not well defined: order of source generator {bad} is not respected")

    def _ill_defined_column(self) -> int | None:
        for j, d in enumerate(self.source.moduli):
            if d == 0:
                continue
            col = self.target.reduce(d * self.matrix[:, j])
            if np.any(col):
                return j
        return None

    def __call__(self, x):
        if isinstance(x, AbElement):
            if x.parent != self.source:
                raise ValueError("element not in the source group")
            return AbElement(self.target, matmul(self.matrix, x.coords.reshape(-1, 1)).ravel())
        return self.target.reduce(matmul(self.matrix, np.asarray(x)))

    def compose(self, inner: "AbHom") -> "AbHom":
        """``self ∘ inner``."""
        if inner.target != self.source:
            raise ValueError("maps are not composable")
        return AbHom(inner.source, self.target, self.target.reduce(matmul(self.matrix, inner.matrix)))

    def is_zero(self) -> bool:
        return not np.any(self.target.reduce(self.matrix))

    @classmethod
    def identity(cls, G: FinAbGroup) -> "AbHom":
        return cls(G, G, np.eye(G.rank, dtype=np.int64))

    @classmethod
    def zero(cls, source: FinAbGroup, target: FinAbGroup) -> "AbHom":
        return cls(source, target, np.zeros((target.rank, source.rank), dtype=np.int64))


# ----------------------------------------------------------------------
# Subgroups
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Subgroup of ``parent`` generated by the columns of ``generators``."""

    parent: FinAbGroup
    generators: np.ndarray

    def __post_init__(self):
        G = as_int_matrix(self.generators, self.parent.rank, 0)
        if G.shape[0] != self.parent.rank:
            if G.shape[1] == self.parent.rank and G.shape[0] != self.parent.rank:
                raise ValueError("generators must be columns of length parent.rank")
            raise ValueError(f"generator length {G.shape[0]} != parent rank {self.parent.rank}")
        G = self.parent.reduce(G) if G.shape[1] else G
        keep = [j for j in range(G.shape[1]) if np.any(G[:, j])]
        G = as_int_matrix(G[:, keep], self.parent.rank, len(keep)).copy()
        G.setflags(write=False)
        object.__setattr__(self, "generators", G)

    @classmethod
    def whole(cls, G: FinAbGroup) -> "Subgroup":
        return cls(G, np.eye(G.rank, dtype=np.int64))

    @classmethod
    def trivial(cls, G: FinAbGroup) -> "Subgroup":
        return cls(G, np.zeros((G.rank, 0), dtype=np.int64))

    @property
    def ngens(self) -> int:
        return self.generators.shape[1]

    def lattice(self) -> np.ndarray:
        """Generators plus parent relations: spans the preimage lattice in Z^rank."""
        R = self.parent.relations()
        if self.generators.dtype == object:
            R = R.astype(object)
        return np.concatenate([self.generators, R], axis=1) if R.shape[1] else self.generators

    def contains(self, x) -> bool:
        return subgroup_contains(self, x)

    def __contains__(self, x) -> bool:
        return subgroup_contains(self, x)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return bool(np.all(subgroup_members(other, self.generators)))

    def same_as(self, other: "Subgroup") -> bool:
        return self.is_subgroup_of(other) and other.is_subgroup_of(self)

    def structure(self) -> FinAbGroup:
        """Isomorphism type of the subgroup itself."""
        return quotient_invariants(self, Subgroup.trivial(self.parent))

    @property
    def order(self) -> int | None:
        return self.structure().order

    def elements(self) -> list[np.ndarray]:
        """All elements (finite subgroups only), via the quotient coordinates."""
        q = Quotient(self, Subgroup.trivial(self.parent))
        G = q.group
        if not G.is_finite:
            raise ValueError("subgroup is infinite")
        reps = [q.lift(i) for i in range(G.rank)]
        out = []
        for c in G.elements():
            v = np.zeros(self.parent.rank, dtype=np.int64)
            for k, r in zip(c, reps):
                v = v + k * r
            out.append(self.parent.reduce(v))
        return out

    def reduced(self) -> "Subgroup":
        """Same subgroup with at most ``parent.rank`` generators."""
        if self.ngens <= self.parent.rank:
            return self
        return Subgroup(self.parent, lattice_basis(self.lattice()))


def _vec(x, parent: FinAbGroup) -> np.ndarray:
    if isinstance(x, AbElement):
        if x.parent != parent:
            raise ValueError("element not in the parent group")
        return x.coords
    v = np.asarray(x)
    if v.shape != (parent.rank,):
        raise ValueError(f"expected a vector of length {parent.rank}")
    return v


def subgroup_express(s: Subgroup, x) -> np.ndarray | None:
    """Integer coefficients ``a`` with ``generators @ a == x`` in ``parent``, or ``None``."""
    v = _vec(x, s.parent)
    if not np.any(s.parent.reduce(v)):
        return np.zeros(s.ngens, dtype=np.int64)
    L = s.lattice()
    if L.shape[1] == 0:
        return None
    f = snf(L, u=True, v=True)
    y = matmul(f.U, as_int_matrix(v.reshape(-1, 1))).ravel()
    r = f.rank
    if np.any(y[r:]):
        return None
    d = np.array(f.diag, dtype=object)
    yr = y[:r].astype(object)
    if any(int(a) % int(b) for a, b in zip(yr, d)):
        return None
    z = np.array([int(a) // int(b) for a, b in zip(yr, d)], dtype=object)
    coeffs = np.dot(f.V[:, :r].astype(object), z) if r else np.zeros(L.shape[1], dtype=object)
    return as_int_matrix(coeffs[: s.ngens].reshape(1, -1)).ravel()


def subgroup_contains(s: Subgroup, x) -> bool:
    return subgroup_express(s, x) is not None


def subgroup_members(s: Subgroup, X) -> np.ndarray:
    """Boolean mask: which columns of ``X`` lie in ``s`` (one SNF for all of them)."""
    X = as_int_matrix(X, s.parent.rank, 0)
    if X.shape[1] == 0:
        return np.zeros(0, dtype=bool)
    X = s.parent.reduce(X)
    L = s.lattice()
    if L.shape[1] == 0:
        return ~np.any(X != 0, axis=0)
    f = snf(L, u=True)
    Y = matmul(f.U, X)
    ok = ~np.any(Y[f.rank:] != 0, axis=0)
    for i, d in enumerate(f.diag):
        ok &= Y[i] % d == 0
    return np.asarray(ok, dtype=bool)


def subgroup_sum(s1: Subgroup, s2: Subgroup) -> Subgroup:
    if s1.parent != s2.parent:
        raise ValueError("subgroups of different groups")
    G = np.concatenate([s1.generators.astype(object), s2.generators.astype(object)], axis=1)
    return Subgroup(s1.parent, as_int_matrix(G, s1.parent.rank, G.shape[1])).reduced()


def subgroup_intersection(s1: Subgroup, s2: Subgroup) -> Subgroup:
    """Generators of ``s1 ∩ s2`` via the integer kernel of ``[L1 | -L2]``."""
    if s1.parent != s2.parent:
        raise ValueError("subgroups of different groups")
    L1 = as_int_matrix(lattice_basis(s1.lattice()))
    L2 = as_int_matrix(lattice_basis(s2.lattice()))
    if L1.shape[1] == 0 or L2.shape[1] == 0:
        return Subgroup.trivial(s1.parent)
    B = np.concatenate([L1.astype(object), -L2.astype(object)], axis=1)
    K = integer_kernel(as_int_matrix(B))
    gens = matmul(as_int_matrix(L1), as_int_matrix(K[: L1.shape[1]]))
    return Subgroup(s1.parent, gens).reduced()


def hom_image(f: AbHom) -> Subgroup:
    return Subgroup(f.target, f.matrix)


def preimage_lattice(M: np.ndarray, target: FinAbGroup, extra=None) -> np.ndarray:
    """Generators of ``{x : M x ∈ span(extra) + relations(target)}`` in Z^cols."""
    M = as_int_matrix(M)
    R = target.relations()
    if extra is not None:
        R = np.concatenate([as_int_matrix(extra).astype(object), R.astype(object)], axis=1)
        R = as_int_matrix(R, M.shape[0], R.shape[1])
    if R.shape[1] == 0:
        return _kernel_mod(M, 0)
    mods = target.moduli
    if extra is None and all(mods):
        L = math.lcm(*mods)
        scale = np.array([L // d for d in mods], dtype=object if L >= _SAFE >> 4 else np.int64)
        return _kernel_mod(as_int_matrix(M * scale[:, np.newaxis]), L)
    B = np.concatenate([M.astype(object), -as_int_matrix(R).astype(object)], axis=1)
    K = integer_kernel(as_int_matrix(B))
    return as_int_matrix(K[: M.shape[1]], M.shape[1], K.shape[1])


def hom_kernel(f: AbHom) -> Subgroup:
    """Kernel of ``f`` as a subgroup of its source."""
    K = preimage_lattice(f.matrix, f.target)
    return Subgroup(f.source, K).reduced()


# ----------------------------------------------------------------------
# Quotients
# ----------------------------------------------------------------------


class Quotient:
    """The quotient ``num / den`` of two subgroups of one parent.

    Besides the invariant factors, keeps enough of the reduction to map
    elements of ``num`` to quotient coordinates and to lift quotient
    generators back to representatives.
    """

    def __init__(self, num: Subgroup, den: Subgroup):
        if num.parent != den.parent:
            raise ValueError("subgroups of different groups")
        self.num, self.den = num, den
        self.parent = num.parent
        N = num.lattice()
        f = snf(N, u=True, uinv=True)
        self._U = f.U
        self._basis = f.Uinv[:, : f.rank]
        self._s = np.array(f.diag, dtype=object)
        self._r = f.rank
        D = den.lattice()
        C, bad = self._solve(D)
        if bad is not None:
            raise ValueError(
                f"denominator generator {bad} = {D[:, bad].tolist()} not in numerator"
            )
        g = snf(C, u=True, uinv=True)
        self._U2 = g.U
        self._U2inv = g.Uinv
        diag = list(g.diag) + [0] * (self._r - g.rank)
        self._keep = [i for i, d in enumerate(diag) if d != 1]
        self._mods = [diag[i] for i in self._keep]
        self.group = FinAbGroup(self._mods)

    def _solve(self, X: np.ndarray) -> tuple[np.ndarray, int | None]:
        """Coordinates of the columns of ``X`` in the numerator basis, plus the
        first column that is not in the numerator (or ``None``)."""
        X = as_int_matrix(X, self.parent.rank, X.shape[1] if X.ndim == 2 else 1)
        Y = matmul(self._U, X)
        bad_cols = np.any(Y[self._r:] != 0, axis=0) if Y.shape[0] > self._r else np.zeros(X.shape[1], bool)
        Y = Y[: self._r].astype(object)
        for i, s in enumerate(self._s):
            bad_cols = bad_cols | (Y[i] % s != 0)
            Y[i] = Y[i] // s
        bad = int(np.argmax(bad_cols)) if np.any(bad_cols) else None
        return as_int_matrix(Y, self._r, X.shape[1]), bad

    def _num_coords(self, X: np.ndarray) -> np.ndarray:
        Y, bad = self._solve(X)
        if bad is not None:
            raise ValueError("element is not in the numerator subgroup")
        return Y

    def coordinates(self, x) -> np.ndarray:
        """Coordinates in :attr:`group` of the class of ``x`` (an element of ``num``)."""
        v = as_int_matrix(np.asarray(_vec(x, self.parent)).reshape(-1, 1))
        c = self._num_coords(v)
        q = matmul(self._U2, c).ravel()[self._keep] if self._keep else np.zeros(0, dtype=np.int64)
        return self.group.reduce(as_int_matrix(q.reshape(1, -1)).ravel())

    def lift(self, i: int) -> np.ndarray:
        """A representative in ``parent`` of quotient generator ``i``."""
        k = self._keep[i]
        c = self._U2inv[:, k].astype(object) * self._s
        v = np.dot(self._basis.astype(object), c)
        return self.parent.reduce(as_int_matrix(v.reshape(1, -1)).ravel())

    def representatives(self) -> list[np.ndarray]:
        return [self.lift(i) for i in range(self.group.rank)]

    def is_zero_class(self, x) -> bool:
        return not np.any(self.coordinates(x))


def quotient_invariants(num: Subgroup, den: Subgroup) -> FinAbGroup:
    """Invariant-factor form of ``num / den`` (raises if ``den`` ⊄ ``num``)."""
    return Quotient(num, den).group
