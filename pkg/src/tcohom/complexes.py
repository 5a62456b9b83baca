"""
Chain and cochain complexes of ternary structures as integer matrices.

Every differential here is a *substitution map*: a signed sum of terms,
each sending a tuple to another tuple built from table lookups.  One
builder produces the integer matrix ``S`` with ``S[x, tau(x)] += sign``;
a cochain differential ``(delta f)(x) = sum sign * f(tau(x))`` is then
``S`` tensored with the coefficient group, and a chain boundary
``d(x) = sum sign * tau(x)`` is ``S`` transposed.

Tuples of arity ``m`` on ``n`` elements are indexed lexicographically with
the leftmost coordinate most significant.  A cochain with values in
``A = Z/d_1 + ... + Z/d_k`` is a vector whose coordinate ``j*k + i`` holds
component ``i`` of the value at tuple ``j``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from .core import AxiomError, GroupTable, TernaryTable, check_axiom, require
from .linalg import (
    AbHom,
    FinAbGroup,
    Quotient,
    Subgroup,
    as_int_matrix,
    hom_image,
    hom_kernel,
    matmul,
    preimage_lattice,
)

__all__ = [
    "ComplexError",
    "SizeLimitError",
    "TupleIndexer",
    "CochainSpace",
    "ChainSpace",
    "DifferentialMatrix",
    "CohomologyResult",
    "HomologyResult",
    "pa_delta1",
    "pa_delta2",
    "pa_delta2_full",
    "pa_delta3",
    "pa_delta3_full",
    "degeneracy_map",
    "pa_cocycles",
    "heap_cocycles",
    "cohomology",
    "type0_boundary",
    "type0_homology",
    "hat_tuples",
    "hat_subcomplex",
    "essential_boundary",
    "essential_homology",
    "group_bar_boundary",
    "group_delta",
    "group_cohomology2_normalized",
    "tsd_boundary",
    "tsd_delta",
    "tsd_cohomology",
    "tsd_homology",
    "chain_homology",
    "verify_complex",
]


class ComplexError(ArithmeticError):
    """A differential failed to square to zero (or a subcomplex was not closed)."""


class SizeLimitError(ValueError):
    """Requested matrix exceeds ``TCOHOM_MAX_RANK``."""


def max_rank() -> int:
    return int(os.environ.get("TCOHOM_MAX_RANK", "20000"))


def _guard(rank: int, what: str) -> None:
    limit = max_rank()
    if rank > limit:
        raise SizeLimitError(f"{what} has rank {rank}, above TCOHOM_MAX_RANK={limit}")


# ----------------------------------------------------------------------
# Spaces
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class TupleIndexer:
    n: int
    arity: int

    @property
    def count(self) -> int:
        return self.n**self.arity

    def index(self, tup: Sequence[int]) -> int:
        if len(tup) != self.arity:
            raise ValueError(f"expected a {self.arity}-tuple")
        i = 0
        for v in tup:
            if not 0 <= v < self.n:
                raise ValueError(f"entry {v} outside 0..{self.n - 1}")
            i = i * self.n + int(v)
        return i

    def deindex(self, i: int) -> tuple[int, ...]:
        if not 0 <= i < self.count:
            raise ValueError("index out of range")
        out = []
        for _ in range(self.arity):
            i, r = divmod(i, self.n)
            out.append(r)
        return tuple(reversed(out))

    def columns(self) -> list[np.ndarray]:
        """Coordinate arrays of all tuples, in index order."""
        if self.arity == 0:
            return []
        return [a.ravel() for a in np.indices((self.n,) * self.arity, dtype=np.int64)]

    def indices_of(self, cols: Sequence[np.ndarray]) -> np.ndarray:
        idx = np.zeros_like(cols[0]) if cols else np.zeros(1, dtype=np.int64)
        for c in cols:
            idx = idx * self.n + c
        return idx

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return (self.deindex(i) for i in range(self.count))


@dataclass(frozen=True)
class ChainSpace:
    """Free abelian group on ``X^arity``."""

    n: int
    arity: int

    @property
    def indexer(self) -> TupleIndexer:
        return TupleIndexer(self.n, self.arity)

    @property
    def group(self) -> FinAbGroup:
        _guard(self.indexer.count, f"C_{self.arity}")
        return FinAbGroup.free(self.indexer.count)

    def chain(self, terms: dict[tuple[int, ...], int] | Sequence[tuple[int, ...]]) -> np.ndarray:
        """Vector of a formal sum, given as ``{tuple: coeff}`` or a list of tuples."""
        v = np.zeros(self.indexer.count, dtype=np.int64)
        items = terms.items() if isinstance(terms, dict) else ((t, 1) for t in terms)
        for tup, c in items:
            v[self.indexer.index(tup)] += c
        return v

    def terms(self, v) -> dict[tuple[int, ...], int]:
        v = np.asarray(v)
        return {self.indexer.deindex(int(i)): int(v[i]) for i in np.flatnonzero(v)}


@dataclass(frozen=True)
class CochainSpace:
    """Functions ``X^arity -> A``; ``blocks`` copies stacked for direct sums."""

    n: int
    arity: int
    coefficients: FinAbGroup
    blocks: int = 1

    @property
    def indexer(self) -> TupleIndexer:
        return TupleIndexer(self.n, self.arity)

    @property
    def k(self) -> int:
        return self.coefficients.rank

    @property
    def group(self) -> FinAbGroup:
        size = self.blocks * self.indexer.count
        _guard(size * self.k, f"C^{self.arity} cochains")
        return self.coefficients.repeat(size)

    def from_values(self, values) -> np.ndarray:
        """Cochain vector from an array of values, shape ``(n,)*arity`` (+ ``(k,)``)."""
        a = np.asarray(values, dtype=np.int64)
        size = self.blocks * self.indexer.count
        if self.k == 1 and a.size == size:
            a = a.reshape(size, 1)
        a = a.reshape(size, self.k)
        return self.group.reduce(a.ravel())

    def from_dict(self, values: dict[tuple[int, ...], int], block: int = 0) -> np.ndarray:
        """Cochain with the given values on tuples (``int`` or coordinate vector), zero elsewhere."""
        v = np.zeros(self.group.rank, dtype=np.int64)
        base = block * self.indexer.count
        for tup, a in values.items():
            j = base + self.indexer.index(tup)
            v[j * self.k:(j + 1) * self.k] += np.atleast_1d(np.asarray(a, dtype=np.int64))
        return self.group.reduce(v)

    def chi(self, *tuples: tuple[int, ...]) -> np.ndarray:
        """Sum of characteristic functions (value ``1`` in the first factor)."""
        v = np.zeros(self.group.rank, dtype=np.int64)
        for tup in tuples:
            v[self.indexer.index(tup) * self.k] += 1
        return self.group.reduce(v)

    def values(self, v) -> np.ndarray:
        """Inverse of :meth:`from_values`: shape ``(blocks*n^arity, k)``."""
        return np.asarray(v).reshape(-1, self.k)

    def value(self, v, tup: Sequence[int], block: int = 0) -> np.ndarray:
        j = block * self.indexer.count + self.indexer.index(tup)
        return np.asarray(v)[j * self.k:(j + 1) * self.k]

    def support(self, v) -> dict[tuple[int, ...], tuple[int, ...]]:
        vals = self.values(v)
        out = {}
        count = self.indexer.count
        for j in np.flatnonzero(np.any(vals != 0, axis=1)):
            b, r = divmod(int(j), count)
            key = self.indexer.deindex(r) if self.blocks == 1 else (b, *self.indexer.deindex(r))
            out[key] = tuple(int(a) for a in vals[j])
        return out

    def pairing(self, v, chain) -> np.ndarray:
        """``f(c)`` for an integral chain ``c`` (single block only)."""
        vals = self.values(v).astype(object)
        c = np.asarray(chain, dtype=object)
        return self.coefficients.reduce(as_int_matrix((c @ vals).reshape(1, -1)).ravel())


# ----------------------------------------------------------------------
# Differentials
# ----------------------------------------------------------------------

Term = tuple[int, Callable[..., Sequence[np.ndarray]]]


def substitution_matrix(n: int, arity: int, image_arity: int, terms: Sequence[Term]) -> np.ndarray:
    """``S[x, tau(x)] += sign`` over all ``x`` in ``X^arity``, one ``tau`` per term."""
    src = TupleIndexer(n, arity)
    dst = TupleIndexer(n, image_arity)
    _guard(src.count, f"arity-{arity} tuples")
    _guard(dst.count, f"arity-{image_arity} tuples")
    S = np.zeros((src.count, dst.count), dtype=np.int64)
    rows = np.arange(src.count)
    cols = src.columns()
    for sign, tau in terms:
        image = list(tau(*cols))
        if len(image) != image_arity:
            raise ValueError(f"term produced a {len(image)}-tuple, expected {image_arity}")
        image = [np.broadcast_to(c, rows.shape) for c in image]
        np.add.at(S, (rows, dst.indices_of(image)), sign)
    return S


@dataclass(frozen=True, eq=False)
class DifferentialMatrix:
    """An :class:`AbHom` realizing a named differential.

    ``int_matrix`` is the coefficient-free integer matrix; for cochain maps
    ``hom.matrix`` is its Kronecker product with the identity on ``A``.
    """

    tag: str
    hom: AbHom
    int_matrix: np.ndarray
    source_space: object = None
    target_space: object = None

    @property
    def source(self) -> FinAbGroup:
        return self.hom.source

    @property
    def target(self) -> FinAbGroup:
        return self.hom.target

    @property
    def matrix(self) -> np.ndarray:
        return self.hom.matrix

    def __call__(self, x):
        return self.hom(x)

    def compose(self, inner: "DifferentialMatrix | AbHom") -> AbHom:
        return self.hom.compose(inner.hom if isinstance(inner, DifferentialMatrix) else inner)

    def kernel(self) -> Subgroup:
        return hom_kernel(self.hom)

    def image(self) -> Subgroup:
        return hom_image(self.hom)

    def __repr__(self):
        return f"DifferentialMatrix({self.tag!r}, {self.target.rank}x{self.source.rank})"


def _cochain_map(tag: str, S: np.ndarray, src: CochainSpace, dst: CochainSpace) -> DifferentialMatrix:
    k = src.k
    M = np.kron(S, np.eye(k, dtype=np.int64)) if k != 1 else S
    return DifferentialMatrix(tag, AbHom(src.group, dst.group, M), S, src, dst)


def _chain_map(tag: str, B: np.ndarray, src: ChainSpace, dst: ChainSpace | None) -> DifferentialMatrix:
    # dst None: the zero group (these complexes have no degree-0 chains)
    target = dst.group if dst is not None else FinAbGroup.trivial()
    return DifferentialMatrix(tag, AbHom(src.group, target, B), B, src, dst)


def _assert_zero(outer: np.ndarray, inner: np.ndarray, what: str) -> None:
    P = matmul(outer, inner)
    if np.any(P):
        i, j = np.argwhere(P != 0)[0]
        raise ComplexError(f"{what} is not zero (entry {i},{j} = {P[i, j]})")


# ----------------------------------------------------------------------
# Para-associative cochains
# ----------------------------------------------------------------------

_PA = ("PA0", "PA1", "PA2")


def _require_pa(t: TernaryTable, what: str) -> None:
    require(t, _PA, what)


def _pa1_terms(T):
    return [
        (1, lambda x, y, z: [T[x, y, z]]),
        (-1, lambda x, y, z: [x]),
        (1, lambda x, y, z: [y]),
        (-1, lambda x, y, z: [z]),
    ]


def _pa2_terms(T, kind: int):
    lead = {
        0: [
            (1, lambda a, b, c, d, e: [a, b, c]),
            (1, lambda a, b, c, d, e: [T[a, b, c], d, e]),
            (-1, lambda a, b, c, d, e: [c, d, e]),
            (-1, lambda a, b, c, d, e: [a, b, T[c, d, e]]),
        ],
        1: [
            (1, lambda a, b, c, d, e: [a, b, c]),
            (1, lambda a, b, c, d, e: [T[a, b, c], d, e]),
            (1, lambda a, b, c, d, e: [d, c, b]),
            (-1, lambda a, b, c, d, e: [a, T[d, c, b], e]),
        ],
        2: [
            (1, lambda a, b, c, d, e: [c, d, e]),
            (1, lambda a, b, c, d, e: [a, b, T[c, d, e]]),
            (1, lambda a, b, c, d, e: [d, c, b]),
            (-1, lambda a, b, c, d, e: [a, T[d, c, b], e]),
        ],
    }
    return lead[kind]


def _pa3_terms(T, kind: int):
    """Terms for ``zeta_1`` and ``zeta_2`` of the degree-3 map of type ``kind``."""
    if kind == 1:
        z1 = [
            (1, lambda a, b, c, d, e, f, g: [T[a, b, c], d, e, f, g]),
            (1, lambda a, b, c, d, e, f, g: [a, b, c, T[f, e, d], g]),
            (-1, lambda a, b, c, d, e, f, g: [f, e, d, c, b]),
            (-1, lambda a, b, c, d, e, f, g: [a, b, c, d, e]),
            (-1, lambda a, b, c, d, e, f, g: [a, b, T[c, d, e], f, g]),
        ]
        z2 = [(1, lambda a, b, c, d, e, f, g: [a, b, c, d, e])]
    elif kind == 2:
        z1 = [(1, lambda a, b, c, d, e, f, g: [c, d, e, f, g])]
        z2 = [
            (1, lambda a, b, c, d, e, f, g: [a, b, c, d, T[e, f, g]]),
            (1, lambda a, b, c, d, e, f, g: [a, T[d, c, b], e, f, g]),
            (-1, lambda a, b, c, d, e, f, g: [f, e, d, c, b]),
            (-1, lambda a, b, c, d, e, f, g: [c, d, e, f, g]),
            (-1, lambda a, b, c, d, e, f, g: [a, b, T[c, d, e], f, g]),
        ]
    elif kind == 3:
        # the two (x6, x5, x4, x3, x2) terms carry -zeta_1 and +zeta_2; with
        # the opposite signs the composite with delta2 is 2(zeta_2 - zeta_1)
        # there, which only vanishes mod 2
        z1 = [
            (1, lambda a, b, c, d, e, f, g: [a, b, c, T[f, e, d], g]),
            (-1, lambda a, b, c, d, e, f, g: [f, e, d, c, b]),
            (-1, lambda a, b, c, d, e, f, g: [a, b, c, d, T[e, f, g]]),
        ]
        z2 = [
            (1, lambda a, b, c, d, e, f, g: [T[a, b, c], d, e, f, g]),
            (-1, lambda a, b, c, d, e, f, g: [a, T[d, c, b], e, f, g]),
            (1, lambda a, b, c, d, e, f, g: [f, e, d, c, b]),
        ]
    else:
        raise ValueError("kind must be 1, 2 or 3")
    return z1, z2


def pa_delta1(t: TernaryTable, A: FinAbGroup) -> DifferentialMatrix:
    """``f -> f([x,y,z]) - f(x) + f(y) - f(z)``."""
    _require_pa(t, "pa_delta1")
    n = t.size
    S = substitution_matrix(n, 3, 1, _pa1_terms(t.table))
    return _cochain_map("pa.delta1", S, CochainSpace(n, 1, A), CochainSpace(n, 3, A))


def pa_delta2(t: TernaryTable, A: FinAbGroup, kind: int) -> DifferentialMatrix:
    if kind not in (0, 1, 2):
        raise ValueError("kind must be 0, 1 or 2")
    _require_pa(t, "pa_delta2")
    n = t.size
    S = substitution_matrix(n, 5, 3, _pa2_terms(t.table, kind))
    return _cochain_map(f"pa.delta2.{kind}", S, CochainSpace(n, 3, A), CochainSpace(n, 5, A))


def pa_delta2_full(t: TernaryTable, A: FinAbGroup) -> DifferentialMatrix:
    """Types 1 and 2 stacked: target block 0 is type 1, block 1 is type 2."""
    _require_pa(t, "pa_delta2_full")
    n = t.size
    S = np.vstack([substitution_matrix(n, 5, 3, _pa2_terms(t.table, k)) for k in (1, 2)])
    return _cochain_map("pa.delta2", S, CochainSpace(n, 3, A), CochainSpace(n, 5, A, blocks=2))


def _pa3_matrix(t: TernaryTable, kind: int) -> np.ndarray:
    z1, z2 = _pa3_terms(t.table, kind)
    n = t.size
    return np.hstack([substitution_matrix(n, 7, 5, z1), substitution_matrix(n, 7, 5, z2)])


def pa_delta3(t: TernaryTable, A: FinAbGroup, kind: int) -> DifferentialMatrix:
    """Degree-3 map of type ``kind`` on pairs ``(zeta_1, zeta_2)``."""
    _require_pa(t, "pa_delta3")
    n = t.size
    S = _pa3_matrix(t, kind)
    return _cochain_map(
        f"pa.delta3.{kind}", S, CochainSpace(n, 5, A, blocks=2), CochainSpace(n, 7, A)
    )


def pa_delta3_full(t: TernaryTable, A: FinAbGroup) -> DifferentialMatrix:
    """All three types stacked; checks that it kills the image of the degree-2 map."""
    _require_pa(t, "pa_delta3_full")
    n = t.size
    S = np.vstack([_pa3_matrix(t, k) for k in (1, 2, 3)])
    d2 = np.vstack([substitution_matrix(n, 5, 3, _pa2_terms(t.table, k)) for k in (1, 2)])
    _assert_zero(S, d2, "delta3 o delta2")
    return _cochain_map(
        "pa.delta3", S, CochainSpace(n, 5, A, blocks=2), CochainSpace(n, 7, A, blocks=3)
    )


def degeneracy_map(t: TernaryTable, A: FinAbGroup) -> AbHom:
    """``eta -> (eta(x,x,y))_{x,y} ++ (eta(x,y,y))_{x,y}``."""
    n = t.size
    S = np.vstack([
        substitution_matrix(n, 2, 3, [(1, lambda x, y: [x, x, y])]),
        substitution_matrix(n, 2, 3, [(1, lambda x, y: [x, y, y])]),
    ])
    src = CochainSpace(n, 3, A)
    dst = CochainSpace(n, 2, A, blocks=2)
    return _cochain_map("pa.degeneracy", S, src, dst).hom


def pa_cocycles(t: TernaryTable, A: FinAbGroup) -> Subgroup:
    """``ker`` of the stacked type-1/type-2 map."""
    return pa_delta2_full(t, A).kernel()


def heap_cocycles(t: TernaryTable, A: FinAbGroup) -> Subgroup:
    """PA 2-cocycles that also vanish on degenerate triples."""
    d2 = pa_delta2_full(t, A)
    deg = degeneracy_map(t, A)
    target = d2.target.direct_sum(deg.target)
    M = np.vstack([d2.matrix, deg.matrix])
    return Subgroup(d2.source, preimage_lattice(M, target)).reduced()


# ----------------------------------------------------------------------
# Cohomology results
# ----------------------------------------------------------------------


@dataclass(eq=False)
class CohomologyResult:
    """A cohomology group ``cocycles / coboundaries`` with lifted generators."""

    group: FinAbGroup
    representatives: list[np.ndarray]
    cocycles: Subgroup
    coboundaries: Subgroup
    quotient: Quotient
    space: CochainSpace | None = None

    def __iter__(self):
        yield self.group
        yield self.representatives

    def class_of(self, x) -> np.ndarray:
        return self.quotient.coordinates(x)

    def is_trivial_class(self, x) -> bool:
        return self.quotient.is_zero_class(x)

    def to_dict(self) -> dict:
        return {
            "invariant_factors": list(self.group.invariant_factors),
            "representatives": [[int(a) for a in r] for r in self.representatives],
        }


def _result(Z: Subgroup, B: Subgroup, space=None) -> CohomologyResult:
    q = Quotient(Z, B)
    return CohomologyResult(q.group, q.representatives(), Z, B, q, space)


def cohomology(t: TernaryTable, A: FinAbGroup, theory: str, dim: int) -> CohomologyResult:
    """``H^dim`` for ``theory`` in ``pa``, ``heap`` or ``sd``.

    Degree 1 is the cocycle group itself (there are no 0-cochains).
    """
    theory = theory.lower()
    if theory == "sd":
        return tsd_cohomology(t, A, dim)
    if theory not in ("pa", "heap"):
        raise ValueError(f"unknown theory {theory!r}; expected pa, heap or sd")
    if dim not in (1, 2):
        raise ValueError("dim must be 1 or 2")
    if theory == "heap":
        require(t, ("PA0", "PA1", "PA2", "DEG_LEFT", "DEG_RIGHT"), "heap cohomology")
    d1 = pa_delta1(t, A)
    if dim == 1:
        Z = d1.kernel()
        return _result(Z, Subgroup.trivial(d1.source), d1.source_space)
    _assert_zero(pa_delta2_full(t, A).int_matrix, d1.int_matrix, "delta2 o delta1")
    Z = pa_cocycles(t, A) if theory == "pa" else heap_cocycles(t, A)
    return _result(Z, d1.image(), d1.target_space)


# ----------------------------------------------------------------------
# Chain complexes and homology
# ----------------------------------------------------------------------


@dataclass(eq=False)
class HomologyResult:
    group: FinAbGroup
    representatives: list[np.ndarray]
    cycles: Subgroup
    boundaries: Subgroup
    quotient: Quotient
    space: ChainSpace | None = None

    def class_of(self, chain) -> np.ndarray:
        return self.quotient.coordinates(chain)

    def is_trivial_class(self, chain) -> bool:
        return self.quotient.is_zero_class(chain)


def chain_homology(d_n: np.ndarray, d_next: np.ndarray, space: ChainSpace | None = None) -> HomologyResult:
    """``ker d_n / im d_next`` for integer matrices over a free group."""
    rank = d_n.shape[1]
    free = FinAbGroup.free(rank)
    Z = Subgroup(free, preimage_lattice(d_n, FinAbGroup.free(d_n.shape[0]))).reduced()
    B = Subgroup(free, d_next).reduced()
    q = Quotient(Z, B)
    return HomologyResult(q.group, q.representatives(), Z, B, q, space)


def _type0_terms(T, n: int):
    m = 2 * n - 1
    if n == 2:
        return [
            (1, lambda a, b, c: [T[a, b, c]]),
            (-1, lambda a, b, c: [a]),
            (1, lambda a, b, c: [b]),
            (-1, lambda a, b, c: [c]),
        ]
    terms = [(-1, lambda *x: list(x[2:]))]
    for i in range(1, n):
        p = 2 * i - 2  # 0-based start of the merged triple

        def merge(*x, p=p):
            return [*x[:p], T[x[p], x[p + 1], x[p + 2]], *x[p + 3:]]

        terms.append(((-1) ** (i + 1), merge))
    terms.append(((-1) ** (n + 1), lambda *x: list(x[: m - 2])))
    return terms


def _type0_raw(t: TernaryTable, n: int) -> np.ndarray:
    if n == 1:
        return np.zeros((0, t.size), dtype=np.int64)
    return substitution_matrix(t.size, 2 * n - 1, 2 * n - 3, _type0_terms(t.table, n)).T.copy()


def type0_boundary(t: TernaryTable, n: int) -> DifferentialMatrix:
    """Type-0 boundary ``C_n -> C_{n-1}`` on ``(2n-1)``-tuples (``n = 1`` is the zero map)."""
    if not 1 <= n <= 5:
        raise ValueError("type-0 boundaries are available for 1 <= n <= 5")
    require(t, ("PA0",), "type0_boundary")
    B = _type0_raw(t, n)
    if n >= 3:
        _assert_zero(_type0_raw(t, n - 1), B, f"type-0 d{n - 1} o d{n}")
    src = ChainSpace(t.size, 2 * n - 1)
    dst = ChainSpace(t.size, 2 * n - 3) if n > 1 else None
    return _chain_map(f"type0.d{n}", B, src, dst)


def type0_homology(t: TernaryTable, n: int) -> HomologyResult:
    if not 1 <= n <= 4:
        raise ValueError("type-0 homology is available for 1 <= n <= 4")
    require(t, ("PA0",), "type0_homology")
    return chain_homology(_type0_raw(t, n), _type0_raw(t, n + 1), ChainSpace(t.size, 2 * n - 1))


def hat_tuples(n_elems: int, n: int, e: int) -> np.ndarray:
    """Indices of ``(2n-1)``-tuples whose even positions (1-based) all equal ``e``."""
    idx = TupleIndexer(n_elems, 2 * n - 1)
    cols = idx.columns()
    mask = np.ones(idx.count, dtype=bool)
    for p in range(1, 2 * n - 1, 2):
        mask &= cols[p] == e
    return np.flatnonzero(mask)


def hat_subcomplex(t: TernaryTable, e: int, n: int) -> AbHom:
    """Inclusion of the subcomplex spanned by tuples ``(x1, e, x3, e, ...)`` into ``C_n``.

    Also checks that the boundary maps it into the previous one.
    """
    if not 0 <= e < t.size:
        raise ValueError("base point outside the carrier")
    require(t, ("PA0", "PA1", "PA2", "DEG_LEFT", "DEG_RIGHT"), "hat_subcomplex")
    hat = hat_tuples(t.size, n, e)
    full = t.size ** (2 * n - 1)
    inc = np.zeros((full, len(hat)), dtype=np.int64)
    inc[hat, np.arange(len(hat))] = 1
    if n >= 2:
        B = _type0_raw(t, n)
        outside = np.setdiff1d(np.arange(B.shape[0]), hat_tuples(t.size, n - 1, e))
        if np.any(B[np.ix_(outside, hat)]):
            raise ComplexError(f"boundary does not preserve the hat subcomplex in degree {n}")
    return AbHom(FinAbGroup.free(len(hat)), FinAbGroup.free(full), inc)


def _complement(n_elems: int, n: int, e: int) -> np.ndarray:
    return np.setdiff1d(np.arange(n_elems ** (2 * n - 1)), hat_tuples(n_elems, n, e))


def essential_boundary(t: TernaryTable, e: int, n: int) -> np.ndarray:
    """Boundary of the quotient complex ``C / C-hat`` on the non-hat basis tuples."""
    B = _type0_raw(t, n)
    cols = _complement(t.size, n, e)
    rows = _complement(t.size, n - 1, e) if n >= 2 else np.zeros(0, dtype=np.int64)
    return B[np.ix_(rows, cols)]


def essential_homology(t: TernaryTable, e: int, n: int) -> HomologyResult:
    """Homology of ``C / C-hat``; chains are indexed by the non-hat tuples of :func:`_complement`."""
    if not 1 <= n <= 4:
        raise ValueError("essential homology is available for 1 <= n <= 4")
    hat_subcomplex(t, e, n)
    return chain_homology(essential_boundary(t, e, n), essential_boundary(t, e, n + 1))


def essential_chain(t: TernaryTable, e: int, n: int, chain) -> np.ndarray:
    """Project a chain of ``C_n`` to the quotient basis."""
    return np.asarray(chain)[_complement(t.size, n, e)]


# ----------------------------------------------------------------------
# Group (bar) complex, trivial coefficients
# ----------------------------------------------------------------------


def _bar_terms(P, n: int):
    terms = [(1, lambda *g: list(g[1:]))]
    for i in range(1, n):
        def merge(*g, i=i):
            return [*g[: i - 1], P[g[i - 1], g[i]], *g[i + 1:]]
        terms.append(((-1) ** i, merge))
    terms.append(((-1) ** n, lambda *g: list(g[:-1])))
    return terms


def _bar_raw(g: GroupTable, n: int) -> np.ndarray:
    return substitution_matrix(g.size, n, n - 1, _bar_terms(g.product, n)).T.copy()


def group_bar_boundary(g: GroupTable, n: int) -> DifferentialMatrix:
    """Bar boundary ``Z[G^n] -> Z[G^(n-1)]`` with trivial action."""
    if not 1 <= n <= 4:
        raise ValueError("bar boundaries are available for 1 <= n <= 4")
    B = _bar_raw(g, n)
    if n >= 2:
        _assert_zero(_bar_raw(g, n - 1), B, f"bar d{n - 1} o d{n}")
    return _chain_map(f"group.d{n}", B, ChainSpace(g.size, n), ChainSpace(g.size, n - 1))


def group_delta(g: GroupTable, A: FinAbGroup, n: int) -> DifferentialMatrix:
    """Cochain dual ``C^n_G -> C^{n+1}_G`` of the bar boundary."""
    S = substitution_matrix(g.size, n + 1, n, _bar_terms(g.product, n + 1))
    return _cochain_map(f"group.delta{n}", S, CochainSpace(g.size, n, A), CochainSpace(g.size, n + 1, A))


def normalized_tuples(g: GroupTable, n: int) -> np.ndarray:
    """Indices of ``n``-tuples with no entry equal to the identity."""
    idx = TupleIndexer(g.size, n)
    mask = np.ones(idx.count, dtype=bool)
    for c in idx.columns():
        mask &= c != g.identity
    return np.flatnonzero(mask)


def _restrict_cochain(S: np.ndarray, rows, cols) -> np.ndarray:
    return S[np.ix_(rows, cols)] if rows is not None else S[:, cols]


def group_cohomology2_normalized(g: GroupTable, A: FinAbGroup) -> CohomologyResult:
    """Normalized ``Z^2 / delta(normalized C^1)``.

    Cochain coordinates are restricted to tuples avoiding the identity, in
    tuple order; the result's ``space`` is therefore ``None``.
    """
    k = A.rank
    n1 = normalized_tuples(g, 1)
    n2 = normalized_tuples(g, 2)
    d1 = substitution_matrix(g.size, 2, 1, _bar_terms(g.product, 2))[np.ix_(n2, n1)]
    d2 = substitution_matrix(g.size, 3, 2, _bar_terms(g.product, 3))[:, n2]
    eye = np.eye(k, dtype=np.int64)
    C1 = A.repeat(len(n1))
    C2 = A.repeat(len(n2))
    C3 = A.repeat(g.size**3)
    D1 = AbHom(C1, C2, np.kron(d1, eye))
    D2 = AbHom(C2, C3, np.kron(d2, eye))
    return _result(hom_kernel(D2), hom_image(D1))


# ----------------------------------------------------------------------
# Ternary self-distributive complex
# ----------------------------------------------------------------------


def _tsd_terms(T, n: int):
    """Terms of the degree-``n`` boundary on ``(2n-1)``-tuples."""
    terms = []
    for i in range(2, n):
        s = (-1) ** (n + i)
        p = 2 * i - 1  # 0-based index of x_{2i}

        def drop(*x, p=p):
            return [*x[:p], *x[p + 2:]]

        def act(*x, p=p):
            u, v = x[p], x[p + 1]
            return [*(T[x[j], u, v] for j in range(p)), *x[p + 2:]]

        terms += [(s, drop), (-s, act)]
    s = (-1) ** (n + 1)
    terms += [
        (s, lambda *x: [x[0], *x[3:]]),
        (-s, lambda *x: [x[1], *x[3:]]),
        (s, lambda *x: [x[2], *x[3:]]),
        (-s, lambda *x: [T[x[0], x[1], x[2]], *x[3:]]),
    ]
    return terms


def _tsd_raw(t: TernaryTable, n: int) -> np.ndarray:
    if n == 1:
        return np.zeros((0, t.size), dtype=np.int64)
    return substitution_matrix(t.size, 2 * n - 1, 2 * n - 3, _tsd_terms(t.table, n)).T.copy()


def _require_tsd(t: TernaryTable, what: str) -> None:
    r = check_axiom(t, "TSD")
    if not r:
        raise AxiomError(r, what)


def tsd_boundary(t: TernaryTable, n: int) -> DifferentialMatrix:
    if not 1 <= n <= 5:
        raise ValueError("TSD boundaries are available for 1 <= n <= 5")
    _require_tsd(t, "tsd_boundary")
    B = _tsd_raw(t, n)
    if n >= 3:
        _assert_zero(_tsd_raw(t, n - 1), B, f"TSD d{n - 1} o d{n}")
    src = ChainSpace(t.size, 2 * n - 1)
    dst = ChainSpace(t.size, 2 * n - 3) if n > 1 else None
    return _chain_map(f"tsd.d{n}", B, src, dst)


def _tsd_delta_terms(T, n: int):
    if n == 1:
        return [
            (1, lambda a, b, c: [a]),
            (-1, lambda a, b, c: [b]),
            (1, lambda a, b, c: [c]),
            (-1, lambda a, b, c: [T[a, b, c]]),
        ]
    if n == 2:
        return [
            (1, lambda a, b, c, u, v: [a, b, c]),
            (1, lambda a, b, c, u, v: [T[a, b, c], u, v]),
            (-1, lambda a, b, c, u, v: [a, u, v]),
            (1, lambda a, b, c, u, v: [b, u, v]),
            (-1, lambda a, b, c, u, v: [c, u, v]),
            (-1, lambda a, b, c, u, v: [T[a, u, v], T[b, u, v], T[c, u, v]]),
        ]
    if n == 3:
        return [
            (1, lambda a, b, c, d, e, f, g: [a, b, c, d, e]),
            (1, lambda a, b, c, d, e, f, g: [T[a, d, e], T[b, d, e], T[c, d, e], f, g]),
            (1, lambda a, b, c, d, e, f, g: [a, d, e, f, g]),
            (-1, lambda a, b, c, d, e, f, g: [b, d, e, f, g]),
            (1, lambda a, b, c, d, e, f, g: [c, d, e, f, g]),
            (-1, lambda a, b, c, d, e, f, g: [T[a, b, c], d, e, f, g]),
            (-1, lambda a, b, c, d, e, f, g: [a, b, c, f, g]),
            (-1, lambda a, b, c, d, e, f, g: [T[a, f, g], T[b, f, g], T[c, f, g], T[d, f, g], T[e, f, g]]),
        ]
    raise ValueError("explicit TSD coboundaries exist for n = 1, 2, 3")


def tsd_delta(t: TernaryTable, A: FinAbGroup, n: int) -> DifferentialMatrix:
    """Explicit TSD coboundary ``C^n -> C^{n+1}`` for ``n = 1, 2, 3``."""
    _require_tsd(t, "tsd_delta")
    m = 2 * n - 1
    S = substitution_matrix(t.size, m + 2, m, _tsd_delta_terms(t.table, n))
    return _cochain_map(f"tsd.delta{n}", S, CochainSpace(t.size, m, A), CochainSpace(t.size, m + 2, A))


def tsd_cohomology(t: TernaryTable, A: FinAbGroup, dim: int) -> CohomologyResult:
    """``H^1 = ker delta^1``; ``H^2 = ker delta^2 / im delta^1``."""
    if dim not in (1, 2):
        raise ValueError("dim must be 1 or 2")
    d1 = tsd_delta(t, A, 1)
    if dim == 1:
        return _result(d1.kernel(), Subgroup.trivial(d1.source), d1.source_space)
    d2 = tsd_delta(t, A, 2)
    _assert_zero(d2.int_matrix, d1.int_matrix, "TSD delta2 o delta1")
    return _result(d2.kernel(), d1.image(), d2.source_space)


def tsd_homology(t: TernaryTable, n: int) -> HomologyResult:
    if not 1 <= n <= 4:
        raise ValueError("TSD homology is available for 1 <= n <= 4")
    _require_tsd(t, "tsd_homology")
    return chain_homology(_tsd_raw(t, n), _tsd_raw(t, n + 1), ChainSpace(t.size, 2 * n - 1))


def verify_complex(maps: Sequence[DifferentialMatrix | AbHom]) -> bool:
    """True iff each map composed with the one before it is zero.

    ``maps`` are listed in the order they are applied.
    """
    homs = [m.hom if isinstance(m, DifferentialMatrix) else m for m in maps]
    for inner, outer in zip(homs, homs[1:]):
        if inner.target != outer.source:
            raise ValueError(
                f"cannot compose: target rank {inner.target.rank} vs source rank {outer.source.rank}"
            )
        if not outer.compose(inner).is_zero():
            return False
    return True
