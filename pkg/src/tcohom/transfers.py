"""
Maps that carry cocycles, chains and extensions between theories.

* ``psi_chain_map``: group bar chains into type-0 heap chains.
* ``restrict_heap_cocycle_to_group`` and ``phi2_group_to_pa``: heap
  2-cocycles to group 2-cocycles and back.
* ``h_heap_to_tsd`` / ``induced_h2_map``: heap cocycles are TSD cocycles.
* Short exact coefficient sequences: section cocycles and obstructions.
* Abelian extensions ``X x_eta A`` and their classification.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from .complexes import (
    ChainSpace,
    CochainSpace,
    HomologyResult,
    _bar_raw,
    _type0_raw,
    chain_homology,
    cohomology,
    degeneracy_map,
    essential_boundary,
    group_delta,
    hat_tuples,
    pa_delta1,
    pa_delta2,
    pa_delta2_full,
    substitution_matrix,
    tsd_cohomology,
    tsd_delta,
    type0_homology,
)
from .core import (
    AxiomError,
    FiniteCarrier,
    GroupTable,
    TernaryTable,
    check_axiom,
    check_tsd,
    group_to_heap,
    heap_to_group,
    require_heap,
)
from .linalg import (
    AbHom,
    FinAbGroup,
    Subgroup,
    as_int_matrix,
    hom_kernel,
    matmul,
    preimage_lattice,
    subgroup_contains,
    subgroup_intersection,
    subgroup_sum,
)

__all__ = [
    "CocycleError",
    "ExtensionSpec",
    "SesSpec",
    "mod_square_ses",
    "psi_matrix",
    "psi_chain_map",
    "induced_homology_map",
    "les_exactness",
    "restrict_heap_cocycle_to_group",
    "phi2_matrix",
    "phi2_group_to_pa",
    "inverse_property_phi",
    "h_heap_to_tsd",
    "induced_h2_map",
    "ses_section_cocycle",
    "build_extension",
    "group_extension",
    "extensions_isomorphic",
    "extension_isomorphism",
    "obstruction_3cocycle",
    "element_orders",
]


class CocycleError(ValueError):
    """A cochain fails a cocycle condition; ``witness`` is the first bad tuple."""

    def __init__(self, message: str, witness: tuple[int, ...] | None = None, condition: str = ""):
        self.witness = witness
        self.condition = condition
        super().__init__(message if witness is None else f"{message} at {witness}")


def _first_bad(space: CochainSpace, v) -> tuple[int, ...] | None:
    support = space.support(v)
    return next(iter(support), None)


def _expect_zero(space: CochainSpace, v, message: str, condition: str) -> None:
    w = _first_bad(space, v)
    if w is not None:
        raise CocycleError(message, w, condition)


def _as_cochain(space: CochainSpace, eta) -> np.ndarray:
    v = np.asarray(eta)
    if v.shape != (space.group.rank,):
        raise ValueError(f"cochain must have {space.group.rank} coordinates, got shape {v.shape}")
    return space.group.reduce(v)


def check_heap_cocycle(t: TernaryTable, A: FinAbGroup, eta) -> None:
    """Raise :class:`CocycleError` unless ``eta`` is a heap 2-cocycle."""
    d = pa_delta2_full(t, A)
    eta = _as_cochain(d.source_space, eta)
    _expect_zero(d.target_space, d(eta), "not a PA 2-cocycle of types 1 and 2", "pa")
    deg = degeneracy_map(t, A)
    _expect_zero(CochainSpace(t.size, 2, A, blocks=2), deg(eta), "degeneracy fails", "degeneracy")


def check_tsd_cocycle(t: TernaryTable, A: FinAbGroup, eta) -> None:
    d = tsd_delta(t, A, 2)
    eta = _as_cochain(d.source_space, eta)
    _expect_zero(d.target_space, d(eta), "not a TSD 2-cocycle", "tsd")


# ----------------------------------------------------------------------
# Specs
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ExtensionSpec:
    """Data of ``X x_eta A``; ``flavor`` is ``"heap"`` or ``"tsd"``."""

    base: TernaryTable
    coefficients: FinAbGroup
    eta: np.ndarray
    flavor: str = "heap"

    def __post_init__(self):
        flavor = self.flavor.lower()
        if flavor not in ("heap", "tsd"):
            raise ValueError(f"flavor must be 'heap' or 'tsd', not {self.flavor!r}")
        object.__setattr__(self, "flavor", flavor)
        space = CochainSpace(self.base.size, 3, self.coefficients)
        eta = _as_cochain(space, self.eta)
        eta.setflags(write=False)
        object.__setattr__(self, "eta", eta)
        if flavor == "heap":
            require_heap(self.base, "heap extension base")
            check_heap_cocycle(self.base, self.coefficients, eta)
        else:
            r = check_tsd(self.base)
            if not r:
                raise AxiomError(r, "TSD extension base")
            check_tsd_cocycle(self.base, self.coefficients, eta)

    @property
    def space(self) -> CochainSpace:
        return CochainSpace(self.base.size, 3, self.coefficients)


def _element_matrix(G: FinAbGroup) -> np.ndarray:
    return np.array(list(G.elements()), dtype=np.int64).reshape(-1, G.rank)


@dataclass(frozen=True, eq=False)
class SesSpec:
    """``0 -> sub -> total -> quot -> 0`` with a set-theoretic section.

    ``section[i]`` is the image in ``total`` of the ``i``-th element of
    ``quot`` (in :meth:`FinAbGroup.elements` order).
    """

    sub: FinAbGroup
    total: FinAbGroup
    quot: FinAbGroup
    inclusion: AbHom
    projection: AbHom
    section: np.ndarray

    def __post_init__(self):
        if not (self.sub.is_finite and self.total.is_finite and self.quot.is_finite):
            raise ValueError("short exact sequences must consist of finite groups")
        if self.inclusion.source != self.sub or self.inclusion.target != self.total:
            raise ValueError("inclusion must map sub -> total")
        if self.projection.source != self.total or self.projection.target != self.quot:
            raise ValueError("projection must map total -> quot")
        if hom_kernel(self.inclusion).ngens:
            raise ValueError("inclusion is not injective")
        image = Subgroup(self.quot, self.projection.matrix)
        if not Subgroup.whole(self.quot).is_subgroup_of(image):
            raise ValueError("projection is not surjective")
        if not Subgroup(self.total, self.inclusion.matrix).same_as(hom_kernel(self.projection)):
            raise ValueError("image of inclusion differs from kernel of projection")
        S = np.asarray(self.section, dtype=np.int64).reshape(self.quot.order, self.total.rank)
        S = self.total.reduce(S.T).T.copy()
        for i, g in enumerate(self.quot.elements()):
            if not np.array_equal(self.projection(S[i]), self.quot.reduce(np.array(g))):
                raise ValueError(f"projection o section is not the identity at element {g}")
        S.setflags(write=False)
        object.__setattr__(self, "section", S)

    def lift(self, g) -> np.ndarray:
        return self.section[self.quot.index_of(g)]

    @cached_property
    def _inverse_inclusion(self) -> dict[bytes, np.ndarray]:
        table = {}
        for h in self.sub.elements():
            h = np.array(h, dtype=np.int64)
            table[self.inclusion(h).tobytes()] = h
        return table

    def preimage(self, e) -> np.ndarray | None:
        """The unique ``h`` with ``inclusion(h) = e``, or ``None``."""
        key = self.total.reduce(np.asarray(e, dtype=np.int64)).astype(np.int64).tobytes()
        return self._inverse_inclusion.get(key)


def mod_square_ses(n: int) -> SesSpec:
    """``0 -> Z_n -> Z_{n^2} -> Z_n -> 0`` with ``a -> n a`` and ``s(x) = x``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    H, E = FinAbGroup.cyclic(n), FinAbGroup.cyclic(n * n)
    return SesSpec(
        H, E, H,
        AbHom(H, E, [[n]]),
        AbHom(E, H, [[1]]),
        np.arange(n).reshape(n, 1),
    )


def _group_heap_on(G: FinAbGroup) -> TernaryTable:
    els = _element_matrix(G)
    N = len(els)
    idx = np.array([G.index_of(x - y + z) for x, y, z in product(els, repeat=3)])
    return TernaryTable(FiniteCarrier(N), idx.reshape(N, N, N))


# ----------------------------------------------------------------------
# Psi: group chains to type-0 chains
# ----------------------------------------------------------------------


def _check_base_point(g: GroupTable, heap: TernaryTable, e: int) -> None:
    if g.size != heap.size:
        raise ValueError("group and heap have different carriers")
    if g != heap_to_group(heap, e):
        raise ValueError(f"group is not the group of the heap at base point {e}")


def psi_matrix(n_elems: int, e: int, n: int) -> np.ndarray:
    """Integer matrix of ``Psi_n`` from ``Z[G^n]`` to type-0 chains on ``(2n-1)``-tuples.

    ``Psi_n(x_1..x_n) = (-1)^n (x_1, e, x_2, e, ..., e, x_n)`` for ``n >= 2``
    and ``Psi_1(x) = (e) - (x)``.  These signs make every square with the
    bar boundary commute, including the one in degree 2.
    """
    src = n_elems**n
    dst = n_elems ** (2 * n - 1)
    M = np.zeros((dst, src), dtype=np.int64)
    if n == 1:
        M[e, :] += 1
        M[np.arange(n_elems), np.arange(n_elems)] -= 1
        return M
    cols = [c for c in np.indices((n_elems,) * n, dtype=np.int64).reshape(n, -1)]
    idx = np.zeros(src, dtype=np.int64)
    for i, c in enumerate(cols):
        if i:
            idx = idx * n_elems + e
        idx = idx * n_elems + c
    M[idx, np.arange(src)] = (-1) ** n
    return M


def psi_chain_map(g: GroupTable, heap: TernaryTable, e: int, n: int) -> AbHom:
    """``Psi_n`` as an :class:`AbHom`; checks that the square down to degree 1 commutes."""
    if not 1 <= n <= 4:
        raise ValueError("n must be between 1 and 4")
    _check_base_point(g, heap, e)
    for k in range(2, n + 1):
        left = matmul(_type0_raw(heap, k), psi_matrix(g.size, e, k))
        right = matmul(psi_matrix(g.size, e, k - 1), _bar_raw(g, k))
        if not np.array_equal(left, right):
            raise ArithmeticError(f"Psi is not a chain map in degree {k}")
    M = psi_matrix(g.size, e, n)
    return AbHom(FinAbGroup.free(M.shape[1]), FinAbGroup.free(M.shape[0]), M)


@dataclass(eq=False)
class InducedMap:
    hom: AbHom
    injective: bool
    surjective: bool


def _induced(M: np.ndarray, src, dst) -> InducedMap:
    """Map on (co)homology induced by a matrix sending representatives of ``src`` into ``dst``'s cycles."""
    cols = []
    for r in src.representatives:
        image = matmul(M, as_int_matrix(np.asarray(r).reshape(-1, 1))).ravel()
        cols.append(dst.quotient.coordinates(dst.quotient.parent.reduce(image)))
    mat = np.array(cols, dtype=object).T.reshape(dst.group.rank, src.group.rank)
    hom = AbHom(src.group, dst.group, as_int_matrix(mat, dst.group.rank, src.group.rank))
    injective = hom_kernel(hom).ngens == 0
    surjective = Subgroup.whole(dst.group).is_subgroup_of(Subgroup(dst.group, hom.matrix))
    return InducedMap(hom, injective, surjective)


def bar_homology(g: GroupTable, n: int) -> HomologyResult:
    """Integral homology of the bar complex (with ``C_0 = Z``)."""
    return chain_homology(_bar_raw(g, n), _bar_raw(g, n + 1), ChainSpace(g.size, n))


def induced_homology_map(g: GroupTable, heap: TernaryTable, e: int, n: int) -> InducedMap:
    """``H_n`` of the group to type-0 ``H_n`` of the heap, induced by ``Psi_n``."""
    psi = psi_chain_map(g, heap, e, n)
    return _induced(psi.matrix, bar_homology(g, n), type0_homology(heap, n))


def _lattice(rank: int, gens) -> Subgroup:
    gens = as_int_matrix(gens, rank, 0) if np.asarray(gens).size else np.zeros((rank, 0), dtype=np.int64)
    return Subgroup(FinAbGroup.free(rank), gens).reduced()


def _hat_inclusion(N: int, idx: np.ndarray) -> np.ndarray:
    M = np.zeros((N, len(idx)), dtype=np.int64)
    M[idx, np.arange(len(idx))] = 1
    return M


def les_exactness(t: TernaryTable, e: int, n: int) -> dict[str, bool]:
    """Exactness of ``H-hat_n -> H_n -> H-tilde_n -> H-hat_{n-1}`` at its three middle spots.

    Each check compares two subgroups (kernel and image) as lattices of
    chains, so no choice of quotient coordinates is involved.
    """
    require_heap(t, "les_exactness")
    if not 2 <= n <= 4:
        raise ValueError("n must be between 2 and 4")
    X = t.size
    d_n = _type0_raw(t, n)
    d_up = _type0_raw(t, n + 1)
    Nn, Nlow = d_n.shape[1], d_n.shape[0]
    hat_n, hat_low = hat_tuples(X, n, e), hat_tuples(X, n - 1, e)
    rest_n = np.setdiff1d(np.arange(Nn), hat_n)

    Zn = _lattice(Nn, preimage_lattice(d_n, FinAbGroup.free(Nlow)))
    Bn = _lattice(Nn, d_up)
    Chat_n = _lattice(Nn, _hat_inclusion(Nn, hat_n))
    # hat cycles and hat boundaries
    Zhat_n = subgroup_intersection(Zn, Chat_n)
    d_low = _type0_raw(t, n - 1)
    Zlow = _lattice(Nlow, preimage_lattice(d_low, FinAbGroup.free(d_low.shape[0])))
    Chat_low = _lattice(Nlow, _hat_inclusion(Nlow, hat_low))
    Blow = _lattice(Nlow, d_n)
    Bhat_low = _lattice(Nlow, d_n[:, hat_n])

    out = {}
    # at H_n: image of hat homology == kernel of projection
    image_hat = subgroup_sum(Zhat_n, Bn)
    ker_proj = subgroup_intersection(Zn, subgroup_sum(Chat_n, Bn))
    out["H"] = image_hat.same_as(ker_proj)

    # at H-tilde_n, in the quotient basis (non-hat tuples)
    dt = essential_boundary(t, e, n)
    dt_up = essential_boundary(t, e, n + 1)
    R = len(rest_n)
    proj_Z = _lattice(R, Zn.generators[rest_n])
    image_proj = subgroup_sum(proj_Z, _lattice(R, dt_up))
    Ztilde = _lattice(R, preimage_lattice(dt, FinAbGroup.free(dt.shape[0])))
    # connecting map: lift z~ to C_n on non-hat tuples and take its boundary
    lift = d_n[:, rest_n]
    kernel_conn = preimage_lattice(lift, FinAbGroup.free(Nlow), extra=Bhat_low.generators)
    ker_delta = subgroup_intersection(Ztilde, _lattice(R, kernel_conn))
    out["H_tilde"] = image_proj.same_as(ker_delta)

    # at H-hat_{n-1}: image of connecting map == kernel of inclusion-induced map
    conn_image = subgroup_sum(_lattice(Nlow, matmul(lift, Ztilde.generators)), Bhat_low)
    Zhat_low = subgroup_intersection(Zlow, Chat_low)
    ker_incl = subgroup_intersection(Zhat_low, Blow)
    out["H_hat"] = conn_image.same_as(ker_incl)
    return out


# ----------------------------------------------------------------------
# Heap and group 2-cocycles
# ----------------------------------------------------------------------


def _check_group_cocycle(g: GroupTable, A: FinAbGroup, theta) -> None:
    d = group_delta(g, A, 2)
    _expect_zero(d.target_space, d(theta), "not a group 2-cocycle", "group")


def _check_normalized(g: GroupTable, A: FinAbGroup, theta) -> None:
    space = CochainSpace(g.size, 2, A)
    for x in range(g.size):
        for tup in ((x, g.identity), (g.identity, x)):
            if np.any(space.value(theta, tup)):
                raise CocycleError("group cochain is not normalized", tup, "normalized")


def restrict_heap_cocycle_to_group(t: TernaryTable, A: FinAbGroup, eta, e: int) -> np.ndarray:
    """``theta(x, y) = eta(x, e, y)``, a normalized group 2-cocycle of ``heap_to_group(t, e)``."""
    require_heap(t, "restrict_heap_cocycle_to_group")
    space3 = CochainSpace(t.size, 3, A)
    eta = _as_cochain(space3, eta)
    check_heap_cocycle(t, A, eta)
    S = substitution_matrix(t.size, 2, 3, [(1, lambda x, y: [x, np.full_like(x, e), y])])
    k = A.rank
    theta = A.repeat(t.size**2).reduce(matmul(np.kron(S, np.eye(k, dtype=np.int64)), eta.reshape(-1, 1)).ravel())
    g = heap_to_group(t, e)
    _check_group_cocycle(g, A, theta)
    _check_normalized(g, A, theta)
    return theta


def phi2_matrix(g: GroupTable, A: FinAbGroup, inverse_property: bool = False) -> AbHom:
    """``theta -> eta(x,y,z) = theta(x, y^-1) + theta(x y^-1, z) - theta(y, y^-1)``.

    With ``inverse_property`` the last term is dropped.
    """
    P, inv = g.product, g.inverse
    terms = [
        (1, lambda x, y, z: [x, inv[y]]),
        (1, lambda x, y, z: [P[x, inv[y]], z]),
    ]
    if not inverse_property:
        terms.append((-1, lambda x, y, z: [y, inv[y]]))
    S = substitution_matrix(g.size, 3, 2, terms)
    k = A.rank
    M = np.kron(S, np.eye(k, dtype=np.int64)) if k != 1 else S
    return AbHom(A.repeat(g.size**2), A.repeat(g.size**3), M)


def _phi(g: GroupTable, A: FinAbGroup, theta, inverse_property: bool) -> np.ndarray:
    space2 = CochainSpace(g.size, 2, A)
    theta = _as_cochain(space2, theta)
    _check_normalized(g, A, theta)
    _check_group_cocycle(g, A, theta)
    eta = phi2_matrix(g, A, inverse_property)(theta)
    heap = group_to_heap(g)
    for kind in (1, 2):
        d = pa_delta2(heap, A, kind)
        _expect_zero(d.target_space, d(eta), f"image is not a type-{kind} PA 2-cocycle", f"pa{kind}")
    return eta


def phi2_group_to_pa(g: GroupTable, A: FinAbGroup, theta) -> np.ndarray:
    """PA 2-cocycle on the group heap of ``g`` from a normalized group 2-cocycle."""
    return _phi(g, A, theta, False)


def has_inverse_property(g: GroupTable, A: FinAbGroup, theta) -> tuple[int, int] | None:
    """First ``(x, y)`` with ``theta(x^-1, y^-1) != -theta(y, x)``, or ``None``."""
    space = CochainSpace(g.size, 2, A)
    for x, y in product(range(g.size), repeat=2):
        lhs = space.value(theta, (g.inverse[x], g.inverse[y]))
        rhs = A.reduce(-space.value(theta, (y, x)))
        if not np.array_equal(A.reduce(lhs), rhs):
            return (x, y)
    return None


def inverse_property_phi(g: GroupTable, A: FinAbGroup, theta) -> np.ndarray:
    """Variant of :func:`phi2_group_to_pa` without the ``theta(y, y^-1)`` term."""
    theta = _as_cochain(CochainSpace(g.size, 2, A), theta)
    bad = has_inverse_property(g, A, theta)
    if bad is not None:
        raise CocycleError("inverse property fails", bad, "inverse")
    return _phi(g, A, theta, True)


def group_extension(g: GroupTable, A: FinAbGroup, theta) -> GroupTable:
    """``G x_theta A``: ``(x, a)(y, b) = (xy, a + b + theta(x, y))``; element ``(x, a)`` is ``x*|A| + index(a)``."""
    space = CochainSpace(g.size, 2, A)
    theta = _as_cochain(space, theta)
    els = _element_matrix(A)
    m = len(els)
    N = g.size * m
    P = np.empty((N, N), dtype=np.int64)
    vals = space.values(theta)
    for x, i, y, j in product(range(g.size), range(m), range(g.size), range(m)):
        c = els[i] + els[j] + vals[x * g.size + y]
        P[x * m + i, y * m + j] = g.product[x, y] * m + A.index_of(c)
    return GroupTable(FiniteCarrier(N), P, g.identity * m)


def element_orders(g: GroupTable) -> list[int]:
    out = []
    for x in range(g.size):
        k, y = 1, x
        while y != g.identity:
            y = g.product[y, x]
            k += 1
        out.append(k)
    return out


# ----------------------------------------------------------------------
# Heap cocycles as TSD cocycles
# ----------------------------------------------------------------------


def h_heap_to_tsd(t: TernaryTable, A: FinAbGroup, eta) -> np.ndarray:
    """The same function, checked to be a TSD 2-cocycle."""
    require_heap(t, "h_heap_to_tsd")
    eta = _as_cochain(CochainSpace(t.size, 3, A), eta)
    check_heap_cocycle(t, A, eta)
    check_tsd_cocycle(t, A, eta)
    return eta.copy()


def induced_h2_map(t: TernaryTable, A: FinAbGroup) -> InducedMap:
    """``H^2_H(X, A) -> H^2_SD(X, A)`` induced by the identity on cochains."""
    require_heap(t, "induced_h2_map")
    d_heap = pa_delta1(t, A).matrix
    d_sd = tsd_delta(t, A, 1).matrix
    if not np.array_equal(d_heap, -d_sd):
        raise ArithmeticError("first heap and TSD differentials do not differ by sign")
    src = cohomology(t, A, "heap", 2)
    dst = tsd_cohomology(t, A, 2)
    M = np.eye(src.cocycles.parent.rank, dtype=np.int64)
    return _induced(M, src, dst)


# ----------------------------------------------------------------------
# Exact sequences of coefficients
# ----------------------------------------------------------------------


def _pull_back(s: SesSpec, values: np.ndarray, space: CochainSpace, what: str) -> np.ndarray:
    """Apply ``inclusion^-1`` valuewise; ``values`` has one row of ``total`` coordinates per tuple."""
    out = np.zeros((len(values), s.sub.rank), dtype=np.int64)
    for j, v in enumerate(values):
        h = s.preimage(v)
        if h is None:
            raise CocycleError(f"{what}: value {v.tolist()} is not in the image of the inclusion",
                               space.indexer.deindex(j), "exactness")
        out[j] = h
    return out.ravel()


def ses_section_cocycle(s: SesSpec, heap_on_quot: TernaryTable) -> np.ndarray:
    """``eta`` with ``inclusion(eta(x,y,z)) = s(x) - s(y) + s(z) - s([x,y,z])``.

    Elements of the quotient are numbered in :meth:`FinAbGroup.elements`
    order, and ``heap_on_quot`` must be its group heap in that numbering.
    """
    if heap_on_quot != _group_heap_on(s.quot):
        raise ValueError("heap_on_quot is not the group heap of the quotient group")
    n = heap_on_quot.size
    S = s.section.astype(np.int64)
    x, y, z = np.indices((n, n, n)).reshape(3, -1)
    w = heap_on_quot.table.ravel()
    vals = s.total.reduce((S[x] - S[y] + S[z] - S[w]).T).T
    space = CochainSpace(n, 3, s.sub)
    eta = space.group.reduce(_pull_back(s, vals, space, "section cocycle"))
    check_heap_cocycle(heap_on_quot, s.sub, eta)
    return eta


def obstruction_3cocycle(t: TernaryTable, s: SesSpec, phi) -> np.ndarray:
    """``alpha`` with ``inclusion(alpha) = delta^2(s o phi)`` on ``X^5``; checked to be a TSD 3-cocycle."""
    r = check_tsd(t)
    if not r:
        raise AxiomError(r, "obstruction_3cocycle")
    if np.any(s.section[s.quot.index_of(np.zeros(s.quot.rank, dtype=np.int64))]):
        raise ValueError("the section must send 0 to 0")
    n = t.size
    qspace = CochainSpace(n, 3, s.quot)
    phi = _as_cochain(qspace, phi)
    check_tsd_cocycle(t, s.quot, phi)
    lifted = np.array([s.lift(v) for v in qspace.values(phi)], dtype=np.int64).ravel()
    d2 = tsd_delta(t, s.total, 2)
    image = d2(lifted)
    space5 = CochainSpace(n, 5, s.sub)
    vals = d2.target_space.values(image)
    if any(np.any(s.projection(v)) for v in vals):
        raise CocycleError("projection of delta^2(s o phi) is not zero", None, "well-defined")
    alpha = space5.group.reduce(_pull_back(s, vals, space5, "obstruction"))
    d3 = tsd_delta(t, s.sub, 3)
    _expect_zero(d3.target_space, d3(alpha), "obstruction is not a TSD 3-cocycle", "tsd3")
    return alpha


# ----------------------------------------------------------------------
# Extensions
# ----------------------------------------------------------------------


def build_extension(spec: ExtensionSpec) -> TernaryTable:
    """``((x,a),(y,b),(z,c)) -> (T(x,y,z), a - b + c + eta(x,y,z))`` on ``X x A``.

    The pair ``(x, a)`` is element ``x*|A| + index(a)``.
    """
    A = spec.coefficients
    if not A.is_finite:
        raise ValueError("extensions need finite coefficients")
    els = _element_matrix(A)
    m, X = len(els), spec.base.size
    N = X * m
    p = np.arange(N)
    x, a = p // m, p % m
    P, Q, R = np.meshgrid(p, p, p, indexing="ij")
    base = spec.base.table[x[P], x[Q], x[R]]
    eta = spec.space.values(spec.eta)[(x[P] * X + x[Q]) * X + x[R]]
    coords = els[a[P]] - els[a[Q]] + els[a[R]] + eta
    coords = A.reduce(coords.reshape(-1, A.rank).T).T
    weights = np.cumprod([1, *reversed(A.moduli)])[:-1][::-1]
    fiber = coords @ weights if A.rank else np.zeros(len(coords), dtype=np.int64)
    table = base * m + fiber.reshape(base.shape)
    out = TernaryTable(FiniteCarrier(N), table)
    if spec.flavor == "heap":
        for ax in ("PA0", "PA1", "PA2", "DEG_LEFT", "DEG_RIGHT"):
            r = check_axiom(out, ax)
            if not r:
                raise AxiomError(r, "heap extension")
    else:
        r = check_tsd(out)
        if not r:
            raise AxiomError(r, "TSD extension")
    return out


def _compatible(spec1: ExtensionSpec, spec2: ExtensionSpec) -> None:
    if spec1.base != spec2.base:
        raise ValueError("extensions have different bases")
    if spec1.coefficients != spec2.coefficients:
        raise ValueError("extensions have different coefficient groups")
    if spec1.flavor != spec2.flavor:
        raise ValueError("extensions have different flavors")


def _equivariant_isomorphism(spec1: ExtensionSpec, spec2: ExtensionSpec, T1, T2) -> np.ndarray | None:
    # every map (x, a) -> (x, a + c(x)), tried one c at a time
    A = spec1.coefficients
    els = _element_matrix(A)
    m, X = len(els), spec1.base.size
    shifted = np.array([[A.index_of(a + c) for a in els] for c in els])  # [c, a]
    x = np.repeat(np.arange(X), m)
    a = np.tile(np.arange(m), X)
    for cs in product(range(m), repeat=X):
        phi = x * m + shifted[np.array(cs)[x], a]
        if np.array_equal(phi[T1], T2[np.ix_(phi, phi, phi)]):
            return phi
    return None


def extension_isomorphism(
    spec1: ExtensionSpec, spec2: ExtensionSpec, equivariant: bool = False
) -> np.ndarray | None:
    """A fiber-preserving bijection ``X x A -> X x A`` intertwining the two operations, or ``None``.

    Exhaustive backtracking: after each choice, every image forced by
    ``phi(T1(p,q,r)) = T2(phi p, phi q, phi r)`` is propagated.  With
    ``equivariant`` the search is limited to bijections commuting with the
    action of ``A`` on the fibers, i.e. ``(x, a) -> (x, a + c(x))``.
    """
    _compatible(spec1, spec2)
    T1 = build_extension(spec1).table
    T2 = build_extension(spec2).table
    if equivariant:
        return _equivariant_isomorphism(spec1, spec2, T1, T2)
    m = spec1.coefficients.order
    N = T1.shape[0]
    fiber = np.arange(N) // m

    def propagate(phi: np.ndarray) -> bool:
        while True:
            known = np.flatnonzero(phi >= 0)
            P, Q, R = np.meshgrid(known, known, known, indexing="ij")
            src = T1[P, Q, R].ravel()
            dst = T2[phi[P], phi[Q], phi[R]].ravel()
            if np.any(fiber[src] != fiber[dst]):
                return False
            assigned = phi[src] >= 0
            if np.any(phi[src[assigned]] != dst[assigned]):
                return False
            new_src, first = np.unique(src[~assigned], return_index=True)
            if not len(new_src):
                return True
            new_dst = dst[~assigned][first]
            if len(np.unique(new_dst)) != len(new_dst):
                return False
            used = np.zeros(N, dtype=bool)
            used[phi[phi >= 0]] = True
            if np.any(used[new_dst]):
                return False
            phi[new_src] = new_dst

    def search(phi: np.ndarray) -> np.ndarray | None:
        free = np.flatnonzero(phi < 0)
        if not len(free):
            return phi
        p = free[0]
        used = set(phi[phi >= 0].tolist())
        for q in range(fiber[p] * m, fiber[p] * m + m):
            if q in used:
                continue
            trial = phi.copy()
            trial[p] = q
            if propagate(trial):
                found = search(trial)
                if found is not None:
                    return found
        return None

    return search(np.full(N, -1, dtype=np.int64))


def extensions_isomorphic(
    spec1: ExtensionSpec, spec2: ExtensionSpec, method: str = "snf", equivariant: bool = False
) -> bool:
    """Whether the two extensions are isomorphic over ``X``.

    ``"snf"`` tests ``eta1 - eta2`` against the coboundaries; ``"oracle"``
    searches bijections directly; ``"both"`` runs both and insists they agree.
    ``equivariant`` is passed to :func:`extension_isomorphism`.
    """
    _compatible(spec1, spec2)
    if method not in ("snf", "oracle", "both"):
        raise ValueError("method must be 'snf', 'oracle' or 'both'")
    result = None
    if method in ("snf", "both"):
        A = spec1.coefficients
        d1 = pa_delta1(spec1.base, A) if spec1.flavor == "heap" else tsd_delta(spec1.base, A, 1)
        result = subgroup_contains(d1.image(), spec1.space.group.reduce(spec1.eta - spec2.eta))
    if method in ("oracle", "both"):
        found = extension_isomorphism(spec1, spec2, equivariant) is not None
        if result is not None and found != result:
            raise ArithmeticError("coboundary test and bijection search disagree")
        result = found
    return bool(result)
