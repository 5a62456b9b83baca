"""Acceptance suite: worked examples reproduced end to end.

Expected values live in ``data/suite_manifest.json``; the functions here
only compute.  Each criterion is a generator of ``(name, actual)`` or
``(name, actual, note)`` items, so a crash part way through still leaves
the earlier outcomes in the report.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations_with_replacement
from typing import Any, Callable, Iterator

import numpy as np

from . import properties as props
from .complexes import (
    ChainSpace,
    CochainSpace,
    cohomology,
    essential_chain,
    essential_homology,
    group_cohomology2_normalized,
    group_delta,
    heap_cocycles,
    normalized_tuples,
    pa_delta1,
    pa_delta2,
    pa_delta3_full,
    tsd_boundary,
    tsd_cohomology,
    tsd_delta,
    type0_boundary,
    verify_complex,
)
from .core import (
    abelian_heap,
    affine_table,
    catalog_group,
    enumerate_heaps,
    group_to_heap,
    heap_to_group,
    trivial_shelf,
)
from .linalg import AbHom, FinAbGroup, Subgroup, hom_image, hom_kernel, matmul
from .transfers import (
    ExtensionSpec,
    SesSpec,
    build_extension,
    element_orders,
    extension_isomorphism,
    extensions_isomorphic,
    induced_h2_map,
    induced_homology_map,
    les_exactness,
    mod_square_ses,
    obstruction_3cocycle,
    phi2_matrix,
    psi_chain_map,
    ses_section_cocycle,
)

__all__ = ["Outcome", "CriterionResult", "load_manifest", "criteria", "run_criterion", "run_suite"]

Z = FinAbGroup.cyclic
Item = tuple  # (name, actual) or (name, actual, note)


@dataclass(frozen=True)
class Outcome:
    name: str
    expected: Any
    actual: Any
    status: str
    source: str = ""
    note: str = ""

    def to_dict(self) -> dict:
        d = {"name": self.name, "expected": self.expected, "actual": self.actual, "status": self.status}
        if self.source:
            d["source"] = self.source
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class CriterionResult:
    id: int
    key: str
    title: str
    outcomes: list[Outcome] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def status(self) -> str:
        if any(o.status == "fail" for o in self.outcomes):
            return "fail"
        if self.outcomes and all(o.status == "skip" for o in self.outcomes):
            return "skip"
        return "pass"

    def to_dict(self) -> dict:
        return {
            "criterion": self.id,
            "key": self.key,
            "title": self.title,
            "status": self.status,
            "outcomes": [o.to_dict() for o in self.outcomes],
        }


def load_manifest() -> dict:
    text = resources.files("tcohom").joinpath("data/suite_manifest.json").read_text(encoding="utf-8")
    return json.loads(text)


def _jsonable(x: Any) -> Any:
    return json.loads(json.dumps(x, default=_default))


def _default(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, (np.ndarray, tuple, set)):
        return list(x.tolist() if isinstance(x, np.ndarray) else x)
    return str(x)


# ----------------------------------------------------------------------
# criteria
# ----------------------------------------------------------------------

_REGISTRY: dict[str, Callable[[dict], Iterator[Item]]] = {}


def _criterion(key: str):
    def wrap(fn):
        _REGISTRY[key] = fn
        return fn
    return wrap


def _z2_heap():
    return affine_table(2, 1, 1, 1)


def _linear_forms(space: CochainSpace, forms: list) -> np.ndarray:
    """Rows of the matrix of linear forms given as ``[[tuple, coeff], ...]``."""
    R = np.zeros((len(forms), space.group.rank), dtype=np.int64)
    for i, form in enumerate(forms):
        for tup, c in form:
            R[i, space.indexer.index(tup)] += c
    return R


def _cochains(space: CochainSpace, combos: list) -> np.ndarray:
    """Columns: cochains given as ``[[tuple, coeff], ...]`` lists."""
    return np.array([space.from_dict(dict_from_pairs(c)) for c in combos], dtype=np.int64).T


def dict_from_pairs(pairs) -> dict:
    out: dict = {}
    for tup, c in pairs:
        out[tuple(tup)] = out.get(tuple(tup), 0) + c
    return out


@_criterion("z1-pa-z2-heap")
def _c1(inputs):
    A = Z(2)
    r = cohomology(_z2_heap(), A, "pa", 1)
    C1 = Subgroup.whole(CochainSpace(2, 1, A).group)
    yield "order of Z1_PA(Z2 heap, Z2)", r.group.order
    yield "Z1_PA equals C1", r.cocycles.same_as(C1)


@_criterion("z1-pa-z3-constants")
def _c2(inputs):
    t = affine_table(3, 1, 1, 1)
    for n in inputs["moduli"]:
        A = Z(n)
        r = cohomology(t, A, "pa", 1)
        const = Subgroup(r.cocycles.parent, np.ones((3, 1), dtype=np.int64))
        yield f"Z1_PA(Z3 x+y+z, Z{n})", str(r.group)
        yield f"Z1_PA(Z3 x+y+z, Z{n}) is the constants", r.cocycles.same_as(const)


@_criterion("h2-z2-heap")
def _c3(inputs):
    t, A = _z2_heap(), Z(2)
    pa = cohomology(t, A, "pa", 2)
    heap = cohomology(t, A, "heap", 2)
    yield "H2_PA(Z2 heap, Z2)", str(pa.group)
    yield "H2_H(Z2 heap, Z2)", str(heap.group)
    yield "B2_PA(Z2 heap, Z2) is zero", pa.coboundaries.order == 1
    space = CochainSpace(2, 3, A)
    R = _linear_forms(space, inputs["relations"])
    relations = AbHom(space.group, A.repeat(len(R)), R)
    yield "Z2_PA is cut out by the displayed relations", pa.cocycles.same_as(hom_kernel(relations))
    family = Subgroup(space.group, _cochains(space, inputs["parametrized_basis"]))
    yield "Z2_PA is spanned by the parametrized family", pa.cocycles.same_as(family)


@_criterion("mod9-section-cocycle")
def _c4(inputs):
    t, A = abelian_heap(3), Z(3)
    eta = ses_section_cocycle(mod_square_ses(3), t)
    space = CochainSpace(3, 3, A)
    yield "eta(2,0,2)", int(space.value(eta, (2, 0, 2))[0])
    chain = ChainSpace(3, 3).chain(dict_from_pairs(inputs["cycle"]))
    boundary = type0_boundary(t, 2).hom(chain)
    yield (
        "test chain is a type-0 2-cycle",
        not np.any(boundary),
        f"type-0 boundary of the test chain: {boundary.tolist()}",
    )
    values = {tuple(tup): int(space.value(eta, tup)[0]) for tup, _ in inputs["cycle"]}
    yield (
        "pairing of eta with the test chain",
        int(space.pairing(eta, chain)[0]),
        f"eta values on the chain terms: {values}",
    )
    pa = cohomology(t, A, "pa", 2)
    yield "H2_PA(Z3, Z3) is nonzero", pa.group.order != 1
    yield "class of eta in H2_PA(Z3, Z3) is nonzero", not pa.is_trivial_class(eta)
    yield "class of eta in H2_H(Z3, Z3) is nonzero", not cohomology(t, A, "heap", 2).is_trivial_class(eta)


@_criterion("sd-z2-shelf")
def _c5(inputs):
    t = _z2_heap()
    yield "H1_SD(Z2 shelf, Z3)", str(tsd_cohomology(t, Z(3), 1).group)
    r3 = tsd_cohomology(t, Z(3), 2)
    yield "H2_SD(Z2 shelf, Z3)", str(r3.group)
    r2 = tsd_cohomology(t, Z(2), 2)
    yield "H2_SD(Z2 shelf, Z2)", str(r2.group)
    space = CochainSpace(2, 3, Z(2))
    basis = _cochains(space, inputs["basis_z2"])
    yield "displayed Z2 basis lies in ker delta2", all(r2.cocycles.contains(b) for b in basis.T)
    yield "displayed Z2 basis spans ker delta2", Subgroup(space.group, basis).same_as(r2.cocycles)
    yield "im delta1 is zero over Z2", r2.coboundaries.order == 1
    space3 = CochainSpace(2, 3, Z(3))
    basis3 = _cochains(space3, inputs["basis_z3"])
    yield "displayed Z3 basis spans ker delta2", Subgroup(space3.group, basis3).same_as(r3.cocycles)
    image3 = Subgroup(space3.group, _cochains(space3, inputs["image_z3"]))
    yield "displayed generator spans im delta1 over Z3", image3.same_as(r3.coboundaries)


def _tower_structures():
    named = [(f"heap of size {n}", t) for n in (1, 2, 3) for t in enumerate_heaps(n)]
    return named + [("trivial shelf of size 3", trivial_shelf(3))]


@_criterion("differential-towers")
def _c6(inputs):
    A = FinAbGroup.free(1)
    for name, t in _tower_structures():
        d1 = pa_delta1(t, A)
        yield f"{name}: delta2(i) o delta1 = 0 for i = 0, 1, 2", all(
            verify_complex([d1, pa_delta2(t, A, k)]) for k in (0, 1, 2)
        )
        pa_delta3_full(t, A)  # raises unless delta3 o delta2 vanishes
        yield f"{name}: delta3 o delta2 = 0", True
        yield f"{name}: type-0 boundaries square to zero (n <= 4)", verify_complex(
            [type0_boundary(t, n) for n in (4, 3, 2, 1)]
        )
        yield f"{name}: TSD boundaries square to zero (n <= 4)", verify_complex(
            [tsd_boundary(t, n) for n in (4, 3, 2, 1)]
        )


@_criterion("psi-and-essential")
def _c7(inputs):
    for name, t in (("Z2", _z2_heap()), ("Z3", abelian_heap(3))):
        g = heap_to_group(t, 0)
        for n in (1, 2, 3, 4):
            psi_chain_map(g, t, 0, n)  # raises if a square fails to commute
        yield f"{name} heap: Psi is a chain map for n <= 4", True
        m = induced_homology_map(g, t, 0, 2)
        yield f"{name} heap: induced map on H2 is injective", m.injective, f"{m.hom.source} -> {m.hom.target}"
    t = _z2_heap()
    E = essential_homology(t, 0, 2)
    c = essential_chain(t, 0, 2, ChainSpace(2, 3).chain([tuple(inputs["essential_chain"])]))
    yield "essential class of (0,1,1) is nonzero", bool(np.any(E.class_of(c))), f"H~2 = {E.group}"
    for name, t in (("Z2", _z2_heap()), ("Z3", abelian_heap(3))):
        for n in (2, 3):
            yield f"{name} heap: exactness at n = {n}", les_exactness(t, 0, n)


@_criterion("phi2-group-to-heap")
def _c8(inputs):
    g = catalog_group("Z2")
    A = Z(2)
    H = group_cohomology2_normalized(g, A)
    yield "normalized H2_G(Z2, Z2)", str(H.group)
    theta = _expand_normalized(g, A, H.representatives[0])
    eta = phi2_matrix(g, A)(theta)
    heap = cohomology(group_to_heap(g), A, "heap", 2)
    yield "Phi2 of the nontrivial class is nontrivial in H2_H", not heap.is_trivial_class(eta)
    lands, square = {}, {}
    for name in inputs["groups"]:
        g = catalog_group(name)
        h = group_to_heap(g)
        for d in inputs["coefficients"]:
            A = Z(d)
            phi = phi2_matrix(g, A)
            d21, d22 = pa_delta2(h, A, 1), pa_delta2(h, A, 2)
            ok = True
            for coords in group_cohomology2_normalized(g, A).cocycles.elements():
                eta = phi(_expand_normalized(g, A, coords))
                ok &= not np.any(d21(eta)) and not np.any(d22(eta))
            lands[f"{name}/Z{d}"] = bool(ok)
            cols = normalized_tuples(g, 1)
            lhs = matmul(phi2_matrix(g, Z(0)).matrix, group_delta(g, Z(0), 1).int_matrix)[:, cols]
            rhs = -pa_delta1(h, Z(0)).int_matrix[:, cols]
            square[f"{name}/Z{d}"] = bool(np.array_equal(lhs, rhs))
    yield "Phi2 lands in ker delta2(1) and ker delta2(2) for every normalized cocycle", lands
    yield "Phi2 o delta1_G = -delta1_PA on normalized 1-cochains", square


def _expand_normalized(g, A: FinAbGroup, coords) -> np.ndarray:
    """Normalized-coordinate vector to a full 2-cochain vector."""
    k = A.rank
    full = np.zeros(g.size**2 * k, dtype=np.int64)
    for j, c in enumerate(normalized_tuples(g, 2)):
        full[c * k:(c + 1) * k] = np.asarray(coords)[j * k:(j + 1) * k]
    return full


@_criterion("h-injective")
def _c9(inputs):
    injective, ranks = {}, {}
    for n in (1, 2, 3):
        for t in enumerate_heaps(n):
            for d in inputs["coefficients"]:
                m = induced_h2_map(t, Z(d))
                key = f"size {n}/Z{d}"
                injective[key] = m.injective
                ranks[key] = hom_image(m.hom).order == m.hom.source.order
    yield "induced map H2_H -> H2_SD is injective", injective
    yield "order of the image equals |H2_H|", ranks


def _coefficient_groups(max_order: int) -> list[FinAbGroup]:
    out = []
    for factors in ([2], [3], [4], [2, 2], [5], [6], [7], [8], [2, 4], [2, 2, 2], [9], [3, 3]):
        G = FinAbGroup(factors)
        if G.order <= max_order:
            out.append(G)
    return out


@_criterion("extension-classification")
def _c10(inputs):
    count, _ = props.extension_classes(_z2_heap(), Z(2))
    yield "isomorphism classes of extensions of the Z2 heap by Z2", count
    pairs, classes_ok = 0, True
    disagree: dict[str, int] = {}
    example = ""
    equivariant_agree = True
    for n in (1, 2, 3):
        for t in enumerate_heaps(n):
            for A in _coefficient_groups(9 // n):
                specs = [ExtensionSpec(t, A, eta) for eta in heap_cocycles(t, A).elements()]
                for s1, s2 in combinations_with_replacement(specs, 2):
                    snf = extensions_isomorphic(s1, s2, "snf")
                    found = extension_isomorphism(s1, s2) is not None
                    if found != snf:
                        key = f"size {n}/{A}"
                        disagree[key] = disagree.get(key, 0) + 1
                        if not example:
                            sp = s1.space
                            example = f"e.g. {sp.support(s1.eta)} vs {sp.support(s2.eta)} on {key}: "
                            example += f"bijection search {found}, coboundary test {snf}"
                    equivariant_agree &= (extension_isomorphism(s1, s2, equivariant=True) is not None) == snf
                    pairs += 1
                classes, order = props.extension_classes(t, A)
                classes_ok &= classes == order
    note = f"{pairs} pairs"
    if disagree:
        note += f"; disagreements per (X, A): {disagree}; {example}"
    yield "coboundary test agrees with bijection search on all pairs", not disagree, note
    yield "coboundary test agrees with the A-equivariant bijection search on all pairs", equivariant_agree
    yield "class counts equal |H2_H| for all (X, A) with |X x A| <= 9", classes_ok
    t = abelian_heap(3)
    eta = ses_section_cocycle(mod_square_ses(3), t)
    orders = element_orders(heap_to_group(build_extension(ExtensionSpec(t, Z(3), eta)), 0))
    yield "order of the base-point group of Z3 x_eta Z3", len(orders)
    yield "base-point group of Z3 x_eta Z3 is cyclic", max(orders) == len(orders)


@_criterion("obstruction-cocycle")
def _c11(inputs):
    t = _z2_heap()
    H, E, G = Z(2), Z(4), Z(2)
    ses = SesSpec(H, E, G, AbHom(H, E, [[2]]), AbHom(E, G, [[1]]), [[0], [1]])
    cocycles = tsd_cohomology(t, G, 2).cocycles.elements()
    d3 = tsd_delta(t, H, 3)
    ok, nonzero, count = True, 0, 0
    for phi in cocycles:
        if not np.any(phi):
            continue
        alpha = obstruction_3cocycle(t, ses, phi)
        ok &= not np.any(d3(alpha))
        nonzero += bool(np.any(alpha))
        count += 1
    yield "alpha lies in ker delta3_SD for every nonzero phi", ok, f"{count} cocycles, {nonzero} nonzero alpha"


@_criterion("property-suite")
def _c12(inputs):
    yield "any two para-associativity types imply the third", *props.pa_two_imply_third()
    yield "heap to group to heap is the identity at every base point", *props.heap_group_round_trip()
    yield "every heap is a ternary shelf", *props.heaps_are_shelves()
    yield "t(t(x,y,z),z,y) = x on every heap", *props.heap_cancellation()
    yield "SNF round trip", *props.snf_round_trip()
    yield "kernel and image agree with enumeration", *props.kernel_image_exhaustive()
    yield "first isomorphism theorem", *props.first_isomorphism()
    shelf, note = props.trivial_shelf_checks()
    yield "trivial shelf: kernel and image agree with enumeration", shelf["enumeration"], note
    yield "trivial shelf: |ker delta2| = p^(n^2)", shelf["kernel order"]
    yield "trivial shelf: im delta1 is {xi(z) - xi(y)}", shelf["coboundaries"]
    yield (
        "trivial shelf: H1 = A and B1 has order p^(n-1)",
        shelf["resolution"],
        "enumeration: H1 is the constant functions and B1 is Z_p^(n-1), not Z_p^n",
    )
    yield "type-0 cocycles satisfy the cancellation identity", *props.type0_cocycle_identity()
    yield "explicit TSD coboundaries are dual to the boundaries", *props.tsd_duality()
    yield "cohomology is invariant under relabeling", *props.relabel_invariance()
    yield "restricted heap cocycles are normalized group cocycles", *props.restriction_gives_group_cocycles()
    yield "extension of Phi2(theta) equals the heap of the group extension", *props.phi_extension_round_trip()
    count, _ = props.extension_classes(_z2_heap(), Z(2))
    yield "extension classes for (Z2 heap, Z2)", count
    count, order = props.extension_classes(_z2_heap(), Z(3))
    yield "extension classes for (Z2 heap, Z3) equal |H2_H|", count == order, f"{count} classes"
    yield "h(delta1_H f) = -delta1_SD(h f)", *props.h_coboundary_sign()
    cli, _ = props.cli_contracts()
    yield "command reports are deterministic", cli["deterministic"]
    yield "exit codes", cli["exit codes"]


# ----------------------------------------------------------------------
# running
# ----------------------------------------------------------------------


def criteria(manifest: dict | None = None) -> list[dict]:
    manifest = manifest or load_manifest()
    return manifest["criteria"]


def run_criterion(entry: dict) -> CriterionResult:
    result = CriterionResult(entry["id"], entry["key"], entry["title"])
    expected = entry["expected"]
    seen = set()
    start = time.perf_counter()
    try:
        for item in _REGISTRY[entry["key"]](entry.get("inputs", {})):
            name, actual = item[0], _jsonable(item[1])
            note = item[2] if len(item) > 2 else ""
            spec = expected.get(name)
            if spec is None:
                result.outcomes.append(Outcome(name, None, actual, "skip", note=note or "no expected value"))
                continue
            seen.add(name)
            status = "pass" if actual == spec["value"] else "fail"
            result.outcomes.append(Outcome(name, spec["value"], actual, status, spec["source"], note))
    except Exception as exc:  # a crash is a failed outcome, not a crashed suite
        result.outcomes.append(Outcome("error", None, f"{type(exc).__name__}: {exc}", "fail"))
    for name, spec in expected.items():
        if name not in seen:
            result.outcomes.append(Outcome(name, spec["value"], None, "fail", spec["source"], "not computed"))
    result.elapsed_ms = (time.perf_counter() - start) * 1000
    return result


def run_suite(ids: list[int] | None = None) -> list[CriterionResult]:
    return [run_criterion(c) for c in criteria() if ids is None or c["id"] in ids]
