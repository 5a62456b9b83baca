"""Randomized and exhaustive invariant checks.

Each public function returns ``(actual, note)``.  The suite compares
``actual`` against its manifest; ``note`` is free text for the report.
Randomness comes from fixed seeds so reports are reproducible.
"""

from __future__ import annotations

import contextlib
import io as _stdio
import json
import math
import tempfile
from itertools import permutations, product
from pathlib import Path

import numpy as np

from .complexes import (
    CochainSpace,
    cohomology,
    degeneracy_map,
    heap_cocycles,
    pa_delta1,
    pa_delta2,
    tsd_boundary,
    tsd_cohomology,
    tsd_delta,
)
from .core import (
    TernaryTable,
    affine_table,
    check_axiom,
    check_tsd,
    enumerate_heaps,
    group_to_heap,
    heap_to_group,
    is_para_associative,
    check_heap,
    catalog_group,
    trivial_shelf,
)
from .linalg import (
    AbHom,
    FinAbGroup,
    Subgroup,
    hom_image,
    hom_kernel,
    matmul,
    quotient_invariants,
    snf,
)
from .transfers import (
    ExtensionSpec,
    build_extension,
    extensions_isomorphic,
    group_extension,
    phi2_group_to_pa,
    restrict_heap_cocycle_to_group,
)

Z = FinAbGroup.cyclic
SEED = 20240527


def small_heaps(max_size: int = 3) -> list[TernaryTable]:
    return [t for n in range(1, max_size + 1) for t in enumerate_heaps(n)]


# ----------------------------------------------------------------------
# ternary core
# ----------------------------------------------------------------------


def _all_tables(n: int):
    for flat in product(range(n), repeat=n**3):
        yield TernaryTable.from_array(np.array(flat).reshape(n, n, n))


def pa_two_imply_third():
    tables = [t for n in (1, 2) for t in _all_tables(n)]
    tables += [affine_table(3, a, b, c) for a, b, c in product(range(3), repeat=3)]
    tables += small_heaps(3)
    bad = []
    for t in tables:
        holds = [bool(check_axiom(t, f"PA{k}")) for k in range(3)]
        if sum(holds) == 2:
            bad.append(t)
    note = f"{len(tables)} tables: all of size 1 and 2, every affine a*x+b*y+c*z on Z_3, heaps of size 3"
    return not bad, note


def heap_group_round_trip(max_size: int = 6):
    count = 0
    for t in small_heaps(max_size):
        for e in range(t.size):
            if group_to_heap(heap_to_group(t, e)) != t:
                return False, f"fails for {t!r} at base point {e}"
            count += 1
    return True, f"{count} (heap, base point) pairs"


def heaps_are_shelves(max_size: int = 6):
    heaps = small_heaps(max_size)
    return all(check_tsd(t) for t in heaps), f"{len(heaps)} heaps"


def heap_cancellation(max_size: int = 6):
    heaps = small_heaps(max_size)
    for t in heaps:
        T = t.table
        x, y, z = np.indices(T.shape)
        if not np.array_equal(T[T, z, y], x):
            return False, f"fails for {t!r}"
    return True, f"{len(heaps)} heaps"


# ----------------------------------------------------------------------
# abelian groups
# ----------------------------------------------------------------------


def snf_round_trip(trials: int = 300):
    rng = np.random.default_rng(SEED)
    for _ in range(trials):
        r, c = rng.integers(1, 9, size=2)
        M = rng.integers(-9, 10, size=(r, c))
        s = snf(M, uinv=True, vinv=True)
        back = matmul(matmul(s.Uinv, s.D), s.Vinv)
        if not np.array_equal(np.asarray(back, dtype=object), M.astype(object)):
            return False, f"fails on {M.tolist()}"
    return True, f"{trials} matrices, entries in [-9, 9], dims <= 8"


def _random_group(rng, max_order: int) -> FinAbGroup:
    mods = []
    while True:
        d = int(rng.integers(2, 7))
        if math.prod(mods) * d > max_order:
            return FinAbGroup(mods or [d])
        mods.append(d)
        if rng.random() < 0.3:
            return FinAbGroup(mods)


def _random_hom(rng, src: FinAbGroup, dst: FinAbGroup) -> AbHom:
    M = np.zeros((dst.rank, src.rank), dtype=np.int64)
    for j, d in enumerate(src.moduli):
        for i, m in enumerate(dst.moduli):
            step = m // math.gcd(d, m)
            M[i, j] = step * int(rng.integers(0, m))
    return AbHom(src, dst, M)


def _element_set(vectors) -> set[tuple[int, ...]]:
    return {tuple(int(a) for a in v) for v in vectors}


def kernel_image_exhaustive(trials: int = 60):
    rng = np.random.default_rng(SEED + 1)
    for _ in range(trials):
        src, dst = _random_group(rng, 512), _random_group(rng, 64)
        f = _random_hom(rng, src, dst)
        images = {}
        for x in src.elements():
            images[x] = tuple(int(a) for a in f(np.array(x, dtype=np.int64)))
        zero = (0,) * dst.rank
        ker = {x for x, y in images.items() if y == zero}
        if _element_set(hom_kernel(f).elements()) != ker:
            return False, f"kernel differs for {f.matrix.tolist()} from {src} to {dst}"
        if _element_set(hom_image(f).elements()) != set(images.values()):
            return False, f"image differs for {f.matrix.tolist()} from {src} to {dst}"
    return True, f"{trials} random homs with |source| <= 512"


def first_isomorphism(trials: int = 100):
    rng = np.random.default_rng(SEED + 2)
    for _ in range(trials):
        src, dst = _random_group(rng, 4096), _random_group(rng, 512)
        f = _random_hom(rng, src, dst)
        ker, im = hom_kernel(f), hom_image(f)
        coker = quotient_invariants(Subgroup.whole(dst), im)
        if src.order != ker.order * im.order or dst.order != coker.order * im.order:
            return False, f"counts disagree for {f.matrix.tolist()}"
    return True, f"{trials} random homs"


# ----------------------------------------------------------------------
# complexes
# ----------------------------------------------------------------------


def _trivial_shelf_cocycles(n: int, p: int) -> set:
    """2-cocycles of the trivial shelf, by brute force over all ``p**(n**3)`` cochains.

    The condition used here is the one that makes the extension
    ``(T(x,y,z), a - b + c + eta(x,y,z))`` self-distributive.
    """
    T = trivial_shelf(n).table
    etas = np.array(list(product(range(p), repeat=n**3)), dtype=np.int64).reshape(-1, n, n, n)
    x, y, z, u, v = np.indices((n,) * 5).reshape(5, -1)
    lhs = etas[:, x, y, z] + etas[:, T[x, y, z], u, v]
    rhs = (
        etas[:, x, u, v] - etas[:, y, u, v] + etas[:, z, u, v]
        + etas[:, T[x, u, v], T[y, u, v], T[z, u, v]]
    )
    return _element_set(etas[np.all((lhs - rhs) % p == 0, axis=1)].reshape(-1, n**3))


def _trivial_shelf_functions(n: int, p: int):
    """Coboundaries from the change of section ``a -> a + f(x)``, and the count of 1-cocycles."""
    T = trivial_shelf(n).table
    fs = np.array(list(product(range(p), repeat=n)), dtype=np.int64)
    a, b, c = np.indices((n,) * 3).reshape(3, -1)
    cob = (fs[:, a] - fs[:, b] + fs[:, c] - fs[:, T[a, b, c]]) % p
    described = (fs[:, c] - fs[:, b]) % p
    one_cocycles = fs[np.all(cob == 0, axis=1)]
    return _element_set(cob), _element_set(described), len(one_cocycles)


def trivial_shelf_checks():
    """All four trivial-shelf statements at once; returns a dict of verdicts.

    2-cocycles are enumerated for n <= 2 only; everything built from
    functions ``X -> A`` is enumerated up to n = 3.
    """
    match = order = described = resolution = True
    lines = []
    for n, p in product((1, 2, 3), (2, 3)):
        t, A = trivial_shelf(n), Z(p)
        cob, desc, h1 = _trivial_shelf_functions(n, p)
        H2 = tsd_cohomology(t, A, 2)
        H1 = tsd_cohomology(t, A, 1)
        match &= _element_set(H2.coboundaries.elements()) == cob
        described &= cob == desc
        resolution &= h1 == p and H1.group.order == p and len(cob) == p ** (n - 1)
        line = f"n={n} p={p}: |H1|={h1}, |B1|={len(cob)}"
        if n <= 2:
            ker = _trivial_shelf_cocycles(n, p)
            match &= _element_set(H2.cocycles.elements()) == ker
            order &= len(ker) == p ** (n * n)
            line += f", |Z2|={len(ker)}"
        else:
            order &= H2.cocycles.order == p ** (n * n)
        lines.append(line)
    return {
        "enumeration": match,
        "kernel order": order,
        "coboundaries": described,
        "resolution": resolution,
    }, "; ".join(lines)


def type0_cocycle_identity():
    count = 0
    for t in small_heaps(3):
        n, T = t.size, t.table
        x, y, z = np.indices((n,) * 3).reshape(3, -1)
        for A in (Z(2), Z(3)):
            d0 = pa_delta2(t, A, 0)
            deg = degeneracy_map(t, A)
            stacked = AbHom(d0.source, d0.target.direct_sum(deg.target),
                            np.vstack([d0.matrix, deg.matrix]))
            K = hom_kernel(stacked)
            space = CochainSpace(n, 3, A)
            # the identity is linear in eta, so generators suffice
            for g in K.generators.T:
                vals = space.values(g)[:, 0].reshape(n, n, n)
                if np.any((vals[x, y, z] + vals[T[x, y, z], z, y]) % A.moduli[0]):
                    return False, f"fails on heap of size {n} with {A}"
                count += 1
    return True, f"{count} kernel generators over heaps of size <= 3, A in Z_2, Z_3"


def _tsd_structures() -> list[TernaryTable]:
    return small_heaps(3) + [trivial_shelf(2), trivial_shelf(3)]


def tsd_duality():
    signs = set()
    for t in _tsd_structures():
        for n in (1, 2, 3):
            S = tsd_delta(t, Z(2), n).int_matrix
            B = tsd_boundary(t, n + 1).int_matrix.T
            if np.array_equal(S, -B):
                signs.add("-")
            elif np.array_equal(S, B):
                signs.add("+")
            else:
                return False, f"delta{n} is not dual to d{n + 1} on {t!r}"
    return True, f"sign(s) observed: {', '.join(sorted(signs))}"


def _invariants(t: TernaryTable, A: FinAbGroup) -> dict[str, tuple[int, ...]]:
    out = {}
    if is_para_associative(t):
        for dim in (1, 2):
            out[f"pa{dim}"] = cohomology(t, A, "pa", dim).group.invariant_factors
    if check_heap(t):
        out["heap2"] = cohomology(t, A, "heap", 2).group.invariant_factors
    if check_tsd(t):
        for dim in (1, 2):
            out[f"sd{dim}"] = tsd_cohomology(t, A, dim).group.invariant_factors
    return out


def relabel_invariance():
    structures = _tsd_structures() + [affine_table(3, 1, 1, 1), affine_table(3, 2, 2, 2)]
    runs = 0
    for t in structures:
        for A in (Z(2), Z(3)):
            base = _invariants(t, A)
            for perm in permutations(range(t.size)):
                if _invariants(t.relabel(perm), A) != base:
                    return False, f"{t!r} relabelled by {perm} with {A}"
                runs += 1
    return True, f"{runs} relabelled structures"


# ----------------------------------------------------------------------
# transfers
# ----------------------------------------------------------------------


def _group_cocycle_identity(g, A: FinAbGroup, theta) -> bool:
    n = g.size
    vals = CochainSpace(n, 2, A).values(theta)
    P = g.product
    for x, y, z in product(range(n), repeat=3):
        lhs = vals[x * n + y] + vals[P[x, y] * n + z]
        rhs = vals[y * n + z] + vals[x * n + P[y, z]]
        if np.any(A.reduce(lhs - rhs)):
            return False
    e = g.identity
    return not any(np.any(vals[x * n + e]) or np.any(vals[e * n + x]) for x in range(n))


def restriction_gives_group_cocycles():
    count = 0
    for t in small_heaps(3):
        for A in (Z(2), Z(3)):
            elements = heap_cocycles(t, A).elements()
            for e in range(t.size):
                g = heap_to_group(t, e)
                for eta in elements:
                    theta = restrict_heap_cocycle_to_group(t, A, eta, e)
                    if not _group_cocycle_identity(g, A, theta):
                        return False, f"size {t.size}, base point {e}, {A}"
                    count += 1
    return True, f"{count} (cocycle, base point) pairs"


def phi_extension_round_trip():
    from .complexes import group_cohomology2_normalized, normalized_tuples

    count = 0
    for name in ("Z2", "Z3"):
        g = catalog_group(name)
        heap = group_to_heap(g)
        for A in (Z(2), Z(3)):
            k = A.rank
            cols = normalized_tuples(g, 2)
            full = CochainSpace(g.size, 2, A)
            for coords in group_cohomology2_normalized(g, A).cocycles.elements():
                theta = np.zeros(full.group.rank, dtype=np.int64)
                for j, c in enumerate(cols):
                    theta[c * k:(c + 1) * k] = coords[j * k:(j + 1) * k]
                eta = phi2_group_to_pa(g, A, theta)
                ext = build_extension(ExtensionSpec(heap, A, eta))
                if ext != group_to_heap(group_extension(g, A, theta)):
                    return False, f"G={name}, A={A}, theta={theta.tolist()}"
                count += 1
    return True, f"{count} normalized cocycles"


def extension_classes(t: TernaryTable, A: FinAbGroup) -> tuple[int, int]:
    """Number of isomorphism classes among all heap cocycles, and ``|H^2_H|``."""
    specs = [ExtensionSpec(t, A, eta) for eta in heap_cocycles(t, A).elements()]
    reps: list[ExtensionSpec] = []
    for s in specs:
        if not any(extensions_isomorphic(s, r) for r in reps):
            reps.append(s)
    return len(reps), cohomology(t, A, "heap", 2).group.order


def h_coboundary_sign():
    for t in small_heaps(3):
        for A in (Z(2), Z(3), Z(4)):
            if not np.array_equal(pa_delta1(t, A).matrix, -tsd_delta(t, A, 1).matrix):
                return False, f"size {t.size} with {A}"
    return True, "heaps of size <= 3, A in Z_2, Z_3, Z_4"


# ----------------------------------------------------------------------
# command line
# ----------------------------------------------------------------------


def _run_cli(argv: list[str]) -> tuple[int, str]:
    from .cli import main

    buf = _stdio.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(_stdio.StringIO()):
        code = main(argv)
    return code, buf.getvalue()


def cli_contracts():
    from .io import structure_to_json

    with tempfile.TemporaryDirectory() as tmp:
        heap = Path(tmp, "z2.json")
        heap.write_text(json.dumps(structure_to_json(affine_table(2, 1, 1, 1))))
        shelf = Path(tmp, "z3.json")
        shelf.write_text(json.dumps(structure_to_json(affine_table(3, 1, 1, 1))))
        broken = Path(tmp, "broken.json")
        broken.write_text('{"kind": "ternary", "size": 2,\n "table": [0, 1,,]}')
        argv = ["cohomology", str(heap), "--theory", "heap", "--dim", "2", "--coefficients", "2"]
        runs = [json.loads(_run_cli(argv)[1])["results"] for _ in range(2)]
        deterministic = json.dumps(runs[0]) == json.dumps(runs[1])
        codes = {
            "pass": _run_cli(["check", str(heap), "--axioms", "heap"])[0],
            "math failure": _run_cli(["check", str(shelf), "--axioms", "deg"])[0],
            "input error": _run_cli(["check", str(broken)])[0],
        }
    return {"deterministic": deterministic, "exit codes": codes}, ""


__all__ = [
    "small_heaps",
    "pa_two_imply_third",
    "heap_group_round_trip",
    "heaps_are_shelves",
    "heap_cancellation",
    "snf_round_trip",
    "kernel_image_exhaustive",
    "first_isomorphism",
    "trivial_shelf_checks",
    "type0_cocycle_identity",
    "tsd_duality",
    "relabel_invariance",
    "restriction_gives_group_cocycles",
    "phi_extension_round_trip",
    "extension_classes",
    "h_coboundary_sign",
    "cli_contracts",
]
