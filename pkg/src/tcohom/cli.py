"""``tcohom`` command line.

Every command prints a JSON run report (or a text rendering with
``--pretty``).  Exit status: 0 when every outcome passes, 1 when some
mathematical check fails, 2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Sequence

import numpy as np

from . import io as tio
from .complexes import (
    ChainSpace,
    CochainSpace,
    ComplexError,
    SizeLimitError,
    cohomology,
    essential_homology,
    group_cohomology2_normalized,
    group_delta,
    tsd_cohomology,
    tsd_homology,
    type0_homology,
    _complement,
)
from .core import (
    AxiomError,
    GroupTable,
    TernaryTable,
    brute_force_heaps,
    check_axiom,
    check_degeneracy,
    enumerate_heaps,
    group_to_heap,
    heap_reports,
    heap_to_group,
)
from .linalg import FinAbGroup, hom_kernel
from .transfers import (
    CocycleError,
    h_heap_to_tsd,
    induced_homology_map,
    mod_square_ses,
    phi2_group_to_pa,
    psi_chain_map,
    restrict_heap_cocycle_to_group,
    ses_section_cocycle,
    _group_heap_on,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(tio.InputError):
    pass


def _outcome(name: str, actual: Any, status: str = "pass", expected: Any = None, **extra) -> dict:
    d = {"name": name, "expected": expected, "actual": actual, "status": status}
    d.update(extra)
    return d


class _Inputs:
    """Collects every file read so the report digest covers the real inputs."""

    def __init__(self):
        self.files: dict[str, Any] = {}

    def json(self, path: str) -> Any:
        data = tio.read_json(path)
        self.files[path] = data
        return data

    def value(self, text: str, what: str) -> Any:
        """Inline JSON, or ``@path`` / a path to a JSON file."""
        stripped = text.strip()
        if stripped.startswith(("[", "{")) or stripped.lstrip("-").isdigit():
            data = tio.parse_json(stripped, what)
            self.files[what] = data
            return data
        return self.json(stripped.removeprefix("@"))

    def structure(self, path: str) -> TernaryTable | GroupTable:
        return tio.structure_from_json(self.json(path), path)


def _ternary(s: TernaryTable | GroupTable) -> TernaryTable:
    return group_to_heap(s) if isinstance(s, GroupTable) else s


def _coefficients(text: str | None) -> FinAbGroup:
    if not text:
        raise UsageError("--coefficients is required (e.g. --coefficients 2 or 2,4)")
    try:
        factors = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"--coefficients: expected comma-separated integers, got {text!r}") from None
    if not factors or any(d < 0 for d in factors):
        raise UsageError("--coefficients: factors must be non-negative integers")
    return FinAbGroup(factors)


def _expect(outcome: dict, expected: str | None) -> dict:
    if expected is not None:
        outcome["expected"] = expected
        outcome["status"] = "pass" if outcome["actual"] == expected else "fail"
    return outcome


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

_AXIOMS = ("pa0", "pa1", "pa2", "deg", "heap", "tsd")


def cmd_check(args, inputs: _Inputs) -> list[dict]:
    t = _ternary(inputs.structure(args.path))
    wanted = [a.strip().lower() for a in args.axioms.split(",") if a.strip()]
    unknown = [a for a in wanted if a not in _AXIOMS]
    if unknown:
        raise UsageError(f"--axioms: unknown {', '.join(unknown)}; choose from {', '.join(_AXIOMS)}")
    out = []
    for name in wanted:
        if name in ("pa0", "pa1", "pa2", "tsd"):
            reports = [check_axiom(t, name.upper())]
        elif name == "deg":
            reports = list(check_degeneracy(t))
        else:
            reports = heap_reports(t)
        failed = next((r for r in reports if not r.holds), None)
        if failed is None:
            out.append(_outcome(name, "holds", expected="holds"))
        else:
            out.append(_outcome(
                name, "fails", "fail", "holds",
                axiom=failed.axiom, witness=list(failed.witness),
            ))
    return out


def cmd_cohomology(args, inputs: _Inputs) -> list[dict]:
    s = inputs.structure(args.path)
    A = _coefficients(args.coefficients)
    theory = args.theory
    if theory == "group":
        g = s if isinstance(s, GroupTable) else heap_to_group(s, args.basepoint or 0)
        if args.dim == 2:
            r = group_cohomology2_normalized(g, A)
            reps = [[int(a) for a in v] for v in r.representatives]
            return [_expect(_outcome("normalized H^2_G", str(r.group), representatives=reps), args.expect)]
        Z1 = hom_kernel(group_delta(g, A, 1).hom)
        space = CochainSpace(g.size, 1, A)
        reps = [tio.cochain_to_json(v, space) for v in Z1.generators.T]
        return [_expect(_outcome("H^1_G", str(Z1.structure()), generators=reps), args.expect)]
    t = _ternary(s)
    r = tsd_cohomology(t, A, args.dim) if theory == "sd" else cohomology(t, A, theory, args.dim)
    label = {"pa": "H^{}_PA", "heap": "H^{}_H", "sd": "H^{}_SD"}[theory].format(args.dim)
    data = tio.cohomology_to_json(r)
    return [_expect(_outcome(label, str(r.group), **data), args.expect)]


def _chain_terms(v, space: ChainSpace, index: np.ndarray | None = None) -> list:
    v = np.asarray(v)
    out = []
    for i in np.flatnonzero(v):
        j = int(index[i]) if index is not None else int(i)
        out.append([list(space.indexer.deindex(j)), int(v[i])])
    return out


def cmd_homology(args, inputs: _Inputs) -> list[dict]:
    if not 2 <= args.dim <= 4:
        raise UsageError("--dim must be between 2 and 4")
    t = _ternary(inputs.structure(args.path))
    n = args.dim
    space = ChainSpace(t.size, 2 * n - 1)
    if args.theory == "type0":
        r, index, label = type0_homology(t, n), None, f"H_{n} type 0"
    elif args.theory == "sd":
        r, index, label = tsd_homology(t, n), None, f"H_{n} SD"
    else:
        if args.basepoint is None:
            raise UsageError("the essential theory needs --basepoint")
        e = args.basepoint
        if not 0 <= e < t.size:
            raise UsageError("--basepoint outside the carrier")
        r, index, label = essential_homology(t, e, n), _complement(t.size, n, e), f"H~_{n} (e={e})"
    reps = [_chain_terms(v, space, index) for v in r.representatives]
    out = [_expect(_outcome(label, str(r.group), representatives=reps), args.expect)]
    if args.chain:
        terms = tio.parse_json(args.chain, "--chain")
        try:
            chain = space.chain({tuple(tup): c for tup, c in terms})
        except (TypeError, ValueError) as exc:
            raise UsageError(f"--chain: expected [[tuple, coefficient], ...]: {exc}") from None
        if index is not None:
            chain = chain[index]
        coords = r.class_of(chain)
        out.append(_outcome("class of chain", [int(c) for c in coords], nonzero=bool(np.any(coords))))
    return out


def _eta_input(args, inputs: _Inputs, t: TernaryTable, A: FinAbGroup) -> np.ndarray:
    if args.eta is None:
        raise UsageError("this map needs --eta")
    return tio.cochain_from_json(inputs.value(args.eta, "--eta"), CochainSpace(t.size, 3, A), "--eta")


def _class_word(result, v) -> str:
    return "zero" if result.is_trivial_class(v) else "nonzero"


def cmd_transfer(args, inputs: _Inputs) -> list[dict]:
    kind = args.map
    if kind == "ses":
        if args.ses:
            s = tio.ses_spec_from_json(inputs.json(args.ses), args.ses)
        else:
            if args.n is None:
                raise UsageError("--map ses needs --n (mod n^2 sequence) or --ses PATH")
            s = mod_square_ses(args.n)
        t = inputs.structure(args.path) if args.path else _group_heap_on(s.quot)
        t = _ternary(t)
        eta = ses_section_cocycle(s, t)
        space = CochainSpace(t.size, 3, s.sub)
        H = cohomology(t, s.sub, "heap", 2)
        return [
            _outcome("eta", tio.cochain_to_json(eta, space), support=_support(space, eta)),
            _outcome("heap-cocycle", "pass"),
            _outcome("class", _class_word(H, eta), H2_H=str(H.group)),
        ]
    s = inputs.structure(args.path) if args.path else None
    if s is None:
        raise UsageError(f"--map {kind} needs a structure file")
    if kind == "psi":
        t = _ternary(s)
        e = args.basepoint or 0
        g = heap_to_group(t, e)
        n = args.dim or 2
        if not 1 <= n <= 4:
            raise UsageError("--dim must be between 1 and 4 for psi")
        psi_chain_map(g, t, e, n)
        out = [_outcome("chain map", "pass", dim=n)]
        if n >= 2:
            m = induced_homology_map(g, t, e, n)
            out.append(_outcome("induced map", f"{m.hom.source} -> {m.hom.target}",
                                injective=m.injective, matrix=m.hom.matrix.tolist()))
        return out
    A = _coefficients(args.coefficients)
    if kind == "phi":
        g = s if isinstance(s, GroupTable) else heap_to_group(s, args.basepoint or 0)
        if args.theta is None:
            raise UsageError("--map phi needs --theta")
        space2 = CochainSpace(g.size, 2, A)
        theta = tio.cochain_from_json(inputs.value(args.theta, "--theta"), space2, "--theta")
        eta = phi2_group_to_pa(g, A, theta)
        heap = group_to_heap(g)
        space3 = CochainSpace(g.size, 3, A)
        H = cohomology(heap, A, "heap", 2)
        return [
            _outcome("eta", tio.cochain_to_json(eta, space3), support=_support(space3, eta)),
            _outcome("pa-cocycle", "pass"),
            _outcome("class", _class_word(H, eta), H2_H=str(H.group)),
        ]
    t = _ternary(s)
    eta = _eta_input(args, inputs, t, A)
    if kind == "h":
        v = h_heap_to_tsd(t, A, eta)
        H = tsd_cohomology(t, A, 2)
        return [_outcome("tsd-cocycle", "pass"), _outcome("class", _class_word(H, v), H2_SD=str(H.group))]
    # restrict
    e = args.basepoint or 0
    theta = restrict_heap_cocycle_to_group(t, A, eta, e)
    space2 = CochainSpace(t.size, 2, A)
    return [
        _outcome("theta", tio.cochain_to_json(theta, space2), support=_support(space2, theta)),
        _outcome("group-cocycle", "pass"),
    ]


def _support(space: CochainSpace, v) -> list:
    return [[list(k), list(a)] for k, a in space.support(v).items()]


def cmd_enumerate(args, inputs: _Inputs) -> list[dict]:
    n = args.order
    if not 1 <= n <= 8:
        raise UsageError("--order must be between 1 and 8")
    heaps = enumerate_heaps(n)
    out = [_outcome("count", len(heaps), tables=[t.table.ravel().tolist() for t in heaps])]
    if n <= 2:
        brute = brute_force_heaps(n)
        ok = sorted(t.table.tobytes() for t in brute) == sorted(t.table.tobytes() for t in heaps)
        out.append(_outcome("brute-force cross-check", len(brute), "pass" if ok else "fail", len(heaps)))
    return out


def cmd_paper_suite(args, inputs: _Inputs) -> list[dict]:
    from .suite import criteria, run_criterion

    entries = criteria()
    if args.criteria:
        try:
            ids = {int(p) for p in args.criteria.split(",")}
        except ValueError:
            raise UsageError("--criteria: expected comma-separated criterion numbers") from None
        entries = [c for c in entries if c["id"] in ids]
    if args.list:
        return [_outcome(f"{c['id']}. {c['key']}", c["title"], "skip") for c in entries]
    out = []
    for c in entries:
        r = run_criterion(c)
        d = r.to_dict()
        out.append(_outcome(
            f"{r.id}. {r.key}", r.status, r.status, "pass",
            title=r.title, outcomes=d["outcomes"],
        ))
        if args.timings:
            out[-1]["elapsed_ms"] = round(r.elapsed_ms, 1)
    return out


# ----------------------------------------------------------------------
# plumbing
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tcohom", description="Heap, TSD and para-associative cohomology.")
    p.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    c = sub.add_parser("check", help="test axioms on a structure file")
    c.add_argument("path")
    c.add_argument("--axioms", default="heap", help="comma list of pa0,pa1,pa2,deg,heap,tsd")

    c = sub.add_parser("cohomology", help="compute H^1 or H^2")
    c.add_argument("path")
    c.add_argument("--theory", choices=("pa", "heap", "sd", "group"), required=True)
    c.add_argument("--dim", type=int, choices=(1, 2), required=True)
    c.add_argument("--coefficients", required=True)
    c.add_argument("--basepoint", type=int)
    c.add_argument("--expect", help="expected rendering, e.g. 'Z_2 x Z_2'")

    c = sub.add_parser("homology", help="compute integral homology")
    c.add_argument("path")
    c.add_argument("--theory", choices=("type0", "sd", "essential"), required=True)
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--basepoint", type=int)
    c.add_argument("--chain", help="JSON [[tuple, coefficient], ...] whose class to report")
    c.add_argument("--expect")

    c = sub.add_parser("transfer", help="apply psi, phi, h, restrict or ses")
    c.add_argument("path", nargs="?")
    c.add_argument("--map", choices=("psi", "phi", "h", "restrict", "ses"), required=True)
    c.add_argument("--coefficients")
    c.add_argument("--basepoint", type=int)
    c.add_argument("--dim", type=int)
    c.add_argument("--eta", help="heap 2-cochain: inline JSON or a file path")
    c.add_argument("--theta", help="group 2-cochain: inline JSON or a file path")
    c.add_argument("--n", type=int, help="use 0 -> Z_n -> Z_{n^2} -> Z_n -> 0")
    c.add_argument("--ses", help="short exact sequence JSON file")

    c = sub.add_parser("paper-suite", help="run the acceptance criteria")
    c.add_argument("--list", action="store_true")
    c.add_argument("--criteria", help="comma list of criterion numbers")
    c.add_argument("--timings", action="store_true", help="include per-criterion times")

    c = sub.add_parser("enumerate", help="list heaps of a given order")
    c.add_argument("--order", type=int, required=True)
    return p


_COMMANDS = {
    "check": cmd_check,
    "cohomology": cmd_cohomology,
    "homology": cmd_homology,
    "transfer": cmd_transfer,
    "paper-suite": cmd_paper_suite,
    "enumerate": cmd_enumerate,
}


def _render(report: dict) -> str:
    lines = [f"tcohom {' '.join(report['command'])}"]
    if "error" in report:
        lines.append(f"error: {report['error']}")
    for r in report["results"]:
        lines.append(f"{r['status'].upper():5} {r['name']}: {r['actual']}")
        for o in r.get("outcomes", []):
            lines.append(f"      {o['status'].upper():5} {o['name']}: {o['actual']} (expected {o['expected']})")
            if o.get("note"):
                lines.append(f"            {o['note']}")
        if "witness" in r:
            lines.append(f"      witness {tuple(r['witness'])} for {r['axiom']}")
    lines.append(f"{report['status']} in {report['elapsed_ms']:.0f} ms")
    return "\n".join(lines)


def _failure(exc: Exception) -> dict:
    extra = {}
    if isinstance(exc, AxiomError):
        extra = {"axiom_report": exc.report.to_dict()}
    elif isinstance(exc, CocycleError):
        extra = {"condition": exc.condition, "witness": list(exc.witness) if exc.witness else None}
    return _outcome("error", f"{type(exc).__name__}: {exc}", "fail", **extra)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    inputs = _Inputs()
    report: dict[str, Any] = {"command": argv}
    code = EXIT_PASS
    try:
        results = _COMMANDS[args.command](args, inputs)
    except (tio.InputError, SizeLimitError) as exc:
        print(f"tcohom: error: {exc}", file=sys.stderr)
        results, code = [], EXIT_INPUT
        report["error"] = str(exc)
    except (AxiomError, CocycleError, ComplexError, ArithmeticError) as exc:
        results = [_failure(exc)]
    except ValueError as exc:
        print(f"tcohom: error: {exc}", file=sys.stderr)
        results, code = [], EXIT_INPUT
        report["error"] = str(exc)
    if code == EXIT_PASS and any(r["status"] == "fail" for r in results):
        code = EXIT_FAIL
    report["inputs_digest"] = tio.digest({"argv": argv, "files": inputs.files})
    report["results"] = results
    report["status"] = {EXIT_PASS: "pass", EXIT_FAIL: "fail", EXIT_INPUT: "error"}[code]
    report["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 1)
    print(_render(report) if args.pretty else json.dumps(report, default=_json_default))
    return code


def _json_default(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"not serializable: {type(x).__name__}")


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
