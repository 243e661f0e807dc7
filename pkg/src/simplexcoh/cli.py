"""Command-line front end.

Subcommands follow the construction in order: ``catalog``, ``verify-fse``,
``cohomology``, ``cocycle``, ``quantum-verify`` and ``tetra``.  Table output
is TSV; ``--format structured`` prints one JSON object with the keys
``command``, ``inputs``, ``results`` and ``timings``.  The exit status is 0
exactly when the checked identity holds; input errors exit with 2.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import cohomology as coh
from . import tetrahedron as tet
from .polynomial import VARIABLES
from .quantum_ops import format_cocycle, parse_cocycle, quintuple_from_cocycle, verify_nonconstant_qfse
from .simplex_core import (
    format_matrix,
    hietarinta_catalog,
    linear_map_from_matrix,
    resolve_matrix,
    unpack_state,
    verify_set_fse,
)


class InputError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _base(text: str) -> Fraction:
    b = _rational(text)
    if b <= 0 or b == 1:
        raise argparse.ArgumentTypeError("base must be positive and different from 1")
    return b


def _load_map(selector: str):
    try:
        m = resolve_matrix(selector)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    except ValueError as exc:
        raise InputError(f"{selector}: {exc}") from None
    return m, linear_map_from_matrix(m)


def _state_str(s: int) -> str:
    return "".join(str(b) for b in unpack_state(s))


def _emit(args, results: dict, table: str, started: float) -> None:
    if args.format == "structured":
        inputs = {k: _jsonable(v) for k, v in vars(args).items() if k not in ("func", "format", "output")}
        text = json.dumps(
            {
                "command": args.command,
                "inputs": inputs,
                "results": results,
                "timings": {"seconds": round(time.perf_counter() - started, 3)},
            },
            indent=2,
        )
    else:
        text = table
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def cmd_catalog(args) -> int:
    started = time.perf_counter()
    entries = hietarinta_catalog()
    blocks = [f"{name}\n{format_matrix(m)}" for name, m in entries]
    results = {name: ["".join(map(str, row)) for row in m] for name, m in entries}
    _emit(args, results, "\n\n".join(blocks), started)
    return 0


def cmd_verify_fse(args) -> int:
    started = time.perf_counter()
    _, r = _load_map(args.selector)
    verdict = verify_set_fse(r)
    ce = None if verdict.holds else _state_str(verdict.counterexample)
    table = "holds" if verdict.holds else f"fails\tcounterexample\t{ce}"
    _emit(args, {"matrix": args.selector, "holds": verdict.holds, "counterexample": ce}, table, started)
    return 0 if verdict.holds else 1


def _selectors(args) -> list[str]:
    if args.all:
        return [name for name, _ in hietarinta_catalog()]
    if not args.selector:
        raise InputError("give a matrix selector or --all")
    return [args.selector]


def cmd_cohomology(args) -> int:
    started = time.perf_counter()
    rows, results, ok = [], [], True
    names = _selectors(args)
    maps = {name: _load_map(name)[1] for name in names}
    for name in names:
        if not verify_set_fse(maps[name]):
            raise InputError(f"{name} does not satisfy the set-theoretical four-simplex equation")
    if args.constrained:
        rows.append("matrix\tconstrained_dim\tcoboundary_dim\tconstant_dim\tessential")
        op_rows = ["matrix\toperator\tcocycle_proj\tcoboundary_proj\tessential"]
        for name in names:
            rep = coh.constrained_report(maps[name])
            ops = coh.per_operator_dims(maps[name])
            rows.append("\t".join([name, *map(str, rep.as_tuple())]))
            op_rows += ["\t".join([name, o.label, *map(str, o.as_tuple())]) for o in ops]
            results.append(
                {
                    "matrix": name,
                    "constrained_dim": rep.constrained_dim,
                    "coboundary_dim": rep.constrained_coboundary_dim,
                    "constant_dim": rep.constant_dim,
                    "essential": rep.essential,
                    "per_operator": {o.label: list(o.as_tuple()) for o in ops},
                }
            )
        table = "\n".join(rows) + "\n\n" + "\n".join(op_rows)
    else:
        rows.append("matrix\tn\td\th")
        for name in names:
            rep = coh.dimension_report(maps[name])
            ok &= rep.direct_sum_ok
            rows.append(f"{name}\t{rep.n}\t{rep.d}\t{rep.h}")
            results.append({"matrix": name, **rep.as_dict()})
        table = "\n".join(rows)
    _emit(args, {"rows": results}, table, started)
    return 0 if ok else 1


def _basis_for(r, constrained: bool):
    return coh.constrained_cocycle_basis(r) if constrained else coh.cocycle_basis(r)


def _pick_vector(basis, index: int):
    if not 0 <= index < basis.dim:
        raise InputError(f"basis index {index} out of range 0..{basis.dim - 1}")
    return basis.vectors[index]


def cmd_cocycle(args) -> int:
    started = time.perf_counter()
    _, r = _load_map(args.selector)
    basis = _basis_for(r, args.constrained)
    vec = coh.CochainVector(_pick_vector(basis, args.index))
    text = format_cocycle(vec)
    _emit(args, {"dimension": basis.dim, "cocycle": text}, text, started)
    return 0


def _read_cocycle(path: str):
    try:
        return parse_cocycle(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_quantum_verify(args) -> int:
    started = time.perf_counter()
    _, r = _load_map(args.selector)
    if not r.is_bijective():
        raise InputError(f"{args.selector} is not bijective")
    if args.cocycle_file:
        c = _read_cocycle(args.cocycle_file)
    elif args.basis_index is not None:
        c = _pick_vector(_basis_for(r, args.constrained), args.basis_index)
    else:
        c = coh.CochainVector.zero()
    quint = quintuple_from_cocycle(r, c)
    verdict = verify_nonconstant_qfse(quint)
    ce = None if verdict.holds else _state_str(verdict.counterexample)
    results = {
        "holds": verdict.holds,
        "counterexample": ce,
        "operators": {
            label: {"perm": list(op.perm), "exponents": [str(v) for v in op.log_scalars]}
            for label, op in zip("RSTUV", quint)
        },
    }
    table = "holds" if verdict.holds else f"fails\tcounterexample\t{ce}"
    _emit(args, results, table, started)
    return 0 if verdict.holds else 1


def _parse_family(text: str | None) -> list:
    if not text:
        return [None] * 6
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 6:
        raise InputError("--family takes six comma-separated values a,b,c,a',b',c'")
    try:
        return [None if p in ("", VARIABLES[i]) else _rational(p) for i, p in enumerate(parts)]
    except argparse.ArgumentTypeError as exc:
        raise InputError(str(exc)) from None


def _analysis(k, args, numeric_abc) -> dict:
    out: dict = {}
    g3 = tet.genuine_3d_check(k)
    out["irreducible_123"] = [f.irreducible for f in g3.factors]
    if all(x.is_constant() for row in k.entries for x in row):
        vac = tet.vacuum_search(k, seed=args.seed, starts=args.vacuum_starts)
        out["vacuum_found"] = vac.found
        out["vacuum_residual"] = vac.residual
    else:
        out["vacuum_found"] = None
    if numeric_abc is not None and all(v > 0 for v in numeric_abc):
        th = tet.thermo(*numeric_abc)
        out["lambda"] = str(th.lam)
        out["lambda_approx"] = th.lam_approx
        out["free_energy"] = th.free_energy
        out["eigen_identity"] = th.eigen_identity
    else:
        out["lambda"] = None
        out["free_energy"] = None
    return out


def cmd_tetra(args) -> int:
    started = time.perf_counter()
    if args.from_cocycle:
        selector, index = args.from_cocycle
        try:
            index = int(index)
        except ValueError:
            raise InputError(f"basis index must be an integer, got {index!r}") from None
        _, r = _load_map(selector)
        basis = coh.constrained_cocycle_basis(r)
        c = _pick_vector(basis, index)
        q = tet.trace_construct(r, c, args.base)
        conj = tet.verify_conjugated_identity(r, c, args.base)
        source = {"from_cocycle": selector, "index": index, "base": str(args.base)}
    else:
        params = _parse_family(args.family)
        q = tet.family_quadruple(params)
        conj = None
        source = {"family": [None if p is None else str(p) for p in params]}
    verdict = tet.verify_tetrahedron(q)
    deps = sorted(verdict.parameters_involved(), key=VARIABLES.index)
    sym = tet.symmetric_pattern_check(q)
    results = {
        **source,
        "tetrahedron_holds": verdict.holds,
        "dependencies": deps,
        "symmetric": sym.symmetric,
        "pattern_ok": sym.pattern_ok,
        "fitted_params": sym.fitted_params(),
        "quadruple": q.serialize(),
    }
    if conj is not None:
        results["conjugated_identity_holds"] = conj.holds
    lines = [
        f"identity: {'yes' if verdict.holds else 'no'}, dependencies: {', '.join(deps) if deps else 'none'}",
        f"symmetric: {'yes' if sym.symmetric else 'no'}\tpattern_ok: {'yes' if sym.pattern_ok else 'no'}",
    ]
    if conj is not None:
        lines.append(f"conjugated identity: {'yes' if conj.holds else 'no'}")
    if args.analyze:
        fit_k = sym.fits[0].fitted
        numeric = None
        if fit_k is not None and all(x.is_constant() for x in fit_k):
            numeric = tuple(x.constant_value() for x in fit_k)
        analysis = _analysis(q.K, args, numeric)
        results.update(analysis)
        lines.append("irreducible_123: " + " ".join("yes" if v else "no" for v in analysis["irreducible_123"]))
        if analysis["vacuum_found"] is not None:
            lines.append(f"vacuum_found: {'yes' if analysis['vacuum_found'] else 'no'}")
        if analysis["lambda"] is not None:
            lines.append(f"lambda: {analysis['lambda']}\t({analysis['lambda_approx']:.12g})")
            lines.append(f"free_energy: {analysis['free_energy']:.12g}")
    holds = verdict.holds and (conj is None or conj.holds)
    _emit(args, results, "\n".join(lines), started)
    return 0 if holds else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "structured"), default="table")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--base", type=_base, default=Fraction(2), help="base for instantiating log-scalars")

    parser = argparse.ArgumentParser(prog="simplexcoh", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="print the eight two-color linear solutions")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify-fse", parents=[common], help="check the set-theoretical four-simplex equation")
    p.add_argument("selector", help="catalog name (A1..A4T) or path to a 4x4 0/1 matrix file")
    p.set_defaults(func=cmd_verify_fse)

    p = sub.add_parser("cohomology", parents=[common], help="(n, d, h) tables or the constrained report")
    p.add_argument("selector", nargs="?")
    p.add_argument("--all", action="store_true", help="every catalog matrix")
    p.add_argument("--constrained", action="store_true", help="cocycles with phi_V identically 1")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("cocycle", parents=[common], help="print one cocycle basis vector in file format")
    p.add_argument("selector")
    p.add_argument("index", type=int)
    p.add_argument("--constrained", action="store_true")
    p.set_defaults(func=cmd_cocycle)

    p = sub.add_parser("quantum-verify", parents=[common], help="check the nonconstant quantum equation")
    p.add_argument("selector")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--basis-index", type=int)
    src.add_argument("--cocycle-file")
    p.add_argument("--constrained", action="store_true", help="index into the constrained basis")
    p.set_defaults(func=cmd_quantum_verify)

    p = sub.add_parser("tetra", parents=[common], help="verify the tetrahedron equation")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument(
        "--family",
        nargs="?",
        const="",
        metavar="a,b,c,a',b',c'",
        help="explicit symmetric families; omit values (or give names) for formal parameters",
    )
    src.add_argument("--from-cocycle", nargs=2, metavar=("SELECTOR", "INDEX"))
    p.add_argument("--analyze", action="store_true", help="add irreducibility, vacuum and free-energy fields")
    p.add_argument("--vacuum-starts", type=int, default=1000)
    p.set_defaults(func=cmd_tetra)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
