"""Command-line front end.

Exit codes: 0 when every requested check and manifest claim holds, 1 when one
fails (a witness is included in the report), 2 for usage, I/O and cap errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import __version__
from .code import (
    DEFAULT_MAX_AMBIENT,
    code_from_parity,
    coset_weights,
    min_distance_upto4,
    outer_distance,
    LinearCode,
)
from .errors import (
    BadParameters,
    CapExceeded,
    CrclabError,
    LengthTooSmall,
    SyndromeSpaceTooLarge,
)
from .families import (
    FamilySpec,
    Member,
    build,
    corollary_family,
    distinct_members,
    theorem_main_family,
    to_jsonable,
)
from .graphs import (
    GENERIC_ISO_LIMIT,
    BilinearIsomorphism,
    bilinear_forms_graph,
    check_antipodal,
    check_distance_regular,
    coset_graph,
    explicit_bilinear_isomorphism,
    graph_isomorphic,
    is_isomorphism,
    write_edge_list,
)
from .linalg import format_matrix, read_matrix
from .regularity import IntersectionArray, check_completely_regular, solve_alpha

SCHEMA_VERSION = "crclab.report/1"
MANIFEST_VERSION = "crclab.manifest/1"
FAST_CAP = 1 << 22
SLOW_SYNDROME_CAP = 1 << 28
SLOW_DUAL_CAP = 1 << 25


class UsageError(Exception):
    pass


# -- reports --------------------------------------------------------------------

class Report:
    """Collects report fields; serialised as JSON with a fixed key order."""

    def __init__(self, command: str, spec=None, mode=None):
        self.command = command
        self.spec = spec or {}
        self.params: dict = {}
        self.verdicts: dict = {}
        self.witness = None
        self.timing: dict = {}
        self.mode = mode or {}
        self.failed = False

    @contextmanager
    def phase(self, name):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timing[name] = round(time.perf_counter() - t0, 6)

    def fail(self, check: str, witness):
        if self.witness is None:
            self.witness = {"check": check, "detail": witness}
        self.failed = True

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "tool": {"name": "crclab", "version": __version__, "command": self.command},
            "spec": to_jsonable(self.spec),
            "params": to_jsonable(self.params),
            "verdicts": to_jsonable(self.verdicts),
            "witness": to_jsonable(self.witness),
            "timing": self.timing,
            "mode": to_jsonable(self.mode),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _emit(report: Report, path):
    text = report.dumps()
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def report_schema() -> dict:
    return json.loads((Path(__file__).parent / "report_schema.json").read_text())


# -- manifests ----------------------------------------------------------------

def manifest_path(matrix_path) -> Path:
    return Path(str(matrix_path) + ".manifest.json")


def write_code_files(member: Member, out) -> tuple[Path, Path]:
    out = Path(out)
    out.write_text(format_matrix(member.code.H))
    mpath = manifest_path(out)
    manifest = {
        "schema": MANIFEST_VERSION,
        "family": member.spec.as_dict(),
        "provenance": member.code.provenance,
        "code_params": member.code.params,
    }
    mpath.write_text(json.dumps(to_jsonable(manifest), indent=2) + "\n")
    return out, mpath


def load_code(path) -> tuple[LinearCode, FamilySpec | None]:
    H = read_matrix(path)
    mpath = manifest_path(path)
    if not mpath.exists():
        return code_from_parity(H), None
    manifest = json.loads(mpath.read_text())
    spec = FamilySpec.from_dict(manifest["family"])
    return code_from_parity(H, manifest.get("provenance", "raw"),
                            manifest.get("code_params", {})), spec


# -- caps ---------------------------------------------------------------------

def _caps(args) -> dict:
    env = os.environ.get("CRCLAB_MAX_SYNDROMES")
    syn = SLOW_SYNDROME_CAP if args.slow else FAST_CAP
    if env:
        syn = int(env)
    if getattr(args, "max_syndromes", None):
        syn = args.max_syndromes
    dual = SLOW_DUAL_CAP if args.slow else FAST_CAP
    ambient = DEFAULT_MAX_AMBIENT if args.slow else FAST_CAP
    return {"max_syndromes": syn, "max_dual_words": dual, "max_ambient": ambient,
            "slow": bool(args.slow)}


def _gate(code: LinearCode, caps: dict):
    if code.syndrome_count > caps["max_syndromes"]:
        raise SyndromeSpaceTooLarge(
            f"{code.syndrome_count} syndromes exceed the cap {caps['max_syndromes']}; "
            "use --slow or --max-syndromes")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("CRCLAB_THREADS", "1")))
    except ValueError:
        return 1


# -- commands -------------------------------------------------------------------

def _family_params(args) -> tuple[str, dict]:
    fam = args.family
    need = {
        "kronecker": ("q", "u", "ma", "mb"),
        "lifted": ("q", "m", "r"),
        "up": ("q", "u", "m", "nb"),
        "hamming": ("q", "m"),
        "remark": (),
    }[fam]
    missing = [k for k in need if getattr(args, k) is None and k != "u"]
    if missing:
        raise UsageError(f"--family {fam} needs " + ", ".join("--" + k for k in missing))
    v = {k: getattr(args, k) for k in need}
    if "u" in v and v["u"] is None:
        v["u"] = 1
    rename = {"ma": "m_a", "mb": "m_b", "nb": "n_b"}
    return fam, {rename.get(k, k): val for k, val in v.items()}


def cmd_construct(args) -> int:
    kind, params = _family_params(args)
    member = build(kind, params, slow=True)
    matrix, manifest = write_code_files(member, args.output)
    H = member.code.H
    print(f"wrote {H.rows}x{H.cols} matrix over GF({H.field.order}) to {matrix}; manifest {manifest}")
    return 0


def _compare(report: Report, name: str, computed, claims: dict):
    report.params[name] = computed
    if claims.get(name) is not None and claims[name] != computed:
        report.fail(name, {"claimed": claims[name], "computed": computed})


def cmd_verify(args) -> int:
    code, spec = load_code(args.code)
    caps = _caps(args)
    _gate(code, caps)
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = set(checks) - {"cr", "up", "ia", "d", "alpha"}
    if unknown:
        raise UsageError(f"unknown checks: {sorted(unknown)}")
    claims = spec.claims if spec else {}
    report = Report("verify", spec.as_dict() if spec else {"kind": "raw"},
                    {**caps, "checks": checks, "seed": args.seed})
    _compare(report, "n", code.n, claims)
    _compare(report, "k", code.k, claims)
    report.params["field_order"] = code.Q

    table = None
    if {"cr", "ia", "up", "alpha"} & set(checks):
        with report.phase("coset_weights"):
            table = coset_weights(code, caps["max_syndromes"])
        _compare(report, "rho", table.rho, claims)
        report.params["mu"] = list(table.mu)
    ia = None
    if {"cr", "ia"} & set(checks):
        with report.phase("complete_regularity"):
            res = check_completely_regular(table)
        if isinstance(res, IntersectionArray):
            ia = res
            report.verdicts["cr"] = {"completely_regular": True, "array": res.as_dict()}
        else:
            report.verdicts["cr"] = {"completely_regular": False}
            report.fail("cr", res.as_dict())
    if "ia" in checks:
        claimed = spec.claimed_array() if spec else None
        ok = ia is not None and (claimed is None or claimed == ia)
        report.verdicts["ia"] = {"computed": ia.as_dict() if ia else None,
                                 "claimed": claimed.as_dict() if claimed else None,
                                 "match": ok}
        if not ok and ia is not None:
            report.fail("ia", {"claimed": claimed.as_dict(), "computed": ia.as_dict()})
    if "up" in checks:
        with report.phase("outer_distance"):
            s = outer_distance(code, caps["max_dual_words"])
        _compare(report, "s", s, claims)
        up = table.rho == s
        report.verdicts["up"] = {"rho": table.rho, "s": s, "uniformly_packed": up}
        if not up:
            report.fail("up", {"rho": table.rho, "s": s})
    if "d" in checks:
        with report.phase("min_distance"):
            d = min_distance_upto4(code)
        report.verdicts["d"] = {"d": d}
        d = d if isinstance(d, int) else str(d)
        _compare(report, "d", d, {"d": claims.get("d", 3)})
    if "alpha" in checks:
        with report.phase("alpha"):
            alpha = solve_alpha(code, table.rho, caps["max_ambient"])
        report.verdicts["alpha"] = {"solvable": alpha is not None,
                                    "alpha": [str(a) for a in alpha] if alpha else None}
        if alpha is None:
            report.fail("alpha", "no rational solution")
    _emit(report, args.report)
    return 1 if report.failed else 0


def _verify_explicit(code, table, report, key):
    try:
        iso = explicit_bilinear_isomorphism(code, table)
    except CrclabError as exc:
        report.verdicts[key] = {"verified": False, "reason": str(exc)}
        report.fail(key, str(exc))
        return None
    report.verdicts[key] = {"verified": True, "shape": [iso.d, iso.e], "q": iso.field.order}
    return iso


def cmd_graph(args) -> int:
    code, spec = load_code(args.code)
    caps = _caps(args)
    _gate(code, caps)
    actions = [a.strip() for a in args.actions.split(",") if a.strip()]
    unknown = set(actions) - {"drg", "bilinear-iso", "antipodal", "export"}
    if unknown:
        raise UsageError(f"unknown actions: {sorted(unknown)}")
    report = Report("graph", spec.as_dict() if spec else {"kind": "raw"},
                    {**caps, "actions": actions, "drg_mode": args.mode, "seed": args.seed,
                     "samples": args.samples})
    with report.phase("coset_weights"):
        table = coset_weights(code, caps["max_syndromes"])
    with report.phase("coset_graph"):
        g = coset_graph(table, args.max_vertices)
    report.params.update({"vertices": g.vcount, "degree": int(g.degrees[0]),
                          "edges": g.edge_count, "rho": table.rho})
    drg = None
    if "drg" in actions:
        mode = args.mode
        if mode == "auto":
            mode = "full" if g.vcount <= 4096 else "sampled"
        with report.phase("distance_regular"):
            drg = check_distance_regular(g, mode, args.seed, args.samples)
        report.mode["drg_mode"] = mode
        if isinstance(drg, IntersectionArray):
            claimed = spec.claimed_array() if spec else None
            report.verdicts["drg"] = {"distance_regular": True, "array": drg.as_dict(),
                                      "mode": mode}
            if claimed is not None and claimed != drg:
                report.fail("drg", {"claimed": claimed.as_dict(), "computed": drg.as_dict()})
        else:
            report.verdicts["drg"] = {"distance_regular": False, "mode": mode}
            report.fail("drg", drg.as_dict())
    if "bilinear-iso" in actions:
        with report.phase("bilinear_iso"):
            _verify_explicit(code, table, report, "bilinear_iso")
    if "antipodal" in actions:
        D = drg.rho if isinstance(drg, IntersectionArray) else None
        with report.phase("antipodal"):
            res = check_antipodal(g, D)
        report.verdicts["antipodal"] = "not-applicable" if res is None else res
    if "export" in actions:
        if not args.edges:
            raise UsageError("export needs --edges PATH")
        with report.phase("export"):
            report.params["edge_lines"] = write_edge_list(g, args.edges)
    _emit(report, args.report)
    return 1 if report.failed else 0


def _normalized(iso: BilinearIsomorphism) -> BilinearIsomorphism:
    return iso.transposed() if iso.d > iso.e else iso


def cmd_family(args) -> int:
    caps = _caps(args)
    if args.corollary:
        members = corollary_family(args.q, args.a, args.b)
        kind = "corollary_family"
    else:
        members = distinct_members(theorem_main_family(args.q, args.a, args.b, args.u))
        kind = "main_family"
    params = {"q": args.q, "a": args.a, "b": args.b, "u": args.u}
    report = Report("family", {"kind": kind, "params": params},
                    {**caps, "threads": _threads(), "verify_equal_ia": args.verify_equal_ia,
                     "verify_graph_iso": args.verify_graph_iso})

    def verify(mem: Member):
        t0 = time.perf_counter()
        table = coset_weights(mem.code, caps["max_syndromes"])
        res = check_completely_regular(table)
        return table, res, time.perf_counter() - t0

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(verify, members))

    rows = []
    arrays = []
    for i, (mem, (table, res, dt)) in enumerate(zip(members, results)):
        row = {"item": mem.spec.params.get("item"), "field_order": mem.code.Q,
               "n": mem.code.n, "k": mem.code.k, "rho": table.rho,
               "degenerate": bool(mem.spec.claims.get("degenerate"))}
        report.timing[f"member_{i}"] = round(dt, 6)
        if isinstance(res, IntersectionArray):
            row["array"] = res.as_dict()
            arrays.append(res)
            claimed = mem.spec.claimed_array()
            if claimed != res:
                report.fail("ia", {"member": i, "claimed": claimed.as_dict(),
                                   "computed": res.as_dict()})
        else:
            row["array"] = None
            report.fail("cr", {"member": i, **res.as_dict()})
        for key in ("n", "k", "rho"):
            if mem.spec.claims.get(key) not in (None, row[key]):
                report.fail(key, {"member": i, "claimed": mem.spec.claims[key],
                                  "computed": row[key]})
        rows.append(row)
    report.params["members"] = rows
    report.params["distinct_codes"] = len(members)
    report.params["field_orders"] = sorted({m.code.Q for m in members})
    if args.verify_equal_ia:
        equal = len(arrays) == len(members) and all(a == arrays[0] for a in arrays)
        report.verdicts["equal_ia"] = {"equal": equal,
                                       "array": arrays[0].as_dict() if arrays else None}
        if not equal:
            report.fail("equal_ia", [r["array"] for r in rows])
    if args.verify_graph_iso:
        with report.phase("graph_iso"):
            _family_graph_iso(members, results, report, caps)
    _emit(report, args.report)
    return 1 if report.failed else 0


def _family_graph_iso(members, results, report, caps):
    isos = []
    for i, (mem, (table, _, _)) in enumerate(zip(members, results)):
        iso = _verify_explicit(mem.code, table, report, f"bilinear_iso_{i}")
        isos.append(None if iso is None else _normalized(iso))
    shapes = {(iso.field.order, iso.d, iso.e) for iso in isos if iso is not None}
    explicit_ok = None not in isos and len(shapes) == 1
    verdict = {"explicit": explicit_ok, "bilinear_shape": sorted(shapes)[0] if shapes else None}
    graphs = []
    if all(t.size <= GENERIC_ISO_LIMIT for t, _, _ in results):
        graphs = [coset_graph(t) for t, _, _ in results]
        generic = all(graph_isomorphic(graphs[0], g)[0] for g in graphs[1:])
        verdict["generic"] = generic
        if explicit_ok and len(graphs) > 1:
            q, d, e = sorted(shapes)[0]
            target = bilinear_forms_graph(isos[0].field, d, e)
            verdict["explicit_edge_check"] = all(
                is_isomorphism(g, target, iso.mapping) for g, iso in zip(graphs, isos))
    else:
        verdict["generic"] = "skipped (above generic-search cap)"
    report.verdicts["graph_iso"] = verdict
    if not explicit_ok or verdict.get("generic") is False:
        report.fail("graph_iso", verdict)


# -- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crclab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"crclab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def caps(p):
        p.add_argument("--slow", action="store_true",
                       help="allow syndrome spaces and duals above 2^22")
        p.add_argument("--max-syndromes", type=int, default=None)
        p.add_argument("--report", default=None, help="write the report here (default stdout)")

    c = sub.add_parser("construct", help="build a code and write its matrix and manifest")
    c.add_argument("--family", required=True,
                   choices=["kronecker", "lifted", "up", "remark", "hamming"])
    for name in ("q", "u", "ma", "mb", "m", "r", "nb"):
        c.add_argument(f"--{name}", type=int, default=None)
    c.add_argument("--output", "-o", default="code.txt")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="verify a code against its manifest")
    v.add_argument("code")
    v.add_argument("--checks", default="cr,ia,up,d")
    v.add_argument("--seed", type=int, default=0)
    caps(v)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("graph", help="coset graph analyses")
    g.add_argument("code")
    g.add_argument("--actions", default="drg")
    g.add_argument("--edges", default=None, help="edge-list output path for export")
    g.add_argument("--mode", choices=["auto", "full", "sampled"], default="auto")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--samples", type=int, default=64)
    g.add_argument("--max-vertices", type=int, default=1 << 20)
    caps(g)
    g.set_defaults(func=cmd_graph)

    f = sub.add_parser("family", help="build and verify a same-array family")
    for name in ("q", "a", "b"):
        f.add_argument(f"--{name}", type=int, required=True)
    f.add_argument("--u", type=int, default=1)
    f.add_argument("--verify-equal-ia", action="store_true")
    f.add_argument("--verify-graph-iso", action="store_true")
    f.add_argument("--corollary", action="store_true")
    caps(f)
    f.set_defaults(func=cmd_family)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        return args.func(args)
    except (UsageError, BadParameters, LengthTooSmall, CapExceeded, OSError, ValueError) as exc:
        print(f"crclab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
