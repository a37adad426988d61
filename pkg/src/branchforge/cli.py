"""Command-line front end: generators, checkers, the round-tree builder,
the surface pipeline, and the bound evaluators.

Exit codes: 0 when the queried property holds or the artifact verifies,
1 when it fails with a witness, 2 for precondition or oracle errors.
Every artifact file is accompanied by a .manifest.json recording the
command, parameters, input hashes, tool version and wall time.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field

from . import __version__, bounds
from .branching import (
    BranchingCertificate,
    check_branching,
    max_branching_n,
    result_from_json,
    result_to_json,
    verify_certificate,
)
from .geometries import GENERATORS, BadParams
from .graph import (
    Graph,
    diameter,
    girth,
    has_induced_square,
    is_connected,
    is_inseparable,
    parse_edge_list,
    valence_range,
)
from .roundtree import build_base, grow, sampled_isometry_check, stage_to_json, verify_stage
from .surface import complex_from_json, complex_to_json, pontryagin_pipeline, surface_checks

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


@dataclass
class RunManifest:
    command: str
    parameters: dict
    input_hashes: dict = field(default_factory=dict)
    tool_version: str = __version__
    wall_time_s: float = 0.0

    def write(self, artifact_path: str) -> None:
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "input_hashes": self.input_hashes,
            "tool_version": self.tool_version,
            "wall_time_s": round(self.wall_time_s, 6),
        }
        with open(artifact_path + ".manifest.json", "w") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
            fh.write("\n")


def _sha256_file(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _load_graph(path: str) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read())


def _threads(args) -> int | None:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("BRANCHFORGE_THREADS")
    if env:
        return int(env)
    return os.cpu_count()


def _write_artifact(path: str, text: str, manifest: RunManifest) -> None:
    with open(path, "w") as fh:
        fh.write(text)
    manifest.write(path)


# -- subcommands ------------------------------------------------------------------


def cmd_gen(args) -> int:
    t0 = time.time()
    params = {"q": args.q}
    if args.family == "td":
        levi = GENERATORS["td"](args.t, args.q)
        params["t"] = args.t
    else:
        levi = GENERATORS[args.family](args.q)
    comments = [
        f"branchforge gen {args.family}",
        " ".join(f"{k}={v}" for k, v in sorted(levi.params.items())),
        f"vertices={levi.graph.V} edges={levi.graph.E}",
    ]
    text = levi.graph.to_edge_list(comments)
    if args.out:
        manifest = RunManifest(
            command=f"gen {args.family}",
            parameters=params,
            wall_time_s=time.time() - t0,
        )
        _write_artifact(args.out, text, manifest)
        print(f"wrote {args.out} ({levi.graph.V} vertices, {levi.graph.E} edges)")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check(args) -> int:
    if args.kind == "surface":
        if not args.complex:
            raise BadParams("check surface requires --complex")
        with open(args.complex) as fh:
            k = complex_from_json(fh.read())
        report = surface_checks(k)
        print(json.dumps(report, indent=1, sort_keys=True))
        ok = (
            report["is_closed_surface"]
            and bool(report["is_orientable"])
            and report["is_flag"]
            and not report["has_induced_square"]
            and report["is_L_full"]
        )
        return EXIT_OK if ok else EXIT_FAIL

    if not args.graph:
        raise BadParams(f"check {args.kind} requires --graph")
    g = _load_graph(args.graph)
    if args.kind == "branching":
        result = check_branching(g, args.n, args.m, threads=_threads(args))
        certified = isinstance(result, BranchingCertificate)
        text = result_to_json(g, result)
        if args.cert:
            manifest = RunManifest(
                command="check branching",
                parameters={"n": args.n, "m": args.m},
                input_hashes={"graph": _sha256_file(args.graph)},
            )
            _write_artifact(args.cert, text, manifest)
        else:
            sys.stdout.write(text)
        return EXIT_OK if certified else EXIT_FAIL

    if args.kind == "invariants":
        report = {
            "vertices": g.V,
            "edges": g.E,
            "girth": _json_num(girth(g)),
            "diameter": _json_num(diameter(g)),
            "valence": list(valence_range(g)),
            "connected": is_connected(g),
            "has_induced_square": has_induced_square(g)[0],
        }
        print(json.dumps(report, indent=1, sort_keys=True))
        ok = True
        if args.expect_girth is not None:
            ok &= report["girth"] == args.expect_girth
        if args.expect_diameter is not None:
            ok &= report["diameter"] == args.expect_diameter
        return EXIT_OK if ok else EXIT_FAIL

    if args.kind == "inseparable":
        flag, witness = is_inseparable(g)
        print(
            json.dumps(
                {
                    "inseparable": flag,
                    "witness": [g.names[v] for v in witness] if witness else None,
                },
                indent=1,
            )
        )
        return EXIT_OK if flag else EXIT_FAIL

    raise BadParams(f"unknown check kind {args.kind!r}")


def _json_num(x):
    return None if x == float("inf") else int(x)


def cmd_certify(args) -> int:
    t0 = time.time()
    g = _load_graph(args.graph)
    result = check_branching(g, args.n, args.m, threads=_threads(args))
    certified = isinstance(result, BranchingCertificate)
    if certified:
        ok, problems = verify_certificate(g, result)
        if not ok:
            print("certificate failed re-validation:", problems[0], file=sys.stderr)
            return EXIT_ERROR
    manifest = RunManifest(
        command="certify",
        parameters={"n": args.n, "m": args.m},
        input_hashes={"graph": _sha256_file(args.graph)},
        wall_time_s=time.time() - t0,
    )
    _write_artifact(args.out, result_to_json(g, result), manifest)
    print(f"{'certificate' if certified else 'failure'} written to {args.out}")
    return EXIT_OK if certified else EXIT_FAIL


def cmd_max_n(args) -> int:
    g = _load_graph(args.graph)
    n = max_branching_n(g, args.m, threads=_threads(args))
    print(json.dumps({"m": args.m, "max_n": n}))
    return EXIT_OK


def cmd_roundtree(args) -> int:
    t0 = time.time()
    g = _load_graph(args.graph)
    if args.base_path:
        path = tuple(g.index(x) for x in args.base_path.split(","))
    else:
        path = _default_base_path(g)
    result = check_branching(g, args.n, args.m, threads=_threads(args))
    if not isinstance(result, BranchingCertificate):
        print(
            f"graph is not ({args.n},{args.m})-branching: "
            f"P={result.path} U={result.subset} {result.reason}",
            file=sys.stderr,
        )
        return EXIT_ERROR
    from .branching import BranchingSearch

    search = BranchingSearch(g, args.m)
    stage = build_base(g, path, args.n, args.m)
    for _ in range(args.depth):
        stage = grow(stage, search)
    report = verify_stage(stage)
    out = {
        "verification": json.loads(report.to_json()),
    }
    if args.sample:
        iso = sampled_isometry_check(stage, args.sample, args.seed)
        out["isometry"] = json.loads(iso.to_json())
    if args.out:
        manifest = RunManifest(
            command="roundtree",
            parameters={
                "n": args.n,
                "m": args.m,
                "depth": args.depth,
                "seed": args.seed,
                "sample": args.sample,
            },
            input_hashes={"graph": _sha256_file(args.graph)},
            wall_time_s=time.time() - t0,
        )
        _write_artifact(args.out, stage_to_json(stage), manifest)
        out["stage_file"] = args.out
    print(json.dumps(out, indent=1, sort_keys=True))
    all_ok = report.passed and (
        args.sample == 0 or out["isometry"]["passed"]
    )
    return EXIT_OK if all_ok else EXIT_FAIL


def _default_base_path(g: Graph):
    """First induced 2-path in index order, falling back to the first edge."""
    for u in range(g.V):
        for w in g.neighbors(u):
            for v in g.neighbors(w):
                if v != u and not g.has_edge(u, v):
                    return (u, w, v)
    for u in range(g.V):
        for v in g.neighbors(u):
            return (u, v)
    raise BadParams("graph has no edges")


def cmd_surface(args) -> int:
    t0 = time.time()
    g = _load_graph(args.graph)
    cert = None
    if args.cert:
        with open(args.cert) as fh:
            loaded = result_from_json(g, fh.read())
        if isinstance(loaded, BranchingCertificate):
            cert = loaded
    result = pontryagin_pipeline(g, cert)
    payload = dict(result.report)
    payload["confdim_bound"] = result.confdim_bound
    payload["certificate_ref"] = result.certificate_ref
    if args.out:
        manifest = RunManifest(
            command="surface",
            parameters={},
            input_hashes={"graph": _sha256_file(args.graph)},
            wall_time_s=time.time() - t0,
        )
        _write_artifact(args.out, complex_to_json(result.complex), manifest)
        payload["complex_file"] = args.out
    print(json.dumps(payload, indent=1, sort_keys=True))
    return EXIT_OK


def cmd_bound(args) -> int:
    kwargs = {}
    for key in ("n", "m", "V", "H", "E", "q"):
        value = getattr(args, key, None)
        if value is not None:
            kwargs[key] = value
    rep = bounds.report(args.name, **kwargs)
    if args.json:
        print(json.dumps(rep.as_dict(), indent=1, sort_keys=True))
    else:
        inputs = " ".join(f"{k}={v}" for k, v in sorted(rep.inputs.items()))
        print(f"{rep.name}  {inputs}  value={rep.value!r}  [{rep.formula}]")
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="branchforge",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen", help="generate an incidence graph family member")
    p.add_argument("family", choices=sorted(GENERATORS))
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", type=int, help="parts (td family only)")
    p.add_argument("--out", help="edge-list output path (stdout when omitted)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="run a property checker")
    p.add_argument("kind", choices=["branching", "invariants", "inseparable", "surface"])
    p.add_argument("--graph", help="edge-list file")
    p.add_argument("--complex", help="complex JSON file (surface check)")
    p.add_argument("-n", type=int, default=1)
    p.add_argument("-m", type=int, default=6)
    p.add_argument("--cert", help="write the branching result here")
    p.add_argument("--expect-girth", type=int)
    p.add_argument("--expect-diameter", type=int)
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("certify", help="check branching and write the certificate")
    p.add_argument("--graph", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("max-n", help="largest certified n at a fixed cycle bound")
    p.add_argument("--graph", required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_max_n)

    p = sub.add_parser("roundtree", help="build and verify a round-tree stage")
    p.add_argument("--graph", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--base-path", help="comma-separated vertex labels")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sample", type=int, default=0, help="isometry sample pairs")
    p.add_argument("--out", help="stage JSON output path")
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_roundtree)

    p = sub.add_parser("surface", help="run the surface-triangulation pipeline")
    p.add_argument("--graph", required=True)
    p.add_argument("--cert", help="branching certificate JSON for the bound")
    p.add_argument("--out", help="complex JSON output path")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("bound", help="evaluate a closed-form bound")
    p.add_argument("name", choices=["branching", "mackay", "genus", "min-edges", "genm"])
    p.add_argument("-n", type=int)
    p.add_argument("-m", type=int)
    p.add_argument("-V", type=int)
    p.add_argument("-H", type=int)
    p.add_argument("-E", type=int)
    p.add_argument("-q", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bound)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
