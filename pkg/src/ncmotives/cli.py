"""Command-line front door.

Subcommands: euler-matrix, serre-check, smooth-check, hochschild, intersect,
trace, verify, corpus.  Inputs are JSON files (schemas in docs/formats.md);
output is a JSON report on stdout or --out.  Identical inputs and seed
produce byte-identical reports (timing is only included with --timing).

Exit codes: 0 all checks passed; 1 some check failed; 2 malformed input;
3 unsupported input class (e.g. a cyclic quiver); 4 resolution cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from fractions import Fraction

from .algebra import (
    Algebra,
    AlgebraStructureError,
    CyclicQuiverError,
    Quiver,
    opposite,
    path_algebra,
    scalar_algebra,
    tensor,
)
from .complexes import PerfectComplex
from .corpus import (
    CORPUS_NAMES,
    corpus_algebra,
    corpus_motive_scenarios,
    random_correspondence,
    random_perfect_complex,
)
from .derived import (
    check_proper,
    check_smooth,
    euler_matrix,
    kernel_left,
    kernel_right,
    serre,
    euler_pairing,
    simple_resolutions,
)
from .hochschild import bar_oracle, hochschild, intersection_number
from .homalg import hom_complex
from .linalg import Matrix
from .modules import Module, diagonal_bimodule, dual_bimodule
from .motives import (
    Correspondence,
    NCMotive,
    build_hom_model,
    complement_idempotent,
    hom_algebra,
    ideal_stability_samples,
    trace,
    verify_equivalence,
    vertex_cut_idempotent,
)
from .resolutions import DEFAULT_CAP, ResolutionCapExceeded, resolution_length

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BAD_INPUT = 2
EXIT_UNSUPPORTED = 3
EXIT_CAP = 4


class InputError(ValueError):
    pass


# -- scalar / matrix (de)serialization ------------------------------------------


def scalar_to_json(x):
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    return int(x)


def scalar_from_json(v):
    if isinstance(v, bool):
        raise InputError("booleans are not scalars")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational literal {v!r}") from exc
    raise InputError(f"bad scalar {v!r}")


def matrix_to_json(m: Matrix):
    return [[scalar_to_json(x) for x in row] for row in m.data]


# -- algebra specs -----------------------------------------------------------------


def algebra_from_spec(spec) -> Algebra:
    """Build an algebra from a JSON spec.

    Kinds: scalar | named | quiver | opposite | tensor | table."""
    if not isinstance(spec, dict):
        raise InputError("algebra spec must be an object")
    kind = spec.get("kind", "quiver")
    if kind == "scalar":
        return scalar_algebra()
    if kind == "named":
        name = spec.get("name")
        if name not in CORPUS_NAMES:
            raise InputError(f"unknown named algebra {name!r}")
        return corpus_algebra(name)
    if kind == "quiver":
        try:
            vertices = spec["vertices"]
            arrows = [
                (a["from"], a["to"], a["label"]) for a in spec.get("arrows", [])
            ]
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad quiver spec: {exc}") from exc
        return path_algebra(Quiver(vertices, arrows))
    if kind == "opposite":
        return opposite(algebra_from_spec(spec["of"]))
    if kind == "tensor":
        factors = spec.get("factors", [])
        if len(factors) != 2:
            raise InputError("tensor spec needs exactly two factors")
        return tensor(algebra_from_spec(factors[0]), algebra_from_spec(factors[1]))
    if kind == "table":
        try:
            dim = spec["dim"]
            labels = spec.get("labels") or [f"b{i}" for i in range(dim)]
            mul = [
                [[scalar_from_json(x) for x in vec] for vec in row]
                for row in spec["mul"]
            ]
            unit = [scalar_from_json(x) for x in spec["unit"]]
            idems = [
                [scalar_from_json(x) for x in e] for e in spec["idempotents"]
            ]
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad table spec: {exc}") from exc
        return Algebra(dim, labels, mul, unit, idems, meta={"name": "table"})
    raise InputError(f"unknown algebra kind {kind!r}")


def module_from_spec(spec, algebra: Algebra) -> Module:
    """Module over `algebra` from {"dim": d, "action": {label: matrix}}."""
    if not isinstance(spec, dict):
        raise InputError("module spec must be an object")
    if "named" in spec:
        raise InputError("named coefficients are resolved by the caller")
    try:
        dim = spec["dim"]
        action_by_label = spec["action"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad module spec: {exc}") from exc
    pos = {lab: i for i, lab in enumerate(algebra.labels)}
    action = [None] * algebra.dim
    for lab, rows in action_by_label.items():
        if lab not in pos:
            raise InputError(f"unknown basis label {lab!r}")
        action[pos[lab]] = Matrix(
            dim, dim, [[scalar_from_json(x) for x in r] for r in rows]
        )
    if any(m is None for m in action):
        missing = [l for l, m in zip(algebra.labels, action) if m is None]
        raise InputError(f"action missing for basis elements {missing}")
    m = Module(algebra, dim, action)
    m.check()
    return m


def complex_from_spec(spec, algebra: Algebra):
    """Bounded complex from degree-indexed module specs plus differentials:
    {"components": {"0": <module>, "-1": <module>}, "differentials":
    {"-1": [[...]]}} where the matrix at degree n maps degree n to n+1."""
    from .complexes import Complex

    try:
        comps = {
            int(k): module_from_spec(v, algebra)
            for k, v in spec.get("components", {}).items()
        }
        diffs = {}
        for k, rows in spec.get("differentials", {}).items():
            n = int(k)
            mat = Matrix(
                comps[n].dim,
                comps[n + 1].dim if (n + 1) in comps else 0,
                [[scalar_from_json(x) for x in r] for r in rows],
            )
            diffs[n] = mat
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad complex spec: {exc}") from exc
    return Complex(algebra, comps, diffs)


def coefficients_from_spec(spec, algebra: Algebra):
    from .algebra import enveloping_algebra

    if spec is None or (isinstance(spec, dict) and spec.get("named") == "diagonal"):
        return diagonal_bimodule(algebra)
    if isinstance(spec, dict) and spec.get("named") == "dual":
        return dual_bimodule(algebra)
    if isinstance(spec, dict) and "components" in spec:
        return complex_from_spec(spec, enveloping_algebra(algebra))
    return module_from_spec(spec, enveloping_algebra(algebra))


def motive_from_spec(spec) -> NCMotive:
    if not isinstance(spec, dict):
        raise InputError("motive spec must be an object")
    a = algebra_from_spec(spec.get("algebra", {"kind": "scalar"}))
    idem = spec.get("idempotent")
    if idem is None or idem.get("kind", "identity") == "identity":
        return NCMotive(a)
    kind = idem["kind"]
    if kind == "vertex-cut":
        return NCMotive(a, vertex_cut_idempotent(a, idem.get("vertices", [])))
    if kind == "complement":
        inner = motive_from_spec({"algebra": spec["algebra"], "idempotent": idem["of"]})
        if inner.idem is None:
            raise InputError("complement of the identity is the zero class")
        return NCMotive(a, complement_idempotent(inner.idem))
    raise InputError(f"unknown idempotent kind {kind!r}")


def correspondence_from_spec(spec, src: NCMotive, dst: NCMotive, cap: int) -> Correspondence:
    if not isinstance(spec, dict) or "terms" not in spec:
        raise InputError("correspondence spec must have a terms list")
    e = hom_algebra(src.algebra, dst.algebra)
    terms = []
    for t in spec["terms"]:
        coeff = scalar_from_json(t.get("coefficient", 1))
        b = t.get("bimodule", {})
        kind = b.get("kind")
        if kind == "simple":
            pc = simple_resolutions(e, cap)[b["index"]]
        elif kind == "projective":
            i, j = b["pair"]
            n_b = len(dst.algebra.idempotents)
            pc = PerfectComplex(e, {0: (i * n_b + j,)}, {})
        elif kind == "diagonal":
            if src.algebra is not dst.algebra:
                raise InputError("diagonal terms need equal source and target algebras")
            from .derived import diagonal_resolution

            pc = diagonal_resolution(src.algebra, cap)
        else:
            raise InputError(f"unknown bimodule kind {kind!r}")
        shift = t.get("shift", 0)
        if shift:
            pc = pc.shift(shift)
        terms.append((coeff, pc))
    return Correspondence(src, dst, terms)


# -- report plumbing ----------------------------------------------------------------


def digest(obj) -> str:
    return hashlib.sha256(
        json.dumps(obj, sort_keys=True, default=str).encode()
    ).hexdigest()[:16]


def make_check(name, identity, expected, actual):
    return {
        "name": name,
        "identity": identity,
        "expected": str(expected),
        "actual": str(actual),
        "pass": str(expected) == str(actual),
    }


def emit(report, args) -> int:
    report["format"] = 1
    if getattr(args, "timing", False):
        report["elapsed_seconds"] = round(time.monotonic() - args._t0, 3)
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.get("verdict", True) else EXIT_FAIL


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


# -- subcommands ---------------------------------------------------------------------


def cmd_euler_matrix(args) -> int:
    spec = load_json(args.algebra)
    a = algebra_from_spec(spec)
    g = euler_matrix(a, args.cap)
    det = g.matrix.det()
    report = {
        "command": "euler-matrix",
        "inputs_digest": digest(spec),
        "algebra_dim": a.dim,
        "basis": g.basis,
        "matrix": matrix_to_json(g.matrix),
        "determinant": scalar_to_json(det),
        "kernel_left": [[scalar_to_json(x) for x in v] for v in kernel_left(g)],
        "kernel_right": [[scalar_to_json(x) for x in v] for v in kernel_right(g)],
        "verdict": True,
    }
    return emit(report, args)


def cmd_smooth_check(args) -> int:
    spec = load_json(args.algebra)
    a = algebra_from_spec(spec)
    ok, res = check_smooth(a, args.cap)
    report = {
        "command": "smooth-check",
        "inputs_digest": digest(spec),
        "smooth": ok,
        "proper": check_proper(a),
        "diagonal_resolution_length": resolution_length(res) if ok else None,
        "verdict": ok,
    }
    return emit(report, args)


def cmd_serre_check(args) -> int:
    spec = load_json(args.algebra)
    a = algebra_from_spec(spec)
    rng = random.Random(args.seed)
    checks = []
    for trial in range(args.samples):
        m = random_perfect_complex(a, rng)
        n = random_perfect_complex(a, rng)
        sm = serre(m, args.cap)
        h_mn = hom_complex(m, n.to_complex()).homology_dims()
        h_nsm = hom_complex(n, sm.to_complex()).homology_dims()
        degs = sorted(set(h_mn) | {-d for d in h_nsm})
        ok = all(h_mn.get(i, 0) == h_nsm.get(-i, 0) for i in degs)
        checks.append(
            make_check(
                f"serre-duality-degreewise[{trial}]",
                "dim Hom(M, N shifted by -i) = dim Hom(N, S(M) shifted by i)",
                True,
                ok,
            )
        )
        checks.append(
            make_check(
                f"serre-symmetry[{trial}]",
                "chi(M,N) = chi(N,S(M))",
                euler_pairing(m, n.to_complex()),
                euler_pairing(n, sm.to_complex()),
            )
        )
    report = {
        "command": "serre-check",
        "inputs_digest": digest([spec, args.seed, args.samples]),
        "samples": args.samples,
        "checks": checks,
        "verdict": all(c["pass"] for c in checks),
    }
    return emit(report, args)


def cmd_hochschild(args) -> int:
    spec = load_json(args.algebra)
    a = algebra_from_spec(spec)
    coeff_spec = load_json(args.coefficients) if args.coefficients else None
    w = coefficients_from_spec(coeff_spec, a)
    top = args.top
    profile = hochschild(a, w, top=top, cap=args.cap)
    report = {
        "command": "hochschild",
        "inputs_digest": digest([spec, coeff_spec, top, args.bar_check]),
        "dims": profile.dims,
        "euler_characteristic": profile.euler(),
        "verdict": True,
    }
    if args.bar_check is not None:
        if not isinstance(w, Module):
            raise InputError("--bar-check needs a single bimodule, not a complex")
        bar = bar_oracle(a, w, top=args.bar_check)
        agree = bar.dims == profile.dims[: args.bar_check + 1] + [0] * max(
            0, args.bar_check + 1 - len(profile.dims)
        )
        report["bar_dims"] = bar.dims
        report["checks"] = [
            make_check(
                "hochschild-vs-bar",
                "resolution-based dims = bar-complex dims",
                bar.dims,
                (profile.dims + [0] * (args.bar_check + 1))[: args.bar_check + 1],
            )
        ]
        report["verdict"] = agree
    return emit(report, args)


def _load_pair_scenario(args, need_y=True):
    spec = load_json(args.scenario)
    src = motive_from_spec(spec.get("source", {}))
    dst = motive_from_spec(spec.get("target", {}))
    cap = spec.get("options", {}).get("cap", args.cap)
    x = correspondence_from_spec(spec["x"], src, dst, cap)
    y = correspondence_from_spec(spec["y"], dst, src, cap) if need_y else None
    return spec, src, dst, x, y, cap


def cmd_intersect(args) -> int:
    spec, src, dst, x, y, cap = _load_pair_scenario(args)
    val = intersection_number(x, y, cap)
    sym = intersection_number(y, x, cap)
    report = {
        "command": "intersect",
        "inputs_digest": digest(spec),
        "intersection_number": scalar_to_json(val),
        "checks": [
            make_check("symmetry", "<x . y> = <y . x>", scalar_to_json(val), scalar_to_json(sym))
        ],
        "verdict": val == sym,
    }
    return emit(report, args)


def cmd_trace(args) -> int:
    spec = load_json(args.scenario)
    src = motive_from_spec(spec.get("source", {}))
    cap = spec.get("options", {}).get("cap", args.cap)
    z = correspondence_from_spec(spec["z"], src, src, cap)
    val = trace(z, cap)
    report = {
        "command": "trace",
        "inputs_digest": digest(spec),
        "trace": scalar_to_json(val),
        "verdict": True,
    }
    return emit(report, args)


def cmd_verify(args) -> int:
    spec = load_json(args.scenario)
    src = motive_from_spec(spec.get("source", {}))
    dst = motive_from_spec(spec.get("target", spec.get("source", {})))
    options = spec.get("options", {})
    cap = options.get("cap", args.cap)
    model = build_hom_model(src, dst, cap)
    rep = verify_equivalence(model, cap, sample_pairs=options.get("sample_pairs"))
    rep["command"] = "verify"
    rep["inputs_digest"] = digest(spec)
    rng = random.Random(args.seed)
    kr = kernel_right(model.gram_chi)
    if kr:
        partners = [
            random_correspondence(dst, NCMotive(dst.algebra), rng)
            for _ in range(options.get("stability_samples", 10))
        ]
        stable = ideal_stability_samples(model, kr, partners, cap)
        rep["ideal_stability"] = {
            "samples": len(stable),
            "all_stable": all(stable),
        }
        rep["verdict"] = rep["verdict"] and all(stable)
    else:
        rep["ideal_stability"] = {
            "samples": 0,
            "all_stable": True,
            "note": "kernel is zero; stability premise is empty",
        }
    return emit(rep, args)


def cmd_corpus(args) -> int:
    rng = random.Random(args.seed)
    rows = []
    checks_total = []

    def add_row(section, name, ok, detail=""):
        rows.append({"section": section, "name": name, "pass": ok, "detail": detail})

    # per-algebra invariants
    for name in CORPUS_NAMES:
        a = corpus_algebra(name)
        g = euler_matrix(a, args.cap)
        det = g.matrix.det()
        ok_det = det in (1, -1)
        add_row("euler", name, ok_det, f"det={scalar_to_json(det)}")
        if name != "Q":
            oracle = _quiver_euler_oracle(name)
            add_row("euler-oracle", name, g.matrix.data == oracle, "matches arrow-count form")
        ok_s, res = check_smooth(a, args.cap)
        length = (res.hi - res.lo) if ok_s and not res.is_zero() else None
        add_row("smooth", name, ok_s, f"diagonal resolution length {length}")
        w = diagonal_bimodule(a)
        top = args.bar_depth
        hh = hochschild(a, w, top=top, cap=args.cap)
        bar = bar_oracle(a, w, top=top)
        add_row("hochschild-vs-bar", name, hh.dims == bar.dims, f"dims={hh.dims}")
        ok_serre = True
        for _ in range(args.samples):
            m = random_perfect_complex(a, rng)
            n = random_perfect_complex(a, rng)
            sm = serre(m, args.cap)
            h_mn = hom_complex(m, n.to_complex()).homology_dims()
            h_nsm = hom_complex(n, sm.to_complex()).homology_dims()
            degs = set(h_mn) | {-d for d in h_nsm}
            if not all(h_mn.get(i, 0) == h_nsm.get(-i, 0) for i in degs):
                ok_serre = False
        add_row("serre-duality", name, ok_serre, f"{args.samples} random pairs")

    # motive scenarios
    for name, src, dst in corpus_motive_scenarios():
        model = build_hom_model(src, dst, args.cap)
        rep = verify_equivalence(model, args.cap)
        detail = rep["kernel_statement"]
        add_row("verify", name, rep["verdict"], detail)
        checks_total.extend(rep["checks"])

    rows.sort(key=lambda r: (r["section"], r["name"]))
    verdict = all(r["pass"] for r in rows)
    report = {
        "command": "corpus",
        "inputs_digest": digest({"seed": args.seed, "samples": args.samples}),
        "table": rows,
        "verdict": verdict,
    }
    code = emit(report, args)
    for r in rows:
        status = "pass" if r["pass"] else "FAIL"
        sys.stderr.write(f"{status:4}  {r['section']:18} {r['name']:24} {r['detail']}\n")
    return code


def _quiver_euler_oracle(name):
    """Arrow-count Euler form: delta_ij - #arrows(i -> j)."""
    from .corpus import corpus_quiver

    q = corpus_quiver(name)
    n = q.vertex_count
    mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for a in q.arrows:
        mat[a.source][a.target] -= 1
    return mat


# -- entry point --------------------------------------------------------------------


def build_parser():
    # the common options are accepted both before and after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--out", default=argparse.SUPPRESS, help="write the JSON report to this path"
    )
    common.add_argument(
        "--seed",
        type=int,
        default=argparse.SUPPRESS,
        help="seed for randomized sweeps (default 0)",
    )
    common.add_argument(
        "--cap",
        type=int,
        default=argparse.SUPPRESS,
        help=f"resolution length cap (default {DEFAULT_CAP})",
    )
    common.add_argument(
        "--timing",
        action="store_true",
        default=argparse.SUPPRESS,
        help="include elapsed time in the report (breaks byte-determinism)",
    )
    p = argparse.ArgumentParser(
        prog="ncmotives",
        description="Exact verification of Euler-form and Hochschild-pairing identities over quiver algebras",
        parents=[common],
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("euler-matrix", parents=[common], help="Euler form Gram matrix on the simple basis")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_euler_matrix)

    s = sub.add_parser("smooth-check", parents=[common], help="projective resolution of the diagonal bimodule")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_smooth_check)

    s = sub.add_parser("serre-check", parents=[common], help="degreewise Serre duality on random perfect complexes")
    s.add_argument("algebra")
    s.add_argument("--samples", type=int, default=10)
    s.set_defaults(func=cmd_serre_check)

    s = sub.add_parser("hochschild", parents=[common], help="Hochschild homology dimensions")
    s.add_argument("algebra")
    s.add_argument("--coefficients", help="bimodule JSON (default: diagonal)")
    s.add_argument("--top", type=int, default=4)
    s.add_argument("--bar-check", type=int, default=None, dest="bar_check")
    s.set_defaults(func=cmd_hochschild)

    s = sub.add_parser("intersect", parents=[common], help="intersection number of two correspondences")
    s.add_argument("scenario")
    s.set_defaults(func=cmd_intersect)

    s = sub.add_parser("trace", parents=[common], help="categorical trace of an endo-correspondence")
    s.add_argument("scenario")
    s.set_defaults(func=cmd_trace)

    s = sub.add_parser("verify", parents=[common], help="kernel-equality verdict for a Hom-space scenario")
    s.add_argument("scenario")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("corpus", parents=[common], help="run the built-in corpus and print a pass/fail table")
    s.add_argument("--samples", type=int, default=6)
    s.add_argument("--bar-depth", type=int, default=4, dest="bar_depth")
    s.set_defaults(func=cmd_corpus)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.out = getattr(args, "out", None)
    args.seed = getattr(args, "seed", 0)
    args.cap = getattr(args, "cap", DEFAULT_CAP)
    args.timing = getattr(args, "timing", False)
    args._t0 = time.monotonic()
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_BAD_INPUT
    except (CyclicQuiverError, AlgebraStructureError) as exc:
        sys.stderr.write(f"unsupported input: {exc}\n")
        return EXIT_UNSUPPORTED
    except ResolutionCapExceeded as exc:
        sys.stderr.write(f"cap exceeded: {exc}\n")
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
