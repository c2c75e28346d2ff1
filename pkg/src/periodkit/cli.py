"""Command-line front end.

Every subcommand writes its result (JSON by default, CSV for scans) to
--out and a manifest beside it.  ``replay`` reruns a manifest and compares
digests.  Exit codes: 0 ok, 1 usage, 2 domain error, 3 size limit,
4 lemma violation or replay mismatch.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations

from . import __version__
from . import affq, frobcount, hodge, semilinear, symplectic
from .core.fields import QQ, make_field, parse_rational
from .core.matio import read_matrix_csv
from .errors import DomainError, PeriodkitError
from .flatseries import (TruncatedSeries, TruncatedSeriesConnection, flat_residual,
                         format_polynomial, padic_valuation_profile, solve_flat_sections,
                         truncated_relations)
from .manifest import RunManifest, manifest_path_for, now_iso, sha256_bytes, sha256_file
from .rootfilt import census as rcensus
from .rootfilt.parabolic import (ParabolicPair, fiber_codim, is_bad, lw2_harness,
                                 root_lemma_check, wpq_enumerate)
from .rootfilt.roots import RootDatum
from .serialize import dumps, rows_to_csv

# flags that do not influence the output bytes
_NON_SEMANTIC = {"out", "jobs", "command", "handler", "seed"}


class UsageError(PeriodkitError):
    exit_code = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _default_jobs():
    try:
        return max(1, int(os.environ.get("LV_JOBS", "1")))
    except ValueError:
        return 1


def _int_list(text):
    if text is None or text.strip() == "":
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise DomainError(f"expected comma-separated integers, got {text!r}") from exc


def _pool_map(jobs):
    if jobs <= 1:
        return map, None
    ex = ProcessPoolExecutor(max_workers=jobs)
    return (lambda f, xs: ex.map(f, xs, chunksize=1)), ex


# --- handlers: each returns (payload, csv_rows, csv_columns) ---

def cmd_hodge_scan(a):
    if a.n_min < 2 or a.n_max < a.n_min or a.d_max < 2:
        raise DomainError("need 2 <= n-min <= n-max and d-max >= 2")
    fmap, ex = _pool_map(a.jobs)
    try:
        rows, n0 = hodge.scan_n0(range(a.n_min, a.n_max + 1), a.d_max, a.persistence,
                                 a.moduli_formula, map_fn=fmap)
    finally:
        if ex:
            ex.shutdown()
    payload = {"n_range": [a.n_min, a.n_max], "d_max": a.d_max, "persistence": a.persistence,
               "moduli_formula": a.moduli_formula, "rows": rows, "minimal_n": n0}
    flat = []
    for r in rows:
        rec = {"n": r["n"], "first_d": r["first_d"], "persistent": r["persistent"]}
        rec.update({k: v for k, v in (r.get("report") or {}).items() if k not in ("n", "d")})
        flat.append(rec)
    cols = ["n", "first_d", "persistent", "dimY", "h0", "sum_pos", "weighted_sum", "T1", "T2",
            "weak", "strong"]
    return payload, flat, cols


def cmd_kp_params(a):
    forbidden = _int_list(a.forbidden)
    params = affq.find_kp_prime(a.genus, a.deg_k, a.orbit_const, forbidden, a.cap)
    residue, report = affq.find_place_residue(params.q, a.orbit_const, a.deg_k)
    return {"params": params.to_dict(), "place_residue": residue, "residue_orders": report}, None, None


def cmd_com_fibers(a):
    return affq.com_fiber_census(a.q, a.s), None, None


def cmd_centralizer(a):
    return semilinear.run_trials(a.trials, a.seed, (a.p,), (a.e,), (a.dim,)), None, None


def _field(text):
    return QQ if text is None else make_field(text)


def cmd_transvect_cert(a):
    F = _field(a.field)
    vecs = read_matrix_csv(a.vectors)
    n = len(vecs[0])
    if n % 2:
        raise DomainError("vectors must have even length")
    space = symplectic.SymplecticSpace(n // 2, F)
    S = [space.vector(v) for v in vecs]
    cert = symplectic.transvection_graph_certificate(space, S)
    preserved = all(space.preserves_form(symplectic.Transvection(space, v).matrix()) for v in S)
    cert["transvections_preserve_form"] = preserved
    return cert, None, None


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read JSON input {path}: {exc}") from exc


def cmd_bad_lagrangian(a):
    if a.explicit:
        d = a.explicit
        F = _field(a.field)
        tup = symplectic.explicit_tuple(d, F)
    else:
        if not a.tuple:
            raise UsageError("need --tuple or --explicit")
        data = _load_json(a.tuple)
        F = _field(a.field if a.field is not None else data.get("field"))
        d = int(data["d"])
        tup = [[[F.coerce(parse_rational(x)) for x in v] for v in basis] for basis in data["subspaces"]]
    space = symplectic.SymplecticSpace(d, F)
    rep = symplectic.bad_lagrangian_search_report(space, tup, a.seed)
    W = rep["W"]
    rep["W"] = None if W is None else [[F.to_str(x) for x in row] for row in W]
    rep["field"] = repr(F)
    rep["d"] = d
    rep["r"] = len(tup)
    return rep, None, None


def cmd_frob_bound(a):
    cb = frobcount.centralizer_bound(frobcount.CountBoundInput(a.q, a.n, a.b))
    out = cb.to_dict()
    if a.spectrum:
        s = frobcount.Spectrum.from_json(_load_json(a.spectrum))
        out["spectrum"] = frobcount.verify_spectrum_bound(s, a.q, a.n, a.J)
    return out, None, None


def _pair_from_args(a):
    D = RootDatum.parse(a.type)
    dp = frozenset(i - 1 for i in _int_list(a.dp))
    if a.mu:
        mu = _int_list(a.mu)
        pair = ParabolicPair.from_mu(D, dp, mu)
        if a.dq is not None and frozenset(i - 1 for i in _int_list(a.dq)) != pair.dq:
            raise DomainError(
                f"--dq {a.dq} disagrees with the simple roots orthogonal to mu "
                f"({','.join(str(i + 1) for i in sorted(pair.dq)) or 'none'})")
    else:
        pair = ParabolicPair.from_subsets(D, dp, [i - 1 for i in _int_list(a.dq)])
    return D, pair


def cmd_wpq(a):
    D, pair = _pair_from_args(a)
    elems = wpq_enumerate(pair)
    rows = []
    for w in elems:
        rec = {"w": w.to_list(), "length": D.length(w), "fiber_codim": fiber_codim(w, pair),
               "root_lemma": root_lemma_check(w, pair)["ok"], "bad_aggregate": is_bad(w, pair)}
        if D.kind in "AC":
            rec["bad_exact_blocks"] = is_bad(w, pair, "exact-blocks")
        rows.append(rec)
    payload = {"type": D.label, "dp": sorted(i + 1 for i in pair.dp), "dq": sorted(i + 1 for i in pair.dq),
               "mu": list(pair.mu), "dim_G_mod_Q": pair.dim_G_mod_Q(), "elements": rows}
    return payload, rows, ["w", "length", "fiber_codim", "root_lemma", "bad_aggregate"]


def _lw2_chunk(args):
    label, configs, e_values, bound = args
    return lw2_harness(RootDatum.parse(label), configs, e_values, bound)


def cmd_lw2_sweep(a):
    from .rootfilt.parabolic import dominant_mus
    D = RootDatum.parse(a.type)
    if D.rank > 4:
        raise DomainError("lw2 sweep limited to rank <= 4")
    subsets = [frozenset(c) for k in range(D.rank + 1) for c in combinations(range(D.rank), k)]
    configs = [(dp, mu) for dp in subsets for mu in dominant_mus(D, a.bound)]
    e_values = None if a.e is None else [a.e]
    chunks = [(D.label, configs[i::max(1, a.jobs)], e_values, a.bound) for i in range(max(1, a.jobs))]
    fmap, ex = _pool_map(a.jobs)
    try:
        results = list(fmap(_lw2_chunk, chunks))
    finally:
        if ex:
            ex.shutdown()
    violations = []
    stats = {}
    for v, s in results:
        violations.extend(v)
        for k, x in s.items():
            stats[k] = stats.get(k, 0) + x
    violations.sort(key=lambda v: json.dumps(v, sort_keys=True))
    return {"type": D.label, "bound": a.bound, "e": a.e, "violations": violations, "stats": stats}, None, None


def cmd_linalg_census(a):
    phi = read_matrix_csv(a.phi)
    flag_type = _int_list(a.flag_type) if a.flag_type else [a.d]
    return rcensus.linalg_census(a.q, a.d, flag_type, phi), None, None


def cmd_flat_solve(a):
    data = _load_json(a.connection)
    k = a.order
    A = [[TruncatedSeries.make(c, k) for c in row] for row in data["A"]]
    conn = TruncatedSeriesConnection.make(A, k)
    init = data.get("init") or [1] + [0] * (conn.r - 1)
    f = solve_flat_sections(conn, init)
    res_ok = all(x.is_zero() for x in flat_residual(conn, f))
    out = {"order": k, "r": conn.r, "init": [str(parse_rational(x)) for x in init],
           "residual_vanishes": res_ok, "sections": [x.to_strings() for x in f]}
    if a.p:
        mins = [padic_valuation_profile(x, a.p)[1] for x in f]
        out["p"] = a.p
        out["valuation_minimum"] = [m for m in mins]
    return out, None, None


def cmd_relations(a):
    data = _load_json(a.series)
    order = a.order if a.order is not None else data.get("order")
    if order is None:
        # finite coefficient lists are polynomials; this order keeps degree-D products exact
        order = a.degree * max(len(s) for s in data["series"])
    B = [TruncatedSeries.make(s, int(order)) for s in data["series"]]
    rels = truncated_relations(B, a.degree)
    return {"degree": a.degree, "order": min(s.order for s in B),
            "relations": [format_polynomial(r) for r in rels],
            "coefficients": [[{"exponent": list(e), "coeff": c} for e, c in sorted(r.items(), reverse=True)]
                             for r in rels]}, None, None


def build_parser():
    p = _Parser(prog="periodkit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, handler, help_text, tabular=False):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(handler=handler)
        sp.add_argument("--out", help="output path (default: <command>.json or .csv)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--jobs", type=int, default=_default_jobs())
        sp.add_argument("--format", choices=["json", "csv"] if tabular else ["json"], default="json")
        return sp

    sp = add("hodge-scan", cmd_hodge_scan, "minimal n with the weak and strong conditions", tabular=True)
    sp.add_argument("--n-min", type=int, default=30)
    sp.add_argument("--n-max", type=int, default=80)
    sp.add_argument("--d-max", type=int, default=3000)
    sp.add_argument("--persistence", type=int, default=3)
    sp.add_argument("--moduli-formula", choices=["paper", "full"], default="paper")

    sp = add("kp-params", cmd_kp_params, "prime q and place residue for the KP argument")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--deg-k", type=int, default=1)
    sp.add_argument("--orbit-const", type=int, default=5)
    sp.add_argument("--forbidden", default="")
    sp.add_argument("--cap", type=int, default=10 ** 6)

    sp = add("com-fibers", cmd_com_fibers, "commutator fiber census in Aff(q)")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)

    sp = add("centralizer", cmd_centralizer, "random centralizer dimension trials")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--e", type=int, required=True)
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--trials", type=int, default=100)

    sp = add("transvect-cert", cmd_transvect_cert, "transvection graph certificate")
    sp.add_argument("--vectors", required=True)
    sp.add_argument("--field", default=None)

    sp = add("bad-lagrangian", cmd_bad_lagrangian, "search for a bad subspace W")
    sp.add_argument("--tuple", default=None)
    sp.add_argument("--explicit", type=int, default=None, help="use the built-in tuple for this d")
    sp.add_argument("--field", default=None)

    sp = add("frob-bound", cmd_frob_bound, "centralizer bound from point counts")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--spectrum", default=None)
    sp.add_argument("--J", type=int, default=8)

    sp = add("wpq", cmd_wpq, "minimal double coset representatives", tabular=True)
    sp.add_argument("--type", required=True)
    sp.add_argument("--dp", default="")
    sp.add_argument("--dq", default=None)
    sp.add_argument("--mu", default=None)

    sp = add("lw2-sweep", cmd_lw2_sweep, "codimension harness sweep")
    sp.add_argument("--type", required=True)
    sp.add_argument("--e", type=int, default=None)
    sp.add_argument("--bound", type=int, default=3)

    sp = add("linalg-census", cmd_linalg_census, "finite-field bad flag census")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--phi", required=True)
    sp.add_argument("--flag-type", default=None)

    sp = add("flat-solve", cmd_flat_solve, "flat sections as power series")
    sp.add_argument("--connection", required=True)
    sp.add_argument("--order", type=int, default=200)
    sp.add_argument("--p", type=int, default=None)

    sp = add("relations", cmd_relations, "truncated polynomial relations")
    sp.add_argument("--series", required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--order", type=int, default=None)

    rp = sub.add_parser("replay", help="rerun a manifest and compare digests")
    rp.add_argument("manifest")
    rp.add_argument("--seed", type=int, default=None)
    rp.add_argument("--jobs", type=int, default=_default_jobs())
    return p


_INPUT_FLAGS = ("vectors", "tuple", "spectrum", "phi", "connection", "series")


def _render(a, payload, rows, cols):
    if a.format == "csv":
        return rows_to_csv(rows, cols)
    return dumps(payload)


def run(argv, parser=None):
    parser = parser or build_parser()
    a = parser.parse_args(argv)
    if a.command is None:
        parser.print_usage(sys.stderr)
        return 1
    if a.command == "replay":
        return replay(a)
    started = now_iso()
    payload, rows, cols = a.handler(a)
    text = _render(a, payload, rows, cols)
    out = a.out or f"{a.command}.{a.format}"
    data = text.encode("utf-8")
    with open(out, "wb") as fh:
        fh.write(data)
    sys.stdout.write(text)
    flags = {k: v for k, v in sorted(vars(a).items()) if k not in _NON_SEMANTIC}
    inputs = {}
    for k in _INPUT_FLAGS:
        path = getattr(a, k, None)
        if path:
            inputs[path] = sha256_file(path)
    semantic_argv = _strip_flags(argv, ("--out", "--jobs", "--seed"))
    RunManifest(a.command, semantic_argv, flags, a.seed, __version__, started, now_iso(),
                os.path.abspath(out), sha256_bytes(data), inputs).write(manifest_path_for(out))
    return 0


def _strip_flags(argv, names):
    out = []
    skip = False
    for tok in argv:
        if skip:
            skip = False
            continue
        if tok in names:
            skip = True
            continue
        if any(tok.startswith(n + "=") for n in names):
            continue
        out.append(tok)
    return out


def replay(a):
    m = RunManifest.read(a.manifest)
    notes = []
    if m.version != __version__:
        notes.append(f"version mismatch: manifest {m.version}, running {__version__}")
    if a.seed is not None and a.seed != m.seed:
        notes.append(f"refusing seed override {a.seed}; the manifest seed {m.seed} is used")
    for path, digest in m.inputs.items():
        if not os.path.exists(path) or sha256_file(path) != digest:
            notes.append(f"input {path} changed or missing")
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, os.path.basename(m.output))
        argv = list(m.argv) + ["--seed", str(m.seed), "--jobs", str(a.jobs), "--out", out]
        saved = sys.stdout
        sys.stdout = open(os.devnull, "w")
        try:
            code = run(argv)
        finally:
            sys.stdout.close()
            sys.stdout = saved
        rerun = sha256_file(out) if code == 0 else None
        rerun_text = open(out, encoding="utf-8").read() if code == 0 else ""
    on_disk = sha256_file(m.output) if os.path.exists(m.output) else None
    report = {
        "manifest": a.manifest, "command": m.command, "seed": m.seed,
        "manifest_digest": m.digest, "rerun_digest": rerun, "file_digest": on_disk,
        "rerun_matches": rerun == m.digest, "file_matches": on_disk == m.digest, "notes": notes,
    }
    if on_disk is not None and on_disk != m.digest:
        report["diff_summary"] = _diff_summary(open(m.output, encoding="utf-8", errors="replace").read(),
                                               rerun_text)
    elif rerun != m.digest and os.path.exists(m.output):
        report["diff_summary"] = _diff_summary(open(m.output, encoding="utf-8", errors="replace").read(),
                                               rerun_text)
    for n in notes:
        sys.stderr.write(f"warning: {n}\n")
    sys.stdout.write(dumps(report))
    return 0 if report["rerun_matches"] and report["file_matches"] else 4


def _diff_summary(old: str, new: str):
    import difflib
    lines = list(difflib.unified_diff(old.splitlines(), new.splitlines(), "recorded", "rerun", lineterm="", n=0))
    return {"changed_lines": sum(1 for l in lines if l[:1] in "+-" and l[:3] not in ("+++", "---")),
            "head": lines[:20]}


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        return run(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except PeriodkitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
