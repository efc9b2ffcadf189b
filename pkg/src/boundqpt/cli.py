"""Command-line surface.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
All numbers print with 17 significant digits so output is byte-stable
and doubles survive a round trip.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import criticality, edverify, entmeasures, families, parenth

_FMT = "{:.16e}"


def _f(x) -> str:
    return _FMT.format(float(x))


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="boundqpt",
        description="Entanglement measures, parent Hamiltonians, and "
                    "fidelity scans for pair-constructed spin-1 chains.",
    )
    sub = top.add_subparsers(dest="subcommand", required=True)

    def fam_flag(p):
        p.add_argument("--config", metavar="FILE",
                       help="JSON file with flag defaults; explicit flags win")
        p.add_argument("--family", required=True,
                       help="horodecki | chi2a | chi2b | example3 | "
                            "chi:<alpha>,<beta>,<a>,<p>,<q+|q->")

    p = sub.add_parser("measures", help="entanglement measures of a pair state")
    fam_flag(p)
    p.add_argument("--a", type=float, required=True)

    p = sub.add_parser("scan", help="fidelity/measure scan over a grid")
    fam_flag(p)
    p.add_argument("--a-min", type=float, required=True)
    p.add_argument("--a-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--delta", type=float, default=1e-6)
    p.add_argument("--n-pairs", type=int, default=10**8)
    p.add_argument("--fd-step", type=float, default=1e-7)
    p.add_argument("--out", help="output file; figures are written alongside")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("build-ham", help="export the 3-site local term")
    fam_flag(p)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--out", help="write here instead of stdout")

    p = sub.add_parser("verify", help="dense ground-state verification")
    fam_flag(p)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--sites", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-10,
                   help="energy/RDM tolerance; residual uses 100x, "
                        "spectrum floor 10x")
    p.add_argument("--corrupt-local-term", action="store_true",
                   help=argparse.SUPPRESS)

    p = sub.add_parser("gsf", help="closed-form fidelity at one point")
    fam_flag(p)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--delta", type=float, default=1e-6)
    p.add_argument("--n-pairs", type=int, default=10**8)
    p.add_argument("--fd-step", type=float, default=1e-7)

    return top


def _apply_config(parser: argparse.ArgumentParser, argv):
    """Pre-scan for --config and fold its values in as parser defaults."""
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config")
    hit, _ = probe.parse_known_args(argv)
    if not hit.config:
        return
    try:
        with open(hit.config) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config {hit.config}: {exc}")
    if not isinstance(data, dict):
        parser.error(f"config {hit.config} must hold a JSON object")
    known = set()
    for action in parser._subparsers._group_actions[0].choices.values():
        known.update(a.dest for a in action._actions)
    bad = [k for k in data if k not in known]
    if bad:
        parser.error(f"config keys not recognized: {', '.join(sorted(bad))}")
    for action in parser._subparsers._group_actions[0].choices.values():
        action.set_defaults(**{k: v for k, v in data.items()
                               if k in {a.dest for a in action._actions}})
        for a in action._actions:
            if a.dest in data:
                a.required = False


def run_measures(args) -> int:
    fam = families.get_family(args.family)
    ev = fam.eval(args.a)
    rho = ev.rho_pair
    rep = entmeasures.report(rho)
    print(f"family: {fam.cli_name}")
    print(f"a: {_f(args.a)}")
    print(f"negativity: {_f(rep.negativity)}")
    print(f"realignment: {_f(rep.n_r)}")
    print(f"shifted_realignment: {_f(rep.n_sr)}")
    print(f"concurrence_lower_bound: {_f(rep.concurrence_lb)}")
    print(f"is_ppt: {rep.is_ppt}")
    print(f"purity: {_f(np.sum(np.asarray(ev.eigenvalues) ** 2))}")
    print("eigenvalues: " + " ".join(_f(x) for x in ev.eigenvalues))
    return 0


def run_scan(args) -> int:
    cfg = criticality.ScanConfig(
        family=args.family, a_min=args.a_min, a_max=args.a_max,
        steps=args.steps, delta=args.delta, n_pairs=args.n_pairs,
        fd_step=args.fd_step,
    )
    records = criticality.scan(cfg)
    if args.format == "json":
        payload = criticality.records_to_json(records) + "\n"
    else:
        payload = criticality.records_to_csv(records)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
        from . import figures
        for path in figures.render_scan_figures(records, args.out):
            print(f"wrote {path}")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(payload)
    return 0


def run_build(args) -> int:
    fam = families.get_family(args.family)
    term = parenth.parent_local_term(fam, args.a)
    header = {"family": fam.cli_name, "a": _f(args.a)}
    try:
        spin = parenth.spin_form_hamiltonian(fam, args.a)
        c, rel = parenth.proportionality_check(spin, term)
        header["proportionality_c"] = _f(c)
        header["proportionality_residual"] = _f(rel)
    except ValueError as exc:
        header["proportionality_c"] = f"unavailable ({exc})"
    text = parenth.local_term_to_text(term, header)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def run_verify(args) -> int:
    if args.sites not in (4, 6, 8, 10):
        print(f"sites must be one of 4, 6, 8, 10; got {args.sites}",
              file=sys.stderr)
        return 2
    fam = families.get_family(args.family)
    ev = fam.eval(args.a)
    term = parenth.parent_local_term(fam, args.a)
    if args.corrupt_local_term:
        vecs = list(term.generating_vectors)
        hs = list(term.couplings)
        spoiler = np.zeros(27)
        spoiler[0] = 1.0
        term = parenth.build_local_term(vecs + [spoiler], hs + [0.01])
    n_pairs = args.sites // 2
    state = parenth.paired_state(ev, n_pairs)
    psi = edverify.expand(state)
    ring = parenth.ring_hamiltonian(term, args.sites)
    ham = edverify.assemble(ring, args.sites)
    rep = edverify.ground_check(ham, psi)

    tol = args.tol
    checks = {
        "energy": (abs(rep.energy), tol),
        "residual": (rep.residual, 100.0 * tol),
        "spectrum_floor": (max(0.0, -rep.min_eigenvalue), 10.0 * tol),
    }
    print(f"family: {fam.cli_name}")
    print(f"a: {_f(args.a)}  sites: {args.sites}")
    print(f"energy: {_f(rep.energy)}")
    print(f"residual: {_f(rep.residual)}")
    print(f"min_eigenvalue: {_f(rep.min_eigenvalue)}")
    print(f"ground_space_dim: {rep.ground_space_dim}")

    rdm_pairs = [("pair_odd", edverify.numeric_rdm(psi, {1, 2}).matrix,
                  parenth.rdm_pair_odd(state).matrix)]
    if n_pairs >= 3:
        rdm_pairs.append(("pair_even", edverify.numeric_rdm(psi, {2, 3}).matrix,
                          parenth.rdm_pair_even(state).matrix))
        rdm_pairs.append(("triple", edverify.numeric_rdm(psi, {1, 2, 3}).matrix,
                          parenth.rdm_triple(state).matrix))
    for name, numeric, closed in rdm_pairs:
        dev = float(np.abs(numeric - closed).max())
        checks[f"rdm_{name}"] = (dev, tol)
        print(f"rdm_{name}_residual: {_f(dev)}")

    failed = [k for k, (val, cap) in checks.items() if val >= cap]
    if failed:
        print("FAIL: " + ", ".join(failed))
        return 1
    print("OK")
    return 0


def run_gsf(args) -> int:
    f = criticality.gsf(args.family, args.a, args.delta, args.n_pairs)
    s = criticality.fidelity_susceptibility(args.family, args.a,
                                            args.n_pairs, args.fd_step)
    gap = criticality.parity_gap(args.family, args.a, args.delta, args.n_pairs)
    print(f"F: {_f(f)}")
    print(f"S: {_f(s)}")
    print(f"S_over_N: {_f(abs(s) / args.n_pairs)}")
    print(f"parity_gap: {_f(gap)}")
    return 0


_RUNNERS = {
    "measures": run_measures,
    "scan": run_scan,
    "build-ham": run_build,
    "verify": run_verify,
    "gsf": run_gsf,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = _build_parser()
    _apply_config(parser, argv)
    args = parser.parse_args(argv)
    try:
        return _RUNNERS[args.subcommand](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
