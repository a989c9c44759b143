"""Command-line interface.

Exit codes: 0 all gates pass, 2 gate failure, 3 config error, 4 budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .constructions import ConstructionSpec
from .errors import BudgetExceeded, ConfigError
from .field import field_create
from .geometry import read_hyperplanes, read_pointset, write_pointset
from .harness import (EXIT_BUDGET, EXIT_CONFIG_ERROR, EXIT_GATE_FAILURE, EXIT_OK,
                      oracle_distances, oracle_incidences, oracle_lambda4,
                      render_report, run, sweep)
from .ranges import (conjectured_alpha, crossover_identities, energy_threshold,
                     sphere_threshold, improved_threshold)


def _add_common(p):
    p.add_argument("--config", type=Path, help="JSON config file")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fqsalem")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="print field parameters")
    p.add_argument("p", type=int)
    p.add_argument("r", type=int, nargs="?", default=1)

    p = sub.add_parser("construct", help="build a point set and write it out")
    _add_common(p)

    p = sub.add_parser("analyze", help="run analyses from a config")
    _add_common(p)

    p = sub.add_parser("verify", help="run analyses and fail on gate violations")
    _add_common(p)

    p = sub.add_parser("ranges", help="print threshold tables")
    p.add_argument("--d", type=int, nargs="+", default=[2, 3, 4, 5, 6])
    p.add_argument("--s", type=str, nargs="+", default=["1/4", "3/8", "1/2"])
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sweep", help="grid sweep to CSV")
    _add_common(p)

    p = sub.add_parser("oracle", help="brute-force reference computations")
    p.add_argument("kind", choices=["lambda4", "distances", "incidences"])
    p.add_argument("pointset", type=Path)
    p.add_argument("hyperplanes", type=Path, nargs="?")
    p.add_argument("--budget", type=int, default=None)

    return ap


def _load_config(args) -> dict:
    if args.config is None:
        raise ConfigError("--config is required for this command")
    try:
        config = json.loads(args.config.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    if getattr(args, "seed", None) is not None:
        config["seed"] = args.seed
    if getattr(args, "budget", None) is not None:
        config["budget"] = args.budget
    return config


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def _dispatch(args) -> int:
    if args.command == "field":
        F = field_create(args.p, args.r)
        print(json.dumps({"p": F.p, "r": F.r, "q": F.q,
                          "modulus": list(F.modulus),
                          "primitiveElement": F.primitive_element()}))
        return EXIT_OK

    if args.command == "construct":
        config = _load_config(args)
        c = dict(config["construction"])
        kind = c.pop("kind")
        if "seed" not in c and "seed" in config:
            c["seed"] = config["seed"]
        E = ConstructionSpec(kind, c).build()
        out = args.out or Path("pointset.txt")
        write_pointset(E, out)
        print(f"wrote {len(E)} points to {out}")
        return EXIT_OK

    if args.command in ("analyze", "verify"):
        config = _load_config(args)
        report = run(config)
        text = render_report(report)
        if args.out:
            args.out.parent.mkdir(parents=True, exist_ok=True)
            args.out.write_text(text)
        else:
            print(text, end="")
        if args.command == "verify" and not report["allGatesPass"]:
            return EXIT_GATE_FAILURE
        return EXIT_OK

    if args.command == "ranges":
        rows = []
        for d in args.d:
            for s_str in args.s:
                s = Fraction(s_str)
                val, branch = improved_threshold(d, s)
                rows.append({"d": d, "s": str(s),
                             "conjectured": str(conjectured_alpha(d, s)),
                             "improved": str(val), "branch": branch,
                             "energyRoute": str(energy_threshold(d, s)),
                             "sphere": str(sphere_threshold(d, s)),
                             "crossoversExact": all(crossover_identities(d).values())})
        if args.json:
            print(json.dumps(rows, indent=2))
        else:
            hdr = f"{'d':>3} {'s':>6} {'conj':>8} {'improved':>8} {'branch':>10} {'energyRoute':>8} {'sphere':>8}"
            print(hdr)
            for r in rows:
                print(f"{r['d']:>3} {r['s']:>6} {r['conjectured']:>8} "
                      f"{r['improved']:>8} {r['branch']:>10} {r['energyRoute']:>8} {r['sphere']:>8}")
        return EXIT_OK

    if args.command == "sweep":
        config = _load_config(args)
        out = args.out or Path("sweep-out")
        csv_path = sweep(config, out, jobs=args.jobs)
        print(f"wrote {csv_path}")
        return EXIT_OK

    if args.command == "oracle":
        E = read_pointset(args.pointset)
        if args.kind == "lambda4":
            print(oracle_lambda4(E, args.budget))
        elif args.kind == "distances":
            print(json.dumps(oracle_distances(E, args.budget)))
        else:
            if args.hyperplanes is None:
                raise ConfigError("incidences oracle needs a hyperplane file")
            H = read_hyperplanes(args.hyperplanes, allow_degenerate=True)
            print(oracle_incidences(E, H, args.budget))
        return EXIT_OK

    raise ConfigError(f"unknown command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
