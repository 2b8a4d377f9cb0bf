"""Command-line interface.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad data, bad input or I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .colouring import Colouring, check_orientable, check_proper, colouring_rank
from .coxdiagram import derive_diagram, maximal_elliptic_subsets, parabolic_lcm, triangle_type
from .datasets import dataset_names, load_dataset, scenario_names
from .errors import GeoboundError
from .growth import DODECAHEDRON, SURFACE, growth_report, growth_table
from .grouphoms import Word, orientation_parity, reduction_order, retraction_check, subgroup_lemma_check
from .harness import run_all, run_scenario
from .polymodel import MODELS, load_model

GROWTH_SCENARIOS = {"surface": SURFACE, "dodecahedron": DODECAHEDRON}


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _valid_space(name: str):
    space = load_dataset(name)
    return space.restrict(space.valid_labels())


def cmd_list(args) -> int:
    print("datasets: " + ", ".join(dataset_names()))
    print("models: " + ", ".join(sorted(MODELS)))
    print("scenarios: " + ", ".join(scenario_names()))
    return 0


def cmd_validate(args) -> int:
    space = load_dataset(args.dataset)
    report = space.validate(args.norm)
    for status, labels in sorted(report.by_status().items()):
        print(f"{status:>18}: {len(labels)}  {labels if status != 'ok' else ''}".rstrip())
    for f in report.families:
        mark = "ok" if f.ok else "MISMATCH"
        print(f"family {f.first}-{f.last}: declared {f.declared}, generated {f.generated}  {mark}")
    bad = 0
    for k in space.valid_labels():
        checks = space.reflection(k).check(space.form, space.root(k))
        if not all(checks.values()):
            bad += 1
            print(f"reflection s{k} fails: {[c for c, ok in checks.items() if not ok]}")
    print(f"reflections checked: {len(space.valid_labels())}, failing {bad}")
    return 0 if report.ok and not bad else 1


def cmd_diagram(args) -> int:
    d = derive_diagram(_valid_space(args.dataset))
    if args.triple:
        t = triangle_type(d, args.triple)
        print("(" + ",".join("inf" if x == float("inf") else str(x) for x in t) + ")")
        return 0
    sys.stdout.write(d.export())
    return 0


def cmd_parabolics(args) -> int:
    space = _valid_space(args.dataset)
    d = derive_diagram(space)
    size = args.max_size or space.dim
    lcm = parabolic_lcm(d, max_size=size)
    if args.list:
        for s in maximal_elliptic_subsets(d, max_size=size):
            print(" ".join(map(str, s)))
    print(f"lcm of finite parabolic orders: {lcm}")
    return 0


def cmd_colouring(args) -> int:
    model = load_model(args.model)
    col = Colouring.load(args.file)
    prop = check_proper(model, col)
    ori = check_orientable(col)
    rk = colouring_rank(col)
    print(prop.text())
    print(ori.text())
    print(f"rank {rk.rank}, kernel index {rk.index}")
    return 0 if prop.ok else 1


def cmd_retraction(args) -> int:
    d = derive_diagram(_valid_space(args.dataset))
    cert = retraction_check(d, args.keep)
    print(cert.text())
    return 0 if cert.ok else 1


def cmd_order(args) -> int:
    space = _valid_space(args.dataset)
    w = Word.parse(args.word)
    for m in args.mod:
        print(f"order mod {m}: {reduction_order(space, w, m)}")
    if args.parity:
        print(f"parity: {orientation_parity(w)}")
    return 0


def cmd_lemma(args) -> int:
    lem = subgroup_lemma_check(args.k1, args.k2)
    print(lem.text())
    return 0 if lem.holds else 1


def cmd_growth(args) -> int:
    if args.scenario:
        table = growth_report(GROWTH_SCENARIOS[args.scenario], args.max)
    else:
        table = growth_table(args.rank, args.max)
    if args.format == "machine":
        for r in table.records():
            print(json.dumps(r, sort_keys=True))
    else:
        print(table.text())
    return 0 if table.ok else 1


def _emit(report, fmt: str) -> int:
    sys.stdout.write(report.machine() if fmt == "machine" else report.text())
    return report.exit_code


def cmd_run(args) -> int:
    return _emit(run_scenario(args.scenario), args.format)


def cmd_run_all(args) -> int:
    return _emit(run_all(args.jobs, args.only), args.format)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="geobound", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("list", help="bundled datasets, models and scenarios")
    s.set_defaults(func=cmd_list)

    s = sub.add_parser("validate", help="validate roots and reflection identities of a dataset")
    s.add_argument("dataset")
    s.add_argument("--norm", type=int, default=None, help="require every root to have this norm")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("diagram", help="derive the Coxeter diagram of a dataset")
    s.add_argument("dataset")
    s.add_argument("--triple", type=_ints, help="print the triangle type of three generators instead")
    s.set_defaults(func=cmd_diagram)

    s = sub.add_parser("parabolics", help="lcm of the orders of finite standard parabolic subgroups")
    s.add_argument("dataset")
    s.add_argument("--max-size", type=int, default=None)
    s.add_argument("--list", action="store_true", help="also list maximal elliptic subsets")
    s.set_defaults(func=cmd_parabolics)

    s = sub.add_parser("colouring", help="check a colouring file against a combinatorial model")
    s.add_argument("model", choices=sorted(MODELS))
    s.add_argument("file")
    s.set_defaults(func=cmd_colouring)

    s = sub.add_parser("retraction", help="certify the retraction onto kept generators")
    s.add_argument("dataset")
    s.add_argument("--keep", type=_ints, required=True)
    s.set_defaults(func=cmd_retraction)

    s = sub.add_parser("order", help="order of a word's image in GL(n, ring/m)")
    s.add_argument("dataset")
    s.add_argument("--word", required=True, help='generator indices, e.g. "7 13 18"')
    s.add_argument("--mod", type=int, action="append", required=True)
    s.add_argument("--parity", action="store_true")
    s.set_defaults(func=cmd_order)

    for name in ("subgroup-lemma", "lemma22"):
        s = sub.add_parser(name, help="gcd-exponent condition for two element orders")
        s.add_argument("k1", type=int)
        s.add_argument("k2", type=int)
        s.set_defaults(func=cmd_lemma)

    s = sub.add_parser("growth", help="subgroup counts of free groups")
    s.add_argument("--rank", type=int, default=3)
    s.add_argument("--max", type=int, default=10)
    s.add_argument("--scenario", choices=sorted(GROWTH_SCENARIOS))
    s.add_argument("--format", choices=("text", "machine"), default="text")
    s.set_defaults(func=cmd_growth)

    s = sub.add_parser("run", help="run one scenario")
    s.add_argument("scenario")
    s.add_argument("--format", choices=("text", "machine"), default="text")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("run-all", help="run every bundled scenario")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--only", nargs="*", default=None, metavar="SCENARIO")
    s.add_argument("--format", choices=("text", "machine"), default="text")
    s.set_defaults(func=cmd_run_all)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GeoboundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
