"""``dbees`` command line: disambiguate, oracle, compare, gen-instance.

Exit codes: 0 ok, 2 usage or parse error, 3 solver failure, 4 oracle cap.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Sequence

from .baselines import SaConfig, mfs_solve, random_sense_solve, simulated_annealing_solve
from .bco import HiveConfig, run_dbees
from .generator import generate
from .inventory import (
    InventoryError,
    ProblemInstance,
    SenseInventory,
    dump_instance,
    dump_inventory,
    dump_key,
    load_instance_file,
    load_inventory_file,
    load_key_file,
    order_by_pos,
)
from .objective import DEFAULT_CAP, CapExceeded, brute_force_solve, total_pairwise_quality
from .relatedness import Relatedness
from .scorer import EvalReport, format_table, report_record, score

EXIT_OK, EXIT_PARSE, EXIT_SOLVER, EXIT_CAP = 0, 2, 3, 4

# Literature values reprinted for reference only; not produced by this package.
PUBLISHED_SCORES = (
    ("D-Bees", (99.91, 80.47, 80.41, 80.44)),
    ("MFS", (100.0, 78.89, 78.89, 78.89)),
    ("TSP-ACO", (99.80, 78.50, 78.10, 78.30)),
    ("ACA", (100.0, 77.64, 77.64, 77.64)),
    ("SA", (100.0, 74.23, 74.23, 74.23)),
    ("GA", (100.0, 73.98, 73.98, 73.98)),
    ("RS", (100.0, 52.43, 52.43, 52.43)),
)
PUBLISHED_UPPER_BOUND = 86.44


class ParseFailure(Exception):
    pass


def _load(path: str, loader, *args):
    try:
        return loader(path, *args)
    except FileNotFoundError:
        raise ParseFailure(f"{path}: no such file") from None
    except (OSError, UnicodeDecodeError, InventoryError) as exc:
        raise ParseFailure(f"{path}: {exc}") from None


def _write(out: str | None, text: str) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _hive_config(args: argparse.Namespace) -> HiveConfig:
    return HiveConfig(
        nc=args.nc,
        r=args.recruiters,
        max_iterations=args.iterations,
        beta=args.beta,
        theta=args.theta,
        candidate_cap=args.candidate_cap,
        seed=args.seed,
    )


def _sa_config(args: argparse.Namespace) -> SaConfig:
    return SaConfig(
        initial_temperature=args.sa_temperature,
        cooling_rate=args.sa_cooling,
        steps_per_temperature=args.sa_steps,
        min_temperature=args.sa_min_temperature,
        seed=args.seed,
    )


def _load_problem(args: argparse.Namespace) -> tuple[SenseInventory, ProblemInstance]:
    inv = _load(args.inventory, load_inventory_file)
    instance = _load(args.instance, load_instance_file, inv)
    return inv, instance


def cmd_disambiguate(args: argparse.Namespace) -> int:
    inv, instance = _load_problem(args)
    try:
        config = _hive_config(args)
    except ValueError as exc:
        print(f"dbees: invalid solver flags: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        result = run_dbees(order_by_pos(instance), Relatedness(inv), config, trace=bool(args.trace))
    except (ValueError, KeyError) as exc:
        print(f"dbees: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    order = [t.instance_id for t in instance.targets]
    text = dump_key(result.best, order)
    text += (
        f"# solver dbees seed {config.seed}\n"
        f"# path_quality {result.quality!r}\n"
        f"# global_quality {result.global_quality!r}\n"
        f"# iterations {result.iterations_used} forward_passes {result.forward_passes}"
        f" found_iteration {result.found_iteration}\n"
    )
    _write(args.out, text)
    if args.trace:
        lines = "".join(json.dumps(rec, sort_keys=True) + "\n" for rec in result.trace or [])
        Path(args.trace).write_text(lines, encoding="utf-8")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    inv, instance = _load_problem(args)
    try:
        assignment, quality = brute_force_solve(instance, Relatedness(inv), cap=args.cap)
    except CapExceeded as exc:
        print(f"dbees: {exc}", file=sys.stderr)
        return EXIT_CAP
    text = dump_key(assignment, [t.instance_id for t in instance.targets])
    text += f"# solver oracle\n# global_quality {quality!r}\n"
    _write(args.out, text)
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    if not args.gold:
        print("dbees: compare needs --gold", file=sys.stderr)
        return EXIT_PARSE
    if len(args.gold) != len(args.instance):
        print("dbees: give one --gold per --instance", file=sys.stderr)
        return EXIT_PARSE
    try:
        hive_config, sa_config = _hive_config(args), _sa_config(args)
    except ValueError as exc:
        print(f"dbees: invalid solver flags: {exc}", file=sys.stderr)
        return EXIT_PARSE
    inv = _load(args.inventory, load_inventory_file)
    problems = []
    for inst_path, gold_path in zip(args.instance, args.gold):
        problems.append(
            (_load(inst_path, load_instance_file, inv), _load(gold_path, load_key_file))
        )
    model = Relatedness(inv)
    multi = len(problems) > 1

    def key(k: int, iid: str) -> str:
        return f"{k}:{iid}" if multi else iid

    systems = ["D-Bees", "MFS", "RS", "SA", "Oracle"]
    predictions: dict[str, dict[str, str]] = {s: {} for s in systems}
    qualities: dict[str, list[float]] = {s: [] for s in systems}
    gold_all: dict[str, str] = {}
    oracle_ok = True
    try:
        for k, (instance, gold) in enumerate(problems):
            gold_all.update({key(k, i): s for i, s in gold.items()})
            ordered = order_by_pos(instance)
            outputs = {
                "D-Bees": run_dbees(ordered, model, hive_config).best,
                "MFS": mfs_solve(instance, inv),
                "RS": random_sense_solve(instance, inv, random.Random(args.seed)),
                "SA": simulated_annealing_solve(instance, model, sa_config)[0],
            }
            try:
                outputs["Oracle"] = brute_force_solve(instance, model, cap=args.cap)[0]
            except CapExceeded:
                oracle_ok = False
            for system, assignment in outputs.items():
                predictions[system].update({key(k, i): s for i, s in assignment.items()})
                qualities[system].append(total_pairwise_quality(assignment, instance, model))
    except (ValueError, KeyError) as exc:
        print(f"dbees: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    if not oracle_ok:
        systems.remove("Oracle")

    reports: list[tuple[str, EvalReport]] = [
        (s, score(predictions[s], gold_all)) for s in systems
    ]
    mean_q = {s: sum(qualities[s]) / len(qualities[s]) for s in systems}
    if args.format == "jsonl":
        lines = []
        for name, rep in reports:
            rec = json.loads(report_record(name, rep))
            rec["mean_global_quality"] = mean_q[name]
            lines.append(json.dumps(rec, sort_keys=True))
        for name, values in PUBLISHED_SCORES:
            rec = dict(zip(("attempted_pct", "precision", "recall", "f_measure"), values))
            lines.append(json.dumps({"system": name, "source": "paper-reported", **rec}, sort_keys=True))
        text = "\n".join(lines) + "\n"
    else:
        text = "Measured on the given instances\n"
        text += format_table(reports)
        text += "\nMean global quality (sum of pairwise relatedness)\n"
        text += "".join(f"  {s:<8}{mean_q[s]:.6f}\n" for s in systems)
        text += "\nPaper-reported (SemEval-2007, not reproduced here)\n"
        text += format_table([(f"{n} (paper-reported)", v) for n, v in PUBLISHED_SCORES])
        text += f"Inter-annotator upper bound (paper-reported): {PUBLISHED_UPPER_BOUND:.2f}\n"
    _write(args.out, text)
    return EXIT_OK


def cmd_gen_instance(args: argparse.Namespace) -> int:
    try:
        g = generate(
            n_words=args.words,
            max_senses=args.max_senses,
            min_senses=args.min_senses,
            depth=args.depth,
            vocab_size=args.vocab,
            gloss_length=args.gloss_length,
            seed=args.seed,
            cap=args.cap,
        )
    except ValueError as exc:
        print(f"dbees: invalid generator flags: {exc}", file=sys.stderr)
        return EXIT_PARSE
    prefix = args.out
    if not prefix:
        print("dbees: gen-instance needs --out PREFIX", file=sys.stderr)
        return EXIT_PARSE
    Path(f"{prefix}.inventory.jsonl").write_text(dump_inventory(g.inventory), encoding="utf-8")
    Path(f"{prefix}.instance").write_text(dump_instance(g.instance), encoding="utf-8")
    order = [t.instance_id for t in g.instance.targets]
    Path(f"{prefix}.gold").write_text(f"# gold: {g.gold_kind}\n" + dump_key(g.gold, order), encoding="utf-8")
    return EXIT_OK


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    d = HiveConfig()
    p.add_argument("--nc", type=int, default=d.nc, help="constructive moves per forward pass")
    p.add_argument("--recruiters", type=int, default=d.r, help="number of recruiter bees")
    p.add_argument("--iterations", type=int, default=d.max_iterations, help="maximum colony runs")
    p.add_argument("--beta", type=float, default=d.beta, help="quality threshold")
    p.add_argument("--theta", type=float, default=d.theta, help="similarity threshold")
    p.add_argument("--candidate-cap", type=int, default=d.candidate_cap,
                   help="senses probed per constructive move")


def _add_sa_flags(p: argparse.ArgumentParser) -> None:
    d = SaConfig()
    p.add_argument("--sa-temperature", type=float, default=d.initial_temperature)
    p.add_argument("--sa-cooling", type=float, default=d.cooling_rate)
    p.add_argument("--sa-steps", type=int, default=d.steps_per_temperature)
    p.add_argument("--sa-min-temperature", type=float, default=d.min_temperature)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dbees", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("disambiguate", help="run D-Bees and write a key file")
    p.add_argument("--inventory", required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_solver_flags(p)
    p.add_argument("--trace", metavar="PATH", help="write a JSON Lines trace to PATH")
    p.add_argument("--out", help="output key file (default stdout)")
    p.set_defaults(func=cmd_disambiguate)

    p = sub.add_parser("oracle", help="exhaustive optimum (small instances only)")
    p.add_argument("--inventory", required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max assignments to enumerate")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("compare", help="score every solver against gold keys")
    p.add_argument("--inventory", required=True)
    p.add_argument("--instance", required=True, action="append")
    p.add_argument("--gold", action="append")
    p.add_argument("--seed", type=int, default=0)
    _add_solver_flags(p)
    _add_sa_flags(p)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--format", choices=("text", "jsonl"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gen-instance", help="write a random inventory, instance and gold key")
    p.add_argument("--words", type=int, default=4)
    p.add_argument("--max-senses", type=int, default=4)
    p.add_argument("--min-senses", type=int, default=1)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--vocab", type=int, default=40)
    p.add_argument("--gloss-length", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--out", help="output path prefix")
    p.set_defaults(func=cmd_gen_instance)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseFailure as exc:
        print(f"dbees: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
