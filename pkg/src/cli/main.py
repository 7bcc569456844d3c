"""
snn-dse command line: train, simulate, profile, estimate and explore

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""
import argparse
import json
import logging
import os
import sys
from pathlib import Path

from dotenv import load_dotenv

from src.dse.explorer import ExplorationSpec, explore, load_profiles, reference_profiles
from src.dse.pareto import pareto_front
from src.dse.report import format_ranking, read_report, write_report
from src.engine.selectors import SelectorConfig, SelectorKind
from src.engine.simulator import profile_dataset
from src.hardware.evaluate import evaluate
from src.hardware.logic import fit_from_csv
from src.hardware.tech import ArchConfig, ArchKind, MemOrg
from src.models.coding import CodingParams, CodingScheme, SchemeTag, SpikeSelectConfig
from src.models.network import (
    format_topology,
    load_network,
    memory_bits,
    memory_sweep_hidden_depth,
    memory_sweep_hidden_width,
    parse_topology,
    save_network,
)
from src.preprocessing.mnist import MnistLoader, split_validation
from src.training.trainer import Hyperparams, evaluate_formal, init_xavier, train
from src.utils.config_loader import resolve_tech, save_tech
from src.utils.exceptions import ConfigError, SnnDseError

logger = logging.getLogger("snn_dse")

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _show_progress(args) -> bool:
    return not args.quiet and sys.stderr.isatty()


def _mnist_dir(args) -> str:
    return args.mnist_dir or os.environ.get("MNIST_DIR") or "data/mnist"


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {text}")
    return value


def _coding_params(args) -> CodingParams:
    return CodingParams(f_min=args.f_min, f_max=args.f_max, s_dev=args.s_dev,
                        t_min=args.t_min, window=args.window, seed=args.seed)


def _selector(args) -> SelectorConfig:
    return SelectorConfig(args.selector, delta_value=args.delta, max_value=args.max_value)


def spike_table(profile, accuracy=None) -> str:
    """Mean spikes per layer laid out as Input / FC1.. / Output / Spikes per pattern"""
    rows = [("Input", profile.mean_spikes_in[0])]
    rows += [(f"FC{k}", v) for k, v in enumerate(profile.mean_spikes_in[1:], start=1)]
    rows.append(("Output", profile.mean_output_spikes))
    lines = [f"{'Layer':<20}{'Spikes':>12}"]
    lines += [f"{name:<20}{value:>12.2f}" for name, value in rows]
    lines.append(f"{'Spikes per pattern':<20}{profile.total_spikes:>12.2f}")
    if accuracy is not None:
        lines.append(f"{'Accuracy':<20}{100 * accuracy:>11.2f}%")
    return "\n".join(lines)


def cmd_train(args) -> int:
    hp = Hyperparams(learning_rate=args.lr, epochs=args.epochs, batch_size=args.batch_size, seed=args.seed)
    net = init_xavier(args.topology, seed=args.seed)
    if args.epochs > 0:
        loader = MnistLoader(_mnist_dir(args))
        train_set, val_set = split_validation(loader.load_split("train"), args.validation)
        result = train(net, train_set, val_set, hp, progress=_show_progress(args))
        for log in result.history:
            val = "n/a" if log.val_accuracy is None else f"{100 * log.val_accuracy:.2f}%"
            print(f"epoch {log.epoch:3d}  lr {log.learning_rate:.5f}  loss {log.loss:.4f}  val {val}")
        net = result.network
    save_network(net, args.out)
    print(f"Saved {format_topology(args.topology)} network to {args.out}")
    return EXIT_OK


def cmd_eval(args) -> int:
    net = load_network(args.net)
    dataset = MnistLoader(_mnist_dir(args)).load_split(args.split)
    if args.samples:
        dataset = dataset.take(args.samples)
    accuracy = evaluate_formal(net, dataset)
    print(f"Formal accuracy on {len(dataset)} {args.split} samples: {100 * accuracy:.2f}%")
    return EXIT_OK


def _profile_schemes(args, schemes):
    net = load_network(args.net)
    dataset = MnistLoader(_mnist_dir(args)).load_split(args.split).take(args.samples)
    results = []
    for tag in schemes:
        results.append(profile_dataset(
            net, dataset, CodingScheme(tag, _coding_params(args)), _selector(args), seed=args.seed,
            spike_select=SpikeSelectConfig(args.factor), workers=args.workers, progress=_show_progress(args),
        ))
    return results


def cmd_sim(args) -> int:
    (result,) = _profile_schemes(args, [args.coding])
    print("=" * 40)
    print(f"{args.coding.label} ({result.n_samples} samples)")
    print("=" * 40)
    print(spike_table(result.profile, result.accuracy))
    return EXIT_OK


def cmd_profile(args) -> int:
    results = _profile_schemes(args, args.coding)
    payload = [r.to_dict() for r in results]
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w") as f:
        json.dump(payload if len(payload) > 1 else payload[0], f, indent=2)
    for r in results:
        print(f"\n{r.scheme.tag.label}")
        print(spike_table(r.profile, r.accuracy))
    print(f"\nWrote {len(results)} profile(s) to {out}")
    return EXIT_OK


def cmd_hw_estimate(args) -> int:
    if args.profile:
        profiles = load_profiles(args.profile)
        scheme = args.coding or next(iter(profiles))
        if scheme not in profiles:
            raise ConfigError(f"{args.profile} holds no profile for {scheme.value}")
        profile, _ = profiles[scheme]
    else:
        profile, _ = reference_profiles()[args.coding or SchemeTag.JITTERED_PERIODIC]
    topology = load_network(args.net).topology if args.net else args.topology
    config = ArchConfig(args.arch, args.mem_org, resolve_tech(args.tech))
    report = evaluate(config, topology, profile)
    for key, value in report.to_dict().items():
        print(f"{key:<14}{value}")
    if args.json:
        report.to_json(args.json)
    return EXIT_OK


def cmd_dse(args) -> int:
    try:
        spec = ExplorationSpec.from_json(args.spec)
    except ConfigError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    points = explore(spec, workers=args.workers, progress=_show_progress(args))
    paths = write_report(points, args.out)
    print(format_ranking(read_report(paths["csv"]), top=3))
    print(f"\n{len(points)} design points, {len(pareto_front(points))} on the latency/logic front")
    print(f"Report: {paths['csv']}  Pareto: {paths['json']}  Trade-off: {paths['tradeoff']}")
    return EXIT_OK


def cmd_report(args) -> int:
    frame = read_report(args.report)
    print(format_ranking(frame, top=args.top))
    front = frame[frame["pareto"]]
    print("\nPareto front:")
    for row in front.itertuples(index=False):
        print(f"  {row.scheme}/{row.arch}/{row.mem_org}")
    return EXIT_OK


def cmd_memory(args) -> int:
    bits = args.bits or [8]
    if args.sweep == "width":
        rows = memory_sweep_hidden_width(args.values or [100, 200, 300, 500, 1000, 2000], bits_per_weight=bits[0])
        print(f"{'hidden width':>12}  {'bits':>14}")
    elif args.sweep == "depth":
        rows = memory_sweep_hidden_depth(args.values or [1, 2, 3, 4, 5], bits_per_weight=bits[0])
        print(f"{'hidden layers':>12}  {'bits':>14}")
    else:
        rows = [(b, memory_bits(args.topology, b)) for b in (args.bits or [1, 8, 64])]
        print(f"{format_topology(args.topology)}")
        print(f"{'bits/weight':>12}  {'bits':>14}")
    for key, count in rows:
        print(f"{key:>12}  {count:>14,}")
    return EXIT_OK


def cmd_calibrate(args) -> int:
    tech = fit_from_csv(args.synthesis, resolve_tech(args.tech))
    if args.name:
        tech = tech.with_updates(name=args.name)
    save_tech(tech, args.out)
    for kind, coeffs in tech.logic.items():
        print(f"{kind.value}: {coeffs}")
    return EXIT_OK


def _add_coding_flags(p):
    p.add_argument("--net", required=True, help="trained network JSON")
    p.add_argument("--mnist-dir", default=None, help="MNIST IDX directory (default $MNIST_DIR)")
    p.add_argument("--split", default="test", choices=["train", "test"])
    p.add_argument("--samples", type=_positive_int, default=1000)
    p.add_argument("--selector", type=SelectorKind.parse, default=SelectorKind.TERMINATE_DELTA)
    p.add_argument("--delta", type=_positive_int, default=4)
    p.add_argument("--max-value", type=_positive_int, default=4)
    p.add_argument("--factor", type=float, default=3.0, help="Spike Select threshold factor")
    p.add_argument("--f-min", type=float, default=10.0)
    p.add_argument("--f-max", type=float, default=100.0)
    p.add_argument("--s-dev", type=float, default=0.1)
    p.add_argument("--t-min", type=float, default=0.01)
    p.add_argument("--window", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=_positive_int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snn-dse", description=__doc__.strip().splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings only, no progress bars")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a formal MLP on MNIST")
    p.add_argument("--mnist-dir", default=None)
    p.add_argument("--topology", type=parse_topology, default=parse_topology("784-100-10"))
    p.add_argument("--epochs", type=_non_negative_int, default=20)
    p.add_argument("--batch-size", type=_positive_int, default=32)
    p.add_argument("--lr", type=float, default=0.01)
    p.add_argument("--validation", type=_non_negative_int, default=10000, help="held-out training images")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="formal accuracy of a network file")
    p.add_argument("--net", required=True)
    p.add_argument("--mnist-dir", default=None)
    p.add_argument("--split", default="test", choices=["train", "test"])
    p.add_argument("--samples", type=_positive_int, default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sim", help="spiking inference with one coding scheme")
    _add_coding_flags(p)
    p.add_argument("--coding", type=SchemeTag.parse, default=SchemeTag.JITTERED_PERIODIC)
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("profile", help="write mean spike profiles as JSON")
    _add_coding_flags(p)
    p.add_argument("--coding", type=SchemeTag.parse, nargs="+", default=[SchemeTag.JITTERED_PERIODIC])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("hw-estimate", help="cost of one architecture and memory organization")
    p.add_argument("--profile", default=None, help="profile JSON; default is the published spike table")
    p.add_argument("--coding", type=SchemeTag.parse, default=None)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--net", default=None)
    group.add_argument("--topology", type=parse_topology, default=parse_topology("784-300-300-300-10"))
    p.add_argument("--arch", type=ArchKind.parse, required=True)
    p.add_argument("--mem-org", type=MemOrg.parse, default=MemOrg.FULLY_DISTRIBUTED)
    p.add_argument("--tech", default=None, help="tech YAML path or calibration name")
    p.add_argument("--json", default=None, help="also write the report as JSON")
    p.set_defaults(func=cmd_hw_estimate)

    p = sub.add_parser("dse", help="explore coding x architecture x memory organization")
    p.add_argument("--spec", required=True, help="exploration JSON")
    p.add_argument("--out", required=True, help="report CSV")
    p.add_argument("--workers", type=_positive_int, default=None)
    p.set_defaults(func=cmd_dse)

    p = sub.add_parser("report", help="print a ranked report and its Pareto front")
    p.add_argument("--report", required=True)
    p.add_argument("--top", type=_positive_int, default=None)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("memory", help="weight memory footprint")
    p.add_argument("--topology", type=parse_topology, default=parse_topology("784-300-10"))
    p.add_argument("--bits", type=_positive_int, nargs="+", default=None,
                   help="weight widths (table: 1 8 64, sweeps: 8)")
    p.add_argument("--sweep", choices=["width", "depth"], default=None)
    p.add_argument("--values", type=_positive_int, nargs="+", default=None)
    p.set_defaults(func=cmd_memory)

    p = sub.add_parser("calibrate", help="re-fit logic coefficients from synthesis results")
    p.add_argument("--synthesis", required=True, help="CSV with arch,topology,logic,registers")
    p.add_argument("--tech", default=None, help="base tech constants")
    p.add_argument("--name", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_calibrate)
    return parser


def setup_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv=None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    setup_logging(args.verbose, args.quiet)
    try:
        return args.func(args)
    except (SnnDseError, OSError) as e:
        logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    except ValueError as e:
        # parameter validation in the model constructors
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
