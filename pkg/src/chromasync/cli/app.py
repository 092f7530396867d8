"""
`chromasync` command-line interface.

Exit codes: 0 success, 1 usage error (bad flags or flag values),
2 data/contract error (any ChromaSyncError, unreadable inputs).
"""

import argparse
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from pydantic import BaseModel, TypeAdapter, ValidationError
from rich.console import Console
from rich.markup import escape

from chromasync.adapt.domain_adaptation import ExpectationTable, adapt_and_predict
from chromasync.config.configs import GmmConfig, SvmConfig
from chromasync.config.settings import default_jobs, default_seed
from chromasync.core.constants import FEATURE_NAMES
from chromasync.core.exceptions import ChromaSyncError
from chromasync.core.manifest import DatasetManifest
from chromasync.core.utils import console, file_digest, logger
from chromasync.evaluation.experiments import DEFAULT_FRACTIONS, run_benchmark, run_unbalanced
from chromasync.evaluation.histogram import feature_histogram, histograms_by_label
from chromasync.evaluation.metrics import MetricsReport, evaluate_labels, render_metrics_table
from chromasync.evaluation.predictions import predict_table
from chromasync.features.extractor import extract_batch
from chromasync.features.table import FeatureTable, require_rows, split_table
from chromasync.imaging.imageio import load_image
from chromasync.imaging.synthgen import SynthConfig, gen_corpus
from chromasync.models.gmm import em_fit
from chromasync.models.persistence import Provenance, load_model, save_model
from chromasync.models.svm import smo_train
from chromasync.spectral.spectrum import dump_spectrum_csv, spectrum

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

error_console = Console(stderr=True)
_REPORTS_ADAPTER = TypeAdapter(dict[str, MetricsReport])


class ChromaSyncParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors with exit code 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        error_console.print(f"[bold red]error:[/bold red] {escape(message)}")
        raise SystemExit(EXIT_USAGE)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def _gamma(text: str):
    try:
        return SvmConfig.parse_gamma(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"must be 'scale' or a number, got '{text}'")


def _fractions(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"must be a comma-separated list of numbers, got '{text}'")


def _provenance(config: dict, seed: Optional[int], features: Path, table: FeatureTable) -> Provenance:
    return Provenance(config=config, seed=seed, input_digest=file_digest(features), input_rows=len(table))


def _emit_reports(reports: dict[str, MetricsReport], as_json: bool, title: str) -> None:
    if as_json:
        payload = _REPORTS_ADAPTER.dump_json(dict(reports), indent=2).decode("utf-8")
        sys.stdout.write(payload + "\n")
    else:
        console.print(render_metrics_table(reports, title=title))


def _write_json(document: BaseModel, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(document.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")


def apply_environment_defaults(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset --seed and --jobs from FORENSICS_SEED and CHROMASYNC_JOBS."""
    if getattr(args, "seed", 0) is None:
        args.seed = default_seed()
    if getattr(args, "jobs", 1) is None:
        args.jobs = default_jobs()
    return args


def _print_path(path: Path) -> None:
    console.print(str(path), markup=False, highlight=False, soft_wrap=True)


def _svm_config(args: argparse.Namespace) -> SvmConfig:
    return SvmConfig(c=args.c, gamma=args.gamma, tol=args.tol, max_passes=args.max_passes)


def cmd_synth(args: argparse.Namespace) -> int:
    cfg = SynthConfig(
        count=args.count,
        size=args.size,
        fake_fraction=args.fake_fraction,
        seed=args.seed,
        noise_amplitude=args.noise_amplitude,
    )
    manifest_path = gen_corpus(cfg, args.out, jobs=args.jobs)
    n_real, n_fake = cfg.class_counts()
    console.print(
        f"[green]Wrote {n_real} real + {n_fake} fake images[/green] -> {escape(str(manifest_path))}",
        soft_wrap=True,
    )
    return EXIT_OK


def cmd_extract(args: argparse.Namespace) -> int:
    manifest = DatasetManifest.read(args.manifest)
    table = extract_batch(manifest, permissive=args.permissive, jobs=args.jobs)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    table.write_csv(args.out)
    console.print(
        f"[green]Extracted {len(table)} of {len(manifest)} entries[/green] -> {escape(str(args.out))}",
        soft_wrap=True,
    )
    return EXIT_OK


def cmd_train_gmm(args: argparse.Namespace) -> int:
    table = FeatureTable.read_csv(args.features)
    require_rows(table)
    config = GmmConfig(seed=args.seed, max_iters=args.max_iters, n_restarts=args.n_restarts)
    model = em_fit(table.values, config)
    save_model(model, args.out, _provenance(config.to_dict(), args.seed, args.features, table))
    console.print(
        f"[green]Trained GMM on {len(table)} rows[/green] -> {escape(str(args.out))}",
        soft_wrap=True,
    )
    return EXIT_OK


def cmd_train_svm(args: argparse.Namespace) -> int:
    table = FeatureTable.read_csv(args.features)
    require_rows(table)
    config = _svm_config(args)
    model = smo_train(table.values, table.svm_labels(), config)
    save_model(model, args.out, _provenance(config.to_dict(), None, args.features, table))
    console.print(
        f"[green]Trained SVM on {len(table)} rows, {len(model.dual_coefs)} support vectors[/green] -> {escape(str(args.out))}",
        soft_wrap=True,
    )
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    table = FeatureTable.read_csv(args.features)
    require_rows(table)
    truth = table.label_array()
    predictions = predict_table(model, table)
    report = evaluate_labels(truth, predictions.labels)
    if args.predictions:
        predictions.write_csv(args.predictions)
    if args.out:
        _write_json(report, args.out)
    _emit_reports({args.model.name: report}, args.json, "Evaluation")
    return EXIT_OK


def cmd_predict(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    table = FeatureTable.read_csv(args.features)
    require_rows(table)
    predict_table(model, table).write_csv(args.out)
    return EXIT_OK


def cmd_adapt(args: argparse.Namespace) -> int:
    source = FeatureTable.read_csv(args.source)
    target = FeatureTable.read_csv(args.target)
    result = adapt_and_predict(
        source,
        target,
        _svm_config(args),
        seed=args.seed,
        source_expectations=ExpectationTable.load(args.source_expectations) if args.source_expectations else None,
        target_expectations=ExpectationTable.load(args.expectations) if args.expectations else None,
        jobs=args.jobs,
    )
    result.predictions.write_csv(args.out)
    if args.expectations_out:
        result.source_expectations.save(args.expectations_out / "source_expectations.json")
        result.target_expectations.save(args.expectations_out / "target_expectations.json")
    if result.metrics is not None:
        if args.metrics_out:
            _write_json(result.metrics, args.metrics_out)
        _emit_reports({"adapted target": result.metrics}, args.json, "Domain adaptation")
    else:
        console.print(
            f"[green]Predicted {len(result.predictions)} target rows[/green] -> {escape(str(args.out))}",
            soft_wrap=True,
        )
    return EXIT_OK


def cmd_split(args: argparse.Namespace) -> int:
    table = FeatureTable.read_csv(args.features)
    require_rows(table)
    train, test = split_table(table, test_fraction=args.test_fraction, seed=args.seed)
    train.write_csv(args.train_out)
    test.write_csv(args.test_out)
    console.print(f"Split {len(table)} rows into {len(train)} train / {len(test)} test")
    return EXIT_OK


def cmd_spectrum_dump(args: argparse.Namespace) -> int:
    written = dump_spectrum_csv(spectrum(load_image(args.image)), args.out_dir)
    for path in written:
        _print_path(path)
    return EXIT_OK


def cmd_histogram(args: argparse.Namespace) -> int:
    table = FeatureTable.read_csv(args.features)
    if args.by_label:
        for name, hist in histograms_by_label(table, args.feature, args.bins).items():
            path = args.out.with_name(f"{args.out.stem}_{name}{args.out.suffix or '.csv'}")
            hist.write_csv(path)
            _print_path(path)
    else:
        feature_histogram(table, args.feature, args.bins).write_csv(args.out)
        _print_path(args.out)
    return EXIT_OK


def cmd_experiment_benchmark(args: argparse.Namespace) -> int:
    table = FeatureTable.read_csv(args.features)
    reports = run_benchmark(table, seed=args.seed, svm_config=_svm_config(args))
    _emit_reports(reports, args.json, "Benchmark (50/50 split)")
    return EXIT_OK


def cmd_experiment_unbalanced(args: argparse.Namespace) -> int:
    table = FeatureTable.read_csv(args.features)
    reports = run_unbalanced(table, fractions=args.fractions, seed=args.seed, svm_config=_svm_config(args))
    _emit_reports(
        {f"fake {fraction:.0%}": report for fraction, report in reports.items()},
        args.json,
        "Unbalanced training (SVM)",
    )
    return EXIT_OK


def _add_seed(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--seed", type=int, default=None, help="Random seed (default: FORENSICS_SEED or 0)"
    )


def _add_jobs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--jobs", type=_positive_int, default=None, help="Worker threads (default: CHROMASYNC_JOBS or CPU count)"
    )


def _add_svm_flags(parser: argparse.ArgumentParser) -> None:
    defaults = SvmConfig()
    parser.add_argument("--c", type=float, default=defaults.c, help="Box constraint C")
    parser.add_argument("--gamma", type=_gamma, default=defaults.gamma, help="RBF gamma or 'scale'")
    parser.add_argument("--tol", type=float, default=defaults.tol, help="KKT tolerance")
    parser.add_argument("--max-passes", type=_positive_int, default=defaults.max_passes)


def build_parser() -> argparse.ArgumentParser:
    parser = ChromaSyncParser(
        prog="chromasync",
        description="Detect GAN-generated images from channel-wise spectral asynchrony.",
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    synth = commands.add_parser("synth", help="Generate a seeded synthetic real/fake corpus")
    synth.add_argument("--count", type=_positive_int, required=True, help="Number of real images")
    synth.add_argument("--size", type=int, default=64, help="Image side length in pixels")
    synth.add_argument("--fake-fraction", type=float, default=0.5)
    synth.add_argument("--noise-amplitude", type=float, default=8.0)
    synth.add_argument("--out", type=Path, required=True, help="Output directory")
    _add_seed(synth)
    _add_jobs(synth)
    synth.set_defaults(handler=cmd_synth)

    extract = commands.add_parser("extract", help="Compute the six spectral features per manifest entry")
    extract.add_argument("--manifest", type=Path, required=True)
    extract.add_argument("--out", type=Path, required=True, help="Feature CSV")
    extract.add_argument("--permissive", action="store_true", help="Skip unreadable entries with a warning")
    _add_jobs(extract)
    extract.set_defaults(handler=cmd_extract)

    train = commands.add_parser("train", help="Fit a classifier on a feature CSV")
    trainers = train.add_subparsers(dest="model_kind", metavar="MODEL", required=True)
    gmm = trainers.add_parser("gmm", help="Unsupervised two-component GMM (labels ignored)")
    gmm.add_argument("--features", type=Path, required=True)
    gmm.add_argument("--out", type=Path, required=True)
    gmm.add_argument("--max-iters", type=_positive_int, default=GmmConfig().max_iters)
    gmm.add_argument("--n-restarts", type=int, default=0)
    _add_seed(gmm)
    gmm.set_defaults(handler=cmd_train_gmm)
    svm = trainers.add_parser("svm", help="RBF SVM trained by SMO (labels required)")
    svm.add_argument("--features", type=Path, required=True)
    svm.add_argument("--out", type=Path, required=True)
    _add_svm_flags(svm)
    svm.set_defaults(handler=cmd_train_svm)

    evaluate = commands.add_parser("eval", help="Score a model on a labeled feature CSV")
    evaluate.add_argument("--model", type=Path, required=True)
    evaluate.add_argument("--features", type=Path, required=True)
    evaluate.add_argument("--out", type=Path, help="Write the metrics JSON here")
    evaluate.add_argument("--predictions", type=Path, help="Write per-row predictions CSV here")
    evaluate.add_argument("--json", action="store_true", help="Print metrics JSON instead of a table")
    evaluate.set_defaults(handler=cmd_eval)

    predict = commands.add_parser("predict", help="Label feature rows with a model")
    predict.add_argument("--model", type=Path, required=True)
    predict.add_argument("--features", type=Path, required=True)
    predict.add_argument("--out", type=Path, required=True, help="Predictions CSV")
    predict.set_defaults(handler=cmd_predict)

    adapt = commands.add_parser("adapt", help="Train on a labeled source, predict an unlabeled target")
    adapt.add_argument("--source", type=Path, required=True)
    adapt.add_argument("--target", type=Path, required=True)
    adapt.add_argument("--expectations", type=Path, help="Target expectation table used verbatim")
    adapt.add_argument("--source-expectations", type=Path, help="Source expectation table used verbatim")
    adapt.add_argument("--expectations-out", type=Path, help="Directory for the expectation tables in use")
    adapt.add_argument("--out", type=Path, required=True, help="Predictions CSV")
    adapt.add_argument("--metrics-out", type=Path, help="Metrics JSON (labeled targets only)")
    adapt.add_argument("--json", action="store_true")
    _add_svm_flags(adapt)
    _add_seed(adapt)
    _add_jobs(adapt)
    adapt.set_defaults(handler=cmd_adapt)

    split = commands.add_parser("split", help="Stratified train/test split of a labeled feature CSV")
    split.add_argument("--features", type=Path, required=True)
    split.add_argument("--train-out", type=Path, required=True)
    split.add_argument("--test-out", type=Path, required=True)
    split.add_argument("--test-fraction", type=float, default=0.5)
    _add_seed(split)
    split.set_defaults(handler=cmd_split)

    dump = commands.add_parser("spectrum-dump", help="Write one image's R, G, B magnitude spectra as CSV")
    dump.add_argument("--image", type=Path, required=True)
    dump.add_argument("--out-dir", type=Path, required=True)
    dump.set_defaults(handler=cmd_spectrum_dump)

    hist = commands.add_parser("histogram", help="Histogram of one feature column as CSV")
    hist.add_argument("--features", type=Path, required=True)
    hist.add_argument("--feature", choices=FEATURE_NAMES, default="mean")
    hist.add_argument("--bins", type=_positive_int, default=50)
    hist.add_argument("--out", type=Path, required=True)
    hist.add_argument("--by-label", action="store_true", help="One CSV per class over shared bin edges")
    hist.set_defaults(handler=cmd_histogram)

    experiment = commands.add_parser("experiment", help="Run a benchmark protocol on a labeled feature CSV")
    protocols = experiment.add_subparsers(dest="protocol", metavar="PROTOCOL", required=True)
    benchmark = protocols.add_parser("benchmark", help="GMM and SVM on a 50/50 split")
    benchmark.add_argument("--features", type=Path, required=True)
    benchmark.add_argument("--json", action="store_true")
    _add_svm_flags(benchmark)
    _add_seed(benchmark)
    benchmark.set_defaults(handler=cmd_experiment_benchmark)
    unbalanced = protocols.add_parser("unbalanced", help="SVM trained with few fakes")
    unbalanced.add_argument("--features", type=Path, required=True)
    unbalanced.add_argument(
        "--fractions", type=_fractions, default=DEFAULT_FRACTIONS, help="Comma-separated fake fractions"
    )
    unbalanced.add_argument("--json", action="store_true")
    _add_svm_flags(unbalanced)
    _add_seed(unbalanced)
    unbalanced.set_defaults(handler=cmd_experiment_unbalanced)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(apply_environment_defaults(args))
    except ChromaSyncError as e:
        logger.debug("Command failed", exc_info=True)
        error_console.print(f"[bold red]error:[/bold red] {escape(str(e))}")
        return EXIT_DATA
    except ValidationError as e:
        error_console.print(f"[bold red]invalid option value:[/bold red] {escape(str(e))}")
        return EXIT_USAGE
    except OSError as e:
        error_console.print(f"[bold red]I/O error:[/bold red] {escape(str(e))}")
        return EXIT_DATA
    except ValueError as e:
        error_console.print(f"[bold red]invalid option value:[/bold red] {escape(str(e))}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
