"""Command-line harness: stats, train, evaluate, and the comparison grid.

Defaults reproduce the benchmark exactly: a seeded 75/25 split shared by
every grid cell, binary bag-of-words and tf-idf vectorizers fitted on
the training split only, and the four classifiers with their documented
default hyperparameters. All outputs are deterministic given the
configuration (no timestamps, sorted keys, seeded training), so repeated
runs produce byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import (
    DEFAULT_LABEL_COLUMN,
    DEFAULT_TEXT_COLUMN,
    POLARITIES,
    Corpus,
    SplitConfig,
    label_frequencies,
    load_dataset,
    train_test_split,
)
from .errors import ConfigError, DatasetError, SentibenchError
from .metrics import MetricsReport, evaluate
from .models import MODEL_KINDS, load_model, make_model, save_model
from .preprocess import (
    Lemmatizer,
    StopWordList,
    TweetPreprocessor,
    load_lemma_exceptions,
    load_stopwords,
)
from .vectorize import (
    VECTORIZER_KINDS,
    load_vectorizer,
    make_vectorizer,
    save_vectorizer,
)

FORMATS = ("json", "csv", "table")

# Hyperparameter flag map: (flag, model kind, constructor argument, type, help).
_HP_FLAGS = [
    ("nb-alpha", "mnb", "alpha", float, "naive Bayes smoothing (default 1.0)"),
    ("logreg-rate", "logreg", "learning_rate", float, "logreg step size (default 0.1)"),
    ("logreg-epochs", "logreg", "epochs", int, "logreg passes over the data (default 50)"),
    ("logreg-batch", "logreg", "batch_size", int, "logreg mini-batch size (default 64)"),
    ("logreg-l2", "logreg", "l2", float, "logreg L2 strength (default 1e-4)"),
    ("svm-lambda", "svm", "lam", float, "svm regularization (default 1e-4)"),
    ("svm-epochs", "svm", "epochs", int, "svm passes over the data (default 50)"),
    ("rf-trees", "rf", "n_trees", int, "forest size (default 100)"),
    ("rf-depth", "rf", "max_depth", int, "tree depth cap, 0 = unlimited (default 40)"),
    ("rf-features", "rf", "max_features", int,
     "features tried per node (default ceil(sqrt(dims)))"),
    ("rf-bootstrap", "rf", "bootstrap", int, "bootstrap resampling, 0 or 1 (default 1)"),
]


@dataclass
class ExperimentConfig:
    """Everything one run needs; file paths are validated up front."""

    data: str
    text_col: str = DEFAULT_TEXT_COLUMN
    label_col: str = DEFAULT_LABEL_COLUMN
    split_ratio: float = 0.75
    seed: int = 0
    stopwords: str | None = None
    lemma_exceptions: str | None = None
    vectorizers: tuple[str, ...] = VECTORIZER_KINDS
    models: tuple[str, ...] = MODEL_KINDS
    hyperparams: dict = field(default_factory=dict)
    out_dir: str = "sentibench_out"
    formats: tuple[str, ...] = FORMATS

    def validate(self) -> "ExperimentConfig":
        try:
            self.split_ratio = float(self.split_ratio)
            self.seed = int(self.seed)
        except (TypeError, ValueError):
            raise ConfigError(
                f"split_ratio and seed must be numeric, got "
                f"{self.split_ratio!r} / {self.seed!r}"
            ) from None
        if not self.data:
            raise ConfigError("--data is required")
        if not Path(self.data).is_file():
            raise ConfigError(f"dataset file not found: {self.data}")
        for path in (self.stopwords, self.lemma_exceptions):
            if path is not None and not Path(path).is_file():
                raise ConfigError(f"referenced file not found: {path}")
        if not (0.0 < self.split_ratio < 1.0):
            raise ConfigError(
                f"split ratio must be in (0, 1), got {self.split_ratio}"
            )
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        if not self.vectorizers:
            raise ConfigError("select at least one vectorizer")
        if not self.models:
            raise ConfigError("select at least one model")
        for kind in self.vectorizers:
            if kind not in VECTORIZER_KINDS:
                raise ConfigError(f"unknown vectorizer {kind!r}")
        for kind in self.models:
            if kind not in MODEL_KINDS:
                raise ConfigError(f"unknown model {kind!r}")
        for fmt in self.formats:
            if fmt not in FORMATS:
                raise ConfigError(f"unknown output format {fmt!r}")
        return self

    def build_preprocessor(self) -> TweetPreprocessor:
        stoplist = load_stopwords(self.stopwords)
        exceptions = (
            load_lemma_exceptions(self.lemma_exceptions)
            if self.lemma_exceptions
            else None
        )
        return TweetPreprocessor(stoplist=stoplist, lemmatizer=Lemmatizer(exceptions))

    def model_hyperparams(self, kind: str) -> dict:
        hp = dict(self.hyperparams.get(kind, {}))
        if kind == "rf" and hp.get("max_depth") == 0:
            hp["max_depth"] = None  # 0 on the CLI means unlimited depth
        if kind == "rf" and "bootstrap" in hp:
            hp["bootstrap"] = bool(hp["bootstrap"])
        return hp


def _csv_list(value: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in value.split(",") if part.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sentibench",
        description="Tweet sentiment benchmark: preprocessing, two vectorizers, "
        "four classifiers, weighted-metric comparison grid.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON config file; flags override its values")
        p.add_argument("--data", help="dataset CSV path")
        p.add_argument("--text-col", dest="text_col", help="text column name")
        p.add_argument("--label-col", dest="label_col", help="label column name")
        p.add_argument("--split-ratio", dest="split_ratio", type=float)
        p.add_argument("--seed", type=int)
        p.add_argument("--stopwords", help="stop-word file (default: packaged list)")
        p.add_argument(
            "--lemma-exceptions",
            dest="lemma_exceptions",
            help="two-column 'word lemma' exceptions file",
        )
        p.add_argument("--out-dir", dest="out_dir", help="output directory")
        p.add_argument(
            "--format",
            dest="formats",
            type=_csv_list,
            help="comma-separated subset of json,csv,table",
        )
        for flag, _, _, typ, help_text in _HP_FLAGS:
            p.add_argument(
                f"--{flag}", dest=flag.replace("-", "_"), type=typ, help=help_text
            )

    p_stats = sub.add_parser("stats", help="label frequency summary")
    add_common(p_stats)

    p_train = sub.add_parser("train", help="train one model+vectorizer pair")
    add_common(p_train)
    p_train.add_argument("--model", required=True, choices=MODEL_KINDS)
    p_train.add_argument("--vectorizer", required=True, choices=VECTORIZER_KINDS)

    p_eval = sub.add_parser("evaluate", help="evaluate persisted artifacts")
    add_common(p_eval)
    p_eval.add_argument("--model-artifact", required=True)
    p_eval.add_argument("--vectorizer-artifact", required=True)

    p_cmp = sub.add_parser("compare", help="run the full comparison grid")
    add_common(p_cmp)
    p_cmp.add_argument(
        "--model",
        dest="models",
        type=_csv_list,
        help="comma-separated model kinds (default: all four)",
    )
    p_cmp.add_argument(
        "--vectorizer",
        dest="vectorizers",
        type=_csv_list,
        help="comma-separated vectorizer kinds (default: both)",
    )
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    values: dict = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as handle:
                loaded = json.load(handle)
        except OSError as exc:
            raise ConfigError(f"cannot read config file {args.config!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{args.config}: invalid JSON: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError(f"{args.config}: config must be a JSON object")
        values.update(loaded)

    for name in (
        "data",
        "text_col",
        "label_col",
        "split_ratio",
        "seed",
        "stopwords",
        "lemma_exceptions",
        "out_dir",
        "formats",
        "models",
        "vectorizers",
    ):
        flag_value = getattr(args, name, None)
        if flag_value is not None:
            values[name] = flag_value

    file_hp = values.get("hyperparams", {})
    if not isinstance(file_hp, dict) or not all(
        isinstance(v, dict) for v in file_hp.values()
    ):
        raise ConfigError("hyperparams must map model kind -> {name: value}")
    hyperparams = {k: dict(v) for k, v in file_hp.items()}
    for flag, kind, arg_name, _, _ in _HP_FLAGS:
        flag_value = getattr(args, flag.replace("-", "_"), None)
        if flag_value is not None:
            hyperparams.setdefault(kind, {})[arg_name] = flag_value
    values["hyperparams"] = hyperparams

    for key in ("formats", "models", "vectorizers"):
        if key in values:
            if isinstance(values[key], str):  # allow "bow,tfidf" in config files
                values[key] = _csv_list(values[key])
            values[key] = tuple(values[key])

    known = set(ExperimentConfig.__dataclass_fields__)
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "data" not in values:
        raise ConfigError("--data is required (flag or config file)")
    return ExperimentConfig(**values).validate()


# --- shared pipeline steps --------------------------------------------------


def _split(config: ExperimentConfig) -> tuple[Corpus, Corpus]:
    corpus = load_dataset(config.data, config.text_col, config.label_col)
    split_cfg = SplitConfig(train_ratio=config.split_ratio, seed=config.seed)
    return train_test_split(corpus, split_cfg)


def _test_ids_digest(test: Corpus) -> str:
    return hashlib.sha256("\n".join(test.ids()).encode("utf-8")).hexdigest()


def _preprocessing_extra(preprocessor: TweetPreprocessor) -> dict:
    return {
        "preprocessing": {
            "stopwords": sorted(preprocessor.stoplist.words),
            "lemma_exceptions": dict(sorted(preprocessor.lemmatizer.exceptions.items())),
        }
    }


def _preprocessor_from_artifact(doc: dict) -> TweetPreprocessor:
    section = doc.get("preprocessing")
    if not section:
        return TweetPreprocessor()
    return TweetPreprocessor(
        stoplist=StopWordList(words=frozenset(section["stopwords"])),
        lemmatizer=Lemmatizer(section.get("lemma_exceptions", {})),
    )


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, sort_keys=True, indent=1)
        handle.write("\n")


def _ensure_out_dir(config: ExperimentConfig) -> Path:
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _report_metadata(config: ExperimentConfig, test: Corpus) -> dict:
    return {
        "seed": config.seed,
        "split_ratio": config.split_ratio,
        "dataset": str(config.data),
        "test_ids_sha256": _test_ids_digest(test),
    }


# --- subcommands -------------------------------------------------------------


def cmd_stats(config: ExperimentConfig) -> int:
    corpus = load_dataset(config.data, config.text_col, config.label_col)
    if len(corpus) == 0:
        raise DatasetError(f"{config.data}: empty corpus (no data rows)")
    freqs = label_frequencies(corpus)
    total = len(corpus)

    lines = [f"{'class':<10} {'count':>7} {'percent':>8}"]
    for label in POLARITIES:
        lines.append(
            f"{label:<10} {freqs[label]:>7d} {100.0 * freqs[label] / total:>7.2f}%"
        )
    lines.append(f"{'total':<10} {total:>7d}")
    table = "\n".join(lines)
    print(table)

    out = _ensure_out_dir(config)
    payload = {
        "dataset": str(config.data),
        "total": total,
        "counts": freqs,
        "percent": {c: freqs[c] / total for c in POLARITIES},
    }
    if "json" in config.formats:
        _write_json(out / "stats.json", payload)
    if "csv" in config.formats:
        with open(out / "stats.csv", "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["class", "count", "percent"])
            for label in POLARITIES:
                writer.writerow([label, freqs[label], repr(freqs[label] / total)])
    if "table" in config.formats:
        (out / "stats.txt").write_text(table + "\n", encoding="utf-8")
    return 0


def _train_cell(config: ExperimentConfig, model_kind: str, train_vectors, train_labels):
    try:
        model = make_model(
            model_kind,
            seed=config.seed,
            hyperparams=config.model_hyperparams(model_kind),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid hyperparameters for {model_kind}: {exc}") from exc
    model.fit(train_vectors, train_labels)
    return model


def cmd_train(config: ExperimentConfig, model_kind: str, vectorizer_kind: str) -> int:
    train, _ = _split(config)
    preprocessor = config.build_preprocessor()
    train_docs = preprocessor.preprocess_corpus(train.texts())

    vectorizer = make_vectorizer(vectorizer_kind).fit(train_docs)
    train_vectors = vectorizer.transform(train_docs)
    model = _train_cell(config, model_kind, train_vectors, train.labels())

    out = _ensure_out_dir(config)
    vec_path = out / f"vectorizer_{vectorizer_kind}.json"
    model_path = out / f"model_{model_kind}_{vectorizer_kind}.json"
    save_vectorizer(vectorizer, str(vec_path), extra=_preprocessing_extra(preprocessor))
    save_model(model, str(model_path))
    print(f"vectorizer: {vec_path}")
    print(f"model: {model_path}")
    return 0


def cmd_evaluate(config: ExperimentConfig, model_path: str, vectorizer_path: str) -> int:
    vectorizer, doc = load_vectorizer(vectorizer_path)
    model = load_model(model_path)
    preprocessor = _preprocessor_from_artifact(doc)
    _, test = _split(config)

    report = evaluate(
        model, vectorizer, test, preprocessor, metadata=_report_metadata(config, test)
    )
    print(report.render_table())

    out = _ensure_out_dir(config)
    stem = f"report_{model.variant}_{vectorizer.kind}"
    if "json" in config.formats:
        _write_json(out / f"{stem}.json", report.to_json_dict())
    if "csv" in config.formats:
        _write_report_csv(out / f"{stem}.csv", report)
    if "table" in config.formats:
        (out / f"{stem}.txt").write_text(report.render_table() + "\n", encoding="utf-8")
    return 0


def _write_report_csv(path: Path, report: MetricsReport) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["class", "precision", "recall", "f1", "support"])
        for label in POLARITIES:
            m = report.per_class[label]
            writer.writerow(
                [label, repr(m.precision), repr(m.recall), repr(m.f1), report.support[label]]
            )
        w = report.weighted
        writer.writerow(
            ["weighted", repr(w.precision), repr(w.recall), repr(w.f1), report.confusion.total]
        )
        writer.writerow(["accuracy", repr(report.accuracy), "", "", ""])


def _render_comparison(rows: list[dict]) -> str:
    best = max(row["accuracy"] for row in rows)
    lines = [
        f"{'model':<8} {'vectorizer':<10} {'accuracy':>8} {'precision':>9} "
        f"{'recall':>7} {'f1':>6}"
    ]
    for row in rows:
        marker = " *" if row["accuracy"] == best else ""
        lines.append(
            f"{row['model']:<8} {row['vectorizer']:<10} {row['accuracy']:>8.2f} "
            f"{row['weighted_precision']:>9.2f} {row['weighted_recall']:>7.2f} "
            f"{row['weighted_f1']:>6.2f}{marker}"
        )
    lines.append("* best accuracy")
    return "\n".join(lines)


def cmd_compare(config: ExperimentConfig) -> int:
    train, test = _split(config)
    preprocessor = config.build_preprocessor()
    train_docs = preprocessor.preprocess_corpus(train.texts())
    metadata = _report_metadata(config, test)

    out = _ensure_out_dir(config)
    rows = []
    reports: dict[tuple[str, str], MetricsReport] = {}
    for vectorizer_kind in config.vectorizers:
        vectorizer = make_vectorizer(vectorizer_kind).fit(train_docs)
        train_vectors = vectorizer.transform(train_docs)
        for model_kind in config.models:
            model = _train_cell(config, model_kind, train_vectors, train.labels())
            report = evaluate(model, vectorizer, test, preprocessor, metadata=metadata)
            reports[(model_kind, vectorizer_kind)] = report
            rows.append(
                {
                    "model": model_kind,
                    "vectorizer": vectorizer_kind,
                    "accuracy": report.accuracy,
                    "weighted_precision": report.weighted.precision,
                    "weighted_recall": report.weighted.recall,
                    "weighted_f1": report.weighted.f1,
                }
            )
            print(
                f"done: {model_kind}/{vectorizer_kind} "
                f"accuracy={report.accuracy:.4f}"
            )

    table = _render_comparison(rows)
    print(table)

    payload = {
        "dataset": str(config.data),
        "seed": config.seed,
        "split_ratio": config.split_ratio,
        "train_size": len(train),
        "test_size": len(test),
        "test_ids_sha256": metadata["test_ids_sha256"],
        "rows": rows,
    }
    if "json" in config.formats:
        _write_json(out / "comparison.json", payload)
        for (model_kind, vectorizer_kind), report in reports.items():
            _write_json(
                out / f"report_{model_kind}_{vectorizer_kind}.json",
                report.to_json_dict(),
            )
    if "csv" in config.formats:
        with open(out / "comparison.csv", "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(
                ["model", "vectorizer", "accuracy", "weighted_precision",
                 "weighted_recall", "weighted_f1"]
            )
            for row in rows:
                writer.writerow(
                    [row["model"], row["vectorizer"], repr(row["accuracy"]),
                     repr(row["weighted_precision"]), repr(row["weighted_recall"]),
                     repr(row["weighted_f1"])]
                )
    if "table" in config.formats:
        (out / "comparison.txt").write_text(table + "\n", encoding="utf-8")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        if args.command == "stats":
            return cmd_stats(config)
        if args.command == "train":
            return cmd_train(config, args.model, args.vectorizer)
        if args.command == "evaluate":
            return cmd_evaluate(config, args.model_artifact, args.vectorizer_artifact)
        if args.command == "compare":
            return cmd_compare(config)
        raise ConfigError(f"unknown command {args.command!r}")
    except SentibenchError as exc:
        print(f"error[{exc.category}]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
