"""``disco`` command line: validate, iaa, deps, stats, synth.

Exit status is 0 on success, 1 when the input has findings (diagnostics,
mismatched texts) and 2 on environment or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence

from . import deps, iaa, stats, testkit
from .model import SENSED_TYPES, Corpus, RealizationType
from .report import FORMATS, Section, render
from .standoff import ParseError, SenseInventory, load_corpus, write_corpus

EXIT_OK, EXIT_FINDINGS, EXIT_ENV = 0, 1, 2

ROW_NAMES = {
    deps.DependencyKind.SHARED_ARGUMENT: "Shared Arguments",
    deps.DependencyKind.FULL_EMBEDDING: "Fully embedded DRs",
    deps.DependencyKind.PROPER_CONTAINMENT: "Properly Contained DRs",
}


@dataclass
class RunConfig:
    subcommand: str
    corpus: Optional[Path] = None
    corpus_b: Optional[Path] = None
    format: str = "tsv"
    level: Optional[int] = None
    unitization: str = "char"
    trim_boundaries: bool = False
    seed: int = 0
    out: Optional[Path] = None
    inventory: Optional[Path] = None
    every_sense: bool = False
    spec: Optional[Path] = None
    documents: Optional[int] = None

    def check(self) -> None:
        if self.subcommand == "synth":
            if self.corpus or self.corpus_b:
                raise ValueError("synth takes no corpus")
            if self.out is None:
                raise ValueError("synth needs --out DIR")
            return
        if self.corpus is None:
            raise ValueError(f"{self.subcommand} needs --corpus DIR")
        if (self.corpus_b is not None) != (self.subcommand == "iaa"):
            raise ValueError("--corpus-b is required by iaa and accepted by no other subcommand")


@dataclass
class CommandResult:
    status: int
    output: str = ""
    errors: List[str] = field(default_factory=list)


class _Abort(Exception):
    def __init__(self, result: CommandResult):
        self.result = result


def _load(path: Path, cfg: RunConfig) -> Corpus:
    try:
        inventory = SenseInventory.from_file(cfg.inventory) if cfg.inventory else None
        return load_corpus(path, inventory=inventory)
    except ParseError as exc:
        raise _Abort(CommandResult(EXIT_FINDINGS, errors=[str(d) for d in exc.diagnostics]))
    except OSError as exc:
        raise _Abort(CommandResult(EXIT_ENV, errors=[f"cannot read {path}: {exc}"]))


# ---------------------------------------------------------------- report sections


def stats_sections(c: Corpus, every_sense: bool = False) -> List[Section]:
    table = stats.realization_by_sense_table(c, every_sense)
    title = "Realizations by Level-1 sense"
    if every_sense:
        title += " (every listed sense counted; totals exceed token counts)"
    cols = ["Realization", *stats.LEVEL1_CLASSES, "DRs with no sense tag", "Total"]
    dist = Section("distribution", title, cols)
    for t in RealizationType:
        dist.add(t.value, *(table.counts[t][col] for col in stats.COLUMNS), table.row_total(t))
    dist.add("Total", *(table.column_total(col) for col in stats.COLUMNS), table.grand_total)

    summ = stats.summary(c)
    share = Section("summary", "Tokens per realization", ["Realization", "Count", "Percent"])
    for t in RealizationType:
        share.add(t.value, summ.counts[t], summ.percentages[t] if summ.percentages else None)
    share.add("Total", summ.total, 100.0 if summ.total else None)
    head = Section("headline", "Headline figures", ["Measure", "Value"])
    head.add("Documents", len(c))
    head.add("Tokens", summ.total)
    head.add("Explicit:Implicit ratio", summ.explicit_implicit_ratio)
    return [dist, share, head]


def deps_sections(c: Corpus) -> List[Section]:
    table = deps.dependency_table(c)
    cols = ["Pattern", "Exp-Exp", "Exp-Imp", "Imp-Exp", "Sub Total", "Imp-Imp", "Total"]
    E, I = deps.CELLS[:3], deps.CELLS[3]
    counts = Section("dependencies", "Dependencies between adjacent relations (DC1-DC2)", cols)
    shares = Section("dependency_shares", "Share of each pattern row (%)", cols)
    for kind in deps.PATTERNS:
        row = [table.cell(kind, c) for c in E] + [table.row_subtotal(kind), table.cell(kind, I), table.row_total(kind)]
        counts.add(ROW_NAMES[kind], *row)
        total = table.row_total(kind)
        shares.add(ROW_NAMES[kind], *(100.0 * v / total if total else None for v in row))
    col_totals = [table.column_total(c) for c in E]
    counts.add("Total", *col_totals, sum(col_totals), table.column_total(I), table.grand_total)

    buckets = Section("pair_buckets", "Adjacent Explicit/Implicit pairs", ["Bucket", "Count"])
    buckets.add("Patterned", table.grand_total)
    buckets.add("OtherOverlap", table.other_overlap)
    buckets.add("None", table.none)
    buckets.add("Skipped (shared link)", table.skipped_link)
    buckets.add("Adjacent pairs", table.n_pairs)
    return [counts, shares, buckets]


def iaa_sections(a: Corpus, b: Corpus, levels: Sequence[int], mode: str, trim: bool) -> List[Section]:
    res = iaa.match_corpora(a, b, trim)
    match = Section("matching", "Relation matching (exact Arg1/Arg2 spans)", ["Measure", "Value"])
    match.add("Common relations", len(res.matched))
    match.add("Only annotator A", len(res.only_a))
    match.add("Only annotator B", len(res.only_b))

    ratios = iaa.realization_agreement(a, b, trim)
    real = Section("realization_agreement", "Agreement on type of realization", ["Realization", "Agreement"])
    for t, v in ratios.items():
        real.add(t.value, v)

    sense = Section(
        "sense_agreement", "Sense agreement (%)", ["Sense", *(f"{t.value} (%)" for t in _SENSE_COLUMNS)]
    )
    for level in levels:
        agr = iaa.sense_agreement(a, b, level, trim)
        sense.add(f"Level-{level}", *(agr.get(t) for t in _SENSE_COLUMNS))

    unit = "character" if mode == "char" else "word"
    kcols = ["Argument", "Kappa", "P_o", "P_e", "n11", "n10", "n01", "n00", "N"]
    kap = Section("argument_agreement", f"Argument span agreement (Cohen's kappa, {unit} units, pooled)", kcols)
    for cat, k in iaa.argument_span_agreement(a, b, mode, trim).items():
        t = k.table
        kap.add(f"Argument{cat.value[-1]}", k.kappa, k.p_o, k.p_e, t.n11, t.n10, t.n01, t.n00, t.N)

    per_doc = Section(
        "argument_agreement_by_document",
        "Argument span kappa per document (diagnostic)",
        ["Document", "Arg1 kappa", "Arg2 kappa"],
    )
    for doc_id, row in iaa.per_document_kappa(a, b, mode, trim):
        per_doc.add(doc_id, *(row[c].kappa if c in row else None for c in iaa.ArgCategory))
    return [match, real, sense, kap, per_doc]


_SENSE_COLUMNS = (RealizationType.EXPLICIT, RealizationType.IMPLICIT, RealizationType.ALTLEX)
assert set(_SENSE_COLUMNS) == set(SENSED_TYPES)


# ---------------------------------------------------------------- subcommands


def run_validate(cfg: RunConfig) -> CommandResult:
    try:
        inventory = SenseInventory.from_file(cfg.inventory) if cfg.inventory else None
        load_corpus(cfg.corpus, inventory=inventory)
    except ParseError as exc:
        return CommandResult(EXIT_FINDINGS, "".join(f"{d}\n" for d in exc.diagnostics))
    except OSError as exc:
        return CommandResult(EXIT_ENV, errors=[f"cannot read {cfg.corpus}: {exc}"])
    return CommandResult(EXIT_OK)


def run_iaa(cfg: RunConfig) -> CommandResult:
    a, b = _load(cfg.corpus, cfg), _load(cfg.corpus_b, cfg)
    levels = [cfg.level] if cfg.level else [1, 2, 3]
    try:
        sections = iaa_sections(a, b, levels, cfg.unitization, cfg.trim_boundaries)
    except iaa.TextMismatchError as exc:
        return CommandResult(EXIT_FINDINGS, errors=[str(exc)])
    return CommandResult(EXIT_OK, render(sections, cfg.format))


def run_deps(cfg: RunConfig) -> CommandResult:
    return CommandResult(EXIT_OK, render(deps_sections(_load(cfg.corpus, cfg)), cfg.format))


def run_stats(cfg: RunConfig) -> CommandResult:
    c = _load(cfg.corpus, cfg)
    return CommandResult(EXIT_OK, render(stats_sections(c, cfg.every_sense), cfg.format))


def run_synth(cfg: RunConfig) -> CommandResult:
    try:
        if cfg.spec:
            spec = testkit.PlantSpec.from_json(json.loads(Path(cfg.spec).read_text(encoding="utf-8")), cfg.seed)
        else:
            spec = testkit.reference_spec(seed=cfg.seed)
        if cfg.documents:
            spec = testkit.PlantSpec(spec.cells, spec.fillers, spec.linked_pairs, cfg.documents, spec.seed)
        corpus, truth = testkit.plant_corpus(spec)
    except (testkit.InfeasibleSpec, json.JSONDecodeError) as exc:
        return CommandResult(EXIT_FINDINGS, errors=[f"bad plant spec: {exc}"])
    except OSError as exc:
        return CommandResult(EXIT_ENV, errors=[str(exc)])
    try:
        out = Path(cfg.out)
        if out.exists() and any(out.iterdir()):
            return CommandResult(EXIT_ENV, errors=[f"{out} exists and is not empty"])
        write_corpus(corpus, out)
        (out / "ground_truth.json").write_bytes(testkit.ground_truth_json(spec, truth).encode("utf-8"))
    except OSError as exc:
        return CommandResult(EXIT_ENV, errors=[str(exc)])
    return CommandResult(EXIT_OK)


COMMANDS = {"validate": run_validate, "iaa": run_iaa, "deps": run_deps, "stats": run_stats, "synth": run_synth}


def run(cfg: RunConfig) -> CommandResult:
    try:
        cfg.check()
    except ValueError as exc:
        return CommandResult(EXIT_ENV, errors=[str(exc)])
    try:
        return COMMANDS[cfg.subcommand](cfg)
    except _Abort as abort:
        return abort.result


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="disco", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, help_, *, corpus=True, fmt=True):
        p = sub.add_parser(name, help=help_)
        if corpus:
            p.add_argument("--corpus", type=Path, required=True, metavar="DIR")
            p.add_argument("--inventory", type=Path, metavar="FILE", help="allowed sense paths, one per line")
        if fmt:
            p.add_argument("--format", choices=FORMATS, default="tsv")
        p.add_argument("--out", type=Path, metavar="PATH", required=name == "synth")
        return p

    add("validate", "check a corpus directory and list diagnostics", fmt=False)
    p = add("iaa", "agreement between two annotations of the same texts")
    p.add_argument("--corpus-b", type=Path, required=True, metavar="DIR")
    p.add_argument("--level", type=int, choices=(1, 2, 3))
    p.add_argument("--unitization", choices=("char", "word"), default="char")
    p.add_argument("--trim-boundaries", action="store_true")
    add("deps", "dependency patterns between adjacent relations")
    p = add("stats", "realization and sense distribution")
    p.add_argument("--every-sense", action="store_true", help="count each listed sense, not only the first")
    p = add("synth", "write a synthetic corpus with planted dependencies", corpus=False, fmt=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--spec", type=Path, metavar="FILE", help="plant spec JSON (default: reference matrix / 100)")
    p.add_argument("--documents", type=int, metavar="N")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items()})
    result = run(cfg)
    for line in result.errors:
        print(line, file=sys.stderr)
    if result.output:
        if cfg.out is not None and cfg.subcommand != "synth":
            try:
                Path(cfg.out).write_bytes(result.output.encode("utf-8"))
            except OSError as exc:
                print(f"cannot write {cfg.out}: {exc}", file=sys.stderr)
                return EXIT_ENV
        else:
            sys.stdout.write(result.output)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
