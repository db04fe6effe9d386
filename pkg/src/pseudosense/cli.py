"""Command-line pipeline: detect -> train-project -> eval, plus neighbors.

Stages communicate only through files under --out-dir, with fixed names:

    pairs.tsv                  detected pseudo multi-sense pairs
    groups.tsv                 pseudo-sense groups (connected components)
    phi.txt                    trained transition matrix
    projected_embeddings.txt   embeddings mapped through phi
    detect_report.json, train_report.json, eval_report.json

Reports are deterministic given (inputs, flags, seed): they echo the
full configuration and carry no wall-clock timings — timings go to the
console only, so re-runs produce byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import _kernels, detect
from .analogy import evaluate_all, load_analogy
from .embeddings import EmbeddingError, EmbeddingSet, load_embeddings, save_embeddings
from .lexgraph import GraphError, load_graph
from .project import (
    TrainingConfig,
    make_representatives,
    project_space,
    train_transition,
    training_pairs,
)
from .simeval import eval_scws, eval_wordsim, load_scws, load_wordsim

PAIRS_NAME = "pairs.tsv"
GROUPS_NAME = "groups.tsv"
PHI_NAME = "phi.txt"
PROJECTED_NAME = "projected_embeddings.txt"

_ABORT = (EmbeddingError, GraphError, ValueError, OSError)


@dataclass
class RunReport:
    """Machine-readable record of one command: config echo + results."""

    command: str
    config: dict
    results: dict

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "config": _jsonable(self.config),
            "results": _jsonable(self.results),
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_json())


def _jsonable(value):
    """Recursively coerce to JSON-stable types; non-finite floats become null."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    return str(value)


def _echo(args: argparse.Namespace, names: list[str]) -> dict:
    return {name: getattr(args, name) for name in names}


def _out_path(args: argparse.Namespace, name: str) -> str:
    os.makedirs(args.out_dir, exist_ok=True)
    return os.path.join(args.out_dir, name)


def cmd_detect(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    space = load_embeddings(args.embeddings)
    graph = load_graph(args.synsets, args.hypernyms, args.domains)
    pairs = detect.detect_pairs(space, graph, threshold=args.lam,
                                n=args.top_n, m=args.neighbors)
    groups = detect.build_groups(pairs)
    detect.write_pairs(pairs, _out_path(args, PAIRS_NAME))
    detect.write_groups(groups, _out_path(args, GROUPS_NAME))
    multi = sum(1 for w in space.words() if space.sense_count(w) > 1)
    report = RunReport(
        command="detect",
        config=_echo(args, ["embeddings", "synsets", "hypernyms", "domains",
                            "top_n", "lam", "neighbors", "out_dir"]),
        results={
            "rows": len(space.keys()),
            "multi_sense_words": multi,
            "pairs": len(pairs),
            "groups": len(groups),
            "grouped_senses": sum(len(g.members) for g in groups),
        },
    )
    report.write(_out_path(args, "detect_report.json"))
    dt = time.perf_counter() - t0
    print(f"detect: {len(pairs)} pairs, {len(groups)} groups over "
          f"{multi} multi-sense words [{_kernels.BACKEND} kernels, {dt:.2f}s]")
    return 0


def cmd_train_project(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    space = load_embeddings(args.embeddings)
    groups = detect.read_groups(os.path.join(args.out_dir, GROUPS_NAME), space)
    reps = make_representatives(space, groups, mode=args.rep, seed=args.seed)
    pairs = training_pairs(space, reps)
    cfg = TrainingConfig(learning_rate=args.lr, epochs=args.epochs, seed=args.seed)
    phi, curve = train_transition(pairs, cfg, dim=space.dim)
    projected = project_space(space, phi)
    phi.save(_out_path(args, PHI_NAME))
    save_embeddings(projected, _out_path(args, PROJECTED_NAME))
    report = RunReport(
        command="train-project",
        config=_echo(args, ["embeddings", "rep", "lr", "epochs", "seed", "out_dir"]),
        results={
            "groups": len(groups),
            "training_pairs": len(pairs),
            "loss_curve": list(curve),
            "final_loss": curve[-1] if curve else None,
        },
    )
    report.write(_out_path(args, "train_report.json"))
    dt = time.perf_counter() - t0
    final = f"{curve[-1]:.6g}" if curve else "n/a"
    print(f"train-project: {len(pairs)} pairs from {len(groups)} groups, "
          f"final loss {final} [{dt:.2f}s]")
    return 0


def _eval_one_space(space: EmbeddingSet, wordsim, scws, quads, args) -> dict:
    out: dict = {}
    if wordsim is None:
        out["wordsim"] = None
    else:
        rho, skipped = eval_wordsim(space, wordsim)
        out["wordsim"] = {"pairs": len(wordsim), "skipped_oov": skipped,
                          "spearman_x100": rho}
    if scws is None:
        out["scws"] = None
    else:
        rhos, skipped = eval_scws(space, scws, tau=args.tau, window=args.window)
        out["scws"] = {"pairs": len(scws), "skipped_oov": skipped,
                       "spearman_x100": rhos}
    if quads is None:
        out["analogy"] = None
    else:
        out["analogy"] = evaluate_all(space, quads).as_dict()
    return out


def cmd_eval(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    spaces: dict[str, EmbeddingSet] = {}
    if args.space in ("original", "both"):
        spaces["original"] = load_embeddings(args.embeddings)
    if args.space in ("projected", "both"):
        spaces["projected"] = load_embeddings(os.path.join(args.out_dir, PROJECTED_NAME))
    wordsim = load_wordsim(args.wordsim) if args.wordsim else None
    scws = load_scws(args.scws) if args.scws else None
    quads = load_analogy(args.analogy) if args.analogy else None
    results = {name: _eval_one_space(sp, wordsim, scws, quads, args)
               for name, sp in spaces.items()}
    report = RunReport(
        command="eval",
        config=_echo(args, ["embeddings", "wordsim", "scws", "analogy",
                            "tau", "window", "space", "out_dir"]),
        results=results,
    )
    report.write(_out_path(args, "eval_report.json"))
    dt = time.perf_counter() - t0
    for name, section in results.items():
        bits = []
        if section["wordsim"] is not None:
            bits.append(f"wordsim {_fmt(section['wordsim']['spearman_x100'])}")
        if section["scws"] is not None:
            rhos = section["scws"]["spearman_x100"]
            bits.append("scws local/avg/avgC "
                        + "/".join(_fmt(rhos[k]) for k in ("local_sim", "avg_sim", "avg_sim_c")))
        if section["analogy"] is not None:
            bits.append(f"analogy sem {_fmt(section['analogy']['semantic_accuracy'])}"
                        f" syn {_fmt(section['analogy']['syntactic_accuracy'])}")
        print(f"eval[{name}]: " + ("; ".join(bits) if bits else "no datasets given"))
    print(f"eval: done [{dt:.2f}s]")
    return 0


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return "n/a"
    return f"{x:.1f}"


def cmd_neighbors(args: argparse.Namespace) -> int:
    space = load_embeddings(args.embeddings)
    graph = load_graph(args.synsets, args.hypernyms, args.domains)
    word = space.resolve_word(args.word)
    if word is None:
        raise ValueError(f"unknown word {args.word!r}")
    senses = space.senses_of(word)
    for key in senses:
        nn = space.nearest_neighbors(key, args.neighbors)
        dom = detect.domain_profile(space, graph, key, args.neighbors)
        hyp = detect.hypernym_profile(space, graph, key, args.neighbors)
        print(f"{key}")
        print("  neighbors: " + (", ".join(f"{k} ({s:.3f})" for k, s in nn.neighbors)
                                 or "(none)"))
        for label, profile in (("domains", dom), ("hypernyms", hyp)):
            tops = detect.top_n(profile, args.top_n)
            shown = ", ".join(f"{t} ({profile.scores[t]:.3f})" for t in tops)
            print(f"  {label}: " + (shown or "(none)"))
    if len(senses) > 1:
        hits = []
        for i in range(len(senses)):
            for j in range(i + 1, len(senses)):
                k, l = senses[i].sense, senses[j].sense
                sd, sh, st = detect.sense_similarity(space, graph, word, k, l,
                                                     n=args.top_n, m=args.neighbors)
                if st > args.lam:
                    hits.append((k, l, sd, sh, st))
        if hits:
            print("same-meaning senses:")
            for k, l, sd, sh, st in hits:
                print(f"  {word}#{k} ~ {word}#{l} "
                      f"(domain {sd:.2f}, hypernym {sh:.2f}, total {st:.2f})")
        else:
            print(f"no same-meaning senses at threshold {args.lam}")
    return 0


def _add_embeddings(p: argparse.ArgumentParser) -> None:
    p.add_argument("--embeddings", required=True, help="embedding text file")


def _add_graph(p: argparse.ArgumentParser) -> None:
    p.add_argument("--synsets", required=True, help="synsets TSV")
    p.add_argument("--hypernyms", required=True, help="hypernym edges TSV")
    p.add_argument("--domains", required=True, help="synset-domain weights TSV")


def _add_detection_knobs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--top-n", type=int, default=5, dest="top_n",
                   help="profile overlap size n (default 5)")
    p.add_argument("--lambda", type=float, default=1.0, dest="lam",
                   help="detection threshold (default 1.0)")
    p.add_argument("--neighbors", type=int, default=10,
                   help="nearest-neighbor count m (default 10)")


def _add_out_dir(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out-dir", default="out", dest="out_dir",
                   help="artifact directory (default ./out)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudosense",
        description="Detect and eliminate pseudo multi-sense in word embeddings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="write pairs.tsv and groups.tsv")
    _add_embeddings(p)
    _add_graph(p)
    _add_detection_knobs(p)
    _add_out_dir(p)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("train-project",
                       help="train phi on groups.tsv, write projected embeddings")
    _add_embeddings(p)
    p.add_argument("--rep", choices=["mean", "random"], default="mean",
                   help="group representative (default mean)")
    p.add_argument("--lr", type=float, default=0.01, help="SGD learning rate")
    p.add_argument("--epochs", type=int, default=50, help="SGD epochs")
    p.add_argument("--seed", type=int, default=0, help="RNG seed")
    _add_out_dir(p)
    p.set_defaults(func=cmd_train_project)

    p = sub.add_parser("eval", help="score similarity/analogy benchmarks")
    _add_embeddings(p)
    p.add_argument("--wordsim", help="word-pair CSV (word1,word2,score)")
    p.add_argument("--scws", help="contextual word-pair TSV")
    p.add_argument("--analogy", help="sectioned four-word analogy file")
    p.add_argument("--tau", type=float, default=1.0,
                   help="sense-posterior temperature (default 1.0)")
    p.add_argument("--window", type=int, default=5,
                   help="context window half-width (default 5)")
    p.add_argument("--space", choices=["original", "projected", "both"],
                   default="both", help="which space(s) to score (default both)")
    _add_out_dir(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("neighbors",
                       help="show neighbors, domains, hypernyms per sense")
    p.add_argument("word", help="query word")
    _add_embeddings(p)
    _add_graph(p)
    _add_detection_knobs(p)
    p.set_defaults(func=cmd_neighbors)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _ABORT as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
