"""Word-pair similarity metrics and benchmark drivers.

Three metrics compare two words in a multi-sense space: the plain average
over all sense pairs, the context-weighted average (sense posteriors from
a softmax over cosine against a context vector), and the single best-
sense similarity.  Model scores are compared to human judgments with
Spearman rank correlation (fractional ranks on ties).

Dataset formats:

* word-pair CSV: ``word1,word2,score`` with one header line tolerated;
* contextual TSV: ``id<TAB>w1<TAB>pos1<TAB>w2<TAB>pos2<TAB>ctx1<TAB>ctx2
  <TAB>avg_score[<TAB>ratings...]`` where each context wraps its target
  token in ``<b>...</b>``.

Out-of-vocabulary pairs are skipped and counted, never scored as zero.
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .embeddings import EmbeddingSet, KeyNotFoundError, UndefinedSimilarityError, cosine


@dataclass
class WordPairJudgment:
    w1: str
    w2: str
    human_score: float


@dataclass
class ContextualPairJudgment:
    w1: str
    w2: str
    ctx1: list[str]
    pos1: int
    ctx2: list[str]
    pos2: int
    human_score: float


@dataclass
class SensePosterior:
    """Probability of each sense of ``word`` given a context; sums to 1."""

    word: str
    probs: np.ndarray


def _sense_matrix(space: EmbeddingSet, word: str) -> np.ndarray:
    keys = space.senses_of(word)
    if not keys:
        raise KeyNotFoundError(f"unknown word {word!r}")
    mat = np.stack([space.vector(k) for k in keys])
    norms = np.linalg.norm(mat, axis=1, keepdims=True)
    if (norms == 0.0).any():
        raise UndefinedSimilarityError(f"zero sense vector for {word!r}")
    return mat / norms


def avg_sim(space: EmbeddingSet, w1: str, w2: str) -> float:
    """Mean cosine over all sense pairs of the two words."""
    u1 = _sense_matrix(space, w1)
    u2 = _sense_matrix(space, w2)
    return float(np.clip(u1 @ u2.T, -1.0, 1.0).mean())


def context_vector(space: EmbeddingSet, tokens: list[str], target_pos: int,
                   window: int = 5) -> np.ndarray:
    """Mean of the mean-of-senses vectors of in-vocabulary window tokens.

    The window spans ``window`` tokens on each side of ``target_pos``,
    excluding the target itself.  Lookup tries the exact token first and
    falls back to lowercase.  All-unknown windows give the zero vector.
    """
    lo = max(0, target_pos - window)
    hi = min(len(tokens), target_pos + window + 1)
    acc = np.zeros(space.dim)
    count = 0
    for i in range(lo, hi):
        if i == target_pos:
            continue
        word = space.resolve_word(tokens[i])
        if word is None:
            continue
        ids = space.word_row_ids(word)
        acc += space.rows[ids].mean(axis=0)
        count += 1
    if count == 0:
        return np.zeros(space.dim)
    return acc / count


def sense_posterior(space: EmbeddingSet, word: str, c: np.ndarray,
                    tau: float = 1.0) -> SensePosterior:
    """Softmax over cosine(sense, context) / tau; uniform on a zero context."""
    if tau <= 0:
        raise ValueError("tau must be positive")
    unit = _sense_matrix(space, word)
    k = unit.shape[0]
    norm = np.linalg.norm(c)
    if norm == 0.0:
        probs = np.full(k, 1.0 / k)
    else:
        z = (unit @ (c / norm)) / tau
        z -= z.max()
        e = np.exp(z)
        probs = e / e.sum()
    return SensePosterior(word=word, probs=probs)


def avg_sim_c(space: EmbeddingSet, w1: str, c1: np.ndarray, w2: str, c2: np.ndarray,
              tau: float = 1.0) -> float:
    """Posterior-weighted mean cosine, keeping the 1/(K*K') averaging factor."""
    u1 = _sense_matrix(space, w1)
    u2 = _sense_matrix(space, w2)
    p1 = sense_posterior(space, w1, c1, tau).probs
    p2 = sense_posterior(space, w2, c2, tau).probs
    sims = np.clip(u1 @ u2.T, -1.0, 1.0)
    return float(p1 @ sims @ p2 / (u1.shape[0] * u2.shape[0]))


def local_sim(space: EmbeddingSet, w1: str, c1: np.ndarray, w2: str, c2: np.ndarray,
              tau: float = 1.0) -> float:
    """Cosine between each word's maximum-posterior sense (lowest index on ties)."""
    k1 = int(np.argmax(sense_posterior(space, w1, c1, tau).probs))
    k2 = int(np.argmax(sense_posterior(space, w2, c2, tau).probs))
    v1 = space.senses_of(w1)[k1]
    v2 = space.senses_of(w2)[k2]
    return cosine(space.vector(v1), space.vector(v2))


def spearman(xs, ys) -> float:
    """Spearman rank correlation with fractional ranks on ties."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.ndim != 1 or xs.shape != ys.shape:
        raise ValueError("inputs must be equal-length 1-D sequences")
    if xs.shape[0] < 2:
        raise ValueError("need at least 2 observations")
    rx = rankdata(xs, method="average")
    ry = rankdata(ys, method="average")
    rx = rx - rx.mean()
    ry = ry - ry.mean()
    denom = math.sqrt(float(rx @ rx) * float(ry @ ry))
    if denom == 0.0:
        return math.nan
    return float(np.clip((rx @ ry) / denom, -1.0, 1.0))


# -- dataset loading -------------------------------------------------

_TARGET_RE = re.compile(r"<b>\s*(.*?)\s*</b>", re.DOTALL)


def load_wordsim(path) -> list[WordPairJudgment]:
    """Read a word-pair CSV, tolerating one header line."""
    rows: list[WordPairJudgment] = []
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, fields in enumerate(csv.reader(fh), start=1):
            if not fields or not "".join(fields).strip():
                continue
            if len(fields) < 3:
                raise ValueError(f"{path}:{lineno}: expected 'word1,word2,score'")
            try:
                score = float(fields[2])
            except ValueError:
                if lineno == 1:
                    continue  # header
                raise ValueError(f"{path}:{lineno}: bad score {fields[2]!r}") from None
            rows.append(WordPairJudgment(fields[0].strip(), fields[1].strip(), score))
    return rows


def _split_context(raw: str, path, lineno: int) -> tuple[list[str], int]:
    match = _TARGET_RE.search(raw)
    if match is None:
        raise ValueError(f"{path}:{lineno}: context has no <b>...</b> target")
    left = raw[: match.start()].split()
    target = match.group(1).split() or [""]
    right = raw[match.end() :].split()
    return left + target + right, len(left)


def load_scws(path) -> list[ContextualPairJudgment]:
    """Read the contextual word-pair TSV; the <b> wrapper is stripped."""
    rows: list[ContextualPairJudgment] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            fields = line.rstrip("\n").split("\t")
            if len(fields) < 8:
                raise ValueError(f"{path}:{lineno}: expected at least 8 tab fields")
            try:
                score = float(fields[7])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: bad score {fields[7]!r}") from None
            ctx1, pos1 = _split_context(fields[5], path, lineno)
            ctx2, pos2 = _split_context(fields[6], path, lineno)
            rows.append(
                ContextualPairJudgment(fields[1], fields[3], ctx1, pos1, ctx2, pos2, score)
            )
    return rows


# -- benchmark drivers ------------------------------------------------


def eval_wordsim(space: EmbeddingSet, dataset: list[WordPairJudgment]):
    """Spearman rho x100 of avg_sim against human scores, plus skip count."""
    model, human = [], []
    skipped = 0
    for row in dataset:
        w1 = space.resolve_word(row.w1)
        w2 = space.resolve_word(row.w2)
        if w1 is None or w2 is None:
            skipped += 1
            continue
        model.append(avg_sim(space, w1, w2))
        human.append(row.human_score)
    if len(model) < 2:
        return math.nan, skipped
    return spearman(model, human) * 100.0, skipped


def eval_scws(space: EmbeddingSet, dataset: list[ContextualPairJudgment],
              tau: float = 1.0, window: int = 5):
    """Spearman rho x100 for the three metrics over the same scored pairs.

    Returns ``({"local_sim": ..., "avg_sim": ..., "avg_sim_c": ...}, skipped)``;
    a pair is skipped when either word is out of vocabulary, identically
    for all three metrics.
    """
    scores = {"local_sim": [], "avg_sim": [], "avg_sim_c": []}
    human = []
    skipped = 0
    for row in dataset:
        w1 = space.resolve_word(row.w1)
        w2 = space.resolve_word(row.w2)
        if w1 is None or w2 is None:
            skipped += 1
            continue
        c1 = context_vector(space, row.ctx1, row.pos1, window)
        c2 = context_vector(space, row.ctx2, row.pos2, window)
        scores["local_sim"].append(local_sim(space, w1, c1, w2, c2, tau))
        scores["avg_sim"].append(avg_sim(space, w1, w2))
        scores["avg_sim_c"].append(avg_sim_c(space, w1, c1, w2, c2, tau))
        human.append(row.human_score)
    if len(human) < 2:
        return {name: math.nan for name in scores}, skipped
    return {name: spearman(vals, human) * 100.0 for name, vals in scores.items()}, skipped
