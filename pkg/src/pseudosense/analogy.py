"""Sense-combinatorial analogy evaluation.

A quadruple w1:w2 :: w3:w4 should satisfy v(w1) - v(w2) + v(w3) - v(w4)
= 0, so each word in turn is treated as the unknown and queried as the
signed sum of the other three.  A quadruple counts as correct when, for
any of the four target directions, some combination of senses of the
three query words ranks a sense of the target word cosine-nearest over
the whole vocabulary (query words' senses excluded).  Quadruples with
an out-of-vocabulary word are skipped, not failed.

Dataset format: lines of four space-separated words under ": <category>"
section headers.  Categories whose name starts with ``gram`` form the
syntactic section; the rest are semantic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .embeddings import EmbeddingSet, KeyNotFoundError

CORRECT = "correct"
INCORRECT = "incorrect"
SKIPPED = "skipped"

SEMANTIC = "semantic"
SYNTACTIC = "syntactic"

_SYNTACTIC_PREFIX = "gram"

# (target, a, b, c): query = v(a) - v(b) + v(c), indices into Quadruple.words
_DIRECTIONS = (
    (3, 0, 1, 2),
    (0, 1, 2, 3),
    (1, 0, 3, 2),
    (2, 1, 0, 3),
)


def _section_of(category: str) -> str:
    return SYNTACTIC if category.startswith(_SYNTACTIC_PREFIX) else SEMANTIC


@dataclass(frozen=True)
class Quadruple:
    w1: str
    w2: str
    w3: str
    w4: str
    category: str

    def __post_init__(self) -> None:
        if any(not w for w in self.words):
            raise ValueError("quadruple words must be non-empty")
        if len(set(self.words)) != 4:
            raise ValueError(f"quadruple words must be distinct: {self.words}")

    @property
    def words(self) -> tuple[str, str, str, str]:
        return (self.w1, self.w2, self.w3, self.w4)

    @property
    def section(self) -> str:
        return _section_of(self.category)


@dataclass
class CategoryTally:
    section: str
    attempted: int = 0
    correct: int = 0
    skipped: int = 0

    @property
    def accuracy(self) -> float:
        """Percent correct over attempted; 0.0 when nothing was attempted."""
        if self.attempted == 0:
            return 0.0
        return 100.0 * self.correct / self.attempted


def _accuracy(correct: int, attempted: int) -> float:
    if attempted == 0:
        return 0.0
    return 100.0 * correct / attempted


@dataclass
class AnalogyResult:
    """Per-category tallies plus section accuracies (percent over attempted)."""

    categories: dict[str, CategoryTally]

    def section_counts(self, section: str) -> tuple[int, int, int]:
        """(attempted, correct, skipped) summed over one section."""
        att = cor = skp = 0
        for tally in self.categories.values():
            if tally.section != section:
                continue
            att += tally.attempted
            cor += tally.correct
            skp += tally.skipped
        return att, cor, skp

    @property
    def semantic_accuracy(self) -> float:
        att, cor, _ = self.section_counts(SEMANTIC)
        return _accuracy(cor, att)

    @property
    def syntactic_accuracy(self) -> float:
        att, cor, _ = self.section_counts(SYNTACTIC)
        return _accuracy(cor, att)

    @property
    def overall_accuracy(self) -> float:
        att = sum(t.attempted for t in self.categories.values())
        cor = sum(t.correct for t in self.categories.values())
        return _accuracy(cor, att)

    @property
    def skipped(self) -> int:
        return sum(t.skipped for t in self.categories.values())

    def as_dict(self) -> dict:
        cats = {
            name: {
                "section": tally.section,
                "attempted": tally.attempted,
                "correct": tally.correct,
                "skipped_oov": tally.skipped,
                "accuracy": tally.accuracy,
            }
            for name, tally in sorted(self.categories.items())
        }
        return {
            "categories": cats,
            "semantic_accuracy": self.semantic_accuracy,
            "syntactic_accuracy": self.syntactic_accuracy,
            "overall_accuracy": self.overall_accuracy,
            "skipped_oov": self.skipped,
        }


def load_analogy(path) -> list[Quadruple]:
    """Read a sectioned four-word-per-line analogy file."""
    quads: list[Quadruple] = []
    category: str | None = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith(":"):
                category = line[1:].strip()
                if not category:
                    raise ValueError(f"{path}:{lineno}: empty category header")
                continue
            words = line.split()
            if len(words) != 4:
                raise ValueError(
                    f"{path}:{lineno}: expected 4 words, got {len(words)}"
                )
            if category is None:
                raise ValueError(
                    f"{path}:{lineno}: quadruple before any ': <category>' header"
                )
            try:
                quads.append(Quadruple(*words, category=category))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return quads


def predict_direction(space: EmbeddingSet, a: str, b: str, c: str, target: str,
                      block: int = 128) -> bool:
    """True iff some sense combination of (a, b, c) puts a sense of ``target``
    cosine-nearest to v(a) - v(b) + v(c).

    Candidate rows exclude every sense of a, b and c (and zero rows).
    Unknown words raise KeyNotFoundError so callers can account skips.
    """
    for word in (a, b, c, target):
        if not space.word_row_ids(word):
            raise KeyNotFoundError(f"unknown word {word!r}")
    rows = space.rows
    qa = rows[space.word_row_ids(a)][:, None, None, :]
    qb = rows[space.word_row_ids(b)][None, :, None, :]
    qc = rows[space.word_row_ids(c)][None, None, :, :]
    queries = (qa - qb + qc).reshape(-1, space.dim)
    target_ids = set(space.word_row_ids(target))
    exclude = space.exclusion_ids([a, b, c])
    unit = space.unit_rows
    for start in range(0, queries.shape[0], block):
        scores = queries[start : start + block] @ unit.T
        for row in scores:
            winner = _kernels.argmax_select(np.ascontiguousarray(row), exclude)
            if winner >= 0 and winner in target_ids:
                return True
    return False


def evaluate_quadruple(space: EmbeddingSet, quad: Quadruple) -> str:
    """CORRECT iff any of the four target directions succeeds.

    Words resolve exact-case first, then lowercase; quadruples with any
    unresolvable word are SKIPPED.
    """
    words = []
    for raw in quad.words:
        word = space.resolve_word(raw)
        if word is None:
            return SKIPPED
        words.append(word)
    for t, a, b, c in _DIRECTIONS:
        if predict_direction(space, words[a], words[b], words[c], words[t]):
            return CORRECT
    return INCORRECT


def evaluate_all(space: EmbeddingSet, quads) -> AnalogyResult:
    """Tally every quadruple; attempted + skipped = total, per category."""
    tallies: dict[str, CategoryTally] = {}
    for quad in quads:
        tally = tallies.setdefault(quad.category, CategoryTally(section=quad.section))
        outcome = evaluate_quadruple(space, quad)
        if outcome == SKIPPED:
            tally.skipped += 1
        else:
            tally.attempted += 1
            if outcome == CORRECT:
                tally.correct += 1
    return AnalogyResult(categories=tallies)
