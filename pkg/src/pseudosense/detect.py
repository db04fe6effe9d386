"""Pseudo multi-sense detection.

For each sense of a word, two evidence profiles are built from its
nearest neighbors: a domain profile (summed domain weights of the
neighbor words) and a hypernym profile (ancestor synsets of the word,
scored by neighbor ancestry with near hypernyms weighted above far ones).
Two senses of the same word are compared by the overlap of their top-n
profile labels; when the combined overlap exceeds the threshold the pair
is flagged as denoting one meaning, and flagged pairs are merged into
groups by connected components.

Profiles are unnormalized: only the top-n ranking is consumed, so any
positive rescaling of the underlying weights leaves detection unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .embeddings import EmbeddingSet, NeighborList, SenseKey
from .lexgraph import LexicalGraph

DOMAIN = "domain"
HYPERNYM = "hypernym"


@dataclass
class ScoreProfile:
    """Labelled evidence scores for one sense; only positive scores are kept."""

    subject: SenseKey
    kind: str
    scores: dict[str, float]

    def __len__(self):
        return len(self.scores)


@dataclass(frozen=True)
class PseudoPair:
    """Two senses of ``word`` judged to share a meaning (a < b)."""

    word: str
    a: int
    b: int
    sim_domain: float
    sim_hypernym: float
    sim_total: float


@dataclass(frozen=True)
class PseudoGroup:
    """A maximal set of senses of one word connected by detected pairs."""

    word: str
    members: tuple[int, ...]


class UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}
        self.rank: dict[int, int] = {}

    def find(self, x: int) -> int:
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = 0
            return x
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1


def _domain_scores(graph: LexicalGraph, neighbors: NeighborList) -> dict[str, float]:
    total: dict[str, float] = {}
    for word in neighbors.words():
        for label, mass in graph.word_domains(word).items():
            total[label] = total.get(label, 0.0) + mass
    return {label: s for label, s in total.items() if s > 0.0}


def _hypernym_scores(graph: LexicalGraph, query_word: str, neighbors: NeighborList) -> dict[str, float]:
    candidates = graph.word_hypernyms(query_word)
    if not candidates:
        return {}
    inner: dict[str, float] = {}
    for word in neighbors.words():
        for h, (freq, dist) in graph.word_hypernyms(word).items():
            if freq and h in candidates:
                inner[h] = inner.get(h, 0.0) + freq / dist
    return {h: s / candidates[h][1] for h, s in inner.items() if s > 0.0}


def domain_profile(space: EmbeddingSet, graph: LexicalGraph, q: SenseKey, m: int = 10) -> ScoreProfile:
    """Domain evidence of sense ``q``: neighbor-summed domain masses."""
    nn = space.nearest_neighbors(q, m)
    return ScoreProfile(subject=q, kind=DOMAIN, scores=_domain_scores(graph, nn))


def hypernym_profile(space: EmbeddingSet, graph: LexicalGraph, q: SenseKey, m: int = 10) -> ScoreProfile:
    """Hypernym evidence of sense ``q``, restricted to ancestors of its word.

    Each candidate ancestor h is scored by the neighbor words' ancestry
    counts, with both the query's and the neighbors' distances to h
    discounting the score (1/d each), so near hypernyms dominate far,
    generic ones.
    """
    nn = space.nearest_neighbors(q, m)
    return ScoreProfile(subject=q, kind=HYPERNYM, scores=_hypernym_scores(graph, q.word, nn))


def top_n(profile: ScoreProfile, n: int) -> list[str]:
    """The ``n`` highest-scoring labels, ties broken lexicographically."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ranked = sorted(profile.scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return [label for label, _ in ranked[:n]]


def sim_component(p1: ScoreProfile, p2: ScoreProfile, n: int) -> float:
    """Top-n label overlap between two profiles of the same kind, in [0, 1]."""
    if p1.kind != p2.kind:
        raise ValueError(f"profile kind mismatch: {p1.kind} vs {p2.kind}")
    return len(set(top_n(p1, n)) & set(top_n(p2, n))) / n


def sense_similarity(space, graph, word, k, l, n=5, m=10):
    """(domain, hypernym, total) similarity of senses k and l of ``word``."""
    if k == l:
        raise ValueError("sense indices must differ")
    qk, ql = SenseKey(word, k), SenseKey(word, l)
    sd = sim_component(domain_profile(space, graph, qk, m), domain_profile(space, graph, ql, m), n)
    sh = sim_component(
        hypernym_profile(space, graph, qk, m), hypernym_profile(space, graph, ql, m), n
    )
    return sd, sh, sd + sh


def detect_pairs(space: EmbeddingSet, graph: LexicalGraph, threshold: float = 1.0,
                 n: int = 5, m: int = 10) -> list[PseudoPair]:
    """All same-word sense pairs whose combined overlap strictly exceeds ``threshold``.

    Output is ordered by (word, k, l).  Neighbor searches for all senses
    are batched; each sense's profiles are computed once.
    """
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    words = sorted(w for w in space.words() if space.sense_count(w) >= 2)
    keys = [key for w in words for key in space.senses_of(w)]
    neighbor_lists = space.batch_neighbors(keys, m)
    tops: dict[SenseKey, tuple[frozenset[str], frozenset[str]]] = {}
    for key, nn in zip(keys, neighbor_lists):
        dom = ScoreProfile(key, DOMAIN, _domain_scores(graph, nn))
        hyp = ScoreProfile(key, HYPERNYM, _hypernym_scores(graph, key.word, nn))
        tops[key] = (frozenset(top_n(dom, n)), frozenset(top_n(hyp, n)))
    pairs: list[PseudoPair] = []
    for word in words:
        senses = space.senses_of(word)
        for i, ka in enumerate(senses):
            dom_a, hyp_a = tops[ka]
            for kb in senses[i + 1 :]:
                dom_b, hyp_b = tops[kb]
                sd = len(dom_a & dom_b) / n
                sh = len(hyp_a & hyp_b) / n
                st = sd + sh
                if st > threshold:
                    pairs.append(PseudoPair(word, ka.sense, kb.sense, sd, sh, st))
    return pairs


def build_groups(pairs: list[PseudoPair]) -> list[PseudoGroup]:
    """Merge detected pairs into per-word connected components."""
    by_word: dict[str, list[PseudoPair]] = {}
    for pair in pairs:
        by_word.setdefault(pair.word, []).append(pair)
    groups: list[PseudoGroup] = []
    for word in sorted(by_word):
        uf = UnionFind()
        for pair in by_word[word]:
            uf.union(pair.a, pair.b)
        components: dict[int, list[int]] = {}
        for sense in sorted(uf.parent):
            components.setdefault(uf.find(sense), []).append(sense)
        for members in components.values():
            if len(members) >= 2:
                groups.append(PseudoGroup(word, tuple(sorted(members))))
    groups.sort(key=lambda g: (g.word, g.members))
    return groups


def write_pairs(pairs: list[PseudoPair], path) -> None:
    """TSV: word, k, l, sim_domain, sim_hypernym, sim_total."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for p in pairs:
            fh.write(
                f"{p.word}\t{p.a}\t{p.b}\t{p.sim_domain!r}\t{p.sim_hypernym!r}\t{p.sim_total!r}\n"
            )


def write_groups(groups: list[PseudoGroup], path) -> None:
    """TSV: word, comma-joined ascending sense indices."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for g in groups:
            fh.write(f"{g.word}\t{','.join(str(s) for s in g.members)}\n")


def read_groups(path, space: EmbeddingSet | None = None) -> list[PseudoGroup]:
    """Parse a groups file; validate members against ``space`` when given."""
    groups: list[PseudoGroup] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 2:
                raise ValueError(f"{path}:{lineno}: expected 2 tab-separated fields")
            word, raw = fields
            try:
                members = tuple(sorted(int(tok) for tok in raw.split(",")))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: bad sense list {raw!r}") from None
            if len(members) < 2 or len(set(members)) != len(members):
                raise ValueError(f"{path}:{lineno}: groups need >= 2 distinct senses")
            if space is not None:
                for sense in members:
                    if SenseKey(word, sense) not in space:
                        raise ValueError(
                            f"{path}:{lineno}: unknown sense {word}#{sense} in group"
                        )
            groups.append(PseudoGroup(word, members))
    return groups
