"""Synset inventory, hypernym DAG and domain weights.

Ingested from three TSV files (no headers, UTF-8, LF):

* ``synsets.tsv``    -- ``<synset_id>\\t<pos>\\t<lemma1,lemma2,...>``
* ``hypernyms.tsv``  -- ``<child_synset_id>\\t<parent_synset_id>``
* ``domains.tsv``    -- ``<synset_id>\\t<domain_label>\\t<weight>``

The hypernym relation must be acyclic (checked at load) and every edge or
domain row must reference a declared synset.  Queries treat "hypernym of
a word" as transitive ancestry of any of the word's synsets; distances
count edges along the directed child-to-parent paths.

Instances are immutable after load.  Per-synset ancestor maps and
per-word aggregates are memoized on first use; precompute by touching the
queries before sharing across workers.
"""

from __future__ import annotations

from collections import deque


class GraphError(Exception):
    """Base class for lexical graph failures."""


class GraphParseError(GraphError):
    """Malformed TSV line; message carries file and line number."""


class InvalidGraphError(GraphError):
    """The hypernym relation contains a directed cycle."""


class ReferentialIntegrityError(GraphError):
    """An edge or domain row references an undeclared synset."""


class UnknownSynsetError(GraphError, KeyError):
    """A query named a synset that is not declared."""


class LexicalGraph:
    def __init__(self, synsets, lemma_index, hyper_edges, domain_weights, pos=None):
        self.synsets: set[str] = set(synsets)
        self.lemma_index: dict[str, set[str]] = {w: set(s) for w, s in lemma_index.items()}
        self.hyper_edges: dict[str, set[str]] = {c: set(p) for c, p in hyper_edges.items()}
        self.domain_weights: dict[str, dict[str, float]] = {
            s: dict(d) for s, d in domain_weights.items()
        }
        self.pos: dict[str, str] = dict(pos or {})
        self.domains: set[str] = set()
        for table in self.domain_weights.values():
            self.domains.update(table)
        self._validate()
        self._dist_maps: dict[str, dict[str, int]] = {}
        self._word_domains: dict[str, dict[str, float]] = {}
        self._word_hyper: dict[str, dict[str, tuple[int, int]]] = {}

    def _validate(self):
        for child, parents in self.hyper_edges.items():
            if child not in self.synsets:
                raise ReferentialIntegrityError(f"edge child {child!r} is not declared")
            for parent in parents:
                if parent not in self.synsets:
                    raise ReferentialIntegrityError(
                        f"edge parent {parent!r} (child {child!r}) is not declared"
                    )
        for word, ids in self.lemma_index.items():
            for s in ids:
                if s not in self.synsets:
                    raise ReferentialIntegrityError(
                        f"lemma {word!r} references undeclared synset {s!r}"
                    )
        for s, table in self.domain_weights.items():
            if s not in self.synsets:
                raise ReferentialIntegrityError(f"domain row references undeclared synset {s!r}")
            for label, w in table.items():
                if w < 0:
                    raise GraphParseError(f"negative domain weight for ({s!r}, {label!r})")
        self._check_acyclic()

    def _check_acyclic(self):
        indeg = {s: 0 for s in self.synsets}
        for child, parents in self.hyper_edges.items():
            for parent in parents:
                indeg[parent] += 1
        queue = deque(s for s, d in indeg.items() if d == 0)
        seen = 0
        while queue:
            node = queue.popleft()
            seen += 1
            for parent in self.hyper_edges.get(node, ()):
                indeg[parent] -= 1
                if indeg[parent] == 0:
                    queue.append(parent)
        if seen == len(self.synsets):
            return
        # shrink the residue to the cycle nodes, then walk until one repeats
        residue = {s for s, d in indeg.items() if d > 0}
        changed = True
        while changed:
            changed = False
            for node in list(residue):
                if not any(p in residue for p in self.hyper_edges.get(node, ())):
                    residue.discard(node)
                    changed = True
        node = min(residue)
        on_path = {node}
        while True:
            succ = min(p for p in self.hyper_edges.get(node, ()) if p in residue)
            if succ in on_path:
                raise InvalidGraphError(f"hypernym cycle through edge {node!r} -> {succ!r}")
            on_path.add(succ)
            node = succ

    # -- core queries -------------------------------------------------

    def synsets_of(self, word: str) -> set[str]:
        return set(self.lemma_index.get(word, ()))

    def _dist_map(self, synset: str) -> dict[str, int]:
        """Edge distance from ``synset`` to each reachable ancestor (self at 0)."""
        cached = self._dist_maps.get(synset)
        if cached is not None:
            return cached
        dist = {synset: 0}
        queue = deque([synset])
        while queue:
            node = queue.popleft()
            d = dist[node] + 1
            for parent in self.hyper_edges.get(node, ()):
                if parent not in dist:
                    dist[parent] = d
                    queue.append(parent)
        self._dist_maps[synset] = dist
        return dist

    def synset_distance(self, x: str, y: str) -> int | None:
        """Shortest directed hypernym path length x -> y; None if unreachable."""
        if x not in self.synsets:
            raise UnknownSynsetError(x)
        if y not in self.synsets:
            raise UnknownSynsetError(y)
        return self._dist_map(x).get(y)

    def word_hypernyms(self, word: str) -> dict[str, tuple[int, int]]:
        """Aggregated ancestry of ``word``: synset -> (frequency, distance).

        Keys are every synset reachable from any synset of the word,
        including the word's own synsets.  Frequency counts the word's
        synsets that have the key as a proper ancestor; distance is the
        minimum over the word's synsets, clamped to >= 1 so the 1/d
        weighting stays finite when the key is itself a synset of the
        word.  Unknown words give an empty map.
        """
        cached = self._word_hyper.get(word)
        if cached is not None:
            return cached
        freq: dict[str, int] = {}
        best: dict[str, int] = {}
        for sw in self.lemma_index.get(word, ()):
            for h, d in self._dist_map(sw).items():
                if d > 0:
                    freq[h] = freq.get(h, 0) + 1
                prev = best.get(h)
                if prev is None or d < prev:
                    best[h] = d
        result = {h: (freq.get(h, 0), max(d, 1)) for h, d in best.items()}
        self._word_hyper[word] = result
        return result

    def lemma_hypernym_distance(self, word: str, h: str) -> int | None:
        """min over the word's synsets of the distance to ``h``, clamped >= 1."""
        entry = self.word_hypernyms(word).get(h)
        return None if entry is None else entry[1]

    def hypernym_frequency(self, word: str, h: str) -> int:
        """How many synsets of ``word`` have ``h`` as a proper ancestor."""
        entry = self.word_hypernyms(word).get(h)
        return 0 if entry is None else entry[0]

    def word_domains(self, word: str) -> dict[str, float]:
        """Summed domain weights over all synsets of ``word``."""
        cached = self._word_domains.get(word)
        if cached is not None:
            return cached
        total: dict[str, float] = {}
        for sw in self.lemma_index.get(word, ()):
            for label, w in self.domain_weights.get(sw, {}).items():
                total[label] = total.get(label, 0.0) + w
        self._word_domains[word] = total
        return total

    def domain_mass(self, word: str, domain: str) -> float:
        """Total weight of ``domain`` across the word's synsets; 0 if unknown."""
        return self.word_domains(word).get(domain, 0.0)

    def summary(self) -> dict[str, int]:
        n_edges = sum(len(p) for p in self.hyper_edges.values())
        return {
            "synsets": len(self.synsets),
            "lemmas": len(self.lemma_index),
            "hypernym_edges": n_edges,
            "domains": len(self.domains),
        }


def _read_tsv(path, n_fields):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            fields = line.rstrip("\n").split("\t")
            if len(fields) != n_fields or any(not f for f in fields):
                raise GraphParseError(
                    f"{path}:{lineno}: expected {n_fields} non-empty tab-separated fields"
                )
            yield lineno, fields


def load_graph(synsets_path, hypernyms_path, domains_path) -> LexicalGraph:
    """Load and validate the three-file TSV schema."""
    synsets: set[str] = set()
    pos: dict[str, str] = {}
    lemma_index: dict[str, set[str]] = {}
    for lineno, (sid, p, lemmas) in _read_tsv(synsets_path, 3):
        if sid in synsets:
            raise GraphParseError(f"{synsets_path}:{lineno}: duplicate synset {sid!r}")
        synsets.add(sid)
        pos[sid] = p
        for lemma in lemmas.split(","):
            lemma = lemma.strip()
            if lemma:
                lemma_index.setdefault(lemma, set()).add(sid)

    hyper_edges: dict[str, set[str]] = {}
    for _, (child, parent) in _read_tsv(hypernyms_path, 2):
        hyper_edges.setdefault(child, set()).add(parent)

    domain_weights: dict[str, dict[str, float]] = {}
    for lineno, (sid, label, raw) in _read_tsv(domains_path, 3):
        try:
            weight = float(raw)
        except ValueError:
            raise GraphParseError(f"{domains_path}:{lineno}: bad weight {raw!r}") from None
        if weight < 0:
            raise GraphParseError(f"{domains_path}:{lineno}: negative weight")
        table = domain_weights.setdefault(sid, {})
        if label in table:
            raise GraphParseError(
                f"{domains_path}:{lineno}: duplicate domain row ({sid!r}, {label!r})"
            )
        table[label] = weight

    return LexicalGraph(synsets, lemma_index, hyper_edges, domain_weights, pos)
