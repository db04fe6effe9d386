"""Session fixtures, chiefly the planted-duplicate corpus.

The corpus plants ground truth that detection must recover exactly:

* 18 one-hot "themes" (dim = 18), each with its own 5 domain labels and
  a 5-deep hypernym chain, plus 10 single-sense context words per theme
  at integer scales 1..10 along the theme axis.  Context rows are loaded
  first, so equal-cosine ties always resolve to context words.
* 20 multi-sense words: 12 with two same-theme senses (true duplicates),
  4 with two same-theme senses plus a third in a spare theme, and 4 with
  two cross-theme senses (negative controls).  Every same-theme pair
  scores domain and hypernym overlap 1.0 (total 2.0 > 1); every
  cross-theme pair scores 0.0.

Integer scales keep cosines and norms exact; duplicate-sense scales stay
small (1..3) so per-sample SGD at the default learning rate contracts
every group strictly.
"""

import os
from dataclasses import dataclass, field

import pytest

from pseudosense.embeddings import EmbeddingSet, load_embeddings
from pseudosense.lexgraph import LexicalGraph, load_graph

N_THEMES = 18
CTX_PER_THEME = 10
SPARE_A, SPARE_B = 16, 17


@dataclass
class PlantedCorpus:
    space: EmbeddingSet
    graph: LexicalGraph
    paths: dict
    expected_pairs: set          # {(word, k, l)}
    expected_groups: dict        # word -> (members...)
    words: list = field(default_factory=list)
    n_context: int = N_THEMES * CTX_PER_THEME


def _axis_vec(theme, scale):
    vec = [0] * N_THEMES
    vec[theme] = scale
    return vec


def build_planted_texts():
    """(embeddings_text, synsets_text, hypernyms_text, domains_text, truth)."""
    emb_rows = []        # (word, sense, vector)
    synsets = []
    hypernyms = []
    domains = []

    for t in range(N_THEMES):
        for k in range(4):
            hypernyms.append((f"h{t}_{k}", f"h{t}_{k + 1}"))
        for k in range(5):
            synsets.append((f"h{t}_{k}", "n", f"hlemma{t}_{k}"))
        for j in range(CTX_PER_THEME):
            word = f"ctx{t}_{j}"
            emb_rows.append((word, 0, _axis_vec(t, j + 1)))
            synsets.append((f"s_{word}", "n", word))
            hypernyms.append((f"s_{word}", f"h{t}_0"))
            for d in range(5):
                domains.append((f"s_{word}", f"dom{t}_{d}", 0.5 + 0.1 * d))

    expected_pairs = set()
    expected_groups = {}
    words = []

    def add_word_synset(syn, word, theme):
        synsets.append((syn, "n", word))
        hypernyms.append((syn, f"h{theme}_0"))

    for t in range(12):
        word = f"dup{t}"
        lo = 1 if t % 2 == 0 else 2
        emb_rows.append((word, 0, _axis_vec(t, lo)))
        emb_rows.append((word, 1, _axis_vec(t, lo + 1)))
        add_word_synset(f"s_{word}", word, t)
        expected_pairs.add((word, 0, 1))
        expected_groups[word] = (0, 1)
        words.append(word)

    for i in range(4):
        word = f"tri{i}"
        theme = 12 + i
        spare = SPARE_A if i % 2 == 0 else SPARE_B
        emb_rows.append((word, 0, _axis_vec(theme, 1)))
        emb_rows.append((word, 1, _axis_vec(theme, 2)))
        emb_rows.append((word, 2, _axis_vec(spare, 3)))
        add_word_synset(f"s_{word}_main", word, theme)
        add_word_synset(f"s_{word}_spare", word, spare)
        expected_pairs.add((word, 0, 1))
        expected_groups[word] = (0, 1)
        words.append(word)

    for i in range(4):
        word = f"cross{i}"
        emb_rows.append((word, 0, _axis_vec(SPARE_A, 2)))
        emb_rows.append((word, 1, _axis_vec(SPARE_B, 3)))
        add_word_synset(f"s_{word}_a", word, SPARE_A)
        add_word_synset(f"s_{word}_b", word, SPARE_B)
        words.append(word)

    emb_text = f"{len(emb_rows)} {N_THEMES}\n" + "".join(
        f"{w} {k} " + " ".join(str(x) for x in v) + "\n" for w, k, v in emb_rows
    )
    syn_text = "".join(f"{s}\t{p}\t{l}\n" for s, p, l in synsets)
    hyp_text = "".join(f"{a}\t{b}\n" for a, b in hypernyms)
    dom_text = "".join(f"{s}\t{d}\t{w}\n" for s, d, w in domains)
    truth = {"pairs": expected_pairs, "groups": expected_groups, "words": words}
    return emb_text, syn_text, hyp_text, dom_text, truth


@pytest.fixture(scope="session")
def planted(tmp_path_factory) -> PlantedCorpus:
    root = tmp_path_factory.mktemp("planted")
    emb_text, syn_text, hyp_text, dom_text, truth = build_planted_texts()
    paths = {
        "embeddings": os.path.join(root, "embeddings.txt"),
        "synsets": os.path.join(root, "synsets.tsv"),
        "hypernyms": os.path.join(root, "hypernyms.tsv"),
        "domains": os.path.join(root, "domains.tsv"),
    }
    for name, text in (("embeddings", emb_text), ("synsets", syn_text),
                       ("hypernyms", hyp_text), ("domains", dom_text)):
        with open(paths[name], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    space = load_embeddings(paths["embeddings"])
    graph = load_graph(paths["synsets"], paths["hypernyms"], paths["domains"])
    return PlantedCorpus(
        space=space,
        graph=graph,
        paths=paths,
        expected_pairs=truth["pairs"],
        expected_groups=truth["groups"],
        words=truth["words"],
    )
