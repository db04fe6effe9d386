"""Builders shared by the test modules."""

import numpy as np

from pseudosense.embeddings import EmbeddingSet, SenseKey


def build_space(entries, allow_zero_rows=False):
    """EmbeddingSet from (word, sense, vector) triples."""
    keys = [SenseKey(word, sense) for word, sense, _ in entries]
    mat = np.asarray([vec for _, _, vec in entries], dtype=np.float64)
    return EmbeddingSet(keys, mat, allow_zero_rows=allow_zero_rows)


def random_single_sense_space(rng, n_words, dim, prefix="w"):
    """One gaussian vector per word w0..w{n-1}; never a zero row."""
    mat = rng.standard_normal((n_words, dim))
    return build_space([(f"{prefix}{i}", 0, mat[i]) for i in range(n_words)])


def random_multi_sense_space(rng, n_words, max_senses, dim, prefix="w"):
    entries = []
    for i in range(n_words):
        for k in range(int(rng.integers(1, max_senses + 1))):
            entries.append((f"{prefix}{i}", k, rng.standard_normal(dim)))
    return build_space(entries)


def brute_force_neighbors(space, query, m):
    """Exhaustive sort oracle for nearest_neighbors: same exclusions, same
    (-score, row id) order."""
    qv = space.vector(query)
    qn = qv / np.linalg.norm(qv)
    banned = set(space.word_row_ids(query.word))
    scored = []
    for i in range(len(space.keys())):
        if i in banned:
            continue
        row = space.rows[i]
        norm = np.linalg.norm(row)
        if norm == 0.0:
            continue
        scored.append((-float(qn @ (row / norm)), i))
    scored.sort()
    return [i for _, i in scored[:m]]


def spearman_oracle(xs, ys):
    """Rank both sequences (mean rank on ties) and Pearson-correlate the ranks."""
    def ranks(vals):
        order = sorted(range(len(vals)), key=lambda i: vals[i])
        out = [0.0] * len(vals)
        i = 0
        while i < len(order):
            j = i
            while j + 1 < len(order) and vals[order[j + 1]] == vals[order[i]]:
                j += 1
            mean_rank = (i + j) / 2.0 + 1.0
            for t in range(i, j + 1):
                out[order[t]] = mean_rank
            i = j + 1
        return out

    rx, ry = ranks(list(xs)), ranks(list(ys))
    mx = sum(rx) / len(rx)
    my = sum(ry) / len(ry)
    num = sum((a - mx) * (b - my) for a, b in zip(rx, ry))
    den = (sum((a - mx) ** 2 for a in rx) * sum((b - my) ** 2 for b in ry)) ** 0.5
    return num / den


def connected_components_oracle(edges):
    """DFS components over an undirected edge list; singletons omitted."""
    adj = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    seen = set()
    comps = []
    for start in sorted(adj):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            node = stack.pop()
            comp.append(node)
            for nxt in adj[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(comp) >= 2:
            comps.append(tuple(sorted(comp)))
    return sorted(comps)
