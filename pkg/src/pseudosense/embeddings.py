"""Sense-indexed embedding storage, cosine similarity and neighbor search.

The on-disk format is plain text: a header line ``<row_count> <dim>``
followed by one line per sense vector, ``<word> <sense_index> <v1> ...
<v_dim>``, single-space separated, UTF-8, LF.  Floats are written with
``repr`` so that save -> load round-trips bit-exactly and a canonical
file re-serializes byte-identically.

Vectors are stored unnormalized; cosine normalizes on the fly.  A cached
unit-norm copy of the matrix backs batch neighbor search.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels


class EmbeddingError(Exception):
    """Base class for embedding store failures."""


class EmbeddingParseError(EmbeddingError):
    """Malformed header or data line; message carries the line number."""


class DuplicateKeyError(EmbeddingError):
    """The same (word, sense) appeared on two lines."""


class InvalidVectorError(EmbeddingError):
    """A vector was all-zero or non-finite at load time."""


class KeyNotFoundError(EmbeddingError, KeyError):
    """Lookup of a word or sense key that is not in the set."""


class UndefinedSimilarityError(EmbeddingError):
    """Cosine similarity touched a zero vector."""


@dataclass(frozen=True, order=True)
class SenseKey:
    """One sense of one word; ``word`` is the surface form, case-preserved."""

    word: str
    sense: int

    def __post_init__(self):
        if not self.word or any(ch.isspace() for ch in self.word):
            raise ValueError(f"invalid word {self.word!r}: empty or contains whitespace")
        if self.sense < 0:
            raise ValueError(f"negative sense index {self.sense}")

    def __str__(self):
        return f"{self.word}#{self.sense}"


@dataclass
class NeighborList:
    """Top neighbors of a query sense, descending cosine score."""

    query: SenseKey
    neighbors: list[tuple[SenseKey, float]]

    def __len__(self):
        return len(self.neighbors)

    def words(self) -> list[str]:
        return [key.word for key, _ in self.neighbors]


def cosine(u, v) -> float:
    """Cosine similarity of two nonzero vectors, clipped to [-1, 1]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise UndefinedSimilarityError("cosine of a zero vector is undefined")
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


class EmbeddingSet:
    """Immutable collection of sense vectors with word/sense indexing.

    Construction validates the invariants (finite rows, unique keys,
    nonzero vectors); instances are then safe for shared read-only use.
    ``allow_zero_rows`` exists only for projected spaces, where a row may
    collapse to zero and similarity raises when it is touched.
    """

    def __init__(self, keys: list[SenseKey], matrix, allow_zero_rows: bool = False):
        matrix = np.ascontiguousarray(matrix, dtype=np.float64)
        if matrix.ndim != 2:
            raise ValueError("matrix must be 2-D")
        if len(keys) != matrix.shape[0]:
            raise ValueError("one key per row required")
        if matrix.shape[0] == 0 or matrix.shape[1] == 0:
            raise ValueError("embedding set must have at least one row and one column")
        if not np.isfinite(matrix).all():
            raise InvalidVectorError("non-finite entries in embedding matrix")
        zero = ~matrix.any(axis=1)
        if zero.any() and not allow_zero_rows:
            raise InvalidVectorError(f"all-zero vector at row {int(np.nonzero(zero)[0][0])}")
        self._zero_ids: list[int] = np.nonzero(zero)[0].tolist()
        self.dim = int(matrix.shape[1])
        self.rows = matrix
        self.rows.setflags(write=False)
        self._keys: list[SenseKey] = list(keys)
        self._index: dict[SenseKey, int] = {}
        self._by_word: dict[str, list[int]] = {}
        self._lower: dict[str, str] = {}
        for i, key in enumerate(self._keys):
            if key in self._index:
                raise DuplicateKeyError(f"duplicate sense key {key}")
            self._index[key] = i
            self._by_word.setdefault(key.word, []).append(i)
        for word in self._by_word:
            self._lower.setdefault(word.lower(), word)
        for word, ids in self._by_word.items():
            senses = sorted(self._keys[i].sense for i in ids)
            if senses != list(range(len(ids))):
                raise EmbeddingError(
                    f"sense indices of {word!r} must cover 0..{len(ids) - 1}, got {senses}"
                )
        self._unit_rows = None

    def __len__(self):
        return len(self._keys)

    def __contains__(self, key: SenseKey):
        return key in self._index

    def keys(self) -> list[SenseKey]:
        return list(self._keys)

    def words(self) -> list[str]:
        return list(self._by_word)

    def row_id(self, key: SenseKey) -> int:
        try:
            return self._index[key]
        except KeyError:
            raise KeyNotFoundError(f"unknown sense key {key}") from None

    def key_of(self, row_id: int) -> SenseKey:
        return self._keys[row_id]

    def vector(self, key: SenseKey) -> np.ndarray:
        return self.rows[self.row_id(key)]

    def senses_of(self, word: str) -> list[SenseKey]:
        """All senses of ``word`` in ascending sense order; [] if unknown."""
        ids = self._by_word.get(word)
        if not ids:
            return []
        return sorted((self._keys[i] for i in ids), key=lambda k: k.sense)

    def sense_count(self, word: str) -> int:
        return len(self._by_word.get(word, ()))

    def resolve_word(self, word: str) -> str | None:
        """Vocabulary form of ``word``: exact match first, lowercase fallback."""
        if word in self._by_word:
            return word
        return self._lower.get(word.lower())

    def word_row_ids(self, word: str) -> list[int]:
        return list(self._by_word.get(word, ()))

    @property
    def unit_rows(self) -> np.ndarray:
        """Row-normalized copy of the matrix; zero rows stay zero."""
        if self._unit_rows is None:
            norms = np.linalg.norm(self.rows, axis=1, keepdims=True)
            safe = np.where(norms == 0.0, 1.0, norms)
            unit = self.rows / safe
            unit.setflags(write=False)
            self._unit_rows = unit
        return self._unit_rows

    def exclusion_ids(self, words) -> np.ndarray:
        """Sorted row ids covering every sense of ``words``, plus zero rows."""
        ids: set[int] = set(self._zero_ids)
        for word in words:
            ids.update(self._by_word.get(word, ()))
        return np.asarray(sorted(ids), dtype=np.int64)

    def _exclusion_for(self, word: str) -> np.ndarray:
        return self.exclusion_ids([word])

    def nearest_neighbors(self, query: SenseKey, m: int) -> NeighborList:
        """Top-``m`` rows by cosine, excluding every sense of the query's word.

        Ties break by ascending row id, so results are deterministic and
        equal to a full sort.  Zero rows (possible only in projected
        spaces) cannot be scored and are excluded from candidacy; a zero
        query raises.
        """
        return self.batch_neighbors([query], m)[0]

    def batch_neighbors(self, queries: list[SenseKey], m: int, block: int = 128) -> list[NeighborList]:
        """:meth:`nearest_neighbors` over many queries with blocked matrix products.

        One pass over the unit matrix serves ``block`` queries at a time,
        which is what keeps vocabulary-scale detection memory-bound once
        instead of once per sense.
        """
        unit = self.unit_rows
        qids = np.empty(len(queries), dtype=np.int64)
        for j, q in enumerate(queries):
            qids[j] = self.row_id(q)
            if qids[j] in self._zero_ids:
                raise UndefinedSimilarityError(f"query vector {q} is zero")
        out: list[NeighborList] = []
        for start in range(0, len(queries), block):
            chunk = qids[start : start + block]
            scores = unit[chunk] @ unit.T
            for j, qid in enumerate(chunk.tolist()):
                query = self._keys[qid]
                row = np.ascontiguousarray(scores[j])
                ids = _kernels.topk_select(row, int(m), self._exclusion_for(query.word))
                neighbors = [
                    (self._keys[i], float(np.clip(row[i], -1.0, 1.0))) for i in ids.tolist()
                ]
                out.append(NeighborList(query=query, neighbors=neighbors))
        return out


def _format_float(x: float) -> str:
    return repr(float(x))


def load_embeddings(path) -> EmbeddingSet:
    """Parse the canonical text format into an :class:`EmbeddingSet`.

    Raises :class:`EmbeddingParseError` with a 1-based line number on any
    malformed line, :class:`DuplicateKeyError` on repeated keys and
    :class:`InvalidVectorError` on zero vectors.
    """
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if not header.strip():
            raise EmbeddingParseError(f"{path}:1: empty or missing header")
        parts = header.split()
        if len(parts) != 2:
            raise EmbeddingParseError(f"{path}:1: header must be '<row_count> <dim>'")
        try:
            count, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise EmbeddingParseError(f"{path}:1: non-integer header fields") from None
        if count <= 0 or dim <= 0:
            raise EmbeddingParseError(f"{path}:1: row count and dim must be positive")
        keys: list[SenseKey] = []
        matrix = np.empty((count, dim), dtype=np.float64)
        lineno = 1
        for line in fh:
            lineno += 1
            if not line.strip():
                continue
            fields = line.split()
            if len(fields) != dim + 2:
                raise EmbeddingParseError(
                    f"{path}:{lineno}: expected {dim + 2} fields, got {len(fields)}"
                )
            word = fields[0]
            try:
                sense = int(fields[1])
                values = np.array(fields[2:], dtype=np.float64)
            except ValueError:
                raise EmbeddingParseError(f"{path}:{lineno}: unparseable field") from None
            try:
                key = SenseKey(word, sense)
            except ValueError as exc:
                raise EmbeddingParseError(f"{path}:{lineno}: {exc}") from None
            if len(keys) >= count:
                raise EmbeddingParseError(
                    f"{path}:{lineno}: more data lines than the declared {count}"
                )
            if not np.isfinite(values).all():
                raise InvalidVectorError(f"{path}:{lineno}: non-finite value")
            if not values.any():
                raise InvalidVectorError(f"{path}:{lineno}: all-zero vector for {key}")
            matrix[len(keys)] = values
            keys.append(key)
        if len(keys) != count:
            raise EmbeddingParseError(
                f"{path}: header declared {count} rows, file has {len(keys)}"
            )
    return EmbeddingSet(keys, matrix)


def save_embeddings(space: EmbeddingSet, path) -> None:
    """Write the canonical text format (the inverse of :func:`load_embeddings`)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{len(space)} {space.dim}\n")
        for i, key in enumerate(space.keys()):
            values = " ".join(_format_float(x) for x in space.rows[i])
            fh.write(f"{key.word} {key.sense} {values}\n")
