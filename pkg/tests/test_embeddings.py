"""Embedding store: keys, cosine, neighbor search, text format round-trips."""

import numpy as np
import pytest

from pseudosense.embeddings import (
    DuplicateKeyError,
    EmbeddingError,
    EmbeddingParseError,
    EmbeddingSet,
    InvalidVectorError,
    KeyNotFoundError,
    NeighborList,
    SenseKey,
    UndefinedSimilarityError,
    cosine,
    load_embeddings,
    save_embeddings,
)
from util import brute_force_neighbors, build_space, random_multi_sense_space


class TestSenseKey:
    def test_str_and_order(self):
        assert str(SenseKey("bank", 2)) == "bank#2"
        assert SenseKey("bank", 0) < SenseKey("bank", 1) < SenseKey("cat", 0)

    @pytest.mark.parametrize("word", ["", "two words", "tab\tword", "nl\nword"])
    def test_bad_word(self, word):
        with pytest.raises(ValueError):
            SenseKey(word, 0)

    def test_negative_sense(self):
        with pytest.raises(ValueError):
            SenseKey("bank", -1)


class TestCosine:
    def test_basic_values(self):
        assert cosine([1, 0], [0, 1]) == 0.0
        assert cosine([1, 2], [2, 4]) == pytest.approx(1.0)
        assert cosine([1, 0], [-3, 0]) == -1.0

    def test_clipped_into_range(self):
        v = np.array([0.1, 0.2, 0.3])
        assert -1.0 <= cosine(v, 7.3 * v) <= 1.0

    def test_zero_vector_raises(self):
        with pytest.raises(UndefinedSimilarityError):
            cosine([0, 0], [1, 0])

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            cosine([1, 0], [1, 0, 0])


class TestEmbeddingSet:
    def test_indexing(self):
        space = build_space([("a", 0, [1, 0]), ("a", 1, [2, 0]), ("b", 0, [0, 1])])
        assert len(space) == 3
        assert space.row_id(SenseKey("a", 1)) == 1
        assert space.key_of(2) == SenseKey("b", 0)
        assert np.array_equal(space.vector(SenseKey("b", 0)), [0.0, 1.0])
        assert space.senses_of("a") == [SenseKey("a", 0), SenseKey("a", 1)]
        assert space.sense_count("a") == 2 and space.sense_count("zz") == 0
        assert SenseKey("a", 0) in space and SenseKey("a", 9) not in space

    def test_unknown_key_raises(self):
        space = build_space([("a", 0, [1, 0])])
        with pytest.raises(KeyNotFoundError):
            space.row_id(SenseKey("zz", 0))
        with pytest.raises(KeyNotFoundError):
            space.vector(SenseKey("a", 3))

    def test_resolve_word_case_fallback(self):
        space = build_space([("Apple", 0, [1, 0]), ("apple", 0, [2, 0]),
                             ("Pear", 0, [0, 1])])
        assert space.resolve_word("apple") == "apple"
        assert space.resolve_word("Apple") == "Apple"
        assert space.resolve_word("APPLE") == "Apple"  # first matching form wins
        assert space.resolve_word("pear") == "Pear"
        assert space.resolve_word("plum") is None

    def test_duplicate_key_rejected(self):
        with pytest.raises(DuplicateKeyError):
            build_space([("a", 0, [1, 0]), ("a", 0, [2, 0])])

    def test_sense_gap_rejected(self):
        with pytest.raises(EmbeddingError, match="cover 0..1"):
            build_space([("a", 0, [1, 0]), ("a", 2, [2, 0])])

    def test_zero_row_rejected_unless_allowed(self):
        with pytest.raises(InvalidVectorError):
            build_space([("a", 0, [0, 0])])
        space = build_space([("a", 0, [0, 0]), ("b", 0, [1, 0])],
                            allow_zero_rows=True)
        assert len(space) == 2

    def test_nonfinite_rejected(self):
        with pytest.raises(InvalidVectorError):
            build_space([("a", 0, [1, np.inf])])

    def test_rows_read_only(self):
        space = build_space([("a", 0, [1, 0])])
        with pytest.raises(ValueError):
            space.rows[0, 0] = 9.0

    def test_exclusion_ids(self):
        space = build_space([("a", 0, [1, 0]), ("b", 0, [0, 0]), ("a", 1, [0, 1])],
                            allow_zero_rows=True)
        ids = space.exclusion_ids(["a"])
        assert ids.dtype == np.int64
        assert ids.tolist() == [0, 1, 2]  # both senses of a, plus the zero row
        assert space.exclusion_ids([]).tolist() == [1]


class TestNearestNeighbors:
    def test_excludes_own_senses(self):
        space = build_space([("a", 0, [1, 0]), ("a", 1, [2, 0]), ("b", 0, [3, 0]),
                             ("c", 0, [0, 1])])
        nn = space.nearest_neighbors(SenseKey("a", 0), 3)
        assert SenseKey("a", 1) not in [k for k, _ in nn.neighbors]
        assert nn.words() == ["b", "c"]  # fewer than m eligible rows is fine

    def test_tie_break_by_row_id(self):
        space = build_space([("a", 0, [1, 0]), ("b", 0, [2, 0]), ("c", 0, [3, 0]),
                             ("d", 0, [0, 5])])
        nn = space.nearest_neighbors(SenseKey("a", 0), 2)
        # b and c tie at cosine 1.0; lower row id first
        assert [str(k) for k, _ in nn.neighbors] == ["b#0", "c#0"]
        assert nn.neighbors[0][1] == pytest.approx(1.0)

    def test_scores_descending_and_clipped(self):
        rng = np.random.default_rng(3)
        space = random_multi_sense_space(rng, 40, 3, 8)
        for key in space.keys()[:10]:
            nn = space.nearest_neighbors(key, 15)
            scores = [s for _, s in nn.neighbors]
            assert all(-1.0 <= s <= 1.0 for s in scores)
            assert scores == sorted(scores, reverse=True)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(5)
        for trial in range(20):
            space = random_multi_sense_space(rng, int(rng.integers(5, 60)), 4,
                                             int(rng.integers(2, 10)))
            m = int(rng.integers(1, 12))
            for key in space.keys()[:: max(1, len(space) // 7)]:
                got = [space.row_id(k) for k, _ in
                       space.nearest_neighbors(key, m).neighbors]
                assert got == brute_force_neighbors(space, key, m)

    def test_batch_equals_individual(self):
        rng = np.random.default_rng(9)
        space = random_multi_sense_space(rng, 50, 3, 6)
        queries = space.keys()
        batched = space.batch_neighbors(queries, 7, block=13)
        for q, nl in zip(queries, batched):
            solo = space.nearest_neighbors(q, 7)
            assert nl.query == q == solo.query
            # same ranking; scores may differ in the last ulp across BLAS
            # block shapes, so ids are exact and scores approximate
            assert [str(k) for k, _ in nl.neighbors] == [
                str(k) for k, _ in solo.neighbors
            ]
            for (_, sa), (_, sb) in zip(nl.neighbors, solo.neighbors):
                assert sa == pytest.approx(sb, rel=1e-12, abs=1e-12)

    def test_zero_rows_never_candidates_and_zero_query_raises(self):
        space = build_space(
            [("a", 0, [1, 0]), ("z", 0, [0, 0]), ("b", 0, [2, 0])],
            allow_zero_rows=True,
        )
        nn = space.nearest_neighbors(SenseKey("a", 0), 5)
        assert nn.words() == ["b"]
        with pytest.raises(UndefinedSimilarityError):
            space.nearest_neighbors(SenseKey("z", 0), 2)


class TestTextFormat:
    def test_round_trip_exact(self, tmp_path):
        rng = np.random.default_rng(17)
        space = random_multi_sense_space(rng, 30, 3, 7)
        p1 = tmp_path / "a.txt"
        p2 = tmp_path / "b.txt"
        save_embeddings(space, p1)
        loaded = load_embeddings(p1)
        assert loaded.keys() == space.keys()
        assert np.array_equal(loaded.rows, space.rows)  # repr round-trips bits
        save_embeddings(loaded, p2)
        assert p1.read_bytes() == p2.read_bytes()  # canonical form is a fixed point

    def test_load_basic(self, tmp_path):
        p = tmp_path / "e.txt"
        p.write_text("2 3\nbank 0 1.0 0.5 -2.0\nbank 1 0.25 1e-3 4\n")
        space = load_embeddings(p)
        assert space.dim == 3
        assert space.vector(SenseKey("bank", 1)).tolist() == [0.25, 0.001, 4.0]

    def test_blank_lines_tolerated(self, tmp_path):
        p = tmp_path / "e.txt"
        p.write_text("2 2\na 0 1 2\n\nb 0 3 4\n\n")
        assert len(load_embeddings(p)) == 2

    @pytest.mark.parametrize(
        "text,exc,frag",
        [
            ("", EmbeddingParseError, ":1"),
            ("3\n", EmbeddingParseError, ":1"),
            ("x y\n", EmbeddingParseError, ":1"),
            ("0 4\n", EmbeddingParseError, ":1"),
            ("1 -2\n", EmbeddingParseError, ":1"),
            ("1 2\na 0 1\n", EmbeddingParseError, ":2"),
            ("1 2\na 0 1 2 3\n", EmbeddingParseError, ":2"),
            ("1 2\na zz 1 2\n", EmbeddingParseError, ":2"),
            ("1 2\na 0 1 oops\n", EmbeddingParseError, ":2"),
            ("1 2\na -1 1 2\n", EmbeddingParseError, ":2"),
            ("1 2\na 0 inf 2\n", InvalidVectorError, ":2"),
            ("1 2\na 0 nan 2\n", InvalidVectorError, ":2"),
            ("1 2\na 0 0 0\n", InvalidVectorError, ":2"),
            ("1 2\na 0 1 2\nb 0 3 4\n", EmbeddingParseError, ":3"),
            ("2 2\na 0 1 2\n", EmbeddingParseError, "declared 2"),
            ("2 2\na 0 1 2\na 0 3 4\n", DuplicateKeyError, "a#0"),
            ("2 2\na 0 1 2\na 2 3 4\n", EmbeddingError, "cover"),
        ],
    )
    def test_load_errors(self, tmp_path, text, exc, frag):
        p = tmp_path / "bad.txt"
        p.write_text(text)
        with pytest.raises(exc, match=frag.replace("(", "\\(")):
            load_embeddings(p)
