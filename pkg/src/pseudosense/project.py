"""Global linear projection that collapses same-meaning senses.

Each detected group gets a representative vector (member mean by default,
or a seeded random member).  A single D x D matrix is then trained by
per-sample stochastic gradient descent to map every group member onto its
group representative, minimizing the summed squared residual; applying
the matrix to the whole space moves duplicate senses together while
leaving the rest to the identity initialization.

Training is strictly sequential and seeded, so a (pairs, config) input
always reproduces the same matrix bit-for-bit.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .detect import PseudoGroup
from .embeddings import EmbeddingSet, SenseKey, _format_float

REP_MODES = ("mean", "random")
INIT_MODES = ("identity", "zero", "gaussian")


@dataclass
class RepresentativeAssignment:
    """One representative vector per group plus how it was chosen."""

    entries: list[tuple[PseudoGroup, np.ndarray]]
    mode: str
    seed: int


@dataclass
class TrainingConfig:
    learning_rate: float = 0.01
    epochs: int = 50
    seed: int = 0
    shuffle: bool = True
    init: str = "identity"
    gaussian_sigma: float = 0.01
    # pull toward the identity; 0 disables (an extension, not the base method)
    ridge_to_identity: float = 0.0

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.init not in INIT_MODES:
            raise ValueError(f"init must be one of {INIT_MODES}")
        if self.ridge_to_identity < 0:
            raise ValueError("ridge_to_identity must be >= 0")


@dataclass
class TransitionMatrix:
    dim: int
    cells: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.cells = np.asarray(self.cells, dtype=np.float64)
        if self.cells.shape != (self.dim, self.dim):
            raise ValueError(f"cells must be {self.dim}x{self.dim}")
        if not np.isfinite(self.cells).all():
            raise ValueError("transition matrix has non-finite entries")

    @classmethod
    def identity(cls, dim: int) -> "TransitionMatrix":
        return cls(dim, np.eye(dim))

    def save(self, path) -> None:
        """Text form: first line D, then D rows of D floats."""
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"{self.dim}\n")
            for row in self.cells:
                fh.write(" ".join(_format_float(x) for x in row) + "\n")

    @classmethod
    def load(cls, path) -> "TransitionMatrix":
        with open(path, encoding="utf-8") as fh:
            try:
                dim = int(fh.readline().split()[0])
            except (ValueError, IndexError):
                raise ValueError(f"{path}:1: expected the dimension") from None
            cells = np.loadtxt(fh, dtype=np.float64, ndmin=2)
        return cls(dim, cells)


def make_representatives(space: EmbeddingSet, groups: list[PseudoGroup],
                         mode: str = "mean", seed: int = 0) -> RepresentativeAssignment:
    """Pick one representative vector per group.

    ``mean`` takes the componentwise mean of the member vectors;
    ``random`` picks a member uniformly under ``seed`` (deterministic).
    """
    if mode not in REP_MODES:
        raise ValueError(f"mode must be one of {REP_MODES}")
    rng = np.random.default_rng(seed)
    entries: list[tuple[PseudoGroup, np.ndarray]] = []
    for group in groups:
        if not group.members:
            raise ValueError(f"empty group for word {group.word!r}")
        vectors = np.stack([space.vector(SenseKey(group.word, s)) for s in group.members])
        if mode == "mean":
            rep = vectors.mean(axis=0)
        else:
            rep = vectors[int(rng.integers(len(group.members)))].copy()
        entries.append((group, rep))
    return RepresentativeAssignment(entries=entries, mode=mode, seed=seed)


def training_pairs(space: EmbeddingSet, reps: RepresentativeAssignment):
    """One (member vector, representative vector) pair per group member."""
    pairs: list[tuple[np.ndarray, np.ndarray]] = []
    for group, rep in reps.entries:
        for sense in group.members:
            pairs.append((space.vector(SenseKey(group.word, sense)), rep))
    return pairs


def train_transition(pairs, cfg: TrainingConfig, dim: int | None = None):
    """Fit the transition matrix by per-sample SGD on the squared residual.

    Returns the matrix and the full-dataset loss after each epoch.  With
    no pairs the initialization is returned unchanged with an empty curve
    (``dim`` must then be given, since it cannot be inferred).
    """
    if not pairs:
        if dim is None:
            raise ValueError("dim is required when there are no training pairs")
        return TransitionMatrix(dim, _init_matrix(cfg, dim)), []
    xs = np.stack([np.asarray(x, dtype=np.float64) for x, _ in pairs])
    rs = np.stack([np.asarray(r, dtype=np.float64) for _, r in pairs])
    if xs.ndim != 2 or xs.shape != rs.shape:
        raise ValueError("all pairs must share one dimension")
    n, d = xs.shape
    if dim is not None and dim != d:
        raise ValueError(f"pairs have dim {d}, expected {dim}")
    phi = _init_matrix(cfg, d)
    rng = np.random.default_rng(cfg.seed)
    curve: list[float] = []
    eye = np.eye(d) if cfg.ridge_to_identity else None
    for _ in range(cfg.epochs):
        order = rng.permutation(n) if cfg.shuffle else np.arange(n)
        for i in order:
            x = xs[i]
            resid = phi @ x - rs[i]
            phi -= (2.0 * cfg.learning_rate) * np.outer(resid, x)
            if eye is not None:
                phi -= (2.0 * cfg.learning_rate * cfg.ridge_to_identity) * (phi - eye)
        curve.append(float(((xs @ phi.T - rs) ** 2).sum()))
    return TransitionMatrix(d, phi), curve


def _init_matrix(cfg: TrainingConfig, d: int) -> np.ndarray:
    if cfg.init == "identity":
        return np.eye(d)
    if cfg.init == "zero":
        return np.zeros((d, d))
    rng = np.random.default_rng(cfg.seed)
    return rng.normal(0.0, cfg.gaussian_sigma, size=(d, d))


def project_space(space: EmbeddingSet, phi: TransitionMatrix) -> EmbeddingSet:
    """Apply the transition matrix to every row; structure is unchanged.

    A row that collapses to zero is kept but warned about; similarity
    queries touching it will raise.
    """
    if phi.dim != space.dim:
        raise ValueError(f"matrix dim {phi.dim} != space dim {space.dim}")
    projected = space.rows @ phi.cells.T
    zero = ~projected.any(axis=1)
    if zero.any():
        first = space.key_of(int(np.nonzero(zero)[0][0]))
        warnings.warn(
            f"{int(zero.sum())} projected row(s) are zero (first: {first}); "
            "similarity on them is undefined",
            RuntimeWarning,
            stacklevel=2,
        )
    return EmbeddingSet(space.keys(), projected, allow_zero_rows=True)
