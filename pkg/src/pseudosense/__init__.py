"""Pseudo multi-sense detection and elimination for multi-sense embeddings.

Multi-sense embedding models often learn several vectors for one word
that denote the same meaning.  This package scores same-word sense
pairs with domain and hypernym evidence from a lexical graph, groups
the duplicates, trains a global linear projection that collapses each
group onto a representative vector, and evaluates the original and
projected spaces on word-similarity and analogy benchmarks.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .analogy import (
    AnalogyResult,
    Quadruple,
    evaluate_all,
    evaluate_quadruple,
    load_analogy,
    predict_direction,
)
from .detect import (
    PseudoGroup,
    PseudoPair,
    build_groups,
    detect_pairs,
    domain_profile,
    hypernym_profile,
    read_groups,
    sense_similarity,
    write_groups,
    write_pairs,
)
from .embeddings import (
    EmbeddingError,
    EmbeddingSet,
    KeyNotFoundError,
    NeighborList,
    SenseKey,
    UndefinedSimilarityError,
    cosine,
    load_embeddings,
    save_embeddings,
)
from .lexgraph import GraphError, LexicalGraph, load_graph
from .project import (
    TrainingConfig,
    TransitionMatrix,
    make_representatives,
    project_space,
    train_transition,
    training_pairs,
)
from .simeval import (
    avg_sim,
    avg_sim_c,
    context_vector,
    eval_scws,
    eval_wordsim,
    load_scws,
    load_wordsim,
    local_sim,
    sense_posterior,
    spearman,
)

__version__ = "0.1.0"

__all__ = [
    "AnalogyResult",
    "EmbeddingError",
    "EmbeddingSet",
    "GraphError",
    "KERNEL_BACKEND",
    "KeyNotFoundError",
    "LexicalGraph",
    "NeighborList",
    "PseudoGroup",
    "PseudoPair",
    "Quadruple",
    "SenseKey",
    "TrainingConfig",
    "TransitionMatrix",
    "UndefinedSimilarityError",
    "avg_sim",
    "avg_sim_c",
    "build_groups",
    "context_vector",
    "cosine",
    "detect_pairs",
    "domain_profile",
    "evaluate_all",
    "evaluate_quadruple",
    "eval_scws",
    "eval_wordsim",
    "hypernym_profile",
    "load_analogy",
    "load_embeddings",
    "load_graph",
    "load_scws",
    "load_wordsim",
    "local_sim",
    "make_representatives",
    "predict_direction",
    "project_space",
    "read_groups",
    "save_embeddings",
    "sense_posterior",
    "sense_similarity",
    "spearman",
    "train_transition",
    "training_pairs",
    "write_groups",
    "write_pairs",
]
