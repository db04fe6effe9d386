"""Pure-NumPy selection kernels.

Reference implementations of the scan primitives used by neighbor search
and the analogy sweep.  The compiled Cython module (``_simcore``) provides
bit-identical results; this module is what gets imported when the
extension is unavailable.

Both kernels receive a dense float64 score vector (one score per row of
the embedding matrix, typically produced by a BLAS matrix product) plus a
sorted array of excluded row ids, and perform only the selection step.
"""

import numpy as np


def topk_select(scores, k, exclude):
    """Indices of the ``k`` best scores, descending, ties by ascending id.

    ``exclude`` must be a sorted int64 array of row ids to skip.  Returns
    fewer than ``k`` indices when the eligible set is smaller.
    """
    n = scores.shape[0]
    if k <= 0:
        return np.empty(0, dtype=np.int64)
    if exclude.shape[0]:
        mask = np.ones(n, dtype=bool)
        mask[exclude] = False
        ids = np.nonzero(mask)[0].astype(np.int64)
    else:
        ids = np.arange(n, dtype=np.int64)
    if ids.shape[0] == 0:
        return np.empty(0, dtype=np.int64)
    kept = scores[ids]
    # lexsort: primary key last -> descending score, ties by ascending id
    order = np.lexsort((ids, -kept))
    return ids[order[: min(k, ids.shape[0])]]


def argmax_select(scores, exclude):
    """Id of the best score outside ``exclude`` (lowest id on ties), -1 if none.

    Scores must be finite; ``exclude`` sorted, unique, within range.
    """
    n = scores.shape[0]
    if exclude.shape[0]:
        if exclude.shape[0] >= n:
            return -1
        masked = scores.copy()
        masked[exclude] = -np.inf
        return int(np.argmax(masked))
    if n == 0:
        return -1
    return int(np.argmax(scores))
