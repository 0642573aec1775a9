"""Pure-Python (numpy) implementation of the enumeration kernel."""
import numpy as np


def ball_weights(parent, vertex_factors, edge_factors):
    """Unnormalized weight of every configuration on a tree ball.

    ``parent[v]`` is the parent index of vertex ``v`` (``-1`` for the root) and
    every parent precedes its children.  ``vertex_factors`` has shape
    ``(N, q)`` and ``edge_factors`` shape ``(q, q)``.  The result is flat, in
    ``itertools.product`` order (vertex 0 is the most significant digit).
    """
    parent = np.asarray(parent, dtype=np.int64)
    vf = np.asarray(vertex_factors, dtype=np.float64)
    ef = np.asarray(edge_factors, dtype=np.float64)
    n, q = vf.shape
    w = vf[0].copy()
    for v in range(1, n):
        p = int(parent[v])
        factor = ef[:, :] * vf[v][None, :]
        shape = [1] * (v + 1)
        shape[p] = q
        shape[v] = q
        w = w[..., None] * factor.reshape(shape)
    return w.reshape(-1)
