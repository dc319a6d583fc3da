"""Exact maximum-margin linear separators for small 2-D training sets.

Training sets here are tiny (a benchmark grid of at most a few hundred
labeled cells), so instead of an iterative QP solver the exact separator
is found by enumerating its possible support sets: the widest-margin line
between two separable point classes in the plane is the perpendicular
bisector of either a closest point pair (one per class) or of a point and
its projection onto an opposing hull edge.
"""
from __future__ import annotations

import numpy as np

_CHUNK = 16384


def _candidate_planes(X: np.ndarray, y: np.ndarray):
    """Yield (w, b) arrays for every support pair and point-edge triple."""
    A = X[y > 0]
    B = X[y <= 0]
    ws = []
    bs = []

    def midplane(p, q):
        # plane through the midpoint of pq, normal pointing from q to p
        w = p - q
        mid = (p + q) / 2.0
        ws.append(w)
        bs.append(-w @ mid)

    for a in A:
        for b in B:
            midplane(a, b)
    for same, other, toward_same in ((A, B, True), (B, A, False)):
        for i in range(len(same)):
            for j in range(i + 1, len(same)):
                p, q = same[i], same[j]
                u = q - p
                uu = u @ u
                if uu < 1e-30:
                    continue
                for o in other:
                    t = (o - p) @ u / uu
                    if not 0.0 < t < 1.0:
                        continue
                    c = p + t * u
                    if toward_same:
                        midplane(c, o)
                    else:
                        midplane(o, c)
    if not ws:
        return np.empty((0, 2)), np.empty(0)
    return np.array(ws), np.array(bs)


def max_margin_plane(X: np.ndarray, y: np.ndarray):
    """Widest-margin separator of the points X labeled y in {+1, -1}.

    Returns ``(w, b, gap)`` scaled so that min y_i (w.x_i + b) = 1 (the
    closest points sit on the +-1 levels; gap = 2/|w| is the full margin
    width), or ``None`` when the classes are not strictly separable.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    W, B = _candidate_planes(X, y)
    if not len(W):
        return None
    norms = np.linalg.norm(W, axis=1)
    ok = norms > 1e-15
    W, B, norms = W[ok], B[ok], norms[ok]
    best = None
    for lo in range(0, len(W), _CHUNK):
        Wc = W[lo:lo + _CHUNK]
        Bc = B[lo:lo + _CHUNK]
        scores = (X @ Wc.T + Bc) * y[:, None]
        mins = scores.min(axis=0)
        margins = mins / norms[lo:lo + _CHUNK]
        i = int(np.argmax(margins))
        if margins[i] > 0 and (best is None or margins[i] > best[0]):
            best = (margins[i], Wc[i], Bc[i], mins[i])
    if best is None:
        return None
    margin, w, b, smin = best
    w = w / smin
    b = b / smin
    return w, b, 2.0 * margin


def min_misclassification_plane(X: np.ndarray, y: np.ndarray, angles: int = 3600,
                                weights=None):
    """Fallback for inseparable data: angle/threshold sweep minimizing the
    total weight of misclassified points (every weight 1 when omitted).

    Ties break toward fewer errors, then toward the widest gap around the
    threshold.  Returns ``(w, b, cost)``.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(y)
    weights = np.ones(n) if weights is None else np.asarray(weights, dtype=float)
    best = None
    for k in range(angles):
        th = np.pi * 2.0 * k / angles
        u = np.array([np.cos(th), np.sin(th)])
        p = X @ u
        order = np.argsort(p, kind="stable")
        ps = p[order]
        ys = y[order]
        ws = weights[order]
        # threshold below all points, between consecutive points, above all;
        # points strictly above the cut are called positive
        pos_left = np.concatenate([[0.0], np.cumsum(ws * (ys > 0))])
        neg_right = np.concatenate([np.cumsum((ws * (ys < 0))[::-1])[::-1], [0.0]])
        cost = pos_left + neg_right
        err_left = np.concatenate([[0], np.cumsum(ys > 0)])
        err_right = np.concatenate([np.cumsum((ys < 0)[::-1])[::-1], [0]])
        i = int(np.argmin(cost))
        if i == 0:
            thr = ps[0] - 1.0
        elif i == n:
            thr = ps[-1] + 1.0
        else:
            thr = (ps[i - 1] + ps[i]) / 2.0
        gap = (ps[i] - ps[i - 1]) if 0 < i < n else 0.0
        key = (float(cost[i]), int(err_left[i] + err_right[i]), -gap)
        if best is None or key < best[0]:
            best = (key, u, -thr)
    key, w, b = best
    return w, b, key[0]
