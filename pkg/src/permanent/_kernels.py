"""Inner enumeration kernels for the three permanent algorithms.

Each kernel is written once as plain Python over NumPy arrays and runs in
two modes: interpreted (cheap for small matrices, no JIT imports) or
compiled with numba for the exponential sizes.  The integer kernels use
pre-checked 64-bit arithmetic: every add/multiply is range-tested before
it executes, so behaviour is identical in both modes and overflow is
reported, never wrapped.  On the first detected overflow a kernel returns
``(0, True)``.

Glynn kernels return the raw accumulator; the caller divides by the
normalization factor.
"""
from __future__ import annotations

import numpy as np

from .core import INT64_MAX, INT64_MIN

_MAX = INT64_MAX
_MIN = INT64_MIN


# --------------------------------------------------------------------------
# combinatoric: depth-first walk over m-permutations of the n columns
# --------------------------------------------------------------------------

def comb_dfs(a):
    m, n = a.shape
    zero = a[0, 0] - a[0, 0]
    choice = np.full(m, -1, np.int64)
    prod = np.empty(m + 1, a.dtype)
    prod[0] = zero + 1
    used = np.zeros(n, np.bool_)
    total = zero
    d = 0
    while d >= 0:
        j = choice[d]
        if j >= 0:
            used[j] = False
        j += 1
        while j < n and used[j]:
            j += 1
        if j >= n:
            choice[d] = -1
            d -= 1
            continue
        choice[d] = j
        p = prod[d] * a[d, j]
        if d == m - 1:
            total = total + p
        elif p != zero:  # a zero partial product contributes nothing
            used[j] = True
            prod[d + 1] = p
            d += 1
    return total


def comb_dfs_int(a):
    m, n = a.shape
    choice = np.full(m, -1, np.int64)
    prod = np.empty(m + 1, np.int64)
    prod[0] = 1
    used = np.zeros(n, np.bool_)
    total = 0
    d = 0
    while d >= 0:
        j = choice[d]
        if j >= 0:
            used[j] = False
        j += 1
        while j < n and used[j]:
            j += 1
        if j >= n:
            choice[d] = -1
            d -= 1
            continue
        choice[d] = j
        x = prod[d]
        y = a[d, j]
        if x != 0 and y != 0:
            if x == _MIN or y == _MIN:
                if x != 1 and y != 1:
                    return 0, True
            elif x > 0:
                if y > 0:
                    if x > _MAX // y:
                        return 0, True
                elif y < (_MIN + x - 1) // x:
                    return 0, True
            elif y > 0:
                if x < (_MIN + y - 1) // y:
                    return 0, True
            elif y < -(_MAX // -x):
                return 0, True
        p = x * y
        if d == m - 1:
            if p >= 0:
                if total > _MAX - p:
                    return 0, True
            elif total < _MIN - p:
                return 0, True
            total = total + p
        elif p != 0:
            used[j] = True
            prod[d + 1] = p
            d += 1
    return total, False


# --------------------------------------------------------------------------
# Ryser, square: Gray walk over column subsets with running row sums
# --------------------------------------------------------------------------

def ryser_sq(a):
    m, n = a.shape
    zero = a[0, 0] - a[0, 0]
    rowsum = np.zeros(m, a.dtype)
    total = zero
    neg = False
    steps = (1 << n) - 1
    for k in range(1, steps + 1):
        kk = k
        t = 0
        while kk & 1 == 0:
            kk >>= 1
            t += 1
        g = k ^ (k >> 1)
        if (g >> t) & 1:
            for i in range(m):
                rowsum[i] = rowsum[i] + a[i, t]
        else:
            for i in range(m):
                rowsum[i] = rowsum[i] - a[i, t]
        p = zero + 1
        for i in range(m):
            p = p * rowsum[i]
        neg = not neg
        if neg:
            total = total - p
        else:
            total = total + p
    if n & 1:
        total = -total
    return total


def ryser_sq_int(a):
    m, n = a.shape
    rowsum = np.zeros(m, np.int64)
    total = 0
    neg = False
    steps = (1 << n) - 1
    for k in range(1, steps + 1):
        kk = k
        t = 0
        while kk & 1 == 0:
            kk >>= 1
            t += 1
        g = k ^ (k >> 1)
        if (g >> t) & 1:
            for i in range(m):
                y = a[i, t]
                if y >= 0:
                    if rowsum[i] > _MAX - y:
                        return 0, True
                elif rowsum[i] < _MIN - y:
                    return 0, True
                rowsum[i] = rowsum[i] + y
        else:
            for i in range(m):
                y = a[i, t]
                if y < 0:
                    if rowsum[i] > _MAX + y:
                        return 0, True
                elif rowsum[i] < _MIN + y:
                    return 0, True
                rowsum[i] = rowsum[i] - y
        p = 1
        for i in range(m):
            x = p
            y = rowsum[i]
            if x == 0 or y == 0:
                p = 0
                break
            if x == _MIN or y == _MIN:
                if x != 1 and y != 1:
                    return 0, True
            elif x > 0:
                if y > 0:
                    if x > _MAX // y:
                        return 0, True
                elif y < (_MIN + x - 1) // x:
                    return 0, True
            elif y > 0:
                if x < (_MIN + y - 1) // y:
                    return 0, True
            elif y < -(_MAX // -x):
                return 0, True
            p = x * y
        neg = not neg
        if neg:
            if p <= 0:
                if total > _MAX + p:
                    return 0, True
            elif total < _MIN + p:
                return 0, True
            total = total - p
        else:
            if p >= 0:
                if total > _MAX - p:
                    return 0, True
            elif total < _MIN - p:
                return 0, True
            total = total + p
    if n & 1:
        total = -total
    return total, False


# --------------------------------------------------------------------------
# Ryser, rectangular: per subset size, lexicographic combinations with
# suffix-incremental row sums; w[s] is the signed binomial weight of size s
# --------------------------------------------------------------------------

def ryser_rect(a, w):
    m, n = a.shape
    zero = a[0, 0] - a[0, 0]
    comb = np.empty(m, np.int64)
    rowsum = np.empty(m, a.dtype)
    total = zero
    for s in range(m, 0, -1):
        for q in range(s):
            comb[q] = q
        for i in range(m):
            acc = zero
            for q in range(s):
                acc = acc + a[i, comb[q]]
            rowsum[i] = acc
        size_sum = zero
        while True:
            p = zero + 1
            for i in range(m):
                p = p * rowsum[i]
            size_sum = size_sum + p
            pos = s - 1
            while pos >= 0 and comb[pos] == n - s + pos:
                pos -= 1
            if pos < 0:
                break
            for q in range(pos, s):
                c = comb[q]
                for i in range(m):
                    rowsum[i] = rowsum[i] - a[i, c]
            v = comb[pos] + 1
            for q in range(pos, s):
                comb[q] = v + (q - pos)
                c = comb[q]
                for i in range(m):
                    rowsum[i] = rowsum[i] + a[i, c]
        total = total + w[s] * size_sum
    return total


def ryser_rect_int(a, w):
    m, n = a.shape
    comb = np.empty(m, np.int64)
    rowsum = np.empty(m, np.int64)
    total = 0
    for s in range(m, 0, -1):
        for q in range(s):
            comb[q] = q
        for i in range(m):
            acc = 0
            for q in range(s):
                y = a[i, comb[q]]
                if y >= 0:
                    if acc > _MAX - y:
                        return 0, True
                elif acc < _MIN - y:
                    return 0, True
                acc = acc + y
            rowsum[i] = acc
        size_sum = 0
        while True:
            p = 1
            for i in range(m):
                x = p
                y = rowsum[i]
                if x == 0 or y == 0:
                    p = 0
                    break
                if x == _MIN or y == _MIN:
                    if x != 1 and y != 1:
                        return 0, True
                elif x > 0:
                    if y > 0:
                        if x > _MAX // y:
                            return 0, True
                    elif y < (_MIN + x - 1) // x:
                        return 0, True
                elif y > 0:
                    if x < (_MIN + y - 1) // y:
                        return 0, True
                elif y < -(_MAX // -x):
                    return 0, True
                p = x * y
            if p >= 0:
                if size_sum > _MAX - p:
                    return 0, True
            elif size_sum < _MIN - p:
                return 0, True
            size_sum = size_sum + p
            pos = s - 1
            while pos >= 0 and comb[pos] == n - s + pos:
                pos -= 1
            if pos < 0:
                break
            for q in range(pos, s):
                c = comb[q]
                for i in range(m):
                    y = a[i, c]
                    if y < 0:
                        if rowsum[i] > _MAX + y:
                            return 0, True
                    elif rowsum[i] < _MIN + y:
                        return 0, True
                    rowsum[i] = rowsum[i] - y
            v = comb[pos] + 1
            for q in range(pos, s):
                comb[q] = v + (q - pos)
                c = comb[q]
                for i in range(m):
                    y = a[i, c]
                    if y >= 0:
                        if rowsum[i] > _MAX - y:
                            return 0, True
                    elif rowsum[i] < _MIN - y:
                        return 0, True
                    rowsum[i] = rowsum[i] + y
        x = w[s]
        y = size_sum
        if x != 0 and y != 0:
            if x == _MIN or y == _MIN:
                if x != 1 and y != 1:
                    return 0, True
            elif x > 0:
                if y > 0:
                    if x > _MAX // y:
                        return 0, True
                elif y < (_MIN + x - 1) // x:
                    return 0, True
            elif y > 0:
                if x < (_MIN + y - 1) // y:
                    return 0, True
            elif y < -(_MAX // -x):
                return 0, True
        p = x * y
        if p >= 0:
            if total > _MAX - p:
                return 0, True
        elif total < _MIN - p:
            return 0, True
        total = total + p
    return total, False


# --------------------------------------------------------------------------
# Glynn: Gray walk over sign vectors with running weighted column sums.
# Square form; the first sign is pinned, giving 2^(n-1) vectors.
# --------------------------------------------------------------------------

def glynn_sq(a):
    m, n = a.shape
    zero = a[0, 0] - a[0, 0]
    colsum = np.empty(n, a.dtype)
    for j in range(n):
        acc = zero
        for i in range(m):
            acc = acc + a[i, j]
        colsum[j] = acc
    total = zero + 1
    for j in range(n):
        total = total * colsum[j]
    neg = False
    steps = (1 << (n - 1)) - 1
    for k in range(1, steps + 1):
        kk = k
        t = 0
        while kk & 1 == 0:
            kk >>= 1
            t += 1
        i = n - 1 - t
        g = k ^ (k >> 1)
        if (g >> t) & 1:
            for j in range(n):
                colsum[j] = colsum[j] - (a[i, j] + a[i, j])
        else:
            for j in range(n):
                colsum[j] = colsum[j] + (a[i, j] + a[i, j])
        p = zero + 1
        for j in range(n):
            p = p * colsum[j]
        neg = not neg
        if neg:
            total = total - p
        else:
            total = total + p
    return total


def glynn_sq_int(a):
    m, n = a.shape
    colsum = np.empty(n, np.int64)
    for j in range(n):
        acc = 0
        for i in range(m):
            y = a[i, j]
            if y >= 0:
                if acc > _MAX - y:
                    return 0, True
            elif acc < _MIN - y:
                return 0, True
            acc = acc + y
        colsum[j] = acc
    total = 1
    for j in range(n):
        x = total
        y = colsum[j]
        if x == 0 or y == 0:
            total = 0
            break
        if x == _MIN or y == _MIN:
            if x != 1 and y != 1:
                return 0, True
        elif x > 0:
            if y > 0:
                if x > _MAX // y:
                    return 0, True
            elif y < (_MIN + x - 1) // x:
                return 0, True
        elif y > 0:
            if x < (_MIN + y - 1) // y:
                return 0, True
        elif y < -(_MAX // -x):
            return 0, True
        total = x * y
    neg = False
    steps = (1 << (n - 1)) - 1
    for k in range(1, steps + 1):
        kk = k
        t = 0
        while kk & 1 == 0:
            kk >>= 1
            t += 1
        i = n - 1 - t
        g = k ^ (k >> 1)
        if (g >> t) & 1:
            for j in range(n):
                y = a[i, j]
                if y > 0 and y > _MAX // 2:
                    return 0, True
                if y < 0 and y < (_MIN + 1) // 2:
                    return 0, True
                d2 = y + y
                if d2 < 0:
                    if colsum[j] > _MAX + d2:
                        return 0, True
                elif colsum[j] < _MIN + d2:
                    return 0, True
                colsum[j] = colsum[j] - d2
        else:
            for j in range(n):
                y = a[i, j]
                if y > 0 and y > _MAX // 2:
                    return 0, True
                if y < 0 and y < (_MIN + 1) // 2:
                    return 0, True
                d2 = y + y
                if d2 >= 0:
                    if colsum[j] > _MAX - d2:
                        return 0, True
                elif colsum[j] < _MIN - d2:
                    return 0, True
                colsum[j] = colsum[j] + d2
        p = 1
        for j in range(n):
            x = p
            y = colsum[j]
            if x == 0 or y == 0:
                p = 0
                break
            if x == _MIN or y == _MIN:
                if x != 1 and y != 1:
                    return 0, True
            elif x > 0:
                if y > 0:
                    if x > _MAX // y:
                        return 0, True
                elif y < (_MIN + x - 1) // x:
                    return 0, True
            elif y > 0:
                if x < (_MIN + y - 1) // y:
                    return 0, True
            elif y < -(_MAX // -x):
                return 0, True
            p = x * y
        neg = not neg
        if neg:
            if p <= 0:
                if total > _MAX + p:
                    return 0, True
            elif total < _MIN + p:
                return 0, True
            total = total - p
        else:
            if p >= 0:
                if total > _MAX - p:
                    return 0, True
            elif total < _MIN - p:
                return 0, True
            total = total + p
    return total, False


# --------------------------------------------------------------------------
# Glynn, rectangular: rows m..n-1 are virtual rows of ones, so a flip
# there shifts every column sum by +-2
# --------------------------------------------------------------------------

def glynn_rect(a):
    m, n = a.shape
    zero = a[0, 0] - a[0, 0]
    two = zero + 2
    colsum = np.empty(n, a.dtype)
    pad = zero + (n - m)  # virtual ones rows, all signs +1
    for j in range(n):
        acc = pad
        for i in range(m):
            acc = acc + a[i, j]
        colsum[j] = acc
    total = zero + 1
    for j in range(n):
        total = total * colsum[j]
    neg = False
    steps = (1 << (n - 1)) - 1
    for k in range(1, steps + 1):
        kk = k
        t = 0
        while kk & 1 == 0:
            kk >>= 1
            t += 1
        i = n - 1 - t
        g = k ^ (k >> 1)
        if (g >> t) & 1:
            if i < m:
                for j in range(n):
                    colsum[j] = colsum[j] - (a[i, j] + a[i, j])
            else:
                for j in range(n):
                    colsum[j] = colsum[j] - two
        else:
            if i < m:
                for j in range(n):
                    colsum[j] = colsum[j] + (a[i, j] + a[i, j])
            else:
                for j in range(n):
                    colsum[j] = colsum[j] + two
        p = zero + 1
        for j in range(n):
            p = p * colsum[j]
        neg = not neg
        if neg:
            total = total - p
        else:
            total = total + p
    return total


def glynn_rect_int(a):
    m, n = a.shape
    colsum = np.empty(n, np.int64)
    pad = n - m
    for j in range(n):
        acc = pad
        for i in range(m):
            y = a[i, j]
            if y >= 0:
                if acc > _MAX - y:
                    return 0, True
            elif acc < _MIN - y:
                return 0, True
            acc = acc + y
        colsum[j] = acc
    total = 1
    for j in range(n):
        x = total
        y = colsum[j]
        if x == 0 or y == 0:
            total = 0
            break
        if x == _MIN or y == _MIN:
            if x != 1 and y != 1:
                return 0, True
        elif x > 0:
            if y > 0:
                if x > _MAX // y:
                    return 0, True
            elif y < (_MIN + x - 1) // x:
                return 0, True
        elif y > 0:
            if x < (_MIN + y - 1) // y:
                return 0, True
        elif y < -(_MAX // -x):
            return 0, True
        total = x * y
    neg = False
    steps = (1 << (n - 1)) - 1
    for k in range(1, steps + 1):
        kk = k
        t = 0
        while kk & 1 == 0:
            kk >>= 1
            t += 1
        i = n - 1 - t
        g = k ^ (k >> 1)
        down = ((g >> t) & 1) == 1
        if i < m:
            for j in range(n):
                y = a[i, j]
                if y > 0 and y > _MAX // 2:
                    return 0, True
                if y < 0 and y < (_MIN + 1) // 2:
                    return 0, True
                d2 = y + y
                if down:
                    if d2 < 0:
                        if colsum[j] > _MAX + d2:
                            return 0, True
                    elif colsum[j] < _MIN + d2:
                        return 0, True
                    colsum[j] = colsum[j] - d2
                else:
                    if d2 >= 0:
                        if colsum[j] > _MAX - d2:
                            return 0, True
                    elif colsum[j] < _MIN - d2:
                        return 0, True
                    colsum[j] = colsum[j] + d2
        else:
            for j in range(n):
                if down:
                    if colsum[j] < _MIN + 2:
                        return 0, True
                    colsum[j] = colsum[j] - 2
                else:
                    if colsum[j] > _MAX - 2:
                        return 0, True
                    colsum[j] = colsum[j] + 2
        p = 1
        for j in range(n):
            x = p
            y = colsum[j]
            if x == 0 or y == 0:
                p = 0
                break
            if x == _MIN or y == _MIN:
                if x != 1 and y != 1:
                    return 0, True
            elif x > 0:
                if y > 0:
                    if x > _MAX // y:
                        return 0, True
                elif y < (_MIN + x - 1) // x:
                    return 0, True
            elif y > 0:
                if x < (_MIN + y - 1) // y:
                    return 0, True
            elif y < -(_MAX // -x):
                return 0, True
            p = x * y
        neg = not neg
        if neg:
            if p <= 0:
                if total > _MAX + p:
                    return 0, True
            elif total < _MIN + p:
                return 0, True
            total = total - p
        else:
            if p >= 0:
                if total > _MAX - p:
                    return 0, True
            elif total < _MIN - p:
                return 0, True
            total = total + p
    return total, False


# --------------------------------------------------------------------------
# Lazy JIT: the same functions above, compiled on first use.  Small inputs
# never pay the numba import.
# --------------------------------------------------------------------------

_RAW = {
    f.__name__: f
    for f in (
        comb_dfs, comb_dfs_int,
        ryser_sq, ryser_sq_int,
        ryser_rect, ryser_rect_int,
        glynn_sq, glynn_sq_int,
        glynn_rect, glynn_rect_int,
    )
}
_JITTED: dict = {}


def get_kernel(name: str, compiled: bool):
    """Return the named kernel, JIT-compiling (and caching) if requested."""
    if not compiled:
        return _RAW[name]
    fn = _JITTED.get(name)
    if fn is None:
        import numba

        fn = numba.njit(cache=True)(_RAW[name])
        _JITTED[name] = fn
    return fn
