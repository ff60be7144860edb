"""Hot integer kernels.

Every kernel exists twice: a loop version compiled with numba, and a
vectorised numpy version. ``BACKEND`` names the one bound to the public
names. Set ``OSCOMP_DISABLE_NUMBA=1`` to force the numpy path (also used
automatically when numba cannot be imported).
"""
import os

import numpy as np

_DISABLED = os.environ.get("OSCOMP_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by OSCOMP_DISABLE_NUMBA")
    from numba import njit
except ImportError:  # pragma: no cover - exercised via the env flag in a subprocess
    njit = None

BACKEND = "numba" if njit is not None else "numpy"


# ---------------------------------------------------------------------------
# numerical semigroup membership table


def _membership_mask_loops(gens, size):
    mask = np.zeros(size, dtype=np.bool_)
    if size == 0:
        return mask
    mask[0] = True
    for v in range(1, size):
        for g in gens:
            if g <= v and mask[v - g]:
                mask[v] = True
                break
    return mask


def membership_mask_numpy(gens, size):
    mask = np.zeros(size, dtype=np.bool_)
    if size == 0:
        return mask
    mask[0] = True
    for g in gens:
        # closure under adding multiples of g, by binary doubling of the shift
        step = int(g)
        while step < size:
            mask[step:] |= mask[:-step]
            step *= 2
    return mask


# ---------------------------------------------------------------------------
# sumsets of 0/1 masks (truncated OR-convolution)


def _sumset_loops(a, b, size):
    out = np.zeros(size, dtype=np.bool_)
    for i in range(a.shape[0]):
        if not a[i]:
            continue
        if i >= size:
            break
        for j in range(b.shape[0]):
            if i + j >= size:
                break
            if b[j]:
                out[i + j] = True
    return out


def sumset_numpy(a, b, size):
    if size == 0 or not a.any() or not b.any():
        return np.zeros(size, dtype=np.bool_)
    conv = np.convolve(a.astype(np.int64), b.astype(np.int64))
    out = np.zeros(size, dtype=np.bool_)
    n = min(size, conv.shape[0])
    out[:n] = conv[:n] > 0
    return out


# ---------------------------------------------------------------------------
# smallest k with (k+1)x <= ky in a numerical semigroup (algebraic order)
#
# ``mask`` covers [0, horizon); every value >= horizon is a member.


def _min_k_row_loops(x, ys, kmax, mask, horizon):
    out = np.zeros(ys.shape[0], dtype=np.int64)
    for idx in range(ys.shape[0]):
        y = ys[idx]
        for k in range(1, kmax + 1):
            d = k * y - (k + 1) * x
            if d < 0:
                continue
            if d >= horizon or mask[d]:
                out[idx] = k
                break
    return out


def min_k_row_numpy(x, ys, kmax, mask, horizon):
    ys = np.asarray(ys, dtype=np.int64)
    if ys.shape[0] == 0 or kmax < 1:
        return np.zeros(ys.shape[0], dtype=np.int64)
    ks = np.arange(1, kmax + 1, dtype=np.int64)[:, None]
    d = ks * ys[None, :] - (ks + 1) * x
    inside = np.clip(d, 0, max(horizon - 1, 0))
    lookup = mask[inside] if horizon > 0 else np.zeros(d.shape, dtype=np.bool_)
    ok = (d >= 0) & ((d >= horizon) | lookup)
    found = ok.any(axis=0)
    first = ok.argmax(axis=0) + 1
    return np.where(found, first, 0).astype(np.int64)


# ---------------------------------------------------------------------------
# affine semigroup membership on a box [0, shape) in C order


def _grid_mask_loops(gens, shape):
    d = shape.shape[0]
    total = 1
    for i in range(d):
        total *= shape[i]
    strides = np.ones(d, dtype=np.int64)
    for i in range(d - 2, -1, -1):
        strides[i] = strides[i + 1] * shape[i + 1]
    offsets = np.zeros(gens.shape[0], dtype=np.int64)
    for j in range(gens.shape[0]):
        off = 0
        for i in range(d):
            off += gens[j, i] * strides[i]
        offsets[j] = off
    mask = np.zeros(total, dtype=np.bool_)
    if total == 0:
        return mask
    mask[0] = True
    coord = np.zeros(d, dtype=np.int64)
    for flat in range(1, total):
        # advance the mixed-radix coordinate of ``flat``
        i = d - 1
        coord[i] += 1
        while coord[i] == shape[i]:
            coord[i] = 0
            i -= 1
            coord[i] += 1
        for j in range(gens.shape[0]):
            fits = True
            for t in range(d):
                if gens[j, t] > coord[t]:
                    fits = False
                    break
            if fits and mask[flat - offsets[j]]:
                mask[flat] = True
                break
    return mask


def grid_mask_numpy(gens, shape):
    shape = tuple(int(s) for s in shape)
    grid = np.zeros(shape, dtype=np.bool_)
    if grid.size == 0:
        return grid.reshape(-1)
    grid[(0,) * len(shape)] = True
    for g in gens:
        g = tuple(int(c) for c in g)
        mult = 1
        while all(mult * c < s for c, s in zip(g, shape)):
            dst = tuple(slice(mult * c, None) for c in g)
            src = tuple(slice(0, s - mult * c) for c, s in zip(g, shape))
            grid[dst] |= grid[src]
            mult *= 2
    return grid.reshape(-1)


if njit is not None:
    _membership_mask_nb = njit(cache=True, nogil=True)(_membership_mask_loops)
    _sumset_nb = njit(cache=True, nogil=True)(_sumset_loops)
    _min_k_row_nb = njit(cache=True, nogil=True)(_min_k_row_loops)
    _grid_mask_nb = njit(cache=True, nogil=True)(_grid_mask_loops)

    def membership_mask_numba(gens, size):
        return _membership_mask_nb(np.asarray(gens, dtype=np.int64), int(size))

    def sumset_numba(a, b, size):
        return _sumset_nb(np.asarray(a, dtype=np.bool_), np.asarray(b, dtype=np.bool_), int(size))

    def min_k_row_numba(x, ys, kmax, mask, horizon):
        return _min_k_row_nb(
            int(x), np.asarray(ys, dtype=np.int64), int(kmax), np.asarray(mask, dtype=np.bool_), int(horizon)
        )

    def grid_mask_numba(gens, shape):
        gens = np.asarray(gens, dtype=np.int64).reshape(-1, len(shape))
        return _grid_mask_nb(gens, np.asarray(shape, dtype=np.int64))

    membership_mask = membership_mask_numba
    sumset = sumset_numba
    min_k_row = min_k_row_numba
    grid_mask = grid_mask_numba
else:
    membership_mask_numba = sumset_numba = min_k_row_numba = grid_mask_numba = None
    membership_mask = membership_mask_numpy
    sumset = sumset_numpy
    min_k_row = min_k_row_numpy
    grid_mask = grid_mask_numpy
