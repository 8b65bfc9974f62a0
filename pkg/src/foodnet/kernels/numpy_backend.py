"""Pure-numpy kernel implementations (the fallback backend).

The direct-convolution route here deliberately shares no code with the
im2col route: it slides strided views per kernel position and contracts
over channels with einsum, while im2col packs one big patch matrix for a
single GEMM in the caller. Reductions accumulate in float64 and results
are cast back to the input dtype.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import as_strided

from foodnet.errors import ShapeError


def _windows(xp: np.ndarray, kh: int, kw: int, stride: int, oh: int, ow: int) -> np.ndarray:
    """(N, C, OH, OW, kh, kw) sliding-window view over a padded input."""
    n, c = xp.shape[:2]
    sn, sc, sh, sw = xp.strides
    return as_strided(
        xp,
        shape=(n, c, oh, ow, kh, kw),
        strides=(sn, sc, sh * stride, sw * stride, sh, sw),
        writeable=False,
    )


def _pad_to(x: np.ndarray, pad: int, eh: int, ew: int, value: float) -> np.ndarray:
    """Embed x in an (eh, ew) canvas of ``value`` with ``pad`` leading rows/cols."""
    n, c, h, w = x.shape
    xp = np.full((n, c, eh, ew), value, dtype=x.dtype)
    xp[:, :, pad : pad + h, pad : pad + w] = x
    return xp


def conv2d_direct(x, w, b, stride, pad):
    n, c, h, wd = x.shape
    k, _, kh, kw = w.shape
    oh = (h + 2 * pad - kh) // stride + 1
    ow = (wd + 2 * pad - kw) // stride + 1
    xp = _pad_to(x, pad, h + 2 * pad, wd + 2 * pad, 0.0)
    win = _windows(xp, kh, kw, stride, oh, ow)
    acc = np.zeros((n, k, oh, ow), dtype=np.float64)
    for i in range(kh):
        for j in range(kw):
            acc += np.einsum(
                "nchw,kc->nkhw", win[:, :, :, :, i, j], w[:, :, i, j], dtype=np.float64
            )
    acc += b.astype(np.float64)[None, :, None, None]
    return acc.astype(x.dtype, copy=False)


def conv2d_direct_dx(dout, w, xshape, stride, pad):
    n, c, h, wd = xshape
    k, _, kh, kw = w.shape
    oh, ow = dout.shape[2], dout.shape[3]
    dxp = np.zeros((n, c, h + 2 * pad, wd + 2 * pad), dtype=np.float64)
    for i in range(kh):
        for j in range(kw):
            contrib = np.einsum("nkhw,kc->nchw", dout, w[:, :, i, j], dtype=np.float64)
            dxp[:, :, i : i + stride * oh : stride, j : j + stride * ow : stride] += contrib
    dx = dxp[:, :, pad : pad + h, pad : pad + wd]
    return dx.astype(dout.dtype, copy=False)


def conv2d_direct_dwdb(dout, x, kh, kw, stride, pad):
    n, c, h, wd = x.shape
    k = dout.shape[1]
    oh, ow = dout.shape[2], dout.shape[3]
    xp = _pad_to(x, pad, h + 2 * pad, wd + 2 * pad, 0.0)
    win = _windows(xp, kh, kw, stride, oh, ow)
    dw = np.zeros((k, c, kh, kw), dtype=np.float64)
    for i in range(kh):
        for j in range(kw):
            dw[:, :, i, j] = np.einsum(
                "nkhw,nchw->kc", dout, win[:, :, :, :, i, j], dtype=np.float64
            )
    db = dout.sum(axis=(0, 2, 3), dtype=np.float64)
    return dw.astype(x.dtype, copy=False), db.astype(x.dtype, copy=False)


def im2col(x, kh, kw, stride, pad, oh, ow):
    n, c, h, wd = x.shape
    xp = _pad_to(x, pad, h + 2 * pad, wd + 2 * pad, 0.0) if pad else x
    win = _windows(xp, kh, kw, stride, oh, ow)
    # rows ordered (n, oy, ox), columns ordered (c, i, j)
    return win.transpose(0, 2, 3, 1, 4, 5).reshape(n * oh * ow, c * kh * kw)


def col2im(col, xshape, kh, kw, stride, pad, oh, ow):
    n, c, h, wd = xshape
    cols = col.reshape(n, oh, ow, c, kh, kw).transpose(0, 3, 4, 5, 1, 2)
    dxp = np.zeros((n, c, h + 2 * pad, wd + 2 * pad), dtype=np.float64)
    for i in range(kh):
        for j in range(kw):
            dxp[:, :, i : i + stride * oh : stride, j : j + stride * ow : stride] += cols[
                :, :, i, j
            ]
    dx = dxp[:, :, pad : pad + h, pad : pad + wd]
    return dx.astype(col.dtype, copy=False)


def maxpool(x, kernel, stride, pad, oh, ow):
    n, c, h, wd = x.shape
    eh = max((oh - 1) * stride + kernel, h + 2 * pad)
    ew = max((ow - 1) * stride + kernel, wd + 2 * pad)
    xp = _pad_to(x, pad, eh, ew, -np.inf)
    win = _windows(xp, kernel, kernel, stride, oh, ow)
    flat = win.reshape(n, c, oh, ow, kernel * kernel)
    # argmax takes the first maximum in (i, j) scan order = lowest flat input index
    local = flat.argmax(axis=-1)
    out = np.take_along_axis(flat, local[..., None], axis=-1)[..., 0]
    if np.isneginf(out).any():
        raise ShapeError("max-pool window contains no input cells")
    hy = (np.arange(oh) * stride - pad).reshape(1, 1, oh, 1) + local // kernel
    wx = (np.arange(ow) * stride - pad).reshape(1, 1, 1, ow) + local % kernel
    nn = np.arange(n).reshape(n, 1, 1, 1)
    cc = np.arange(c).reshape(1, c, 1, 1)
    idx = ((nn * c + cc) * h + hy) * wd + wx
    return np.ascontiguousarray(out), idx.astype(np.int64)


def maxpool_dx(dout, idx, xshape):
    dx = np.zeros(int(np.prod(xshape)), dtype=np.float64)
    np.add.at(dx, idx.ravel(), dout.ravel())
    return dx.reshape(xshape).astype(dout.dtype, copy=False)


def avgpool(x, kernel, stride, pad, oh, ow):
    n, c, h, wd = x.shape
    eh = max((oh - 1) * stride + kernel, h + 2 * pad)
    ew = max((ow - 1) * stride + kernel, wd + 2 * pad)
    xp = _pad_to(x, pad, eh, ew, 0.0)
    win = _windows(xp, kernel, kernel, stride, oh, ow)
    out = win.reshape(n, c, oh, ow, kernel * kernel).sum(axis=-1, dtype=np.float64)
    out /= kernel * kernel
    return out.astype(x.dtype, copy=False)


def avgpool_dx(dout, xshape, kernel, stride, pad, oh, ow):
    n, c, h, wd = xshape
    eh = max((oh - 1) * stride + kernel, h + 2 * pad)
    ew = max((ow - 1) * stride + kernel, wd + 2 * pad)
    inv = 1.0 / (kernel * kernel)
    dxp = np.zeros((n, c, eh, ew), dtype=np.float64)
    d = dout.astype(np.float64, copy=False) * inv
    for i in range(kernel):
        for j in range(kernel):
            dxp[:, :, i : i + stride * oh : stride, j : j + stride * ow : stride] += d
    dx = dxp[:, :, pad : pad + h, pad : pad + wd]
    return dx.astype(dout.dtype, copy=False)
