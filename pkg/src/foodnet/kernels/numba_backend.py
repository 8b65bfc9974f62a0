"""Numba-jitted kernel implementations (the default backend).

Each kernel is an explicit loop nest compiled with ``@njit``; accumulation
happens in float64 scalars/arrays and the thin Python wrappers cast back
to the input dtype. The direct convolution is the literal six-nested-loop
definition, kept independent of the im2col route.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from foodnet.errors import ShapeError


@njit(cache=True)
def _conv2d_direct(x, w, b, stride, pad):
    nn, nc, h, wd = x.shape
    nk, _, kh, kw = w.shape
    oh = (h + 2 * pad - kh) // stride + 1
    ow = (wd + 2 * pad - kw) // stride + 1
    out = np.empty((nn, nk, oh, ow), dtype=np.float64)
    for n in range(nn):
        for k in range(nk):
            for oy in range(oh):
                for ox in range(ow):
                    acc = np.float64(b[k])
                    for c in range(nc):
                        for i in range(kh):
                            hy = oy * stride + i - pad
                            if hy < 0 or hy >= h:
                                continue
                            for j in range(kw):
                                wx = ox * stride + j - pad
                                if wx < 0 or wx >= wd:
                                    continue
                                acc += np.float64(x[n, c, hy, wx]) * np.float64(w[k, c, i, j])
                    out[n, k, oy, ox] = acc
    return out


@njit(cache=True)
def _conv2d_direct_dx(dout, w, nn, nc, h, wd, stride, pad):
    nk, _, kh, kw = w.shape
    oh, ow = dout.shape[2], dout.shape[3]
    dx = np.zeros((nn, nc, h, wd), dtype=np.float64)
    for n in range(nn):
        for k in range(nk):
            for oy in range(oh):
                for ox in range(ow):
                    g = np.float64(dout[n, k, oy, ox])
                    for c in range(nc):
                        for i in range(kh):
                            hy = oy * stride + i - pad
                            if hy < 0 or hy >= h:
                                continue
                            for j in range(kw):
                                wx = ox * stride + j - pad
                                if wx < 0 or wx >= wd:
                                    continue
                                dx[n, c, hy, wx] += g * np.float64(w[k, c, i, j])
    return dx


@njit(cache=True)
def _conv2d_direct_dwdb(dout, x, nk, kh, kw, stride, pad):
    nn, nc, h, wd = x.shape
    oh, ow = dout.shape[2], dout.shape[3]
    dw = np.zeros((nk, nc, kh, kw), dtype=np.float64)
    db = np.zeros(nk, dtype=np.float64)
    for n in range(nn):
        for k in range(nk):
            for oy in range(oh):
                for ox in range(ow):
                    g = np.float64(dout[n, k, oy, ox])
                    db[k] += g
                    for c in range(nc):
                        for i in range(kh):
                            hy = oy * stride + i - pad
                            if hy < 0 or hy >= h:
                                continue
                            for j in range(kw):
                                wx = ox * stride + j - pad
                                if wx < 0 or wx >= wd:
                                    continue
                                dw[k, c, i, j] += g * np.float64(x[n, c, hy, wx])
    return dw, db


@njit(cache=True)
def _im2col(x, kh, kw, stride, pad, oh, ow):
    nn, nc, h, wd = x.shape
    col = np.zeros((nn * oh * ow, nc * kh * kw), dtype=x.dtype)
    for n in range(nn):
        for oy in range(oh):
            for ox in range(ow):
                row = (n * oh + oy) * ow + ox
                for c in range(nc):
                    base = c * kh * kw
                    for i in range(kh):
                        hy = oy * stride + i - pad
                        if hy < 0 or hy >= h:
                            continue
                        for j in range(kw):
                            wx = ox * stride + j - pad
                            if wx < 0 or wx >= wd:
                                continue
                            col[row, base + i * kw + j] = x[n, c, hy, wx]
    return col


@njit(cache=True)
def _col2im(col, nn, nc, h, wd, kh, kw, stride, pad, oh, ow):
    dx = np.zeros((nn, nc, h, wd), dtype=np.float64)
    for n in range(nn):
        for oy in range(oh):
            for ox in range(ow):
                row = (n * oh + oy) * ow + ox
                for c in range(nc):
                    base = c * kh * kw
                    for i in range(kh):
                        hy = oy * stride + i - pad
                        if hy < 0 or hy >= h:
                            continue
                        for j in range(kw):
                            wx = ox * stride + j - pad
                            if wx < 0 or wx >= wd:
                                continue
                            dx[n, c, hy, wx] += np.float64(col[row, base + i * kw + j])
    return dx


@njit(cache=True)
def _maxpool(x, kernel, stride, pad, oh, ow):
    nn, nc, h, wd = x.shape
    out = np.empty((nn, nc, oh, ow), dtype=x.dtype)
    idx = np.empty((nn, nc, oh, ow), dtype=np.int64)
    for n in range(nn):
        for c in range(nc):
            for oy in range(oh):
                for ox in range(ow):
                    best = -np.inf
                    bi = np.int64(-1)
                    for i in range(kernel):
                        hy = oy * stride + i - pad
                        if hy < 0 or hy >= h:
                            continue
                        for j in range(kernel):
                            wx = ox * stride + j - pad
                            if wx < 0 or wx >= wd:
                                continue
                            v = np.float64(x[n, c, hy, wx])
                            if v > best:  # strict > keeps the lowest flat index on ties
                                best = v
                                bi = ((n * nc + c) * h + hy) * wd + wx
                    out[n, c, oy, ox] = best
                    idx[n, c, oy, ox] = bi
    return out, idx


@njit(cache=True)
def _maxpool_dx(dout, idx, nn, nc, h, wd):
    dx = np.zeros(nn * nc * h * wd, dtype=np.float64)
    flat_d = dout.ravel()
    flat_i = idx.ravel()
    for p in range(flat_d.size):
        dx[flat_i[p]] += np.float64(flat_d[p])
    return dx.reshape((nn, nc, h, wd))


@njit(cache=True)
def _avgpool(x, kernel, stride, pad, oh, ow):
    nn, nc, h, wd = x.shape
    out = np.empty((nn, nc, oh, ow), dtype=x.dtype)
    inv = 1.0 / (kernel * kernel)
    for n in range(nn):
        for c in range(nc):
            for oy in range(oh):
                for ox in range(ow):
                    acc = 0.0
                    for i in range(kernel):
                        hy = oy * stride + i - pad
                        if hy < 0 or hy >= h:
                            continue
                        for j in range(kernel):
                            wx = ox * stride + j - pad
                            if wx < 0 or wx >= wd:
                                continue
                            acc += np.float64(x[n, c, hy, wx])
                    out[n, c, oy, ox] = acc * inv
    return out


@njit(cache=True)
def _avgpool_dx(dout, nn, nc, h, wd, kernel, stride, pad, oh, ow):
    dx = np.zeros((nn, nc, h, wd), dtype=np.float64)
    inv = 1.0 / (kernel * kernel)
    for n in range(nn):
        for c in range(nc):
            for oy in range(oh):
                for ox in range(ow):
                    g = np.float64(dout[n, c, oy, ox]) * inv
                    for i in range(kernel):
                        hy = oy * stride + i - pad
                        if hy < 0 or hy >= h:
                            continue
                        for j in range(kernel):
                            wx = ox * stride + j - pad
                            if wx < 0 or wx >= wd:
                                continue
                            dx[n, c, hy, wx] += g
    return dx


def conv2d_direct(x, w, b, stride, pad):
    return _conv2d_direct(x, w, b, stride, pad).astype(x.dtype, copy=False)


def conv2d_direct_dx(dout, w, xshape, stride, pad):
    n, c, h, wd = xshape
    return _conv2d_direct_dx(dout, w, n, c, h, wd, stride, pad).astype(dout.dtype, copy=False)


def conv2d_direct_dwdb(dout, x, kh, kw, stride, pad):
    dw, db = _conv2d_direct_dwdb(dout, x, dout.shape[1], kh, kw, stride, pad)
    return dw.astype(x.dtype, copy=False), db.astype(x.dtype, copy=False)


def im2col(x, kh, kw, stride, pad, oh, ow):
    return _im2col(x, kh, kw, stride, pad, oh, ow)


def col2im(col, xshape, kh, kw, stride, pad, oh, ow):
    n, c, h, wd = xshape
    return _col2im(col, n, c, h, wd, kh, kw, stride, pad, oh, ow).astype(col.dtype, copy=False)


def maxpool(x, kernel, stride, pad, oh, ow):
    out, idx = _maxpool(x, kernel, stride, pad, oh, ow)
    if idx.min() < 0:
        raise ShapeError("max-pool window contains no input cells")
    return out, idx


def maxpool_dx(dout, idx, xshape):
    n, c, h, wd = xshape
    return _maxpool_dx(dout, idx, n, c, h, wd).astype(dout.dtype, copy=False)


def avgpool(x, kernel, stride, pad, oh, ow):
    return _avgpool(x, kernel, stride, pad, oh, ow)


def avgpool_dx(dout, xshape, kernel, stride, pad, oh, ow):
    n, c, h, wd = xshape
    return _avgpool_dx(dout, n, c, h, wd, kernel, stride, pad, oh, ow).astype(
        dout.dtype, copy=False
    )
