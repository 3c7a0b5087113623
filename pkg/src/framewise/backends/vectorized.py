"""Vectorized backend: the scalar kernels compiled with numba.

Same operations in the same order as `scalar.py` (float64 interior, one
rounding per stored element), so results are bit-identical across backends;
LLVM is free to vectorize because no reassociation is required. Keep the two
modules textually parallel when changing either.

Compilation happens per dtype signature; model loading warms every kernel so
nothing compiles on the real-time path.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit

KIND = "vectorized"

_f64 = np.float64


@njit(cache=True)
def _sigmoid64(v):
    if v >= 0.0:
        return 1.0 / (1.0 + math.exp(-v))
    t = math.exp(v)
    return t / (1.0 + t)


@njit(cache=True)
def affine_transform(W, x, b, out):
    for i in range(W.shape[0]):
        acc = _f64(b[i])
        for j in range(W.shape[1]):
            acc += _f64(W[i, j]) * _f64(x[j])
        out[i] = acc


@njit(cache=True)
def matvec_accumulate(W, x, out):
    for i in range(W.shape[0]):
        acc = _f64(out[i])
        for j in range(W.shape[1]):
            acc += _f64(W[i, j]) * _f64(x[j])
        out[i] = acc


@njit(cache=True)
def hadamard(a, b, out):
    for i in range(a.shape[0]):
        out[i] = a[i] * b[i]


@njit(cache=True)
def tanh_map(x, out):
    for i in range(x.shape[0]):
        out[i] = math.tanh(_f64(x[i]))


@njit(cache=True)
def sigmoid_map(x, out):
    for i in range(x.shape[0]):
        out[i] = _sigmoid64(_f64(x[i]))


@njit(cache=True)
def relu_map(x, out):
    for i in range(x.shape[0]):
        v = x[i]
        out[i] = v if v > 0.0 else 0.0


@njit(cache=True)
def exp_map(x, out):
    for i in range(x.shape[0]):
        out[i] = math.exp(_f64(x[i]))


@njit(cache=True)
def softmax_map(x, out):
    n = x.shape[0]
    m = _f64(x[0])
    for i in range(1, n):
        v = _f64(x[i])
        if v > m:
            m = v
    s = 0.0
    for i in range(n):
        s += math.exp(_f64(x[i]) - m)
    for i in range(n):
        out[i] = math.exp(_f64(x[i]) - m) / s


@njit(cache=True)
def conv1d_step(W, b, hist, head, dilation, x, out):
    cap = hist.shape[0]
    pos = head[0]
    for j in range(x.shape[0]):
        hist[pos, j] = x[j]
    taps = W.shape[0]
    for o in range(W.shape[1]):
        acc = _f64(b[o])
        for k in range(taps):
            row = (pos - k * dilation) % cap
            for j in range(W.shape[2]):
                acc += _f64(W[k, o, j]) * _f64(hist[row, j])
        out[o] = acc
    head[0] = (pos + 1) % cap


@njit(cache=True)
def lstm_step(Wx, Uh, bias, h, c, pre, x, out):
    hidden = h.shape[0]
    affine_transform(Wx, x, bias, pre)
    matvec_accumulate(Uh, h, pre)
    for j in range(hidden):
        gi = _sigmoid64(_f64(pre[j]))
        gf = _sigmoid64(_f64(pre[hidden + j]))
        gc = math.tanh(_f64(pre[2 * hidden + j]))
        go = _sigmoid64(_f64(pre[3 * hidden + j]))
        c[j] = gf * _f64(c[j]) + gi * gc
        h[j] = go * math.tanh(_f64(c[j]))
        out[j] = h[j]


@njit(cache=True)
def gru_step(Wx, Uh, b_in, b_rec, h, sx, sh, x, out):
    hidden = h.shape[0]
    affine_transform(Wx, x, b_in, sx)
    affine_transform(Uh, h, b_rec, sh)
    for j in range(hidden):
        z = _sigmoid64(_f64(sx[j]) + _f64(sh[j]))
        r = _sigmoid64(_f64(sx[hidden + j]) + _f64(sh[hidden + j]))
        hh = math.tanh(_f64(sx[2 * hidden + j]) + r * _f64(sh[2 * hidden + j]))
        h[j] = z * _f64(h[j]) + (1.0 - z) * hh
        out[j] = h[j]


MAP_UNARY = {
    "tanh": tanh_map,
    "sigmoid": sigmoid_map,
    "relu": relu_map,
    "exp": exp_map,
}


def map_unary(kind, x, out):
    MAP_UNARY[kind](x, out)
