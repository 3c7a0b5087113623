"""Portable scalar backend: one element at a time, plain Python loops.

This backend defines the reference arithmetic. Every kernel accumulates and
evaluates transcendentals in float64 and rounds to the model precision
exactly once per stored element; the vectorized backend performs the same
operations in the same order, so the two agree bit for bit. Keep the two
modules textually parallel when changing either.

No kernel allocates, locks, or performs I/O. Dimension checks are `assert`
statements, compiled out under `python -O`; release-path validity is
guaranteed by model-format validation.
"""
from __future__ import annotations

import math

KIND = "scalar"


def _sigmoid64(v: float) -> float:
    # branch keeps exp() in (0, 1]: total for any finite input
    if v >= 0.0:
        return 1.0 / (1.0 + math.exp(-v))
    t = math.exp(v)
    return t / (1.0 + t)


def _exp64(v: float) -> float:
    # math.exp raises on overflow; the kernel contract wants +inf
    try:
        return math.exp(v)
    except OverflowError:
        return math.inf


def affine_transform(W, x, b, out):
    """out[i] = b[i] + sum_j W[i, j] * x[j], float64 accumulation."""
    assert W.shape == (out.shape[0], x.shape[0]) and b.shape == out.shape
    rows, cols = W.shape
    for i in range(rows):
        acc = float(b[i])
        for j in range(cols):
            acc += float(W[i, j]) * float(x[j])
        out[i] = acc


def matvec_accumulate(W, x, out):
    """out[i] += sum_j W[i, j] * x[j], rounding once on store."""
    assert W.shape == (out.shape[0], x.shape[0])
    rows, cols = W.shape
    for i in range(rows):
        acc = float(out[i])
        for j in range(cols):
            acc += float(W[i, j]) * float(x[j])
        out[i] = acc


def hadamard(a, b, out):
    """out[i] = a[i] * b[i] in the model precision."""
    assert a.shape == b.shape == out.shape
    for i in range(a.shape[0]):
        out[i] = a[i] * b[i]


def tanh_map(x, out):
    assert x.shape == out.shape
    for i in range(x.shape[0]):
        out[i] = math.tanh(float(x[i]))


def sigmoid_map(x, out):
    assert x.shape == out.shape
    for i in range(x.shape[0]):
        out[i] = _sigmoid64(float(x[i]))


def relu_map(x, out):
    assert x.shape == out.shape
    for i in range(x.shape[0]):
        v = x[i]
        out[i] = v if v > 0.0 else 0.0


def exp_map(x, out):
    assert x.shape == out.shape
    for i in range(x.shape[0]):
        out[i] = _exp64(float(x[i]))


def softmax_map(x, out):
    """Max-subtracted softmax; exp recomputed to avoid scratch storage."""
    assert x.shape == out.shape
    n = x.shape[0]
    m = float(x[0])
    for i in range(1, n):
        v = float(x[i])
        if v > m:
            m = v
    s = 0.0
    for i in range(n):
        s += math.exp(float(x[i]) - m)
    for i in range(n):
        out[i] = math.exp(float(x[i]) - m) / s


def conv1d_step(W, b, hist, head, dilation, x, out):
    """Push x into the ring buffer, then evaluate the causal dilated taps.

    W is [tap][out][in] with tap 0 multiplying the current frame; the ring
    holds the last (K-1)*dilation + 1 frames.
    """
    assert W.shape[2] == x.shape[0] and W.shape[1] == out.shape[0]
    cap = hist.shape[0]
    pos = int(head[0])
    for j in range(x.shape[0]):
        hist[pos, j] = x[j]
    taps, rows, cols = W.shape
    for o in range(rows):
        acc = float(b[o])
        for k in range(taps):
            row = (pos - k * dilation) % cap
            for j in range(cols):
                acc += float(W[k, o, j]) * float(hist[row, j])
        out[o] = acc
    head[0] = (pos + 1) % cap


def lstm_step(Wx, Uh, bias, h, c, pre, x, out):
    """One recurrence step; gate blocks ordered (input, forget, cell, output)."""
    hidden = h.shape[0]
    assert Wx.shape == (4 * hidden, x.shape[0]) and Uh.shape == (4 * hidden, hidden)
    affine_transform(Wx, x, bias, pre)
    matvec_accumulate(Uh, h, pre)
    for j in range(hidden):
        gi = _sigmoid64(float(pre[j]))
        gf = _sigmoid64(float(pre[hidden + j]))
        gc = math.tanh(float(pre[2 * hidden + j]))
        go = _sigmoid64(float(pre[3 * hidden + j]))
        c[j] = gf * float(c[j]) + gi * gc
        h[j] = go * math.tanh(float(c[j]))
        out[j] = h[j]


def gru_step(Wx, Uh, b_in, b_rec, h, sx, sh, x, out):
    """One recurrence step, reset-after variant; gates ordered (z, r, new)."""
    hidden = h.shape[0]
    assert Wx.shape == (3 * hidden, x.shape[0]) and Uh.shape == (3 * hidden, hidden)
    affine_transform(Wx, x, b_in, sx)
    affine_transform(Uh, h, b_rec, sh)
    for j in range(hidden):
        z = _sigmoid64(float(sx[j]) + float(sh[j]))
        r = _sigmoid64(float(sx[hidden + j]) + float(sh[hidden + j]))
        hh = math.tanh(float(sx[2 * hidden + j]) + r * float(sh[2 * hidden + j]))
        h[j] = z * float(h[j]) + (1.0 - z) * hh
        out[j] = h[j]


MAP_UNARY = {
    "tanh": tanh_map,
    "sigmoid": sigmoid_map,
    "relu": relu_map,
    "exp": exp_map,
}


def map_unary(kind, x, out):
    MAP_UNARY[kind](x, out)
