"""Streaming layers: one frame per call, explicit resettable state.

A layer owns all of its memory (weights, state, gate scratch, output
buffer), allocated at construction and never after. `forward(x, out)` writes
one output frame; passing no `out` reuses the layer-owned buffer, which stays
valid until the next call. Instances are exclusively owned by one execution
context at a time; there is no internal synchronization.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .buffers import new_index, new_mat, new_tensor3, new_vec

ACTIVATION_KINDS = ("tanh", "relu", "sigmoid", "softmax")
WEIGHTED_KINDS = ("dense", "conv1d", "lstm", "gru")
LAYER_KINDS = WEIGHTED_KINDS + ACTIVATION_KINDS

LSTM_GATES = 4  # input, forget, cell, output (exporter framework order)
GRU_GATES = 3  # update, reset, new


@dataclass(frozen=True)
class LayerDesc:
    """Architecture-level description of one layer (no weights)."""

    kind: str
    in_size: int
    out_size: int
    kernel_size: int | None = None
    dilation: int | None = None

    def __str__(self):
        if self.kind == "conv1d":
            return (f"conv1d {self.in_size}->{self.out_size} "
                    f"k={self.kernel_size} d={self.dilation}")
        return f"{self.kind} {self.in_size}->{self.out_size}"


def weight_shapes(kind: str, in_size: int, out_size: int,
                  kernel_size: int | None = None) -> dict[str, tuple[int, ...]]:
    """Normalized (in-memory) weight array shapes per layer kind."""
    if kind == "dense":
        return {"kernel": (out_size, in_size), "bias": (out_size,)}
    if kind == "conv1d":
        return {"kernel": (kernel_size, out_size, in_size), "bias": (out_size,)}
    if kind == "lstm":
        return {"kernel": (LSTM_GATES * out_size, in_size),
                "recurrent_kernel": (LSTM_GATES * out_size, out_size),
                "bias": (LSTM_GATES * out_size,)}
    if kind == "gru":
        return {"kernel": (GRU_GATES * out_size, in_size),
                "recurrent_kernel": (GRU_GATES * out_size, out_size),
                "bias": (GRU_GATES * out_size,),
                "bias_recurrent": (GRU_GATES * out_size,)}
    if kind in ACTIVATION_KINDS:
        return {}
    raise ValueError(f"unknown layer kind {kind!r}")


class DenseLayer:
    kind = "dense"
    stateful = False

    def __init__(self, in_size: int, out_size: int, dtype, backend):
        self.in_size = in_size
        self.out_size = out_size
        self.backend = backend
        self.W = new_mat(out_size, in_size, dtype)
        self.b = new_vec(out_size, dtype)
        self.out = new_vec(out_size, dtype)
        self._affine = backend.affine_transform

    def install(self, weights):
        np.copyto(self.W, weights["kernel"])
        np.copyto(self.b, weights["bias"])

    def forward(self, x, out=None):
        out = self.out if out is None else out
        assert x.shape[0] == self.in_size and out.shape[0] == self.out_size
        self._affine(self.W, x, self.b, out)
        return out

    def reset(self):
        pass


class Conv1DLayer:
    """Causal dilated convolution, stride 1, streaming via a ring buffer."""

    kind = "conv1d"
    stateful = True

    def __init__(self, in_size: int, out_size: int, kernel_size: int,
                 dilation: int, dtype, backend):
        if kernel_size < 1 or dilation < 1:
            raise ValueError("kernel_size and dilation must be >= 1")
        self.in_size = in_size
        self.out_size = out_size
        self.kernel_size = kernel_size
        self.dilation = dilation
        self.backend = backend
        # receptive field; capacity fixed for the layer's lifetime
        capacity = (kernel_size - 1) * dilation + 1
        self.W = new_tensor3(kernel_size, out_size, in_size, dtype)
        self.b = new_vec(out_size, dtype)
        self.history = new_mat(capacity, in_size, dtype)
        self.head = new_index()
        self.out = new_vec(out_size, dtype)
        self._step = backend.conv1d_step

    def install(self, weights):
        np.copyto(self.W, weights["kernel"])
        np.copyto(self.b, weights["bias"])

    def forward(self, x, out=None):
        out = self.out if out is None else out
        assert x.shape[0] == self.in_size and out.shape[0] == self.out_size
        self._step(self.W, self.b, self.history, self.head, self.dilation, x, out)
        return out

    def reset(self):
        self.history.fill(0)
        self.head[0] = 0


class LSTMLayer:
    kind = "lstm"
    stateful = True

    def __init__(self, in_size: int, hidden: int, dtype, backend):
        self.in_size = in_size
        self.out_size = hidden
        self.backend = backend
        self.Wx = new_mat(LSTM_GATES * hidden, in_size, dtype)
        self.Uh = new_mat(LSTM_GATES * hidden, hidden, dtype)
        self.bias = new_vec(LSTM_GATES * hidden, dtype)
        self.h = new_vec(hidden, dtype)
        self.c = new_vec(hidden, dtype)
        self.pre = new_vec(LSTM_GATES * hidden, dtype)  # gate scratch
        self.out = new_vec(hidden, dtype)
        self._step = backend.lstm_step

    def install(self, weights):
        np.copyto(self.Wx, weights["kernel"])
        np.copyto(self.Uh, weights["recurrent_kernel"])
        np.copyto(self.bias, weights["bias"])

    def forward(self, x, out=None):
        out = self.out if out is None else out
        assert x.shape[0] == self.in_size and out.shape[0] == self.out_size
        self._step(self.Wx, self.Uh, self.bias, self.h, self.c, self.pre, x, out)
        return out

    def reset(self):
        self.h.fill(0)
        self.c.fill(0)


class GRULayer:
    """Reset-after variant: reset gate applied after the recurrent matvec,
    with a separate recurrent bias (the exporter framework convention)."""

    kind = "gru"
    stateful = True

    def __init__(self, in_size: int, hidden: int, dtype, backend):
        self.in_size = in_size
        self.out_size = hidden
        self.backend = backend
        self.Wx = new_mat(GRU_GATES * hidden, in_size, dtype)
        self.Uh = new_mat(GRU_GATES * hidden, hidden, dtype)
        self.b_in = new_vec(GRU_GATES * hidden, dtype)
        self.b_rec = new_vec(GRU_GATES * hidden, dtype)
        self.h = new_vec(hidden, dtype)
        self.sx = new_vec(GRU_GATES * hidden, dtype)  # gate scratch
        self.sh = new_vec(GRU_GATES * hidden, dtype)
        self.out = new_vec(hidden, dtype)
        self._step = backend.gru_step

    def install(self, weights):
        np.copyto(self.Wx, weights["kernel"])
        np.copyto(self.Uh, weights["recurrent_kernel"])
        np.copyto(self.b_in, weights["bias"])
        np.copyto(self.b_rec, weights["bias_recurrent"])

    def forward(self, x, out=None):
        out = self.out if out is None else out
        assert x.shape[0] == self.in_size and out.shape[0] == self.out_size
        self._step(self.Wx, self.Uh, self.b_in, self.b_rec, self.h,
                   self.sx, self.sh, x, out)
        return out

    def reset(self):
        self.h.fill(0)


class ActivationLayer:
    stateful = False

    def __init__(self, kind: str, size: int, dtype, backend):
        if kind not in ACTIVATION_KINDS:
            raise ValueError(f"unknown activation {kind!r}")
        self.kind = kind
        self.in_size = size
        self.out_size = size
        self.backend = backend
        self.out = new_vec(size, dtype)
        self._fn = backend.softmax_map if kind == "softmax" else backend.MAP_UNARY[kind]

    def install(self, weights):
        assert not weights

    def forward(self, x, out=None):
        out = self.out if out is None else out
        assert x.shape[0] == self.in_size and out.shape[0] == self.out_size
        self._fn(x, out)
        return out

    def reset(self):
        pass


def layer_reset(layer) -> None:
    """Zero all recurrent/history state; stateless layers are a no-op."""
    layer.reset()


def build_layer(desc: LayerDesc, dtype, backend):
    if desc.kind == "dense":
        return DenseLayer(desc.in_size, desc.out_size, dtype, backend)
    if desc.kind == "conv1d":
        return Conv1DLayer(desc.in_size, desc.out_size, desc.kernel_size,
                           desc.dilation, dtype, backend)
    if desc.kind == "lstm":
        return LSTMLayer(desc.in_size, desc.out_size, dtype, backend)
    if desc.kind == "gru":
        return GRULayer(desc.in_size, desc.out_size, dtype, backend)
    if desc.kind in ACTIVATION_KINDS:
        return ActivationLayer(desc.kind, desc.in_size, dtype, backend)
    raise ValueError(f"unknown layer kind {desc.kind!r}")


def expand_layers(spec) -> tuple[LayerDesc, ...]:
    """Layer chain of a model spec with fused activation fields expanded
    into standalone activation layers."""
    descs = []
    for layer in spec.layers:
        descs.append(LayerDesc(layer.kind, layer.in_size, layer.out_size,
                               layer.kernel_size, layer.dilation))
        if layer.activation is not None:
            descs.append(LayerDesc(layer.activation, layer.out_size,
                                   layer.out_size))
    return tuple(descs)


def build_chain(spec, dtype, backend) -> list:
    """Instantiate the expanded layer chain and install its weights."""
    chain = []
    for layer in spec.layers:
        desc = LayerDesc(layer.kind, layer.in_size, layer.out_size,
                         layer.kernel_size, layer.dilation)
        built = build_layer(desc, dtype, backend)
        built.install(layer.weights)
        chain.append(built)
        if layer.activation is not None:
            chain.append(ActivationLayer(layer.activation, layer.out_size,
                                         dtype, backend))
    return chain
