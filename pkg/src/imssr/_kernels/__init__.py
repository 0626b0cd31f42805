"""Convolution kernel backend selection.

Two interchangeable backends implement the same three functions:

* ``reference`` — pure numpy (im2col / einsum), works on any float dtype.
* ``compiled``  — Cython extension, float32 only, built by setup.py.

The compiled backend is used when it imported successfully; the environment
variable ``IMSSR_KERNELS`` (``compiled`` | ``reference`` | ``auto``) forces a
choice. Non-float32 inputs always take the reference path, which keeps the
float64 gradient checks independent of the extension.

``benchmarks/bench_kernels.py`` compares the two on the training workload.
"""

import os

import numpy as np

from . import reference

try:
    from . import _convext
except ImportError:
    _convext = None

_choice = os.environ.get("IMSSR_KERNELS", "auto")
if _choice not in ("auto", "compiled", "reference"):
    raise RuntimeError(f"IMSSR_KERNELS must be auto|compiled|reference, got {_choice}")
if _choice == "compiled" and _convext is None:
    raise RuntimeError("IMSSR_KERNELS=compiled but the extension is not built")

_fast = _convext if _choice in ("auto", "compiled") and _convext is not None else None

BACKEND = _fast.BACKEND if _fast is not None else reference.BACKEND


def _use_fast(*arrays):
    return _fast is not None and all(a.dtype == np.float32 for a in arrays)


def conv2d_forward(x, w, stride):
    if _use_fast(x, w):
        return _fast.conv2d_forward(x, w, stride)
    return reference.conv2d_forward(x, w, stride)


def conv2d_weight_grad(x, gy, kh, kw, stride):
    if _use_fast(x, gy):
        return _fast.conv2d_weight_grad(x, gy, kh, kw, stride)
    return reference.conv2d_weight_grad(x, gy, kh, kw, stride)


def conv2d_input_grad(w, gy, h, wd, stride):
    if _use_fast(w, gy):
        return _fast.conv2d_input_grad(w, gy, h, wd, stride)
    return reference.conv2d_input_grad(w, gy, h, wd, stride)
