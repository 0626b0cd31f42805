"""Numpy reference implementation of the 2-d convolution kernels.

Shapes follow the NCHW convention: inputs are (N, C, H, W), weights are
(O, C, KH, KW). Convolutions are valid (no padding) with a single stride
applied to both spatial axes.
"""

import numpy as np

BACKEND = "reference"


def _windows(x, kh, kw, stride):
    # (N, C, OH, OW, KH, KW) view, no copy
    v = np.lib.stride_tricks.sliding_window_view(x, (kh, kw), axis=(2, 3))
    return v[:, :, ::stride, ::stride]


def conv2d_forward(x, w, stride):
    """Valid cross-correlation of x (N,C,H,W) with w (O,C,KH,KW)."""
    n, c, h, wd = x.shape
    o, c2, kh, kw = w.shape
    if c != c2:
        raise ValueError(f"channel mismatch: input has {c}, kernel expects {c2}")
    if h < kh or wd < kw:
        raise ValueError(f"input {h}x{wd} smaller than kernel {kh}x{kw}")
    if kh == stride and kw == stride and h % stride == 0 and wd % stride == 0:
        # non-overlapping patches reduce to one GEMM
        oh, ow = h // stride, wd // stride
        cols = (
            x.reshape(n, c, oh, kh, ow, kw)
            .transpose(0, 2, 4, 1, 3, 5)
            .reshape(n * oh * ow, c * kh * kw)
        )
        y = cols @ w.reshape(o, -1).T
        return np.ascontiguousarray(
            y.reshape(n, oh, ow, o).transpose(0, 3, 1, 2), dtype=x.dtype
        )
    win = _windows(x, kh, kw, stride)
    y = np.einsum("ncijab,ocab->noij", win, w, optimize=True)
    return np.ascontiguousarray(y, dtype=x.dtype)


def conv2d_weight_grad(x, gy, kh, kw, stride):
    """Gradient of the loss w.r.t. the kernel, given output grad gy (N,O,OH,OW)."""
    win = _windows(x, kh, kw, stride)
    gw = np.einsum("ncijab,noij->ocab", win, gy, optimize=True)
    return np.ascontiguousarray(gw, dtype=x.dtype)


def conv2d_input_grad(w, gy, h, wd, stride):
    """Gradient of the loss w.r.t. the input, reconstructed at size (h, wd)."""
    n, o, oh, ow = gy.shape
    _, c, kh, kw = w.shape
    gx = np.zeros((n, c, h, wd), dtype=gy.dtype)
    # scatter each kernel offset back onto the strided input positions
    for a in range(kh):
        for b in range(kw):
            patch = np.einsum("noij,oc->ncij", gy, w[:, :, a, b], optimize=True)
            gx[:, :, a : a + stride * oh : stride, b : b + stride * ow : stride] += patch
    return gx
