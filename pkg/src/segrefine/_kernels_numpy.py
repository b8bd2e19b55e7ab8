"""Pure-numpy implementations of the hot kernels.

Convolutions are im2col + BLAS matmul; the exact Euclidean distance
transform is delegated to scipy. Selected via SEGREFINE_BACKEND=numpy,
or automatically when numba is unavailable.
"""

import numpy as np
from scipy import ndimage


def _im2col(xp, kh, kw, stride, out_h, out_w):
    """Build the [Ci*kh*kw, N*out_h*out_w] patch matrix by block copies."""
    n, ci, _, _ = xp.shape
    col = np.empty((ci * kh * kw, n * out_h * out_w))
    k = 0
    for c in range(ci):
        for dh in range(kh):
            for dw in range(kw):
                xs = xp[:, c,
                        dh:dh + (out_h - 1) * stride + 1:stride,
                        dw:dw + (out_w - 1) * stride + 1:stride]
                col[k] = xs.reshape(-1)
                k += 1
    return col


def conv2d_forward(x, w, stride, pad):
    n, ci, h, wd = x.shape
    co, _, kh, kw = w.shape
    xp = np.pad(x, ((0, 0), (0, 0), (pad, pad), (pad, pad))) if pad else x
    out_h = (h + 2 * pad - kh) // stride + 1
    out_w = (wd + 2 * pad - kw) // stride + 1
    col = _im2col(xp, kh, kw, stride, out_h, out_w)
    y = w.reshape(co, -1) @ col
    return np.ascontiguousarray(y.reshape(co, n, out_h, out_w).transpose(1, 0, 2, 3))


def conv2d_grad_input(gy, w, stride, pad, h, wd):
    n, co, out_h, out_w = gy.shape
    _, ci, kh, kw = w.shape
    gcol = w.reshape(co, -1).T @ gy.transpose(1, 0, 2, 3).reshape(co, -1)
    gxp = np.zeros((n, ci, h + 2 * pad, wd + 2 * pad))
    k = 0
    for c in range(ci):
        for dh in range(kh):
            for dw in range(kw):
                gxp[:, c,
                    dh:dh + (out_h - 1) * stride + 1:stride,
                    dw:dw + (out_w - 1) * stride + 1:stride] += \
                    gcol[k].reshape(n, out_h, out_w)
                k += 1
    if pad:
        return np.ascontiguousarray(gxp[:, :, pad:pad + h, pad:pad + wd])
    return gxp


def conv2d_grad_weight(gy, x, stride, pad, kh, kw):
    n, ci, h, wd = x.shape
    _, co, out_h, out_w = gy.shape
    xp = np.pad(x, ((0, 0), (0, 0), (pad, pad), (pad, pad))) if pad else x
    col = _im2col(xp, kh, kw, stride, out_h, out_w)
    gw = gy.transpose(1, 0, 2, 3).reshape(co, -1) @ col.T
    return gw.reshape(co, ci, kh, kw)


def distance_inside(mask_padded):
    """Euclidean distance of nonzero pixels to the nearest zero pixel."""
    return ndimage.distance_transform_edt(mask_padded)
