"""Pure-Python versions of the compiled kernels.

Same signatures and in-place semantics as ``_ckernels``; used when the
extension is not built or ``PLATEAU_PURE_PYTHON`` is set.
"""

import numpy as np

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)


def wht_inplace(a):
    vals = a.tolist()
    size = len(vals)
    h = 1
    while h < size:
        for i in range(0, size, 2 * h):
            for j in range(i, i + h):
                x = vals[j]
                y = vals[j + h]
                vals[j] = x + y
                vals[j + h] = x - y
        h *= 2
    a[:] = vals


def mobius_inplace(a):
    vals = a.tolist()
    size = len(vals)
    h = 1
    while h < size:
        for i in range(0, size, 2 * h):
            for j in range(i, i + h):
                vals[j + h] ^= vals[j]
        h *= 2
    a[:] = vals


def matmul_checked(a, b):
    if a.shape[1] != b.shape[0]:
        raise ValueError("shape mismatch")
    left = a.tolist()
    cols = b.T.tolist()
    out = []
    for row in left:
        out_row = []
        for col in cols:
            acc = sum(x * y for x, y in zip(row, col) if x)
            if acc > INT64_MAX or acc < INT64_MIN:
                raise OverflowError("int64 overflow in matrix product")
            out_row.append(acc)
        out.append(out_row)
    return np.array(out, dtype=np.int64).reshape(a.shape[0], b.shape[1])
