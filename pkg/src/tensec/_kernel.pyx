# cython: language_level=3
"""Cython build of the integer elimination kernel.

Same fraction-free Bareiss reduction as ``tensec._kernel_py``; entries are
arbitrary-precision Python ints, so Cython only removes interpreter overhead
from the inner loops.  Output must be bit-identical to the Python kernel.
"""

BACKEND = "cython"


def echelon_int(rows, Py_ssize_t ncols):
    """Fraction-free row echelon form; see tensec._kernel_py.echelon_int."""
    cdef list m = [list(row) for row in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef list pivots = []
    cdef list row_r, row_i
    cdef object prev = 1
    cdef object pivot, f

    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if (<list>m[i])[c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        row_r = <list>m[r]
        pivot = row_r[c]
        for i in range(r + 1, nrows):
            row_i = <list>m[i]
            f = row_i[c]
            for j in range(c, ncols):
                row_i[j] = (pivot * row_i[j] - f * row_r[j]) // prev
        prev = pivot
        pivots.append(c)
        r += 1
    return m, pivots
