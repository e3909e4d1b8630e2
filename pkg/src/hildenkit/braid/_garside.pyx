# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled left normal form kernel.

Same algorithm and output as ``_garside_py.left_normal_form``: simple braids
are arrangements (``arr[pos]`` is the strand at ``pos``), stored row by row
in one flat int buffer.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free


cdef bint _left_weight(int* a, int* b, int* inv_b, int m) noexcept nogil:
    cdef bint moved = False
    cdef int i, pos, p, q
    for pos in range(m):
        inv_b[b[pos]] = pos
    i = 0
    while i < m - 1:
        if inv_b[i] > inv_b[i + 1] and a[i] < a[i + 1]:
            a[i], a[i + 1] = a[i + 1], a[i]
            p = inv_b[i]
            q = inv_b[i + 1]
            b[p] = i + 1
            b[q] = i
            inv_b[i] = q
            inv_b[i + 1] = p
            moved = True
            i = 0
            continue
        i += 1
    return moved


def left_normal_form(int m, letters):
    """Return ``(k, factors)`` with the word equal to Delta^k A_1 ... A_l."""
    if m < 2:
        return 0, []
    cdef Py_ssize_t n = len(letters)
    cdef Py_ssize_t j, r
    cdef int x, i, q, negatives = 0, k, seen
    cdef bint changed, is_id, is_delta
    cdef int* buf = <int*> PyMem_Malloc((n * m + 2 * m) * sizeof(int))
    cdef int* flips = <int*> PyMem_Malloc((n + 1) * sizeof(int))
    if buf == NULL or flips == NULL:
        PyMem_Free(buf)
        PyMem_Free(flips)
        raise MemoryError()
    cdef int* tmp = buf + n * m
    cdef int* inv_b = tmp + m
    cdef int* arr
    try:
        for j in range(n):
            x = letters[j]
            i = (x if x > 0 else -x) - 1
            arr = buf + j * m
            if x > 0:
                for q in range(m):
                    arr[q] = q
            else:
                for q in range(m):
                    arr[q] = m - 1 - q
                negatives += 1
            arr[i], arr[i + 1] = arr[i + 1], arr[i]
            flips[j] = negatives
        k = -negatives
        with nogil:
            for j in range(n):
                if (negatives - flips[j]) % 2:
                    arr = buf + j * m
                    for q in range(m):
                        tmp[q] = m - 1 - arr[m - 1 - q]
                    for q in range(m):
                        arr[q] = tmp[q]
            changed = True
            while changed:
                changed = False
                for j in range(n - 1):
                    if _left_weight(buf + j * m, buf + (j + 1) * m, inv_b, m):
                        changed = True
        factors = []
        for j in range(n):
            arr = buf + j * m
            is_id = True
            is_delta = True
            for q in range(m):
                if arr[q] != q:
                    is_id = False
                if arr[q] != m - 1 - q:
                    is_delta = False
            if is_delta:
                k += 1
            elif not is_id:
                factors.append([arr[q] for q in range(m)])
        return k, factors
    finally:
        PyMem_Free(buf)
        PyMem_Free(flips)
