# cython: boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled split-search kernels.

Twin of ``_split_numpy``: same candidate set, same arithmetic, same
tie-breaking, so both backends grow bit-identical trees.  Sorting uses
std::sort on (value, row index) pairs, which reproduces numpy's stable
argsort order; prefix sums run left-to-right like ``np.cumsum``.
"""

from libcpp.algorithm cimport sort as cpp_sort
from libcpp.pair cimport pair
from libcpp.vector cimport vector

import numpy as np

cimport numpy as cnp

cnp.import_array()

ctypedef pair[double, Py_ssize_t] keyed


cdef inline double _midpoint(double a, double b) nogil:
    cdef double mid = a + 0.5 * (b - a)
    if not mid < b:
        mid = a
    return mid


def best_split_gini(double[:, ::1] xblock, cnp.int64_t[::1] y):
    """Best (column, threshold, gain) for binary labels, Gini criterion."""
    cdef Py_ssize_t n = xblock.shape[0]
    cdef Py_ssize_t m = xblock.shape[1]
    cdef Py_ssize_t i, j, k
    cdef cnp.int64_t total_pos = 0, pl, nl, pr, nr, negl, negr
    for i in range(n):
        total_pos += y[i]
    cdef cnp.int64_t total_neg = n - total_pos
    cdef double parent_q = <double>(total_pos * total_pos + total_neg * total_neg) / <double>n
    cdef double best_q = parent_q, best_thr = 0.0, q, a, b
    cdef Py_ssize_t best_col = -1
    cdef vector[keyed] order
    order.resize(n)

    for j in range(m):
        for i in range(n):
            order[i] = keyed(xblock[i, j], i)
        cpp_sort(order.begin(), order.end())
        pl = 0
        for i in range(n - 1):
            pl += y[order[i].second]
            a = order[i].first
            b = order[i + 1].first
            if not a < b:
                continue
            nl = i + 1
            nr = n - nl
            pr = total_pos - pl
            negl = nl - pl
            negr = nr - pr
            q = (<double>(pl * pl + negl * negl) / <double>nl
                 + <double>(pr * pr + negr * negr) / <double>nr)
            if q > best_q:
                best_q = q
                best_col = j
                best_thr = _midpoint(a, b)
    return best_col, best_thr, best_q - parent_q


def best_split_sse(double[:, ::1] xblock, double[::1] t):
    """Best (column, threshold, gain) for real targets, variance criterion."""
    cdef Py_ssize_t n = xblock.shape[0]
    cdef Py_ssize_t m = xblock.shape[1]
    cdef Py_ssize_t i, j
    cdef double total = 0.0
    for i in range(n):
        total += t[i]
    cdef double parent_q = total * total / <double>n
    cdef double best_q = parent_q, best_thr = 0.0
    cdef double sl, sr, ql, qr, q, a, b
    cdef Py_ssize_t best_col = -1, nl, nr
    cdef vector[keyed] order
    order.resize(n)

    for j in range(m):
        for i in range(n):
            order[i] = keyed(xblock[i, j], i)
        cpp_sort(order.begin(), order.end())
        sl = 0.0
        for i in range(n - 1):
            sl += t[order[i].second]
            a = order[i].first
            b = order[i + 1].first
            if not a < b:
                continue
            nl = i + 1
            nr = n - nl
            sr = total - sl
            ql = sl * sl / <double>nl
            qr = sr * sr / <double>nr
            q = ql + qr
            if q > best_q:
                best_q = q
                best_col = j
                best_thr = _midpoint(a, b)
    return best_col, best_thr, best_q - parent_q
