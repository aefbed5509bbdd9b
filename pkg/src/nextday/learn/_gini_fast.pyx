# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled split search: per-column sort-and-sweep over class counts.

Must stay operation-for-operation identical to kernels.best_split_py so
the two backends grow bit-identical trees.
"""

from libcpp.algorithm cimport sort
from libcpp.pair cimport pair
from libcpp.vector cimport vector


def best_split(double[:, ::1] x, signed char[::1] y, Py_ssize_t min_leaf):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t m = x.shape[1]
    if n < 2 * min_leaf:
        return None

    cdef long long total_ones = 0
    cdef Py_ssize_t i, col
    for i in range(n):
        total_ones += y[i]

    cdef vector[pair[double, signed char]] items
    items.resize(n)

    cdef int best_col = -1
    cdef double best_score = 0.0
    cdef double best_threshold = 0.0
    cdef long long cum_ones, left, left_zeros, right, right_ones, right_zeros
    cdef double score

    for col in range(m):
        for i in range(n):
            items[i].first = x[i, col]
            items[i].second = y[i]
        sort(items.begin(), items.end())
        cum_ones = 0
        for i in range(n - 1):
            cum_ones += items[i].second
            if items[i + 1].first <= items[i].first:
                continue
            left = i + 1
            right = n - left
            if left < min_leaf or right < min_leaf:
                continue
            left_zeros = left - cum_ones
            right_ones = total_ones - cum_ones
            right_zeros = right - right_ones
            score = (
                (<double> (left_zeros * left_zeros + cum_ones * cum_ones))
                / (<double> left)
                + (<double> (right_zeros * right_zeros + right_ones * right_ones))
                / (<double> right)
            )
            if best_col < 0 or score > best_score:
                best_col = <int> col
                best_score = score
                best_threshold = (items[i].first + items[i + 1].first) / 2.0

    if best_col < 0:
        return None
    return best_col, best_threshold, best_score
