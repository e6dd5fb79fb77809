# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled log-space HMM recursions; see numpy_backend.py for the contract."""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, exp, log

cnp.import_array()

NAME = "cython"


cdef inline double _logsumexp_row(double* values, Py_ssize_t k) nogil:
    cdef Py_ssize_t j
    cdef double vmax = -INFINITY
    cdef double acc = 0.0
    for j in range(k):
        if values[j] > vmax:
            vmax = values[j]
    if vmax == -INFINITY:
        return -INFINITY
    for j in range(k):
        acc += exp(values[j] - vmax)
    return vmax + log(acc)


def forward(double[::1] log_pi, double[:, ::1] log_trans, double[::1] log_end,
            double[:, :, ::1] frame_logprob):
    cdef Py_ssize_t n = frame_logprob.shape[0]
    cdef Py_ssize_t t = frame_logprob.shape[1]
    cdef Py_ssize_t k = frame_logprob.shape[2]
    alpha_arr = np.empty((n, t, k), dtype=np.float64)
    loglik_arr = np.empty(n, dtype=np.float64)
    cdef double[:, :, ::1] alpha = alpha_arr
    cdef double[::1] loglik = loglik_arr
    work_arr = np.empty(k, dtype=np.float64)
    cdef double[::1] work = work_arr
    cdef Py_ssize_t s, i, j, p
    with nogil:
        for s in range(n):
            for j in range(k):
                alpha[s, 0, j] = log_pi[j] + frame_logprob[s, 0, j]
            for i in range(1, t):
                for j in range(k):
                    for p in range(k):
                        work[p] = alpha[s, i - 1, p] + log_trans[p, j]
                    alpha[s, i, j] = _logsumexp_row(&work[0], k) + frame_logprob[s, i, j]
            for j in range(k):
                work[j] = alpha[s, t - 1, j] + log_end[j]
            loglik[s] = _logsumexp_row(&work[0], k)
    return alpha_arr, loglik_arr


def backward(double[:, ::1] log_trans, double[::1] log_end,
             double[:, :, ::1] frame_logprob):
    cdef Py_ssize_t n = frame_logprob.shape[0]
    cdef Py_ssize_t t = frame_logprob.shape[1]
    cdef Py_ssize_t k = frame_logprob.shape[2]
    beta_arr = np.empty((n, t, k), dtype=np.float64)
    cdef double[:, :, ::1] beta = beta_arr
    work_arr = np.empty(k, dtype=np.float64)
    cdef double[::1] work = work_arr
    cdef Py_ssize_t s, i, j, q
    with nogil:
        for s in range(n):
            for j in range(k):
                beta[s, t - 1, j] = log_end[j]
            for i in range(t - 2, -1, -1):
                for j in range(k):
                    for q in range(k):
                        work[q] = log_trans[j, q] + frame_logprob[s, i + 1, q] + beta[s, i + 1, q]
                    beta[s, i, j] = _logsumexp_row(&work[0], k)
    return beta_arr


def viterbi(double[::1] log_pi, double[:, ::1] log_trans, double[::1] log_end,
            double[:, :, ::1] frame_logprob):
    cdef Py_ssize_t n = frame_logprob.shape[0]
    cdef Py_ssize_t t = frame_logprob.shape[1]
    cdef Py_ssize_t k = frame_logprob.shape[2]
    paths_arr = np.zeros((n, t), dtype=np.int64)
    logprob_arr = np.empty(n, dtype=np.float64)
    backptr_arr = np.zeros((t, k), dtype=np.int64)
    delta_arr = np.empty(k, dtype=np.float64)
    prev_arr = np.empty(k, dtype=np.float64)
    cdef cnp.int64_t[:, ::1] paths = paths_arr
    cdef double[::1] logprob = logprob_arr
    cdef cnp.int64_t[:, ::1] backptr = backptr_arr
    cdef double[::1] delta = delta_arr
    cdef double[::1] prev = prev_arr
    cdef Py_ssize_t s, i, j, p, best
    cdef double cand, best_val
    with nogil:
        for s in range(n):
            for j in range(k):
                delta[j] = log_pi[j] + frame_logprob[s, 0, j]
            for i in range(1, t):
                for j in range(k):
                    prev[j] = delta[j]
                for j in range(k):
                    best = 0
                    best_val = prev[0] + log_trans[0, j]
                    for p in range(1, k):
                        cand = prev[p] + log_trans[p, j]
                        if cand > best_val:
                            best_val = cand
                            best = p
                    backptr[i, j] = best
                    delta[j] = best_val + frame_logprob[s, i, j]
            best = 0
            best_val = delta[0] + log_end[0]
            for j in range(1, k):
                cand = delta[j] + log_end[j]
                if cand > best_val:
                    best_val = cand
                    best = j
            logprob[s] = best_val
            paths[s, t - 1] = best
            for i in range(t - 2, -1, -1):
                paths[s, i] = backptr[i + 1, paths[s, i + 1]]
    return paths_arr, logprob_arr
