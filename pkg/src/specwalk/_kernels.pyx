# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: cyclic Jacobi eigensolver, lazy-walk simulation over CSR
adjacency, and brute-force spanning-tree enumeration.

``_pykernels`` mirrors every function here with identical signatures.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()


def jacobi_eigh(a_in, double tol=1e-13, int max_sweeps=100):
    """Eigen-decompose a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors, sweeps)`` unsorted; column ``j`` of
    the eigenvector matrix belongs to ``eigenvalues[j]``.  ``sweeps`` is -1 if
    the off-diagonal norm did not drop below ``tol * ||A||_F`` in time.
    """
    cdef cnp.ndarray[double, ndim=2] A = np.array(a_in, dtype=np.float64, order="C", copy=True)
    cdef Py_ssize_t n = A.shape[0]
    cdef cnp.ndarray[double, ndim=2] V = np.eye(n, dtype=np.float64)
    cdef double[:, ::1] a = A
    cdef double[:, ::1] v = V
    cdef Py_ssize_t p, q, r
    cdef int sweep
    cdef double app, aqq, apq, theta, t, c, s, x, y, off, frob = 0.0
    for p in range(n):
        for q in range(n):
            frob += a[p, q] * a[p, q]
    frob = sqrt(frob)
    if frob == 0.0:
        return np.zeros(n), V, 0
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        if sqrt(2.0 * off) <= tol * frob:
            return np.diag(A).copy(), V, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if fabs(apq) < 1e-300:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                theta = (aqq - app) / (2.0 * apq)
                if fabs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for r in range(n):
                    x = a[r, p]
                    y = a[r, q]
                    a[r, p] = c * x - s * y
                    a[r, q] = s * x + c * y
                for r in range(n):
                    x = a[p, r]
                    y = a[q, r]
                    a[p, r] = c * x - s * y
                    a[q, r] = s * x + c * y
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                for r in range(n):
                    x = v[r, p]
                    y = v[r, q]
                    v[r, p] = c * x - s * y
                    v[r, q] = s * x + c * y
    return np.diag(A).copy(), V, -1


def lazy_walk_ends(indptr, keys, indices, starts, lengths, uniforms, offsets):
    """Run lazy walks consuming one uniform per step.

    Walk ``i`` starts at ``starts[i]`` and takes ``lengths[i]`` steps using
    ``uniforms[offsets[i]:offsets[i] + lengths[i]]``.  A uniform below 1/2
    keeps the walk in place; otherwise ``x + 2(u - 1/2)`` is located among the
    per-slot keys ``x + cumulative weight / w(x)`` of vertex ``x``.
    """
    cdef const long long[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const double[::1] ks = np.ascontiguousarray(keys, dtype=np.float64)
    cdef const long long[::1] nb = np.ascontiguousarray(indices, dtype=np.int64)
    cdef const long long[::1] st = np.ascontiguousarray(starts, dtype=np.int64)
    cdef const long long[::1] ln = np.ascontiguousarray(lengths, dtype=np.int64)
    cdef const double[::1] un = np.ascontiguousarray(uniforms, dtype=np.float64)
    cdef const long long[::1] off = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef Py_ssize_t nwalks = st.shape[0]
    out = np.empty(nwalks, dtype=np.int64)
    cdef long long[::1] ends = out
    cdef Py_ssize_t i, step, k, hi
    cdef long long x
    cdef double u, target
    with nogil:
        for i in range(nwalks):
            x = st[i]
            for step in range(ln[i]):
                u = un[off[i] + step]
                if u < 0.5:
                    continue
                target = <double>x + (u - 0.5) * 2.0
                k = ip[x]
                hi = ip[x + 1] - 1
                while k < hi and ks[k] <= target:
                    k += 1
                x = nb[k]
            ends[i] = x
    return out


cdef Py_ssize_t _find(int* parent, Py_ssize_t x) noexcept nogil:
    while parent[x] != x:
        x = parent[x]
    return x


cdef long long _trees(Py_ssize_t idx, Py_ssize_t chosen, Py_ssize_t n, Py_ssize_t m,
                      const int* eu, const int* ev, int* parent, int* size) noexcept nogil:
    if chosen == n - 1:
        return 1
    if m - idx < n - 1 - chosen:
        return 0
    cdef long long total = 0
    cdef Py_ssize_t ru = _find(parent, eu[idx])
    cdef Py_ssize_t rv = _find(parent, ev[idx])
    cdef Py_ssize_t tmp
    if ru != rv:
        if size[ru] < size[rv]:
            tmp = ru
            ru = rv
            rv = tmp
        parent[rv] = <int>ru
        size[ru] += size[rv]
        total += _trees(idx + 1, chosen + 1, n, m, eu, ev, parent, size)
        size[ru] -= size[rv]
        parent[rv] = <int>rv
    total += _trees(idx + 1, chosen, n, m, eu, ev, parent, size)
    return total


def count_spanning_trees(int n, eu, ev):
    """Count ``(n-1)``-edge acyclic subsets by backtracking with a
    rollback union-find.  Every counted subset is a spanning tree."""
    cdef const int[::1] u = np.ascontiguousarray(eu, dtype=np.int32)
    cdef const int[::1] v = np.ascontiguousarray(ev, dtype=np.int32)
    cdef Py_ssize_t m = u.shape[0]
    if n == 1:
        return 1
    if m == 0:
        return 0
    cdef int[::1] parent = np.arange(n, dtype=np.int32)
    cdef int[::1] size = np.ones(n, dtype=np.int32)
    cdef long long total
    with nogil:
        total = _trees(0, 0, n, m, &u[0], &v[0], &parent[0], &size[0])
    return int(total)
