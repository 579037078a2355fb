# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for flag-map propagation and union-find.

Signatures match :mod:`polyforge._fallback`; arrays must be C-contiguous int32.
"""
cimport cython


cdef inline bint _assign(const int[:, ::1] flags, int[::1] flag_img, int[::1] face_img,
                         int t, int u) noexcept nogil:
    cdef Py_ssize_t r
    cdef int a, b
    flag_img[t] = u
    for r in range(flags.shape[1]):
        a = flags[t, r]
        b = flags[u, r]
        if face_img[a] == -1:
            face_img[a] = b
        elif face_img[a] != b:
            return False
    return True


def extend_flag_map(const int[:, ::1] flags, const int[:, ::1] adj, int base, int target,
                    int[::1] flag_img, int[::1] face_img, int[::1] queue):
    """Propagate ``base -> target`` along i-adjacencies.

    Fills ``flag_img`` and ``face_img``; returns False on the first clash
    between the flag map and the adjacency table or the induced face map.
    """
    cdef Py_ssize_t n = adj.shape[1]
    cdef Py_ssize_t head = 0, tail = 0, i
    cdef int t, u, t2, u2
    cdef bint ok = True
    with nogil:
        flag_img[:] = -1
        face_img[:] = -1
        if not _assign(flags, flag_img, face_img, base, target):
            ok = False
        queue[tail] = base
        tail += 1
        while head < tail and ok:
            t = queue[head]
            head += 1
            u = flag_img[t]
            for i in range(n):
                t2 = adj[t, i]
                u2 = adj[u, i]
                if flag_img[t2] == -1:
                    if not _assign(flags, flag_img, face_img, t2, u2):
                        ok = False
                        break
                    queue[tail] = t2
                    tail += 1
                elif flag_img[t2] != u2:
                    ok = False
                    break
    return ok


cdef inline int _find(int[::1] parent, int x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def union_perm(int[::1] parent, const int[::1] perm):
    """Union every ``x`` with ``perm[x]`` (roots are kept minimal)."""
    cdef Py_ssize_t x
    cdef int a, b
    with nogil:
        for x in range(perm.shape[0]):
            a = _find(parent, <int>x)
            b = _find(parent, perm[x])
            if a < b:
                parent[b] = a
            elif b < a:
                parent[a] = b


def resolve(int[::1] parent):
    """Flatten ``parent`` so every entry points at its root."""
    cdef Py_ssize_t x
    with nogil:
        for x in range(parent.shape[0]):
            parent[x] = _find(parent, <int>x)
