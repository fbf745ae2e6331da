# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops over Cayley tables.

Every function mirrors one in ``_kernels_py`` with identical arguments and
results. Tables are C-contiguous ``int32`` arrays; ``T[x, y] = xy``,
``LD[x, y] = x\\y`` and ``RD[y, x] = y/x``.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef int idx_t

# identity codes shared with the fallback
ASSOC = 0
EXTRA1 = 1
EXTRA2 = 2
EXTRA3 = 3
MOUFANG = 4


def is_latin(const idx_t[:, ::1] T):
    cdef Py_ssize_t n = T.shape[0], i, j
    cdef idx_t v
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen = np.zeros(n, dtype=np.uint8)
    if T.shape[1] != n:
        return False
    for i in range(n):
        seen[:] = 0
        for j in range(n):
            v = T[i, j]
            if v < 0 or v >= n or seen[v]:
                return False
            seen[v] = 1
    for j in range(n):
        seen[:] = 0
        for i in range(n):
            v = T[i, j]
            if seen[v]:
                return False
            seen[v] = 1
    return True


def find_identity_failure(const idx_t[:, ::1] T, int code):
    """First (x, y, z) violating the identity selected by ``code``, else None."""
    cdef Py_ssize_t n = T.shape[0]
    cdef idx_t x, y, z, xy, yz, zx, zy, yx, lhs, rhs
    for x in range(n):
        for y in range(n):
            xy = T[x, y]
            yx = T[y, x]
            for z in range(n):
                if code == 0:
                    lhs = T[xy, z]
                    rhs = T[x, T[y, z]]
                elif code == 1:
                    # (x . yz) . y = xy . zy
                    lhs = T[T[x, T[y, z]], y]
                    rhs = T[xy, T[z, y]]
                elif code == 2:
                    # yz . yx = y . (zy . x)
                    lhs = T[T[y, z], yx]
                    rhs = T[y, T[T[z, y], x]]
                elif code == 3:
                    # (xy . z) . x = x . (y . zx)
                    lhs = T[T[xy, z], x]
                    rhs = T[x, T[y, T[z, x]]]
                else:
                    # (xy)(zx) = (x(yz))x
                    lhs = T[xy, T[z, x]]
                    rhs = T[T[x, T[y, z]], x]
                if lhs != rhs:
                    return (x, y, z)
    return None


def find_cc_failure(const idx_t[:, ::1] T, const idx_t[:, ::1] LD,
                    const idx_t[:, ::1] RD):
    """First ("left"|"right", x, y) where a conjugated translation is not a translation."""
    cdef Py_ssize_t n = T.shape[0]
    cdef idx_t x, y, t, z, w
    for x in range(n):
        for y in range(n):
            # t L_x^-1 L_y L_x = x(y(x\t)); must equal zt with z the image of 1
            z = T[x, T[y, LD[x, 0]]]
            for t in range(n):
                if T[x, T[y, LD[x, t]]] != T[z, t]:
                    return ("left", x, y)
            # t R_x^-1 R_y R_x = ((t/x)y)x
            w = T[T[RD[0, x], y], x]
            for t in range(n):
                if T[T[RD[t, x], y], x] != T[t, w]:
                    return ("right", x, y)
    return None


def nucleus_mask(const idx_t[:, ::1] T):
    cdef Py_ssize_t n = T.shape[0]
    cdef idx_t a, x, y, ok
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.zeros(n, dtype=np.uint8)
    for a in range(n):
        ok = 1
        for x in range(n):
            if not ok:
                break
            for y in range(n):
                if (T[T[a, x], y] != T[a, T[x, y]]
                        or T[T[x, a], y] != T[x, T[a, y]]
                        or T[T[x, y], a] != T[x, T[y, a]]):
                    ok = 0
                    break
        out[a] = ok
    return out.astype(bool)


def associator_value_mask(const idx_t[:, ::1] T, const idx_t[:, ::1] LD):
    """Mask of elements occurring as some associator (x,y,z) = (x.yz)\\(xy.z)."""
    cdef Py_ssize_t n = T.shape[0]
    cdef idx_t x, y, z, xy
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.zeros(n, dtype=np.uint8)
    for x in range(n):
        for y in range(n):
            xy = T[x, y]
            for z in range(n):
                out[LD[T[x, T[y, z]], T[xy, z]]] = 1
    return out.astype(bool)


def closure(const idx_t[:, ::1] T, mask, seeds):
    """Close ``mask | seeds | {0}`` under multiplication.

    ``mask`` must already be closed; in a finite loop closure under products
    gives closure under both divisions.
    """
    cdef Py_ssize_t n = T.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] inset = np.array(mask, dtype=np.uint8)
    cdef cnp.ndarray[idx_t, ndim=1] members = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t count = 0, head, i
    cdef idx_t s, m, v
    if not inset[0]:
        inset[0] = 1
    for i in range(n):
        if inset[i]:
            members[count] = i
            count += 1
    # members[:head] are closed among themselves
    head = count
    for s in seeds:
        if not inset[s]:
            inset[s] = 1
            members[count] = s
            count += 1
    while head < count:
        s = members[head]
        for i in range(head + 1):
            m = members[i]
            v = T[s, m]
            if not inset[v]:
                inset[v] = 1
                members[count] = v
                count += 1
            v = T[m, s]
            if not inset[v]:
                inset[v] = 1
                members[count] = v
                count += 1
        head += 1
    return inset.astype(bool)


def normal_closure(const idx_t[:, ::1] T, const idx_t[:, ::1] LD,
                   const idx_t[:, ::1] RD, seeds):
    """Smallest subset containing ``seeds`` closed under products and the maps
    T_x, R(x,y), L(x,y)."""
    cdef Py_ssize_t n = T.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] inset = np.zeros(n, dtype=np.uint8)
    cdef cnp.ndarray[idx_t, ndim=1] members = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t count = 1, head = 0, i
    cdef idx_t s, m, v, x, y, sx, xs
    inset[0] = 1
    members[0] = 0
    for s in seeds:
        if not inset[s]:
            inset[s] = 1
            members[count] = s
            count += 1
    while head < count:
        s = members[head]
        for i in range(head + 1):
            m = members[i]
            v = T[s, m]
            if not inset[v]:
                inset[v] = 1
                members[count] = v
                count += 1
            v = T[m, s]
            if not inset[v]:
                inset[v] = 1
                members[count] = v
                count += 1
        for x in range(n):
            sx = T[s, x]
            xs = T[x, s]
            v = LD[x, sx]
            if not inset[v]:
                inset[v] = 1
                members[count] = v
                count += 1
            for y in range(n):
                # s R(x,y) = ((sx)y)/(xy)
                v = RD[T[sx, y], T[x, y]]
                if not inset[v]:
                    inset[v] = 1
                    members[count] = v
                    count += 1
                # s L(x,y) = (yx)\(y(xs))
                v = LD[T[y, x], T[y, xs]]
                if not inset[v]:
                    inset[v] = 1
                    members[count] = v
                    count += 1
        head += 1
    return inset.astype(bool)
