"""NumPy implementations of the table kernels.

Same signatures and results as the compiled ``_kernels`` module. Triple
quantifiers are vectorised over (y, z) with a Python loop over x, so memory
stays at O(n^2).
"""

from __future__ import annotations

import numpy as np

ASSOC = 0
EXTRA1 = 1
EXTRA2 = 2
EXTRA3 = 3
MOUFANG = 4


def is_latin(T):
    n = T.shape[0]
    if T.ndim != 2 or T.shape[1] != n:
        return False
    if T.min() < 0 or T.max() >= n:
        return False
    ref = np.arange(n)
    return bool((np.sort(T, axis=1) == ref).all() and (np.sort(T, axis=0) == ref[:, None]).all())


def _first(bad, x):
    hit = np.argwhere(bad)
    if len(hit):
        y, z = hit[0]
        return (int(x), int(y), int(z))
    return None


def find_identity_failure(T, code):
    n = T.shape[0]
    Y = np.arange(n)[:, None]
    Z = np.arange(n)[None, :]
    for x in range(n):
        row = T[x]
        if code == ASSOC:
            lhs = T[row[:, None], Z]
            rhs = row[T]
        elif code == EXTRA1:
            lhs = T[row[T], Y]
            rhs = T[row[:, None], T.T]
        elif code == EXTRA2:
            # yz . yx = y . (zy . x)
            lhs = T[T, T[:, x][:, None]]
            rhs = T[Y, T[T.T, x]]
        elif code == EXTRA3:
            lhs = T[T[row[:, None], Z], x]
            rhs = row[T[Y, T[:, x][None, :]]]
        elif code == MOUFANG:
            lhs = T[row[:, None], T[:, x][None, :]]
            rhs = T[row[T], x]
        else:
            raise ValueError(f"unknown identity code {code}")
        bad = lhs != rhs
        if bad.any():
            return _first(bad, x)
    return None


def find_cc_failure(T, LD, RD):
    n = T.shape[0]
    for x in range(n):
        # rows: y, columns: t
        left = T[x][T[:, LD[x]]]
        if (left != T[left[:, 0]]).any():
            y = int(np.argwhere((left != T[left[:, 0]]).any(axis=1))[0, 0])
            return ("left", x, y)
        # ((t/x) y) x  with rows y
        right = T[T[RD[:, x][None, :], np.arange(n)[:, None]], x]
        expect = T[:, right[:, 0]].T
        bad = (right != expect).any(axis=1)
        if bad.any():
            return ("right", x, int(np.argwhere(bad)[0, 0]))
    return None


def nucleus_mask(T):
    n = T.shape[0]
    out = np.zeros(n, dtype=bool)
    for a in range(n):
        ra = T[a]
        ca = T[:, a]
        if not (T[ra[:, None], np.arange(n)[None, :]] == ra[T]).all():
            continue
        if not (T[ca[:, None], np.arange(n)[None, :]] == T[np.arange(n)[:, None], ra[None, :]]).all():
            continue
        if not (ca[T] == T[np.arange(n)[:, None], ca[None, :]]).all():
            continue
        out[a] = True
    return out


def associator_value_mask(T, LD):
    n = T.shape[0]
    out = np.zeros(n, dtype=bool)
    Z = np.arange(n)[None, :]
    for x in range(n):
        row = T[x]
        out[LD[row[T], T[row[:, None], Z]]] = True
    return out


def closure(T, mask, seeds):
    inset = np.array(mask, dtype=bool)
    inset[0] = True
    for s in seeds:
        inset[s] = True
    while True:
        idx = np.flatnonzero(inset)
        prod = T[np.ix_(idx, idx)]
        new = np.zeros_like(inset)
        new[prod.ravel()] = True
        new |= inset
        if (new == inset).all():
            return inset
        inset = new


def normal_closure(T, LD, RD, seeds):
    n = T.shape[0]
    inset = closure(T, np.zeros(n, dtype=bool), seeds)
    done = np.zeros(n, dtype=bool)
    X = np.arange(n)
    XY = T
    YX = T.T
    while True:
        todo = np.flatnonzero(inset & ~done)
        if len(todo) == 0:
            return inset
        images = np.zeros(n, dtype=bool)
        for s in todo:
            sx = T[s]
            xs = T[:, s]
            images[LD[X, sx]] = True
            # s R(x,y) = ((sx)y)/(xy), rows x, cols y
            images[RD[T[sx[:, None], X[None, :]], XY]] = True
            # s L(x,y) = (yx)\(y(xs)), rows x, cols y
            images[LD[YX, T[X[None, :], xs[:, None]]]] = True
        done[todo] = True
        grown = closure(T, inset, np.flatnonzero(images & ~inset))
        inset = grown
