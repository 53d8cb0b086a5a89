"""Surjection sequences, table reduction and interval cuts.

Internal machinery behind the higher diagonals on simplicial chains.

A surjection of arity ``r`` and degree ``d`` is a tuple ``u`` of length
``r + d`` with values in ``1..r``, every value hit, and no two neighbours
equal. An entry is a *caesura* when its value occurs again later.

* :func:`table_reduction` sends a simplex ``(w_0, ..., w_d)`` of the
  Barratt–Eccles complex (vertices are permutations read as sequences
  ``w(1), ..., w(r)``) to a sum of surjections. It is a chain map.
* :func:`interval_cut` lets a surjection act on a simplex of a simplicial
  set: the simplex is cut into ``r + d`` consecutive intervals, and
  factor ``i`` is the face spanned by the intervals labelled ``i``.

Both pieces are operad maps, so composing them gives coherent higher
diagonals.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement

from .zmod import add_into, koszul_permutation_sign


def is_surjection(u, r):
    return set(u) == set(range(1, r + 1)) and all(a != b for a, b in zip(u, u[1:]))


def caesura_flags(u):
    """``flags[k]`` is true when ``u[k]`` occurs again later."""
    seen = set()
    flags = [False] * len(u)
    for k in range(len(u) - 1, -1, -1):
        flags[k] = u[k] in seen
        seen.add(u[k])
    return flags


@lru_cache(maxsize=None)
def surjection_boundary(u, r):
    """Boundary of a surjection: drop one entry, keep surjective non-degenerate terms.

    Dropping the ``k``-th caesura (1-based, left to right) has sign
    ``(-1)^{k-1}``; dropping a last occurrence whose previous occurrence is
    the ``k``-th caesura has sign ``(-1)^k``.
    """
    flags = caesura_flags(u)
    index = {}
    count = 0
    for k, f in enumerate(flags):
        if f:
            count += 1
            index[k] = count
    out: dict = {}
    last_seen = {}
    for k, val in enumerate(u):
        if flags[k]:
            sign = -1 if (index[k] - 1) % 2 else 1
        elif val in last_seen:
            sign = -1 if index[last_seen[val]] % 2 else 1
        else:
            sign = 0  # only occurrence: removal is never surjective
        last_seen[val] = k
        if not sign:
            continue
        v = u[:k] + u[k + 1:]
        if is_surjection(v, r):
            add_into(out, {v: 1}, sign)
    return out


@lru_cache(maxsize=None)
def table_reduction(simplex):
    """Barratt–Eccles simplex ``(w_0, ..., w_d)`` -> ``{surjection: coeff}``."""
    d = len(simplex) - 1
    r = len(simplex[0])
    out: dict = {}

    def rec(i, final, prefix):
        avail = [x for x in simplex[i] if x not in final]
        if i == d:
            u = prefix + tuple(avail)
            if all(a != b for a, b in zip(u, u[1:])):
                out[u] = out.get(u, 0) + 1
            return
        # row i takes 1..len(avail) entries; its last entry is a caesura
        for ri in range(1, len(avail) + 1):
            row = tuple(avail[:ri])
            if prefix and row[0] == prefix[-1]:
                continue
            if any(a == b for a, b in zip(row, row[1:])):
                continue
            rec(i + 1, final | set(row[:-1]), prefix + row)

    rec(0, frozenset(), ())
    return {u: v for u, v in out.items() if v}


def simplicial_boundary(simplex):
    """Normalized boundary ``Σ (-1)^i d_i`` of a Barratt–Eccles simplex."""
    out: dict = {}
    d = len(simplex) - 1
    if d == 0:
        return out
    for i in range(d + 1):
        face = simplex[:i] + simplex[i + 1:]
        if any(a == b for a, b in zip(face, face[1:])):
            continue
        add_into(out, {face: 1}, -1 if i % 2 else 1)
    return out


# ---------------------------------------------------------------- interval cuts


def interval_cuts(u, m):
    """Yield ``(cuts, factors, sign)`` for the action of ``u`` on an ``m``-simplex.

    ``cuts`` are ``0 = n_0 <= n_1 <= ... <= n_L = m``; factor ``i`` is the
    sorted vertex tuple of the intervals ``[n_{k-1}, n_k]`` with ``u_k = i``.
    Terms where a factor repeats a vertex vanish.
    """
    L = len(u)
    r = max(u)
    flags = caesura_flags(u)
    for inner in combinations_with_replacement(range(m + 1), L - 1):
        cuts = (0,) + inner + (m,)
        verts = [[] for _ in range(r)]
        ok = True
        for k in range(L):
            seg = list(range(cuts[k], cuts[k + 1] + 1))
            tgt = verts[u[k] - 1]
            if tgt and tgt[-1] >= seg[0]:
                ok = False
                break
            tgt.extend(seg)
        if not ok:
            continue
        # interval degrees: a caesura interval contributes its length + 1
        degs = [cuts[k + 1] - cuts[k] + (1 if flags[k] else 0) for k in range(L)]
        order = sorted(range(L), key=lambda k: (u[k], k))
        sign = koszul_permutation_sign(degs, order) * _position_sign(cuts, flags)
        yield cuts, tuple(tuple(v) for v in verts), sign


def _position_sign(cuts, flags):
    # each caesura is passed over by the vertices to its left
    e = 0
    for k, f in enumerate(flags):
        if f:
            e += cuts[k + 1]
    return -1 if e % 2 else 1


# ---------------------------------------------------------------- Barratt–Eccles compositions


def substitute(outer, inner, i):
    """Insert the sequence ``inner`` for the value ``i`` of ``outer`` (block substitution)."""
    n = len(inner)
    out = []
    for v in outer:
        if v < i:
            out.append(v)
        elif v == i:
            out.extend(x + i - 1 for x in inner)
        else:
            out.append(v + n - 1)
    return tuple(out)


def shuffle_paths(d, e):
    """Lattice paths ``(0,0) -> (d,e)`` with the sign of the corresponding shuffle."""
    def rec(a, b, inv, path):
        if a == d and b == e:
            yield path, (-1 if inv % 2 else 1)
            return
        if a < d:
            # an inner step taken after b outer steps crosses them
            yield from rec(a + 1, b, inv + b, path + ((a + 1, b),))
        if b < e:
            yield from rec(a, b + 1, inv, path + ((a, b + 1),))
    yield from rec(0, 0, 0, ((0, 0),))


def be_compose(inner, outer, i):
    """``inner`` inserted into slot ``i`` of ``outer`` for Barratt–Eccles simplices.

    Eilenberg–Zilber shuffle of the two simplices followed by vertexwise
    block substitution; degenerate results are dropped.
    """
    out: dict = {}
    for path, sign in shuffle_paths(len(inner) - 1, len(outer) - 1):
        simplex = tuple(substitute(outer[b], inner[a], i) for a, b in path)
        if any(x == y for x, y in zip(simplex, simplex[1:])):
            continue
        add_into(out, {simplex: 1}, sign)
    return out
