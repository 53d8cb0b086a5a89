"""Symmetric groups and normalized bar resolutions ``RS_n``.

Conventions
-----------
``p * q`` means "apply ``p`` first, then ``q``", so ``(p * q)(i) = q(p(i))``;
``p.compose(q)`` is ordinary function composition ``p ∘ q``. A permutation
acts on tensor factors by moving factor ``i`` to position ``p(i)``; acting by
``p`` and then by ``q`` is acting by ``p * q``.

``RS_n`` has ``Z``-basis ``g[g_1|...|g_k]`` (``g`` arbitrary, letters not the
identity), stored as ``(g, (g_1, ..., g_k))``. ``S_n`` acts on the
coefficient: ``h·(g[w]) = (h ∘ g)[w]``. The basis element ``g[w]`` is the
simplex ``(g, g∘g_1, g∘g_2∘g_1, ...)`` of the contractible ``S_n``-space
``E S_n`` times ``(-1)^{k(k+1)/2}``, and the differential is the transported
simplicial boundary::

    ∂(g[g_1|...|g_k]) = (-1)^k (g∘g_1)[g_1^{-1} g_2 g_1|...]
                        + Σ_{0<i<k} (-1)^{k-i} g[...|g_i * g_{i+1}|...]
                        + g[g_1|...|g_{k-1}]

For ``n = 2`` this is ``∂e_i = (1 + (-1)^i t) e_{i-1}`` with ``e_i = [t|...|t]``.
"""
from __future__ import annotations

import re
from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .zmod import FreeComplex, GradedMap, add_into, koszul_permutation_sign


class Permutation(tuple):
    """A permutation of ``{1..n}`` in one-line notation."""

    def __new__(cls, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation: {images}")
        return super().__new__(cls, images)

    @property
    def rank(self):
        return len(self)

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    def __call__(self, i):
        return tuple.__getitem__(self, i - 1)

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(self) != len(other):
            raise ValueError(f"rank mismatch: {len(self)} vs {len(other)}")
        return Permutation(other(self(i)) for i in range(1, len(self) + 1))

    __rmul__ = None

    def compose(self, other):
        """``self ∘ other``: apply ``other`` first."""
        if len(self) != len(other):
            raise ValueError(f"rank mismatch: {len(self)} vs {len(other)}")
        return Permutation(self(other(i)) for i in range(1, len(self) + 1))

    def inverse(self):
        inv = [0] * len(self)
        for i, v in enumerate(self):
            inv[v - 1] = i + 1
        return Permutation(inv)

    @property
    def is_identity(self):
        return all(v == i + 1 for i, v in enumerate(self))

    def sign(self):
        s = 1
        for i in range(len(self)):
            for j in range(i + 1, len(self)):
                if self[i] > self[j]:
                    s = -s
        return s

    def cycles(self):
        seen, out = set(), []
        for start in range(1, len(self) + 1):
            if start in seen or self(start) == start:
                seen.add(start)
                continue
            cyc, i = [], start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self(i)
            out.append(tuple(cyc))
        return out

    def cycle_string(self):
        cyc = self.cycles()
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc) if cyc else "()"

    def __repr__(self):
        return f"Permutation({tuple(self)})"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation such as ``"(1,3,2)"`` or ``"(1,2)(3,4)"`` into rank ``n``.

    ``(a,b,c)`` sends ``a -> b -> c -> a``. Product of several cycles is read
    left to right in the "apply first" sense of ``*``.
    """
    text = text.strip()
    if not text or text == "()" or text in ("1", "id", "e"):
        return Permutation.identity(n)
    if _CYCLE.sub("", text).strip():
        raise ValueError(f"bad cycle notation: {text!r}")
    result = Permutation.identity(n)
    for body in _CYCLE.findall(text):
        pts = [int(x) for x in body.replace(" ", ",").split(",") if x]
        if len(set(pts)) != len(pts) or any(not 1 <= x <= n for x in pts):
            raise ValueError(f"bad cycle {body!r} for rank {n}")
        img = list(range(1, n + 1))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b
        result = result * Permutation(img)
    return result


def symmetric_group(n):
    """All permutations of rank ``n`` in lexicographic one-line order."""
    return _sym(n)


@lru_cache(maxsize=None)
def _sym(n):
    return tuple(Permutation(p) for p in permutations(range(1, n + 1)))


def permutation_multiply(p, q):
    return p * q


def transposition(n, a, b):
    img = list(range(1, n + 1))
    img[a - 1], img[b - 1] = b, a
    return Permutation(img)


# ---------------------------------------------------------------- bar words


def normalize_word(word):
    """Return the word, or ``None`` if it contains an identity letter."""
    return None if any(g.is_identity for g in word) else tuple(word)


def bar_label(word, coefficient=None):
    word = tuple(word)
    n = len(word[0]) if word else (len(coefficient) if coefficient else 1)
    return (coefficient or Permutation.identity(n), word)


def word_from_cycles(strings, n):
    return tuple(parse_cycles(s, n) for s in strings)


def word_to_cycles(word):
    return [g.cycle_string() for g in word]


def to_simplex(label):
    """``g[g_1|...|g_k]`` -> vertices ``(g, g∘g_1, g∘g_2∘g_1, ...)`` of ``E S_n``.

    Reading left to right, vertex ``j`` is ``g_1 * ... * g_j`` followed by
    ``g``, so each letter is the step between consecutive vertices.
    """
    g, word = label
    verts = [Permutation.identity(len(g))]
    for x in word:
        verts.append(x.compose(verts[-1]))
    return tuple(g.compose(v) for v in verts)


def from_simplex(verts):
    """Inverse of :func:`to_simplex`; ``None`` for degenerate simplices."""
    g = verts[0]
    ginv = g.inverse()
    local = [ginv.compose(v) for v in verts]
    word = []
    for a, b in zip(local, local[1:]):
        x = b.compose(a.inverse())
        if x.is_identity:
            return None
        word.append(x)
    return (g, tuple(word))


def simplex_sign(k):
    """Sign relating the bar basis here to normalized chains on ``E S_n`` in degree ``k``."""
    return -1 if (k * (k + 1) // 2) % 2 else 1


def simplex_boundary(verts):
    """Alternating-face boundary of a normalized simplex (degenerate faces dropped)."""
    out: dict = {}
    if len(verts) < 2:
        return out
    for i in range(len(verts)):
        face = verts[:i] + verts[i + 1:]
        if any(a == b for a, b in zip(face, face[1:])):
            continue
        add_into(out, {face: 1}, -1 if i % 2 else 1)
    return out


def to_simplices(vec):
    """Bar chains -> simplicial chains on ``E S_n`` (with the basis sign)."""
    out: dict = {}
    for lab, v in vec.items():
        add_into(out, {to_simplex(lab): simplex_sign(len(lab[1]))}, v)
    return out


def from_simplices(vec):
    out: dict = {}
    for verts, v in vec.items():
        lab = from_simplex(verts)
        if lab is not None:
            add_into(out, {lab: simplex_sign(len(verts) - 1)}, v)
    return out


class BarResolution:
    """The normalized bar resolution ``RS_n`` of ``Z`` over ``Z[S_n]``.

    Infinite, so everything is lazy; :meth:`complex` materializes a
    truncation. ``RS_0`` and ``RS_1`` are ``Z`` in degree 0.
    """

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("rank must be non-negative")
        self.n = n
        self.group = symmetric_group(max(n, 1)) if n else (Permutation(()),)
        self.identity = Permutation.identity(n)
        self.letters = tuple(g for g in self.group if not g.is_identity)

    def degree_of(self, label):
        return len(label[1])

    def unit(self):
        return {(self.identity, ()): 1}

    def words(self, k):
        return [tuple(w) for w in product(self.letters, repeat=k)]

    def generators(self, k):
        """Free ``Z[S_n]``-module generators in degree ``k``."""
        return [(self.identity, w) for w in self.words(k)]

    def basis(self, k):
        return [(g, w) for g in self.group for w in self.words(k)]

    def boundary_of(self, label):
        """Faces ``d_i`` with sign ``(-1)^{k-i}``.

        ``d_0`` moves the first letter into the coefficient and conjugates
        the rest by it, inner faces multiply neighbours (``g_i * g_{i+1}``),
        and the last face drops the last letter.
        """
        g, w = label
        k = len(w)
        out: dict = {}
        if k == 0:
            return out
        first = w[0]
        finv = first.inverse()
        rest = tuple(finv.compose(x).compose(first) for x in w[1:])
        add_into(out, {(g.compose(first), rest): 1}, -1 if k % 2 else 1)
        for i in range(1, k):
            x = w[i].compose(w[i - 1])
            if not x.is_identity:
                add_into(out, {(g, w[:i - 1] + (x,) + w[i + 1:]): 1}, -1 if (k - i) % 2 else 1)
        add_into(out, {(g, w[:-1]): 1}, 1)
        return out

    def d(self, vec):
        out: dict = {}
        for lab, v in vec.items():
            add_into(out, self.boundary_of(lab), v)
        return out

    def act(self, h, vec):
        """``h·(g[w]) = (h∘g)[w]``; acting by ``p`` and then ``q`` is acting by ``p * q``."""
        return {(h.compose(g), w): v for (g, w), v in vec.items()}

    def augmentation(self, vec):
        return sum(v for (g, w), v in vec.items() if not w)

    def contracting_homotopy(self, vec):
        """Cone on the identity vertex: ``Φ(g[w]) = (-1)^{|w|} [g | g w g^{-1}]``.

        Zero when ``g`` is the identity. Satisfies ``∂Φ + Φ∂ = ηε - 1``
        (injection∘projection minus identity), ``Φ² = 0`` and ``Φη = 0``.
        """
        out: dict = {}
        for (g, w), v in vec.items():
            if g.is_identity:
                continue
            ginv = g.inverse()
            conj = tuple(g.compose(x).compose(ginv) for x in w)
            add_into(out, {(self.identity, (g,) + conj): 1}, (-1 if len(w) % 2 else 1) * v)
        return out

    def complex(self, max_degree: int) -> FreeComplex:
        """The truncation in degrees ``0..max_degree`` as a finite complex."""
        basis = {k: self.basis(k) for k in range(max_degree + 1)}
        bd = {lab: self.boundary_of(lab) for labs in basis.values() for lab in labs}
        return FreeComplex(basis, bd, name=f"RS{self.n}")

    def homotopy_map(self, max_degree: int) -> GradedMap:
        C = self.complex(max_degree + 1)
        return GradedMap(C, C, 1, lambda lab: self.contracting_homotopy({lab: 1}), name="Phi")


def bar_resolution(n: int, degree_bound: int | None = None):
    R = BarResolution(n)
    return R.complex(degree_bound) if degree_bound is not None else R


def contracting_homotopy(n: int) -> BarResolution:
    return BarResolution(n)


def permute_tensor_factors(p: Permutation, vec, degree_of):
    """Act by ``p`` on tensors: factor ``i`` moves to position ``p(i)``, with Koszul signs."""
    out: dict = {}
    n = len(p)
    inv = p.inverse()
    order = [inv(j) - 1 for j in range(1, n + 1)]
    for labs, v in vec.items():
        if len(labs) != n:
            raise ValueError(f"arity mismatch: {len(labs)} factors for rank {n}")
        degs = [degree_of(x) for x in labs]
        new = tuple(labs[i] for i in order)
        add_into(out, {new: koszul_permutation_sign(degs, order)}, v)
    return out


# ---------------------------------------------------------------- bulk checks


def d_squared_defect(n: int, k: int, chunk_size: int = 1 << 13) -> int:
    """Number of nonzero coefficients of ``∂∂`` summed over generators of degree ``k``.

    Vectorized over every word of length ``k`` (``(n!-1)^k`` of them); by
    equivariance this certifies ``∂² = 0`` on all of ``RS_n`` in degree ``k``.
    """
    if k < 2 or n < 2:
        return 0
    G = symmetric_group(n)
    N = len(G)
    index = {g: i for i, g in enumerate(G)}
    e = index[Permutation.identity(n)]
    comp = np.array([[index[a.compose(b)] for b in G] for a in G], dtype=np.int64)
    # conj[a, x] = a^{-1} x a ; merge[a, b] = b ∘ a
    conj = np.array([[index[a.inverse().compose(x).compose(a)] for x in G] for a in G], dtype=np.int64)
    merge = comp.T
    letters = np.array([i for i in range(N) if i != e], dtype=np.int64)
    L = len(letters)
    pos = np.full(N, -1, dtype=np.int64)
    pos[letters] = np.arange(L)

    def faces(coef, words, sign, kk):
        # words: (M, kk) group indices; returns list of (coef, words, sign) for ∂ on them
        out = []
        s0 = -1 if kk % 2 else 1
        out.append((comp[coef, words[:, 0]], conj[words[:, :1], words[:, 1:]], sign * s0))
        for i in range(1, kk):
            merged = merge[words[:, i - 1], words[:, i]]
            s = -1 if (kk - i) % 2 else 1
            w = np.concatenate([words[:, :i - 1], merged[:, None], words[:, i + 1:]], axis=1)
            keep = merged != e
            out.append((coef, w, np.where(keep, sign * s, 0)))
        out.append((coef, words[:, :-1], sign))
        return out

    defect = 0
    total = L ** k
    all_idx = np.arange(total, dtype=np.int64)
    step = min(total, chunk_size)
    for lo in range(0, total, step):
        idx = all_idx[lo:lo + step]
        words = letters[np.stack(np.unravel_index(idx, (L,) * k), axis=1)]
        M = len(words)
        coef0 = np.full(M, e, dtype=np.int64)
        sign0 = np.ones(M, dtype=np.int64)
        keys, signs = [], []
        for c1, w1, s1 in faces(coef0, words, sign0, k):
            for c2, w2, s2 in faces(c1, w1, s1, k - 1):
                pw = pos[w2]
                valid = (s2 != 0) & np.all(pw >= 0, axis=1)
                key = c2.copy()
                for j in range(w2.shape[1]):
                    key = key * L + np.maximum(pw[:, j], 0)
                keys.append(np.where(valid, key, -1))
                signs.append(np.where(valid, s2, 0))
        # collect each word's terms in one row, so distinct generators cannot cancel
        K = np.stack(keys, axis=1)
        S = np.stack(signs, axis=1)
        order = np.argsort(K, axis=1, kind="stable")
        K = np.take_along_axis(K, order, axis=1).ravel()
        S = np.take_along_axis(S, order, axis=1).ravel()
        T = order.shape[1]
        starts = np.flatnonzero(np.r_[True, (K[1:] != K[:-1]) | (np.arange(1, K.size) % T == 0)])
        sums = np.add.reduceat(S, starts)
        defect += int(np.count_nonzero(sums[K[starts] >= 0]))
    return defect
