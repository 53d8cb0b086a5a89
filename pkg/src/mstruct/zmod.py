"""Free graded abelian groups, Koszul-signed maps and integral homology.

Chains are plain dicts ``{label: int}`` with zero coefficients dropped.
Labels are opaque hashables; tensor products use tuples of labels. Every
complex keeps an explicit ordered basis per degree, which fixes all
tie-breaking (matrix layouts, pivot order, serialized output).
"""
from __future__ import annotations

from math import gcd

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable, Mapping

from .snf import invariant_factors, smith_form

Label = Hashable


# ---------------------------------------------------------------- vectors


def add_into(acc: dict, vec: Mapping, scale: int = 1) -> dict:
    """``acc += scale * vec`` in place, dropping zeros."""
    if not scale:
        return acc
    for k, v in vec.items():
        c = acc.get(k, 0) + scale * v
        if c:
            acc[k] = c
        else:
            acc.pop(k, None)
    return acc


def scale(vec: Mapping, s: int) -> dict:
    return {k: s * v for k, v in vec.items()} if s else {}


def linear_combination(*terms) -> dict:
    """``linear_combination((2, u), (-1, v))`` -> ``2u - v``."""
    out: dict = {}
    for s, vec in terms:
        add_into(out, vec, s)
    return out


def sort_key(label):
    """Total order on mixed labels (strings, ints, nested tuples)."""
    if isinstance(label, tuple):
        return (2, tuple(sort_key(x) for x in label))
    if isinstance(label, int):
        return (0, label, "")
    return (1, 0, str(label))


def koszul_permutation_sign(degrees, order) -> int:
    """Sign of reordering graded factors: ``order[k]`` is the old index placed at slot k."""
    sign = 1
    n = len(order)
    for a in range(n):
        da = degrees[order[a]] & 1
        if not da:
            continue
        for b in range(a + 1, n):
            if order[a] > order[b] and degrees[order[b]] & 1:
                sign = -sign
    return sign


@dataclass(frozen=True)
class Element:
    """A homogeneous chain: a degree plus finitely supported coefficients."""

    degree: int
    coeffs: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {k: v for k, v in self.coeffs.items() if v})

    def __add__(self, other):
        self._same_degree(other)
        return Element(self.degree, linear_combination((1, self.coeffs), (1, other.coeffs)))

    def __sub__(self, other):
        self._same_degree(other)
        return Element(self.degree, linear_combination((1, self.coeffs), (-1, other.coeffs)))

    def __neg__(self):
        return Element(self.degree, scale(self.coeffs, -1))

    def __rmul__(self, s: int):
        return Element(self.degree, scale(self.coeffs, s))

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def _same_degree(self, other):
        if self.coeffs and other.coeffs and self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")


# ---------------------------------------------------------------- complexes


class FreeComplex:
    """A finitely generated free chain complex over the integers.

    ``basis`` maps a degree to its ordered labels; ``boundary`` maps a label
    to its boundary chain. ``skeleton`` optionally tags labels with the
    skeleton they belong to (defaults to the degree).
    """

    def __init__(self, basis, boundary=None, skeleton=None, name=""):
        self.basis = {int(n): tuple(labs) for n, labs in sorted(basis.items()) if labs}
        self._degree = {}
        for n, labs in self.basis.items():
            for lab in labs:
                if lab in self._degree:
                    raise ValueError(f"duplicate basis label {lab!r}")
                self._degree[lab] = n
        boundary = boundary or {}
        self._boundary = {}
        for lab, n in self._degree.items():
            img = {k: v for k, v in boundary.get(lab, {}).items() if v}
            for k in img:
                if self._degree.get(k) != n - 1:
                    raise ValueError(f"boundary of {lab!r} hits {k!r} outside degree {n - 1}")
            self._boundary[lab] = img
        self.skeleton = dict(skeleton) if skeleton else {}
        self.name = name

    # basic queries
    @property
    def degrees(self):
        return list(self.basis)

    @property
    def degree_range(self):
        return (min(self.basis), max(self.basis)) if self.basis else None

    def labels(self, n):
        return self.basis.get(n, ())

    def rank(self, n):
        return len(self.basis.get(n, ()))

    def degree_of(self, label):
        return self._degree[label]

    def __contains__(self, label):
        return label in self._degree

    def skeleton_of(self, label):
        return self.skeleton.get(label, self._degree[label])

    def boundary_of(self, label):
        return self._boundary[label]

    def d(self, vec: Mapping) -> dict:
        out: dict = {}
        for k, v in vec.items():
            add_into(out, self._boundary[k], v)
        return out

    def matrix(self, n):
        """Boundary matrix ``C_n -> C_{n-1}`` with rows/cols in basis order."""
        rows = {lab: i for i, lab in enumerate(self.labels(n - 1))}
        cols = self.labels(n)
        M = [[0] * len(cols) for _ in rows]
        for j, lab in enumerate(cols):
            for k, v in self._boundary[lab].items():
                M[rows[k]][j] = v
        return M

    def d_squared_witnesses(self):
        return [lab for lab in self._degree if self.d(self._boundary[lab])]

    def element(self, coeffs, degree=None) -> Element:
        coeffs = {k: v for k, v in coeffs.items() if v}
        if degree is None:
            degs = {self._degree[k] for k in coeffs}
            if len(degs) > 1:
                raise ValueError("inhomogeneous chain")
            degree = degs.pop() if degs else 0
        for k in coeffs:
            if self._degree[k] != degree:
                raise ValueError(f"{k!r} is not of degree {degree}")
        return Element(degree, coeffs)

    def truncate(self, lo, hi) -> "FreeComplex":
        """Sub-quotient keeping degrees in ``[lo, hi]`` (boundaries into ``lo-1`` dropped)."""
        basis = {n: labs for n, labs in self.basis.items() if lo <= n <= hi}
        bd = {lab: {k: v for k, v in self._boundary[lab].items() if lo <= self._degree[k]}
              for labs in basis.values() for lab in labs}
        return FreeComplex(basis, bd, {k: v for k, v in self.skeleton.items() if k in bd}, self.name)

    # serialization
    def to_json(self):
        return {
            "degrees": {str(n): [label_to_json(x) for x in labs] for n, labs in self.basis.items()},
            "boundary": {json.dumps(label_to_json(lab)) if not isinstance(lab, str) else lab:
                         [[label_to_json(k), v] for k, v in bd.items()]
                         for lab, bd in self._boundary.items() if bd},
        }

    @classmethod
    def from_json(cls, data, name=""):
        basis = {int(n): [label_from_json(x) for x in labs] for n, labs in data["degrees"].items()}
        boundary = {}
        for key, entries in data.get("boundary", {}).items():
            lab = key
            if key not in {x for labs in basis.values() for x in labs}:
                try:
                    lab = label_from_json(json.loads(key))
                except ValueError:
                    pass
            boundary[lab] = {label_from_json(k): int(v) for k, v in entries}
        return cls(basis, boundary, name=name)

    def __repr__(self):
        ranks = {n: len(l) for n, l in self.basis.items()}
        return f"FreeComplex({self.name or ''} ranks={ranks})"


def label_to_json(label):
    if isinstance(label, tuple):
        return [label_to_json(x) for x in label]
    return label


def label_from_json(obj):
    if isinstance(obj, list):
        return tuple(label_from_json(x) for x in obj)
    return obj


def point() -> FreeComplex:
    return FreeComplex({0: ["pt"]}, name="point")


def zero_complex() -> FreeComplex:
    return FreeComplex({}, name="zero")


# ---------------------------------------------------------------- maps


class GradedMap:
    """A homogeneous map of free graded modules, given on basis labels.

    ``rule`` is either a dict ``label -> chain`` (missing labels map to zero)
    or a callable. Images are memoized.
    """

    def __init__(self, source, target, degree: int, rule, name=""):
        self.source = source
        self.target = target
        self.degree = degree
        self._rule = rule
        self._cache: dict = {}
        self.name = name

    def image(self, label) -> dict:
        try:
            return self._cache[label]
        except KeyError:
            pass
        if callable(self._rule):
            img = self._rule(label)
        else:
            img = self._rule.get(label, {})
        img = {k: v for k, v in img.items() if v}
        self._cache[label] = img
        return img

    def __call__(self, vec: Mapping) -> dict:
        if isinstance(vec, Element):
            vec = vec.coeffs
        out: dict = {}
        for k, v in vec.items():
            add_into(out, self.image(k), v)
        return out

    def compose(self, other: "GradedMap") -> "GradedMap":
        """``self ∘ other``."""
        return GradedMap(other.source, self.target, self.degree + other.degree,
                         lambda lab: self(other.image(lab)))

    def __add__(self, other):
        return GradedMap(self.source, self.target, self.degree,
                         lambda lab: linear_combination((1, self.image(lab)), (1, other.image(lab))))

    def __sub__(self, other):
        return GradedMap(self.source, self.target, self.degree,
                         lambda lab: linear_combination((1, self.image(lab)), (-1, other.image(lab))))

    def __neg__(self):
        return GradedMap(self.source, self.target, self.degree, lambda lab: scale(self.image(lab), -1))

    def __rmul__(self, s: int):
        return GradedMap(self.source, self.target, self.degree, lambda lab: scale(self.image(lab), s))

    def boundary(self) -> "GradedMap":
        """``∂f = ∂∘f - (-1)^{deg f} f∘∂``."""
        sgn = -1 if self.degree % 2 else 1

        def rule(lab):
            return linear_combination((1, self.target.d(self.image(lab))),
                                      (-sgn, self(self.source.d({lab: 1}))))
        return GradedMap(self.source, self.target, self.degree - 1, rule)

    def chain_map_witnesses(self, degrees=None):
        D = self.boundary()
        labs = [lab for n in (degrees if degrees is not None else self.source.degrees)
                for lab in self.source.labels(n)]
        return [lab for lab in labs if D.image(lab)]

    def is_chain_map(self, degrees=None) -> bool:
        return not self.chain_map_witnesses(degrees)

    def matrix(self, n):
        """Matrix of ``source_n -> target_{n+deg}``."""
        rows = {lab: i for i, lab in enumerate(self.target.labels(n + self.degree))}
        cols = self.source.labels(n)
        M = [[0] * len(cols) for _ in rows]
        for j, lab in enumerate(cols):
            for k, v in self.image(lab).items():
                M[rows[k]][j] = v
        return M

    def equals(self, other, degrees=None) -> bool:
        labs = [lab for n in (degrees if degrees is not None else self.source.degrees)
                for lab in self.source.labels(n)]
        return all(self.image(lab) == other.image(lab) for lab in labs)

    @classmethod
    def identity(cls, C):
        return cls(C, C, 0, lambda lab: {lab: 1}, name="id")

    @classmethod
    def zero(cls, C, D, degree=0):
        return cls(C, D, degree, {}, name="0")


# ---------------------------------------------------------------- tensors


def tensor_d(complexes, vec: Mapping) -> dict:
    """Boundary on a tensor product of complexes, labels are tuples of factor labels."""
    out: dict = {}
    for labs, v in vec.items():
        sign = 1
        for i, lab in enumerate(labs):
            bd = complexes[i].boundary_of(lab)
            if bd:
                head, tail = labs[:i], labs[i + 1:]
                for k, w in bd.items():
                    key = head + (k,) + tail
                    c = out.get(key, 0) + sign * v * w
                    if c:
                        out[key] = c
                    else:
                        out.pop(key, None)
            if complexes[i].degree_of(lab) & 1:
                sign = -sign
    return out


def tensor_power_d(C, vec: Mapping) -> dict:
    out: dict = {}
    deg = C.degree_of
    for labs, v in vec.items():
        sign = 1
        for i, lab in enumerate(labs):
            bd = C.boundary_of(lab)
            if bd:
                head, tail = labs[:i], labs[i + 1:]
                for k, w in bd.items():
                    key = head + (k,) + tail
                    c = out.get(key, 0) + sign * v * w
                    if c:
                        out[key] = c
                    else:
                        out.pop(key, None)
            if deg(lab) & 1:
                sign = -sign
    return out


def tensor(*complexes: FreeComplex) -> FreeComplex:
    """Tensor product with the Koszul boundary; labels are tuples."""
    basis: dict = {}
    degs = [C.degrees for C in complexes]
    for combo in product(*degs):
        n = sum(combo)
        labs = product(*(C.labels(k) for C, k in zip(complexes, combo)))
        basis.setdefault(n, []).extend(labs)
    boundary = {}
    for labs in basis.values():
        for lab in labs:
            boundary[lab] = tensor_d(complexes, {lab: 1})
    skel = {lab: max((C.skeleton_of(x) for C, x in zip(complexes, lab)), default=0)
            for labs in basis.values() for lab in labs}
    name = "⊗".join(C.name or "?" for C in complexes)
    return FreeComplex(basis, boundary, skel, name=name)


def tensor_power(C: FreeComplex, n: int) -> FreeComplex:
    if n == 0:
        return FreeComplex({0: [()]}, name="Z")
    return tensor(*([C] * n))


def tensor_vectors(*vecs) -> dict:
    """``u ⊗ v ⊗ ...`` of chains; labels are concatenated tuples of factor labels."""
    out = {(): 1}
    for vec in vecs:
        nxt = {}
        for a, x in out.items():
            for b, y in vec.items():
                nxt[a + (b,)] = nxt.get(a + (b,), 0) + x * y
        out = {k: v for k, v in nxt.items() if v}
    return out


def apply_tensor_maps(maps, vec: Mapping) -> dict:
    """``(f_1 ⊗ ... ⊗ f_n)(x)`` with the Koszul sign ``(-1)^{deg f_i · deg x_j}`` for j < i."""
    out: dict = {}
    for labs, v in vec.items():
        sign = 1
        pref = 0
        parts = []
        for f, lab in zip(maps, labs):
            if f.degree & 1 and pref & 1:
                sign = -sign
            pref += f.source.degree_of(lab)
            parts.append(f.image(lab))
            if not parts[-1]:
                break
        else:
            add_into(out, tensor_vectors(*parts), sign * v)
    return out


def apply_tensor_map(f: GradedMap, g: GradedMap, x) -> Element:
    """``(f ⊗ g)(x)`` for ``x`` in ``C_1 ⊗ C_2`` built by :func:`tensor`."""
    coeffs = x.coeffs if isinstance(x, Element) else x
    for lab in coeffs:
        if len(lab) != 2 or lab[0] not in f.source or lab[1] not in g.source:
            raise ValueError(f"{lab!r} is not a basis element of the source tensor product")
    out = apply_tensor_maps([f, g], coeffs)
    deg = None
    if isinstance(x, Element):
        deg = x.degree + f.degree + g.degree
    elif coeffs:
        a, b = next(iter(coeffs))
        deg = f.source.degree_of(a) + g.source.degree_of(b) + f.degree + g.degree
    return Element(deg or 0, out)


def tensor_graded_maps(f: GradedMap, g: GradedMap) -> GradedMap:
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    return GradedMap(src, tgt, f.degree + g.degree, lambda lab: apply_tensor_maps([f, g], {lab: 1}))


def permute_factors(perm, vec: Mapping, degree_of: Callable) -> dict:
    """Move tensor factor ``i`` to position ``perm(i)`` (1-based), with Koszul signs."""
    out: dict = {}
    n = len(perm)
    inv = [0] * n
    for i in range(n):
        inv[perm[i] - 1] = i
    for labs, v in vec.items():
        if len(labs) != n:
            raise ValueError(f"arity mismatch: {len(labs)} factors, permutation of rank {n}")
        degs = [degree_of(x) for x in labs]
        new = tuple(labs[inv[j]] for j in range(n))
        add_into(out, {new: koszul_permutation_sign(degs, inv)}, v)
    return out


def transpose(C: FreeComplex, D: FreeComplex) -> GradedMap:
    """``T(c ⊗ d) = (-1)^{|c||d|} d ⊗ c``."""
    src, tgt = tensor(C, D), tensor(D, C)

    def rule(lab):
        c, d = lab
        s = -1 if (C.degree_of(c) * D.degree_of(d)) & 1 else 1
        return {(d, c): s}
    return GradedMap(src, tgt, 0, rule, name="T")


# ---------------------------------------------------------------- suspension


def shift_label(label, k):
    if k == 0:
        return label
    if isinstance(label, tuple) and len(label) == 3 and label[0] == "s":
        j = label[1] + k
        return label[2] if j == 0 else ("s", j, label[2])
    return ("s", k, label)


def suspend(C: FreeComplex, k: int = 1) -> FreeComplex:
    """``Σ^k C``: boundary ``(-1)^k s^k ∂ s^{-k}``, so the shift map is a chain map."""
    sgn = -1 if k % 2 else 1
    basis = {n + k: [shift_label(x, k) for x in labs] for n, labs in C.basis.items()}
    bd = {shift_label(lab, k): {shift_label(y, k): sgn * v for y, v in C.boundary_of(lab).items()}
          for labs in C.basis.values() for lab in labs}
    skel = {shift_label(lab, k): C.skeleton_of(lab) for labs in C.basis.values() for lab in labs}
    return FreeComplex(basis, bd, skel, name=f"Σ^{k}{C.name}")


def desuspend(C: FreeComplex) -> FreeComplex:
    return suspend(C, -1)


def suspension_map(C: FreeComplex, k: int = 1) -> GradedMap:
    return GradedMap(C, suspend(C, k), k, lambda lab: {shift_label(lab, k): 1}, name="s")


# ---------------------------------------------------------------- homology


@dataclass(frozen=True)
class HomologyGroup:
    """``Z^rank ⊕ Z/t_1 ⊕ ...`` with ``t_1 | t_2 | ...``."""

    rank: int
    torsion: tuple = ()

    @property
    def is_zero(self):
        return self.rank == 0 and not self.torsion

    def invariants(self):
        return tuple(self.torsion) + (0,) * self.rank

    def __str__(self):
        parts = (["Z"] if self.rank == 1 else [f"Z^{self.rank}"] if self.rank else [])
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def boundary_invariants(C: FreeComplex, n: int):
    cols = {lab: C.boundary_of(lab) for lab in C.labels(n)}
    return invariant_factors(cols, row_order=list(C.labels(n - 1)), col_order=list(C.labels(n)))


def homology(C: FreeComplex, degrees=None) -> dict:
    """Integral homology by Smith normal form, ``{n: HomologyGroup}``."""
    if degrees is None:
        degrees = range(C.degree_range[0], C.degree_range[1] + 1) if C.degree_range else []
    degrees = list(degrees)
    inv = {}
    for n in set(degrees) | {n + 1 for n in degrees}:
        inv[n] = boundary_invariants(C, n) if C.rank(n) and C.rank(n - 1) else []
    out = {}
    for n in degrees:
        rank = C.rank(n) - len(inv[n]) - len(inv[n + 1])
        out[n] = HomologyGroup(rank, tuple(t for t in inv[n + 1] if t > 1))
    return out


# ---------------------------------------------------------------- cones


@dataclass
class Cone:
    complex: FreeComplex
    inclusion: GradedMap  # target of f -> cone
    projection: GradedMap  # cone -> Σ source


def mapping_cone(f: GradedMap) -> Cone:
    """``cone(f)_n = D_n ⊕ C_{n-1}`` with ``∂(c) = f(c) - ∂c`` on the shifted copy."""
    if f.degree != 0:
        raise ValueError("mapping cone needs a degree-0 map")
    bad = f.chain_map_witnesses()
    if bad:
        raise ValueError(f"not a chain map at {bad[0]!r}")
    C, D = f.source, f.target
    basis: dict = {}
    bd = {}
    skel = {}
    for n in sorted(set(D.degrees) | {m + 1 for m in C.degrees}):
        labs = [("tgt", y) for y in D.labels(n)] + [("src", x) for x in C.labels(n - 1)]
        if labs:
            basis[n] = labs
    for y in (y for labs in D.basis.values() for y in labs):
        bd[("tgt", y)] = {("tgt", k): v for k, v in D.boundary_of(y).items()}
        skel[("tgt", y)] = D.skeleton_of(y)
    for x in (x for labs in C.basis.values() for x in labs):
        img = {("tgt", k): v for k, v in f.image(x).items()}
        add_into(img, {("src", k): v for k, v in C.boundary_of(x).items()}, -1)
        bd[("src", x)] = img
        skel[("src", x)] = C.skeleton_of(x) + 1
    K = FreeComplex(basis, bd, skel, name=f"cone({f.name})")
    SC = suspend(C)
    inc = GradedMap(D, K, 0, lambda y: {("tgt", y): 1}, name="incl")

    def proj(lab):
        tag, x = lab
        return {shift_label(x, 1): 1} if tag == "src" else {}
    return Cone(K, inc, GradedMap(K, SC, 0, proj, name="proj"))


def multiplication_map(C: FreeComplex, m: int) -> GradedMap:
    return GradedMap(C, C, 0, lambda lab: {lab: m}, name=f"x{m}")


def cochain_complex(C: FreeComplex) -> FreeComplex:
    """``Hom(C, Z)`` regraded homologically: dual of ``C_n`` sits in degree ``-n``."""
    basis = {-n: [("dual", x) for x in labs] for n, labs in C.basis.items()}
    bd: dict = {}
    for labs in C.basis.values():
        for x in labs:
            for y, v in C.boundary_of(x).items():
                # (δφ)(x) = φ(∂x); dual of y maps to dual of x with the transposed entry
                bd.setdefault(("dual", y), {})[("dual", x)] = v
    return FreeComplex(basis, bd, name=f"Hom({C.name},Z)")


def cohomology(C: FreeComplex, degrees=None) -> dict:
    """Integral cohomology ``{n: H^n(C; Z)}``."""
    K = cochain_complex(C)
    if degrees is None:
        degrees = range(C.degree_range[0], C.degree_range[1] + 1) if C.degree_range else []
    H = homology(K, [-n for n in degrees])
    return {n: H[-n] for n in degrees}


def cohomology_with_coefficients(C: FreeComplex, coefficients, degrees=None) -> dict:
    """``H^n(C; M)`` for ``M = ⊕ Z/m_i`` (``m_i = 0`` meaning ``Z``).

    Each cyclic summand is handled as the homology of the cone of
    multiplication by ``m`` on ``Hom(C, Z)``, so only integral SNF is used.
    """
    if degrees is None:
        degrees = range(C.degree_range[0], C.degree_range[1] + 1) if C.degree_range else []
    degrees = list(degrees)
    K = cochain_complex(C)
    out = {n: HomologyGroup(0, ()) for n in degrees}
    for m in coefficients:
        if m == 0:
            H = homology(K, [-n for n in degrees])
            part = {n: H[-n] for n in degrees}
        else:
            # for free K the cone of ×m is quasi-isomorphic to K ⊗ Z/m
            cone = mapping_cone(multiplication_map(K, m)).complex
            H = homology(cone, [-n for n in degrees])
            part = {n: H[-n] for n in degrees}
        out = {n: _direct_sum(out[n], part[n]) for n in degrees}
    return out


def _direct_sum(a: HomologyGroup, b: HomologyGroup) -> HomologyGroup:
    from .snf import _normalize_diagonal
    return HomologyGroup(a.rank + b.rank, tuple(t for t in _normalize_diagonal(list(a.torsion) + list(b.torsion)) if t > 1))


def integer_solve(A, b, modulus: int = 0):
    """A solution ``x`` of ``A x = b`` over ``Z`` (or ``Z/modulus``), or ``None``."""
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    if not ncols:
        ok = all((t % modulus == 0) if modulus else t == 0 for t in b)
        return [] if ok else None
    S, U, V, _, _ = smith_form(A)
    rhs = [sum(U[i][j] * b[j] for j in range(nrows)) for i in range(nrows)]
    y = [0] * ncols
    for i in range(nrows):
        s = S[i][i] if i < ncols else 0
        r = rhs[i]
        if modulus:
            r %= modulus
            if s == 0:
                if r:
                    return None
                continue
            g = gcd(s, modulus)
            if r % g:
                return None
            m2 = modulus // g
            y[i] = (r // g) * pow(s // g, -1, m2) % m2 if m2 > 1 else 0
        else:
            if s == 0:
                if r:
                    return None
                continue
            if r % s:
                return None
            y[i] = r // s
    x = [sum(V[i][j] * y[j] for j in range(ncols)) for i in range(ncols)]
    return [v % modulus for v in x] if modulus else x


def coboundary_solution(C: FreeComplex, n: int, cochain: Mapping, modulus: int = 0):
    """Solve ``δψ = cochain`` for ``ψ`` on ``C_{n-1}`` with values mod ``modulus``.

    ``cochain`` maps degree-``n`` labels to integers. Returns a dict or
    ``None`` when the cochain is not a coboundary.
    """
    rows = list(C.labels(n - 1))
    cols = list(C.labels(n))
    target = [cochain.get(x, 0) for x in cols]
    B = C.matrix(n) if rows and cols else [[] for _ in rows]
    BT = [[B[i][j] for i in range(len(rows))] for j in range(len(cols))]
    psi = integer_solve(BT, target, modulus) if cols else [0] * len(rows)
    if psi is None:
        return None
    return {lab: p for lab, p in zip(rows, psi) if p}


def boundary_solution(C: FreeComplex, n: int, chain: Mapping):
    """A chain ``y`` in degree ``n + 1`` with ``∂y = chain``, or ``None``."""
    rows = list(C.labels(n))
    cols = list(C.labels(n + 1))
    target = [chain.get(x, 0) for x in rows]
    if not rows:
        return {}
    if not cols:
        return {} if not any(target) else None
    y = integer_solve(C.matrix(n + 1), target)
    if y is None:
        return None
    return {lab: v for lab, v in zip(cols, y) if v}
