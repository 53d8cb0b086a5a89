"""Operads in chain complexes and brute-force checks of their axioms.

Composition convention: ``compose(s1, k, s2)`` is ``s1 ∘_k s2``, the operation
``s1`` substituted into slot ``k`` of ``s2``. In the endomorphism operad this
is ``(1 ⊗ ... ⊗ s1 ⊗ ... ⊗ 1) ∘ s2``: ``s2`` is applied first. Elements are
dicts ``{basis label: int}``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .report import Outcome
from .surjection import be_compose
from .symbar import (BarResolution, Permutation, from_simplices, simplex_sign,
                     symmetric_group, to_simplex)
from .zmod import FreeComplex, GradedMap, add_into, tensor_power


class Operad:
    """Abstract operad: subclasses supply basis, boundary and ``∘_k`` on basis labels."""

    name = "operad"
    min_rank = 0

    def rank_of(self, label) -> int:
        raise NotImplementedError

    def degree_of(self, label) -> int:
        raise NotImplementedError

    def degrees(self, rank):
        """Degrees in which the rank-``rank`` component is nonzero (finite window)."""
        raise NotImplementedError

    def basis(self, rank, degree):
        raise NotImplementedError

    def boundary_of(self, label) -> dict:
        raise NotImplementedError

    def compose_basis(self, x, k, y) -> dict:
        raise NotImplementedError

    @property
    def unit(self):
        return None

    def act(self, h, label):
        """Symmetric-group action on a basis label, or ``None`` when there is none."""
        return None

    # bilinear extensions
    def d(self, vec) -> dict:
        out: dict = {}
        for lab, v in vec.items():
            add_into(out, self.boundary_of(lab), v)
        return out

    def compose(self, u, k, v) -> dict:
        out: dict = {}
        for x, a in u.items():
            for y, b in v.items():
                add_into(out, self.compose_basis(x, k, y), a * b)
        return out

    def elements(self, rank, degree_bound):
        return [lab for deg in self.degrees(rank) if deg <= degree_bound
                for lab in self.basis(rank, deg)]


# ---------------------------------------------------------------- trivial operad


class TrivialOperad(Operad):
    """One degree-0 generator ``b_i`` in every rank; ``b_i ∘_k b_j = b_{i+j-1}``."""

    name = "I"

    def rank_of(self, label):
        return label[1]

    def degree_of(self, label):
        return 0

    def degrees(self, rank):
        return [0]

    def basis(self, rank, degree):
        return [("b", rank)] if degree == 0 and rank >= 0 else []

    def boundary_of(self, label):
        return {}

    def compose_basis(self, x, k, y):
        if not 1 <= k <= y[1]:
            raise ValueError(f"slot {k} out of range for rank {y[1]}")
        return {("b", x[1] + y[1] - 1): 1}

    @property
    def unit(self):
        return {("b", 1): 1}

    def act(self, h, label):
        return {label: 1}


def trivial_operad() -> TrivialOperad:
    return TrivialOperad()


# ---------------------------------------------------------------- endomorphism operad


class EndomorphismOperad(Operad):
    """``P(C)``: rank ``i`` is ``Hom(C, C^i)``, plus the rank-0 element ``e`` (the augmentation).

    Basis labels are elementary maps ``("map", x, y)`` sending the basis
    element ``x`` to the tensor basis element ``y`` and everything else to 0.
    """

    def __init__(self, C: FreeComplex, rank_bound: int = 3, degree_window=None, augmentation=None):
        self.C = C
        self.rank_bound = rank_bound
        self.name = f"P({C.name})"
        if augmentation is None:
            augmentation = {x: 1 for x in C.labels(0)}
        self.augmentation = augmentation
        self._powers = {i: tensor_power(C, i) for i in range(0, rank_bound + 1)}
        self._basis: dict = {}
        for i, T in self._powers.items():
            for x in (x for n in C.degrees for x in C.labels(n)):
                for m in T.degrees:
                    for y in T.labels(m):
                        deg = m - C.degree_of(x)
                        if degree_window is None or degree_window[0] <= deg <= degree_window[1]:
                            self._basis.setdefault((i, deg), []).append(("map", x, y))
        self.window = degree_window

    def rank_of(self, label):
        return len(label[2])

    def degree_of(self, label):
        _, x, y = label
        return self._powers[len(y)].degree_of(y) - self.C.degree_of(x)

    def degrees(self, rank):
        return sorted({deg for (i, deg) in self._basis if i == rank})

    def basis(self, rank, degree):
        return self._basis.get((rank, degree), [])

    def boundary_of(self, label):
        _, x, y = label
        T = self._powers[len(y)]
        sgn = -1 if self.degree_of(label) % 2 else 1
        out = {("map", x, z): v for z, v in T.boundary_of(y).items()}
        # - (-1)^{deg f} f∘∂ : f(∂w) picks w with x in ∂w
        for n in self.C.degrees:
            for w in self.C.labels(n):
                c = self.C.boundary_of(w).get(x)
                if c:
                    add_into(out, {("map", w, y): 1}, -sgn * c)
        return out

    def compose_basis(self, s1, k, s2):
        _, x2, y2 = s2
        if not 1 <= k <= len(y2):
            raise ValueError(f"slot {k} out of range for rank {len(y2)}")
        target = y2[k - 1]
        pre = sum(self.C.degree_of(z) for z in y2[:k - 1])
        _, x1, y1 = s1
        if x1 != target:
            return {}
        sgn = -1 if (self.degree_of(s1) * pre) % 2 else 1
        return {("map", x2, y2[:k - 1] + y1 + y2[k:]): sgn}

    @property
    def unit(self):
        return self.identity()

    def identity(self):
        return {("map", x, (x,)): 1 for n in self.C.degrees for x in self.C.labels(n)}

    @property
    def e(self):
        """The rank-0 generator: the augmentation ``C -> Z``."""
        return {("map", x, ()): v for x, v in self.augmentation.items() if v}

    def act(self, h, label):
        _, x, y = label
        from .symbar import permute_tensor_factors
        return {("map", x, z): v
                for z, v in permute_tensor_factors(h, {y: 1}, self.C.degree_of).items()}

    # conversions
    def from_map(self, f: GradedMap) -> dict:
        """A graded map ``C -> C^i`` as a combination of elementary maps."""
        out: dict = {}
        for n in self.C.degrees:
            for x in self.C.labels(n):
                for y, v in f.image(x).items():
                    y = y if isinstance(y, tuple) else (y,)
                    add_into(out, {("map", x, y): 1}, v)
        return out

    def evaluate(self, elem, x) -> dict:
        """Apply a combination of elementary maps to a basis element of ``C``."""
        out: dict = {}
        for lab, v in elem.items():
            if lab[1] == x:
                add_into(out, {lab[2]: 1}, v)
        return out


def endomorphism_operad(C, rank_bound=3, degree_window=None, augmentation=None):
    return EndomorphismOperad(C, rank_bound, degree_window, augmentation)


# ---------------------------------------------------------------- tensor of operads


class TensorOperad(Operad):
    """Componentwise tensor product with ``(a⊗b)∘_i(c⊗d) = (-1)^{|b||c|}(a∘_i c ⊗ b∘_i d)``."""

    def __init__(self, O1: Operad, O2: Operad):
        self.O1, self.O2 = O1, O2
        self.name = f"{O1.name}⊗{O2.name}"

    def rank_of(self, label):
        return self.O1.rank_of(label[0])

    def degree_of(self, label):
        return self.O1.degree_of(label[0]) + self.O2.degree_of(label[1])

    def degrees(self, rank):
        return sorted({a + b for a in self.O1.degrees(rank) for b in self.O2.degrees(rank)})

    def basis(self, rank, degree):
        out = []
        for a in self.O1.degrees(rank):
            b = degree - a
            if b in self.O2.degrees(rank):
                out.extend(product(self.O1.basis(rank, a), self.O2.basis(rank, b)))
        return out

    def boundary_of(self, label):
        a, b = label
        out = {(x, b): v for x, v in self.O1.boundary_of(a).items()}
        sgn = -1 if self.O1.degree_of(a) % 2 else 1
        for y, v in self.O2.boundary_of(b).items():
            add_into(out, {(a, y): 1}, sgn * v)
        return out

    def compose_basis(self, x, k, y):
        a, b = x
        c, d = y
        if self.O1.rank_of(a) != self.O2.rank_of(b) or self.O1.rank_of(c) != self.O2.rank_of(d):
            raise ValueError("rank mismatch in tensor pairing")
        sgn = -1 if (self.O2.degree_of(b) * self.O1.degree_of(c)) % 2 else 1
        left = self.O1.compose_basis(a, k, c)
        right = self.O2.compose_basis(b, k, d)
        out: dict = {}
        for p, u in left.items():
            for q, v in right.items():
                add_into(out, {(p, q): 1}, sgn * u * v)
        return out

    @property
    def unit(self):
        u1, u2 = self.O1.unit, self.O2.unit
        if u1 is None or u2 is None:
            return None
        return {(p, q): a * b for p, a in u1.items() for q, b in u2.items()}

    def act(self, h, label):
        ra, rb = self.O1.act(h, label[0]), self.O2.act(h, label[1])
        if ra is None or rb is None:
            return None
        return {(p, q): u * v for p, u in ra.items() for q, v in rb.items()}


def tensor_operad(O1, O2) -> TensorOperad:
    return TensorOperad(O1, O2)


# ---------------------------------------------------------------- symmetric construct


class SymmetricConstruct(Operad):
    """The operad ``𝔖`` with components ``RS_n``.

    Compositions come from the Barratt–Eccles operad: the two simplices are
    combined by the Eilenberg–Zilber shuffle and block substitution of
    permutations, then carried back to bar words. ``RS_0`` is spanned by the
    empty permutation.
    """

    name = "S"

    def __init__(self, rank_bound: int = 4, degree_bound: int = 4):
        self.rank_bound = rank_bound
        self.degree_bound = degree_bound
        self._res = {n: BarResolution(n) for n in range(rank_bound + 1)}

    def resolution(self, n) -> BarResolution:
        if n not in self._res:
            self._res[n] = BarResolution(n)
        return self._res[n]

    def rank_of(self, label):
        return len(label[0])

    def degree_of(self, label):
        return len(label[1])

    def degrees(self, rank):
        return [0] if rank <= 1 else list(range(self.degree_bound + 1))

    def basis(self, rank, degree):
        if rank <= 1:
            return [(Permutation.identity(rank), ())] if degree == 0 else []
        return self.resolution(rank).basis(degree)

    def boundary_of(self, label):
        return self.resolution(self.rank_of(label)).boundary_of(label)

    def compose_basis(self, x, k, y):
        m = self.rank_of(y)
        if not 1 <= k <= m:
            raise ValueError(f"slot {k} out of range for rank {m}")
        sx = tuple(tuple(v) for v in to_simplex(x))
        sy = tuple(tuple(v) for v in to_simplex(y))
        raw = be_compose(sx, sy, k)
        sgn = simplex_sign(len(x[1])) * simplex_sign(len(y[1]))
        return {lab: sgn * v for lab, v in
                from_simplices({tuple(Permutation(p) for p in s): c for s, c in raw.items()}).items()}

    @property
    def unit(self):
        return {(Permutation.identity(1), ()): 1}

    def act(self, h, label):
        return self.resolution(len(h)).act(h, {label: 1})


def symmetric_construct(rank_bound=4, degree_bound=4) -> SymmetricConstruct:
    return SymmetricConstruct(rank_bound, degree_bound)


# ---------------------------------------------------------------- morphisms


class OperadMorphism:
    """A rank-preserving degree-0 map of operads given on basis labels."""

    def __init__(self, source: Operad, target: Operad, rule, name=""):
        self.source, self.target = source, target
        self._rule = rule
        self.name = name
        self._cache: dict = {}

    def image(self, label) -> dict:
        if label not in self._cache:
            self._cache[label] = {k: v for k, v in self._rule(label).items() if v}
        return self._cache[label]

    def __call__(self, vec) -> dict:
        out: dict = {}
        for lab, v in vec.items():
            add_into(out, self.image(lab), v)
        return out

    def check(self, rank_bound, degree_bound, min_rank=1):
        """Witnesses where compositions or differentials are not preserved."""
        S, T = self.source, self.target
        bad = []
        els = {r: S.elements(r, degree_bound) for r in range(min_rank, rank_bound + 1)}
        for r, labs in els.items():
            for x in labs:
                if self(S.boundary_of(x)) != T.d(self.image(x)):
                    bad.append(("boundary", x))
        for r1, r2 in product(els, els):
            if r1 + r2 - 1 > rank_bound or r2 < 1:
                continue
            for x, y in product(els[r1], els[r2]):
                if S.degree_of(x) + S.degree_of(y) > degree_bound:
                    continue
                for k in range(1, r2 + 1):
                    if self(S.compose_basis(x, k, y)) != T.compose(self.image(x), k, self.image(y)):
                        bad.append(("compose", x, k, y))
        return bad


def augmentation_morphism(S: SymmetricConstruct) -> OperadMorphism:
    """``𝔖 -> I``: degree-0 words go to ``b_n``, everything else to 0."""
    I = trivial_operad()
    return OperadMorphism(S, I, lambda lab: {("b", len(lab[0])): 1} if not lab[1] else {},
                          name="augmentation")


@dataclass
class CoalgebraCheck:
    ok: bool
    failure: str = ""
    witness: object = None
    morphism: OperadMorphism | None = None


def iterated_coproduct(P: EndomorphismOperad, delta: dict, n: int) -> dict:
    """``b_n ↦ Δ ∘_1 (Δ ∘_1 ... Δ)``; ``b_1 ↦ id``, ``b_0 ↦ e``."""
    if n == 0:
        return P.e
    if n == 1:
        return P.identity()
    cur = dict(delta)
    for _ in range(n - 2):
        cur = P.compose(delta, 1, cur)
    return cur


def coalgebra_as_morphism(delta: GradedMap, rank_bound: int = 3, augmentation=None) -> CoalgebraCheck:
    """Turn a coproduct ``Δ: C -> C ⊗ C`` into a morphism ``I -> P(C)``.

    Fails with a witness basis element unless ``Δ`` is a degree-0 chain map
    that is coassociative and counital.
    """
    C = delta.source
    if delta.degree != 0:
        return CoalgebraCheck(False, "degree", delta.degree)
    bad = delta.chain_map_witnesses()
    if bad:
        return CoalgebraCheck(False, "chain map", bad[0])
    P = EndomorphismOperad(C, max(rank_bound, 3), augmentation=augmentation)
    D = P.from_map(delta)
    left = P.compose(D, 1, D)   # (Δ⊗1)Δ
    right = P.compose(D, 2, D)  # (1⊗Δ)Δ
    for n in C.degrees:
        for x in C.labels(n):
            if P.evaluate(left, x) != P.evaluate(right, x):
                return CoalgebraCheck(False, "coassociativity", x)
    ident = P.identity()
    for k in (1, 2):
        counit = P.compose(P.e, k, D)
        for n in C.degrees:
            for x in C.labels(n):
                if P.evaluate(counit, x) != P.evaluate(ident, x):
                    return CoalgebraCheck(False, "counit", x)
    images = {n: iterated_coproduct(P, D, n) for n in range(rank_bound + 1)}
    m = OperadMorphism(TrivialOperad(), P, lambda lab: images.get(lab[1], {}), name="coalgebra")
    return CoalgebraCheck(True, morphism=m)


# ---------------------------------------------------------------- identity checks


@dataclass
class OperadReport:
    operad: str
    rank_bound: int
    degree_bound: int
    results: dict = field(default_factory=dict)

    @property
    def orientations(self):
        """Readings of the commutation identity that hold within bounds."""
        return tuple(v for v in ("printed", "koszul") if self.results["commutation"][v].passed)

    @property
    def orientation(self):
        """The reading that holds, preferring the unsigned one; ``None`` if neither does."""
        return self.orientations[0] if self.orientations else None

    @property
    def passed(self):
        r = self.results
        return (r["associativity"]["printed"].passed and self.orientation is not None
                and r["leibniz"].passed and r["unit"].passed and r["rank_degree"].passed)

    def to_json(self):
        out = {"operad": self.operad, "rank_bound": self.rank_bound,
               "degree_bound": self.degree_bound, "orientations": list(self.orientations),
               "passed": self.passed}
        for key, val in self.results.items():
            out[key] = val.to_json() if isinstance(val, Outcome) else {
                k: v.to_json() for k, v in val.items()}
        return out


def _rank_degree_ok(O, x, k, y, result):
    r = O.rank_of(x) + O.rank_of(y) - 1
    d = O.degree_of(x) + O.degree_of(y)
    return all(O.rank_of(z) == r and O.degree_of(z) == d for z in result)


def check_operad_identities(O: Operad, rank_bound: int, degree_bound: int,
                            sample: int | None = None, seed: int = 0,
                            min_rank: int | None = None) -> OperadReport:
    """Evaluate the operad axioms on basis elements within bounds.

    * associativity: ``(S1 ∘_i S2) ∘_j S3 = S1 ∘_{i+j-1} (S2 ∘_j S3)``;
    * commutation for ``j < i``: ``S1 ∘_{i+r2-1} (S2 ∘_j S3)`` against
      ``S2 ∘_j (S1 ∘_i S3)``, both as printed (no sign) and with the
      Koszul sign ``(-1)^{|S1||S2|}``;
    * Leibniz rule, unit laws, and rank/degree arithmetic.

    Only composites of rank ``<= rank_bound`` and degree ``<= degree_bound``
    are visited. ``sample`` caps the number of triples per rank pattern.
    """
    rng = random.Random(seed)
    lo = O.min_rank if min_rank is None else min_rank
    els = {r: O.elements(r, degree_bound) for r in range(lo, rank_bound + 1)}
    deg = O.degree_of
    res = {"associativity": {"printed": Outcome()},
           "commutation": {"printed": Outcome(), "koszul": Outcome()},
           "leibniz": Outcome(), "unit": Outcome(), "rank_degree": Outcome()}

    def pick(pool):
        pool = list(pool)
        if sample is not None and len(pool) > sample:
            return rng.sample(pool, sample)
        return pool

    # pairs: Leibniz and rank/degree arithmetic
    for r1, r2 in product(els, els):
        if r2 < 1 or r1 + r2 - 1 > rank_bound:
            continue
        pairs = [(x, y) for x, y in product(els[r1], els[r2]) if deg(x) + deg(y) <= degree_bound]
        for x, y in pick(pairs):
            for k in range(1, r2 + 1):
                comp = O.compose_basis(x, k, y)
                res["rank_degree"].record(_rank_degree_ok(O, x, k, y, comp), (x, k, y))
                lhs = O.d(comp)
                rhs = O.compose(O.boundary_of(x), k, {y: 1})
                add_into(rhs, O.compose({x: 1}, k, O.boundary_of(y)), -1 if deg(x) % 2 else 1)
                res["leibniz"].record(lhs == rhs, (x, k, y))

    # units
    u = O.unit
    if u is not None:
        for r, labs in els.items():
            for x in labs:
                res["unit"].record(O.compose({x: 1}, 1, u) == {x: 1}, ("right", x))
                for k in range(1, r + 1):
                    res["unit"].record(O.compose(u, k, {x: 1}) == {x: 1}, ("left", k, x))

    # triples
    for r1, r2, r3 in product(els, els, els):
        if r2 < 1 or r3 < 1 or r1 + r2 + r3 - 2 > rank_bound:
            continue
        triples = [(a, b, c) for a, b, c in product(els[r1], els[r2], els[r3])
                   if deg(a) + deg(b) + deg(c) <= degree_bound]
        for a, b, c in pick(triples):
            A, B, Cc = {a: 1}, {b: 1}, {c: 1}
            for i in range(1, r2 + 1):
                for j in range(1, r3 + 1):
                    lhs = O.compose(O.compose(A, i, B), j, Cc)
                    rhs = O.compose(A, i + j - 1, O.compose(B, j, Cc))
                    res["associativity"]["printed"].record(lhs == rhs, (a, i, b, j, c))
            for i in range(1, r3 + 1):
                for j in range(1, i):
                    lhs = O.compose(A, i + r2 - 1, O.compose(B, j, Cc))
                    rhs = O.compose(B, j, O.compose(A, i, Cc))
                    res["commutation"]["printed"].record(lhs == rhs, (a, i, b, j, c))
                    s = -1 if (deg(a) * deg(b)) % 2 else 1
                    res["commutation"]["koszul"].record(
                        lhs == {k: s * v for k, v in rhs.items()}, (a, i, b, j, c))
    return OperadReport(getattr(O, "name", "operad"), rank_bound, degree_bound, res)


# ---------------------------------------------------------------- equivariance of 𝔖


def block_permutation(h: Permutation, k: int, size: int) -> Permutation:
    """``h`` with slot ``k`` blown up into a block of ``size`` consecutive slots."""
    hk = h(k)
    if size == 0:
        keep = [h(i) for i in range(1, len(h) + 1) if i != k]
        return Permutation(v if v < hk else v - 1 for v in keep)
    out = []
    for i in range(1, len(h) + 1):
        v = h(i)
        base = v if v < hk else v + size - 1
        if i == k:
            out.extend(hk + t for t in range(size))
        else:
            out.append(base)
    return Permutation(out)


def check_symmetric_equivariance(S: SymmetricConstruct, rank_bound: int, degree_bound: int):
    """Witnesses where ``S1 ∘_k (h·S2) = h'·(S1 ∘_{h^{-1}(k)} S2)`` fails (``h'`` the blown-up ``h``)."""
    bad = []
    for r2 in range(1, rank_bound + 1):
        for r1 in range(0, rank_bound - r2 + 2):
            for x in S.elements(r1, degree_bound):
                for y in S.elements(r2, degree_bound - S.degree_of(x)):
                    for h in symmetric_group(r2):
                        hy = S.act(h, y)
                        for k in range(1, r2 + 1):
                            lhs = S.compose({x: 1}, k, hy)
                            kk = h.inverse()(k)
                            hb = block_permutation(h, kk, r1)
                            rhs = S.resolution(len(hb)).act(hb, S.compose_basis(x, kk, y))
                            if lhs != rhs:
                                bad.append((x, k, h, y))
    return bad
