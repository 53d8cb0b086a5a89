"""m-structures: higher coproducts, their checks, and the zig-zag calculus.

An m-structure on a free complex ``C`` is a family of equivariant chain
maps ``f̃_n: R_n ⊗ C -> C^{⊗n}`` (the *adjoints*), one per rank, where
``R_n`` is a coordinate resolution (by default the bar resolution ``RS_n``
as packaged in :class:`SymmetricConstruct`). The structure map itself is
``f_n(c)(r) = (-1)^{|r||c|} f̃_n(r ⊗ c)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product

from .operads import Operad, SymmetricConstruct, TensorOperad
from .report import Report
from .symbar import Permutation, parse_cycles, permute_tensor_factors, symmetric_group, word_to_cycles
from .zmod import (FreeComplex, GradedMap, add_into, apply_tensor_maps, boundary_solution,
                   koszul_permutation_sign, tensor_power_d)


def _vec(x):
    if isinstance(x, dict):
        return x
    if hasattr(x, "coeffs"):
        return x.coeffs
    return {x: 1}


class MCoalgebra:
    """A complex together with adjoint maps ``f̃_n`` given on basis pairs.

    ``adjoint(r, c)`` returns a chain of ``C^{⊗n}`` as ``{tuple_of_labels: coeff}``
    where ``n`` is the rank of the resolution label ``r``. Values are memoized.
    """

    def __init__(self, complex: FreeComplex, adjoint, resolution: Operad | None = None,
                 name: str = "", rank_bound: int = 3, degree_bound: int = 4):
        self.complex = complex
        self.resolution = resolution if resolution is not None else SymmetricConstruct(rank_bound, degree_bound)
        self._adjoint = adjoint
        self._cache: dict = {}
        self.name = name or complex.name
        self.rank_bound = rank_bound
        self.degree_bound = degree_bound

    def __repr__(self):
        return f"MCoalgebra({self.name!r}, {self.complex!r})"

    # evaluation
    def rank_of(self, r):
        return self.resolution.rank_of(r)

    def adjoint_basis(self, r, c) -> dict:
        key = (r, c)
        try:
            return self._cache[key]
        except KeyError:
            pass
        val = {k: v for k, v in self._adjoint(r, c).items() if v}
        self._cache[key] = val
        return val

    def adjoint(self, r, c) -> dict:
        """``f̃_n(r ⊗ c)`` extended bilinearly; ``r`` and ``c`` may be labels or chains."""
        out: dict = {}
        for rl, u in _vec(r).items():
            for cl, v in _vec(c).items():
                add_into(out, self.adjoint_basis(rl, cl), u * v)
        return out

    higher_coproduct = adjoint

    def structure_value(self, c, r) -> dict:
        """``f_n(c)`` evaluated on the resolution basis element ``r``."""
        sgn = -1 if (self.resolution.degree_of(r) * self.complex.degree_of(c)) & 1 else 1
        return {k: sgn * v for k, v in self.adjoint_basis(r, c).items()}

    def unit_label(self, n):
        """The degree-0 generator ``[ ]_n`` of the rank-``n`` resolution."""
        basis = self.resolution.basis(n, 0)
        for lab in basis:
            if isinstance(lab, tuple) and len(lab) == 2 and isinstance(lab[0], Permutation):
                if lab[0].is_identity:
                    return lab
        if isinstance(self.resolution, TensorOperad):
            u1 = _unit_of(self.resolution.O1, n)
            u2 = _unit_of(self.resolution.O2, n)
            return (u1, u2)
        return basis[0]

    def coproduct(self, c) -> dict:
        return self.adjoint(self.unit_label(2), c)

    def augmentation(self, c) -> int:
        return self.adjoint(self.unit_label(0), c).get((), 0)

    def tensor_degree(self, labs):
        return sum(self.complex.degree_of(x) for x in labs)

    def act_tensor(self, h, vec):
        return permute_tensor_factors(h, vec, self.complex.degree_of)

    def generators(self, n, k):
        """Resolution elements that the checks iterate over in rank ``n`` and degree ``k``."""
        if isinstance(self.resolution, SymmetricConstruct):
            if n <= 1:
                return self.resolution.basis(n, k)
            return self.resolution.resolution(n).generators(k)
        return list(self.resolution.basis(n, k))

    # serialization (bar-resolution coordinates only)
    def table(self, rank_bound=None, degree_bound=None):
        """Nonzero adjoint values on generators ``[w] ⊗ c``."""
        rank_bound = self.rank_bound if rank_bound is None else rank_bound
        degree_bound = self.degree_bound if degree_bound is None else degree_bound
        out = []
        for n in range(rank_bound + 1):
            for k in self.resolution.degrees(n):
                if k > degree_bound:
                    continue
                for r in self.generators(n, k):
                    for deg in self.complex.degrees:
                        for c in self.complex.labels(deg):
                            val = self.adjoint_basis(r, c)
                            if val:
                                out.append((n, r[1], c, val))
        return out

    def to_json(self, rank_bound=None, degree_bound=None):
        from .zmod import label_to_json
        entries = []
        for n, word, c, val in self.table(rank_bound, degree_bound):
            entries.append({
                "rank": n, "word": word_to_cycles(word), "label": label_to_json(c),
                "value": [[label_to_json(list(k)), v] for k, v in sorted(val.items(), key=lambda kv: repr(kv[0]))],
            })
        return {"name": self.name, "complex": self.complex.to_json(),
                "rank_bound": self.rank_bound if rank_bound is None else rank_bound,
                "degree_bound": self.degree_bound if degree_bound is None else degree_bound,
                "adjoints": entries}

    @classmethod
    def from_json(cls, data):
        from .zmod import label_from_json
        C = FreeComplex.from_json(data["complex"], name=data.get("name", ""))
        table = {}
        for e in data["adjoints"]:
            n = int(e["rank"])
            word = tuple(parse_cycles(s, n) for s in e["word"])
            c = label_from_json(e["label"])
            if c not in C:
                raise ValueError(f"adjoint entry refers to unknown basis label {c!r}")
            val = {}
            for labs, v in e["value"]:
                key = tuple(label_from_json(x) for x in labs)
                if len(key) != n:
                    raise ValueError(f"value {labs!r} has the wrong arity for rank {n}")
                val[key] = int(v)
            table[(n, word, c)] = val
        return table_mstructure(C, table, name=data.get("name", ""),
                                rank_bound=int(data.get("rank_bound", 3)),
                                degree_bound=int(data.get("degree_bound", 4)))

    def dumps(self, **kw):
        return json.dumps(self.to_json(**kw), sort_keys=True)


def _unit_of(O, n):
    for lab in O.basis(n, 0):
        g = lab[0]
        if isinstance(g, Permutation) and g.is_identity:
            return lab
    return O.basis(n, 0)[0]


def table_mstructure(C: FreeComplex, table: dict, augmentation=None, name="", rank_bound=3, degree_bound=4):
    """m-structure stored on generators ``(n, word, c) -> value`` and extended equivariantly.

    Missing rank-0 and rank-1 entries default to the augmentation (vertices
    in degree 0 go to 1 unless ``augmentation`` says otherwise) and the identity.
    """
    aug = augmentation if augmentation is not None else {c: 1 for c in C.labels(0)}
    has_rank = {n for (n, _, _) in table}

    def adjoint(r, c):
        g, word = r
        n = len(g)
        if (n, word, c) in table:
            val = table[(n, word, c)]
        elif n == 0 and 0 not in has_rank:
            val = {(): aug.get(c, 0)} if not word else {}
        elif n == 1 and 1 not in has_rank:
            val = {(c,): 1} if not word else {}
        else:
            val = {}
        return permute_tensor_factors(g, val, C.degree_of) if n > 1 else val
    return MCoalgebra(C, adjoint, name=name, rank_bound=rank_bound, degree_bound=degree_bound)


# ---------------------------------------------------------------- checks


def check_mstructure(M: MCoalgebra, rank_bound: int = 3, degree_bound: int = 4) -> Report:
    """Verify the m-structure axioms on every generator within the bounds."""
    C = M.complex
    R = M.resolution
    rep = Report(f"m-structure {M.name} (rank<={rank_bound}, degree<={degree_bound})")
    labels = [c for n in C.degrees for c in C.labels(n)]
    aug = {}
    for c in labels:
        rep["identity"].record(M.adjoint(M.unit_label(1), c) == {(c,): 1}, c)
        aug[c] = M.augmentation(c)
        rep["augmentation"].record(C.degree_of(c) == 0 or not aug[c], c)
    # the augmentation kills boundaries and hits a generator of Z
    for c in C.labels(1):
        rep["augmentation"].record(sum(aug[y] * v for y, v in C.boundary_of(c).items()) == 0, c)
    if C.labels(0):
        from math import gcd
        g = 0
        for c in C.labels(0):
            g = gcd(g, aug[c])
        rep["augmentation"].record(g == 1, "augmentation is not onto Z")
    for n in range(rank_bound + 1):
        for k in R.degrees(n):
            if k > degree_bound:
                continue
            for r in M.generators(n, k):
                dr = R.boundary_of(r) if k else {}
                for c in labels:
                    val = M.adjoint_basis(r, c)
                    deg = k + C.degree_of(c)
                    rep["degree"].record(all(M.tensor_degree(t) == deg and len(t) == n for t in val), (r, c))
                    sc = C.skeleton_of(c)
                    rep["skeletal"].record(all(C.skeleton_of(x) <= sc for t in val for x in t), (r, c))
                    sv = M.structure_value(c, r)
                    sgn = -1 if (k * C.degree_of(c)) & 1 else 1
                    rep["adjoint_sign"].record({t: sgn * v for t, v in sv.items()} == val, (r, c))
                    lhs = tensor_power_d(C, val)
                    rhs = M.adjoint(dr, c)
                    add_into(rhs, M.adjoint(r, C.boundary_of(c)), -1 if k & 1 else 1)
                    rhs = {t: v for t, v in rhs.items() if v}
                    rep["chain_map"].record(lhs == rhs, (r, c))
                    if n > 1:
                        for h in symmetric_group(n):
                            moved = R.act(h, r)
                            got = M.adjoint(moved, c)
                            rep["equivariance"].record(got == M.act_tensor(h, val), (h, r, c))
    # finite support: each value is confined to finitely many ranks by degree
    top = max(C.degrees) if C.degrees else 0
    rep["finite_support"].record(True)
    rep.facts["top_degree"] = top
    rep.facts["bounds"] = {"rank": rank_bound, "degree": degree_bound}
    return rep


def _insert_factor(y, i, a_val, pre_sign):
    out: dict = {}
    for t, v in a_val.items():
        add_into(out, {y[:i - 1] + t + y[i:]: 1}, pre_sign * v)
    return out


def check_weak_coherence(M: MCoalgebra, n: int, m: int, i: int, degree_bound: int = 4) -> Report:
    """``f̃(a ∘_i b ⊗ c) = Σ (-1)^{|a|·pre} y_<i ⊗ f̃(a ⊗ y_i) ⊗ y_>i`` over ``f̃(b ⊗ c) = Σ y``.

    Here ``a ∘_i b`` inserts ``a`` into slot ``i`` of ``b`` and ``pre`` is
    the total degree of the factors before slot ``i``; this is the adjoint
    diagram with the shuffle that moves the ``C`` factor past ``R_n``.
    """
    if not 1 <= i <= m:
        raise ValueError(f"slot {i} out of range for rank {m}")
    if not hasattr(M.resolution, "compose_basis"):
        raise TypeError("resolution lacks compositions")
    C = M.complex
    R = M.resolution
    rep = Report(f"weak coherence {M.name} n={n} m={m} i={i} degree<={degree_bound}")
    rep.facts.update(n=n, m=m, i=i)
    labels = [c for d in C.degrees for c in C.labels(d)]
    for da in R.degrees(n):
        for db in R.degrees(m):
            if da + db > degree_bound:
                continue
            for a in R.basis(n, da):
                for b in R.basis(m, db):
                    comp = R.compose_basis(a, i, b)
                    for c in labels:
                        lhs = M.adjoint(comp, c)
                        rhs: dict = {}
                        for y, v in M.adjoint_basis(b, c).items():
                            pre = sum(C.degree_of(x) for x in y[:i - 1])
                            sgn = -1 if (da * pre) & 1 else 1
                            add_into(rhs, _insert_factor(y, i, M.adjoint_basis(a, y[i - 1]), sgn), v)
                        rhs = {k: v for k, v in rhs.items() if v}
                        rep["coherence"].record(lhs == rhs, (a, b, c))
    return rep


def coherence_reports(M: MCoalgebra, max_rank: int = 2, degree_bound: int = 4):
    """All weak-coherence checks with ``1 <= n, m <= max_rank``."""
    return [check_weak_coherence(M, n, m, i, degree_bound)
            for n in range(1, max_rank + 1) for m in range(1, max_rank + 1) for i in range(1, m + 1)]


def verify_coherence_identity(M: MCoalgebra, degree_bound: int = 3) -> Report:
    """``(Δ_{[(1,2)]} ⊗ 1)∘Δ_{[(1,2)]} = Δ_{[(1,3,2)|(1,2)]} - Δ_{[(1,2)|(1,2,3)]}``.

    The left side uses only rank-2 values; the right side reads the rank-3
    adjoint directly. The resolution composite is compared symbolically too.
    """
    if M.rank_bound < 3:
        raise ValueError("the identity needs the rank-3 structure map")
    R = M.resolution
    C = M.complex
    t2 = (Permutation.identity(2), (parse_cycles("(1,2)", 2),))
    e3 = Permutation.identity(3)
    w1 = (e3, (parse_cycles("(1,3,2)", 3), parse_cycles("(1,2)", 3)))
    w2 = (e3, (parse_cycles("(1,2)", 3), parse_cycles("(1,2,3)", 3)))
    printed = {w1: 1, w2: -1}
    rep = Report(f"coherence identity on {M.name} (degree<={degree_bound})")
    rep["composition"].record(R.compose_basis(t2, 1, t2) == printed, R.compose_basis(t2, 1, t2))
    for d in C.degrees:
        if d > degree_bound:
            continue
        for c in C.labels(d):
            lhs: dict = {}
            for y, v in M.adjoint_basis(t2, c).items():
                add_into(lhs, _insert_factor(y, 1, M.adjoint_basis(t2, y[0]), 1), v)
            lhs = {k: v for k, v in lhs.items() if v}
            rhs = M.adjoint(printed, c)
            rep["identity"].record(lhs == rhs, c)
            rep.facts.setdefault("nonzero_inputs", 0)
            if lhs:
                rep.facts["nonzero_inputs"] += 1
    return rep


def homotopy_commutativity(M: MCoalgebra, degree_bound: int | None = None) -> Report:
    """Check ``∂Δ_{[(1,2)]} + Δ_{[(1,2)]}∂ = s·(TΔ - Δ)`` and record the sign ``s``."""
    C = M.complex
    t2 = (Permutation.identity(2), (parse_cycles("(1,2)", 2),))
    swap = Permutation((2, 1))
    rep = Report(f"homotopy commutativity on {M.name}")
    signs = set()
    out = rep["homotopy"]
    for d in C.degrees:
        if degree_bound is not None and d > degree_bound:
            continue
        for c in C.labels(d):
            val = M.adjoint_basis(t2, c)
            lhs = tensor_power_d(C, val)
            add_into(lhs, M.adjoint(t2, C.boundary_of(c)), 1)
            lhs = {k: v for k, v in lhs.items() if v}
            delta = M.coproduct(c)
            diff = M.act_tensor(swap, delta)
            add_into(diff, delta, -1)
            diff = {k: v for k, v in diff.items() if v}
            if not diff:
                out.record(not lhs, c)
                continue
            if lhs == diff:
                signs.add(1)
                out.record(True)
            elif lhs == {k: -v for k, v in diff.items()}:
                signs.add(-1)
                out.record(True)
            else:
                out.record(False, c)
    rep["consistent_sign"].record(len(signs) <= 1, sorted(signs))
    rep.facts["sign"] = signs.pop() if len(signs) == 1 else (None if not signs else "mixed")
    return rep


# ---------------------------------------------------------------- products


def _shuffle_pairs(xs, ys, degree_of1, degree_of2):
    """``(x_1⊗..⊗x_n)⊗(y_1⊗..⊗y_n) -> ±(x_1⊗y_1)⊗..⊗(x_n⊗y_n)``."""
    n = len(xs)
    degs = [degree_of1(x) for x in xs] + [degree_of2(y) for y in ys]
    order = [k for j in range(n) for k in (j, n + j)]
    return tuple(zip(xs, ys)), koszul_permutation_sign(degs, order)


def product_mstructure(M1: MCoalgebra, M2: MCoalgebra, rank_bound: int | None = None) -> MCoalgebra:
    """m-structure on ``C_1 ⊗ C_2`` over the tensor of the two resolutions.

    ``(r_1⊗r_2) ⊗ (c_1⊗c_2) -> (-1)^{|r_2||c_1|} V_n(f̃(r_1⊗c_1) ⊗ f̃(r_2⊗c_2))``
    with ``V_n`` pairing up the factors with Koszul signs.
    """
    from .zmod import tensor
    C1, C2 = M1.complex, M2.complex
    C = tensor(C1, C2)
    R = TensorOperad(M1.resolution, M2.resolution)
    R1, R2 = M1.resolution, M2.resolution

    def adjoint(r, c):
        r1, r2 = r
        c1, c2 = c
        sgn = -1 if (R2.degree_of(r2) * C1.degree_of(c1)) & 1 else 1
        out: dict = {}
        for x, u in M1.adjoint_basis(r1, c1).items():
            for y, v in M2.adjoint_basis(r2, c2).items():
                lab, s = _shuffle_pairs(x, y, C1.degree_of, C2.degree_of)
                add_into(out, {lab: 1}, sgn * s * u * v)
        return out
    rb = rank_bound if rank_bound is not None else min(M1.rank_bound, M2.rank_bound)
    return MCoalgebra(C, adjoint, R, name=f"{M1.name}⊗{M2.name}", rank_bound=rb,
                      degree_bound=min(M1.degree_bound, M2.degree_bound))


# ---------------------------------------------------------------- morphisms


def tensor_power_map(g: GradedMap, n: int, vec: dict) -> dict:
    if n == 0:
        return dict(vec)
    return apply_tensor_maps([g] * n, vec)


class StrictMorphism:
    """A chain map ``g: C_1 -> C_2`` commuting with the structure maps.

    ``h`` maps resolution labels of the target to chains of the source's
    resolution; ``None`` means the identity (both carry the same resolution).
    """

    def __init__(self, source: MCoalgebra, target: MCoalgebra, g: GradedMap, h=None, name=""):
        if g.degree != 0:
            raise ValueError("a strict morphism has degree 0")
        self.source, self.target, self.g, self.h = source, target, g, h
        self.name = name

    def __call__(self, vec):
        return self.g(vec)

    def pull(self, r):
        return {r: 1} if self.h is None else self.h(r)

    def check(self, rank_bound: int = 2, degree_bound: int = 3) -> Report:
        rep = Report(f"strict morphism {self.name or self.g.name}")
        C1 = self.source.complex
        labels = [c for d in C1.degrees for c in C1.labels(d)]
        for c in labels:
            rep["chain_map"].record(self.g(C1.boundary_of(c)) == self.target.complex.d(self.g.image(c)), c)
        T = self.target
        for n in range(rank_bound + 1):
            for k in T.resolution.degrees(n):
                if k > degree_bound:
                    continue
                for r in T.generators(n, k):
                    for c in labels:
                        lhs = T.adjoint(r, self.g.image(c))
                        rhs = tensor_power_map(self.g, n, self.source.adjoint(self.pull(r), c))
                        rep["square"].record(lhs == {k2: v for k2, v in rhs.items() if v}, (r, c))
        return rep


def strict_compose(second: StrictMorphism, first: StrictMorphism, name="") -> StrictMorphism:
    if first.h is not None or second.h is not None:
        raise NotImplementedError("composition with resolution maps")
    return StrictMorphism(first.source, second.target, second.g.compose(first.g), name=name)


@dataclass
class Contraction:
    """Deformation-retraction data from ``big`` onto ``small``.

    ``projection: big -> small``, ``injection: small -> big`` and a degree +1
    ``homotopy`` on ``big`` with ``injection∘projection - 1 = ∂φ + φ∂``.
    """

    projection: GradedMap
    injection: GradedMap
    homotopy: GradedMap
    name: str = ""

    @property
    def big(self):
        return self.projection.source

    @property
    def small(self):
        return self.projection.target


def check_contraction(K: Contraction) -> Report:
    """All five conditions, plus the chain-map property of both maps."""
    f1, f, phi = K.projection, K.injection, K.homotopy
    C, D = K.big, K.small
    rep = Report(f"contraction {K.name}")
    for x in (x for n in D.degrees for x in D.labels(n)):
        rep["projection_after_injection"].record(f1(f.image(x)) == {x: 1}, x)
        rep["injection_chain_map"].record(f(D.boundary_of(x)) == C.d(f.image(x)), x)
        rep["homotopy_kills_injection"].record(not phi(f.image(x)), x)
    for x in (x for n in C.degrees for x in C.labels(n)):
        lhs = f(f1.image(x))
        add_into(lhs, {x: 1}, -1)
        rhs = C.d(phi.image(x))
        add_into(rhs, phi(C.boundary_of(x)), 1)
        rep["homotopy_equation"].record({k: v for k, v in lhs.items() if v} == {k: v for k, v in rhs.items() if v}, x)
        rep["homotopy_squares_to_zero"].record(not phi(phi.image(x)), x)
        rep["projection_kills_homotopy"].record(not f1(phi.image(x)), x)
        rep["projection_chain_map"].record(f1(C.boundary_of(x)) == D.d(f1.image(x)), x)
    return rep


def identity_contraction(C: FreeComplex) -> Contraction:
    one = GradedMap.identity(C)
    return Contraction(one, one, GradedMap.zero(C, C, 1), name=f"1_{C.name}")


def compose_contractions(outer: Contraction, inner: Contraction, name="") -> Contraction:
    """``outer: X -> Y`` then ``inner: Y -> Z`` gives ``X -> Z`` with ``φ = φ_1 + f φ_2 f'``."""
    f1, f, phi1 = outer.projection, outer.injection, outer.homotopy
    g1, g, phi2 = inner.projection, inner.injection, inner.homotopy
    X = f1.source
    phi = GradedMap(X, X, 1, lambda x: _plus(phi1.image(x), f(phi2(f1.image(x)))))
    return Contraction(g1.compose(f1), f.compose(g), phi, name=name)


def _plus(a, b):
    out = dict(a)
    add_into(out, b)
    return {k: v for k, v in out.items() if v}


def contraction_from_maps(big: FreeComplex, small: FreeComplex, injection: GradedMap,
                          projection: GradedMap, name="") -> Contraction:
    """Build a homotopy for given ``injection``/``projection`` with ``projection∘injection = 1``.

    A first homotopy is solved degreewise over the integers; it is then
    conjugated by ``D = injection∘projection - 1`` and squared away so that
    all side conditions hold.
    """
    h0 = _complement_homotopy(big, injection, projection)
    if h0 is None:
        h0 = _greedy_homotopy(big, injection, projection)

    def D(vec):
        out = injection(projection(vec))
        add_into(out, vec, -1)
        return {k: v for k, v in out.items() if v}

    h1 = GradedMap(big, big, 1, lambda x: D(h0(D({x: 1}))))
    h2 = GradedMap(big, big, 1, lambda x: {k: -v for k, v in h1(big.d(h1.image(x))).items()})
    return Contraction(projection, injection, h2, name=name)


def _linear(table):
    def apply(vec):
        out: dict = {}
        for k, v in vec.items():
            add_into(out, table.get(k, {}), v)
        return {k: v for k, v in out.items() if v}
    return apply


def _greedy_homotopy(big, injection, projection):
    h: dict = {}
    lo, hi = big.degree_range or (0, -1)
    for n in range(lo, hi + 1):
        for x in big.labels(n):
            target = injection(projection.image(x))
            add_into(target, {x: 1}, -1)
            prev: dict = {}
            for y, v in big.boundary_of(x).items():
                add_into(prev, h.get(y, {}), v)
            add_into(target, prev, -1)
            sol = boundary_solution(big, n, {k: v for k, v in target.items() if v})
            if sol is None:
                raise ValueError(f"maps are not homotopy inverse: no lift at {x!r}")
            h[x] = sol
    return _linear(h)


def _complement_homotopy(big, injection, projection):
    """Contract the acyclic complement of a basis inclusion.

    With ``k_w = w - ip(w)`` for the labels ``w`` outside the image, the
    kernel of the projection is a subcomplex isomorphic to the quotient, so
    a contraction ``σ`` of the quotient gives ``h = -σ`` on that summand.
    """
    image = set()
    for n in injection.source.degrees:
        for x in injection.source.labels(n):
            img = injection.image(x)
            if len(img) != 1 or next(iter(img.values())) != 1:
                return None
            image.add(next(iter(img)))
    rest = {n: [w for w in big.labels(n) if w not in image] for n in big.degrees}
    Q = FreeComplex(rest, {w: {k: v for k, v in big.boundary_of(w).items() if k not in image}
                           for labs in rest.values() for w in labs})
    sigma: dict = {}
    lo, hi = Q.degree_range or (0, -1)
    for n in range(lo, hi + 1):
        for w in Q.labels(n):
            target = {w: 1}
            for y, v in Q.boundary_of(w).items():
                add_into(target, sigma.get(y, {}), -v)
            sol = boundary_solution(Q, n, {k: v for k, v in target.items() if v})
            if sol is None:
                raise ValueError(f"maps are not homotopy inverse: complement not acyclic at {w!r}")
            sigma[w] = sol

    def k_of(vec):
        out = dict(vec)
        add_into(out, injection(projection(vec)), -1)
        return {k: v for k, v in out.items() if v}

    def h(vec):
        part = {w: v for w, v in vec.items() if w not in image}
        out: dict = {}
        for w, v in part.items():
            add_into(out, sigma.get(w, {}), -v)
        return k_of(out)
    return h


# ---------------------------------------------------------------- zig-zags


@dataclass
class Step:
    """One arrow of a zig-zag between consecutive objects.

    ``kind`` is ``"map"`` (a :class:`StrictMorphism` to the right),
    ``"right"`` (an elementary equivalence whose injection points right, so
    the right object is the big one) or ``"left"`` (injection points left).
    """

    kind: str
    morphism: StrictMorphism | None = None
    contraction: Contraction | None = None

    def underlying(self) -> GradedMap:
        if self.kind == "map":
            return self.morphism.g
        if self.kind == "right":
            return self.contraction.injection
        if self.kind == "left":
            return self.contraction.projection
        raise ValueError(f"unknown step kind {self.kind!r}")


@dataclass
class ZigZag:
    objects: list
    steps: list

    def __post_init__(self):
        if len(self.objects) != len(self.steps) + 1:
            raise ValueError("a zig-zag needs one more object than steps")
        for i, s in enumerate(self.steps):
            A, B = self.objects[i].complex, self.objects[i + 1].complex
            if s.kind == "map":
                ok = s.morphism.g.source is A and s.morphism.g.target is B
            elif s.kind == "right":
                ok = s.contraction.injection.source is A and s.contraction.injection.target is B
            elif s.kind == "left":
                ok = s.contraction.injection.source is B and s.contraction.injection.target is A
            else:
                raise ValueError(f"unknown step kind {s.kind!r}")
            if not ok:
                raise ValueError(f"step {i} does not connect objects {i} and {i + 1}")

    @property
    def source(self):
        return self.objects[0]

    @property
    def target(self):
        return self.objects[-1]

    def underlying(self) -> GradedMap:
        f = GradedMap.identity(self.source.complex)
        for s in self.steps:
            f = s.underlying().compose(f)
        return f


def _maps_equal(f: GradedMap, g: GradedMap):
    for n in f.source.degrees:
        for x in f.source.labels(n):
            if f.image(x) != g.image(x):
                return x
    return None


@dataclass
class LiftColumn:
    Z: MCoalgebra
    p: StrictMorphism
    v: Contraction  # projection Z -> C, injection C -> Z


@dataclass
class ZigZagLift:
    top: ZigZag
    a: StrictMorphism
    b: StrictMorphism
    columns: list
    t: list  # per step: Contraction between Z_i and Z_{i+1} (big side is Z_{i+1} for "right")
    phi_pairs: list = field(default_factory=list)  # (column index, φ_U, φ_Z)
    bbar: StrictMorphism | None = None


def _pushout_column(U_prev: MCoalgebra, U: MCoalgebra, K: Contraction, Zc: LiftColumn, step: int):
    """``Z' = Z ⊕ U/s(U_prev)`` with induced differential, maps and homotopy."""
    s, s1, phiU = K.injection, K.projection, K.homotopy
    Zold = Zc.Z.complex
    image = {}
    for n in U_prev.complex.degrees:
        for u in U_prev.complex.labels(n):
            img = s.image(u)
            if len(img) != 1 or next(iter(img.values())) != 1:
                raise ValueError("the injection must send basis elements to basis elements")
            image[next(iter(img))] = u
    p_prev = Zc.p.g

    def new_label(w):
        return ("u", step, w)

    def p_img(w):
        if w in image:
            return p_prev.image(image[w])
        return {new_label(w): 1}

    def p_vec(vec):
        out: dict = {}
        for w, v in vec.items():
            add_into(out, p_img(w), v)
        return out
    basis = {n: list(Zold.labels(n)) for n in Zold.degrees}
    bd = {z: Zold.boundary_of(z) for n in Zold.degrees for z in Zold.labels(n)}
    skel = {z: Zold.skeleton_of(z) for n in Zold.degrees for z in Zold.labels(n)}
    Ucx = U.complex
    for n in Ucx.degrees:
        for w in Ucx.labels(n):
            if w in image:
                continue
            basis.setdefault(n, []).append(new_label(w))
            bd[new_label(w)] = p_vec(Ucx.boundary_of(w))
            skel[new_label(w)] = Ucx.skeleton_of(w)
    Znew = FreeComplex(basis, bd, skel, name=f"Z{step}")
    p = GradedMap(Ucx, Znew, 0, p_img, name=f"p{step}")
    t = GradedMap(Zold, Znew, 0, lambda z: {z: 1}, name=f"t{step - 1}")

    def t1_img(z):
        if isinstance(z, tuple) and len(z) == 3 and z[0] == "u" and z[1] == step:
            return p_prev(s1.image(z[2]))
        return {z: 1}
    t1 = GradedMap(Znew, Zold, 0, t1_img, name=f"t'{step - 1}")

    def phi_img(z):
        if isinstance(z, tuple) and len(z) == 3 and z[0] == "u" and z[1] == step:
            return p_vec(phiU.image(z[2]))
        return {}
    phiZ = GradedMap(Znew, Znew, 1, phi_img, name=f"phiZ{step}")
    Mold = Zc.Z

    def adjoint(r, z):
        if isinstance(z, tuple) and len(z) == 3 and z[0] == "u" and z[1] == step:
            n = Mold.rank_of(r)
            return tensor_power_map(p, n, U.adjoint_basis(r, z[2]))
        return Mold.adjoint_basis(r, z)
    Mnew = MCoalgebra(Znew, adjoint, Mold.resolution, name=f"Z{step}",
                      rank_bound=Mold.rank_bound, degree_bound=Mold.degree_bound)
    tK = Contraction(t1, t, phiZ, name=f"t{step - 1}")
    return Mnew, StrictMorphism(U, Mnew, p, name=f"p{step}"), tK


def zigzag_lift(top: ZigZag, a: StrictMorphism, b: StrictMorphism) -> ZigZagLift:
    """Lift a zig-zag ``A ~> B`` over strict maps to a common target ``C``.

    Rightward equivalences are pushed out (``Z_{i+1} = Z_i ⊕ U_{i+1}/U_i``),
    leftward ones are pulled back (``Z_{i+1} = Z_i``). The third row records
    contractions ``v_i`` of each ``Z_i`` onto ``C``.
    """
    if a.source is not top.source or b.source is not top.target:
        raise ValueError("a and b must start at the ends of the zig-zag")
    if a.target is not b.target:
        raise ValueError("a and b must share their target")
    for s in top.steps:
        if s.kind == "map":
            raise ValueError("malformed zig-zag: lifting needs elementary equivalences only")
    bad = _maps_equal(b.g.compose(top.underlying()), a.g)
    if bad is not None:
        raise ValueError(f"outer square does not commute at {bad!r}")
    Cm = a.target
    col = LiftColumn(Cm, a, identity_contraction(Cm.complex))
    columns = [col]
    ts = []
    phi_pairs = []
    for i, s in enumerate(top.steps):
        U_prev, U = top.objects[i], top.objects[i + 1]
        if s.kind == "right":
            Z, p, tK = _pushout_column(U_prev, U, s.contraction, col, i + 1)
            v = compose_contractions(tK, col.v, name=f"v{i + 1}")
            col = LiftColumn(Z, p, v)
            phi_pairs.append((i + 1, s.contraction.homotopy, tK.homotopy))
        else:
            K = s.contraction
            p = StrictMorphism(U, col.Z, col.p.g.compose(K.injection), name=f"p{i + 1}")
            tK = identity_contraction(col.Z.complex)
            phi_pairs.append((i, K.homotopy, tK.homotopy))
            col = LiftColumn(col.Z, p, col.v)
        ts.append(tK)
        columns.append(col)
    vt = columns[-1].v
    bbar = StrictMorphism(top.target, columns[-1].Z, vt.injection.compose(b.g), name="bbar")
    return ZigZagLift(top, a, b, columns, ts, phi_pairs, bbar)


def check_lift(L: ZigZagLift, rank_bound: int = 2, degree_bound: int = 2) -> Report:
    """Column-by-column verification of a lift."""
    rep = Report("zig-zag lift")
    for i, col in enumerate(L.columns):
        _merge(rep, f"p{i}.strict", col.p.check(rank_bound, degree_bound))
        _merge(rep, f"v{i}.contraction", check_contraction(col.v))
        vinj = StrictMorphism(L.a.target, col.Z, col.v.injection, name=f"v{i}")
        _merge(rep, f"v{i}.strict", vinj.check(rank_bound, degree_bound))
    for i, tK in enumerate(L.t):
        _merge(rep, f"t{i}.contraction", check_contraction(tK))
        tinj = StrictMorphism(L.columns[i].Z, L.columns[i + 1].Z, tK.injection, name=f"t{i}") \
            if tK.injection.source is L.columns[i].Z.complex else None
        if tinj is not None:
            _merge(rep, f"t{i}.strict", tinj.check(rank_bound, degree_bound))
    for (j, phiU, phiZ) in L.phi_pairs:
        p = L.columns[j].p.g
        out = rep[f"phi_natural{j}"]
        U = p.source
        for n in U.degrees:
            for x in U.labels(n):
                lhs = p(phiU.image(x))
                rhs = phiZ(p.image(x))
                out.record({k: v for k, v in lhs.items() if v} == {k: v for k, v in rhs.items() if v}, x)
    _merge(rep, "splice.strict", L.bbar.check(rank_bound, degree_bound))
    last = L.columns[-1]
    proj = last.v.projection.compose(last.p.g)
    rep.facts["projection_matches_b"] = _maps_equal(proj, L.b.g) is None
    return rep


def _merge(rep: Report, prefix: str, sub: Report):
    for k, o in sub.outcomes.items():
        rep.outcomes[f"{prefix}.{k}"] = o


def example_b_table():
    """The rank-2 values listed for the two-cell complex ``Z ⊕ Z·x`` (``|x| = 3``)."""
    t = Permutation((2, 1))
    e = lambda i: (t,) * i  # noqa: E731
    return {
        (2, e(0), "1"): {("1", "1"): 1},
        (2, e(0), "x"): {("1", "x"): 1, ("x", "1"): 1},
        (2, e(2), "x"): {},
        (2, e(3), "x"): {("x", "x"): 1},
    }
