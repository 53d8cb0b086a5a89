"""Cobar constructions, twisted tensor products and k-invariants.

Sign conventions (the only ones used anywhere): a cobar word
``[c_1|...|c_k]`` has degree ``Σ(|c_i| - 1)``; on one letter

    d[c] = -[∂c] + Σ (-1)^{|c'|} [c'|c'']      (reduced coproduct ``Σ c'⊗c''``)

extended as a derivation with Koszul signs in the desuspended degrees. The
canonical twisting cochain is ``α(c) = [c]`` on the coideal, and

    d_τ(x⊗w) = ∂x⊗w + (-1)^{|x|} x⊗dw - Σ (-1)^{|x'|} x'⊗τ(x'')·w .
"""
from __future__ import annotations

from dataclasses import dataclass, field
from .report import Report
from .snf import smith_form
from .zmod import FreeComplex, GradedMap, HomologyGroup, add_into, coboundary_solution, homology, mapping_cone


@dataclass
class Coalgebra:
    """A complex with a coproduct and counit given on basis labels."""

    complex: FreeComplex
    coproduct: object  # label -> {(a, b): coeff}
    counit: dict
    name: str = ""

    @classmethod
    def from_mcoalgebra(cls, M):
        C = M.complex
        return cls(C, M.coproduct, {c: M.augmentation(c) for c in C.labels(0)}, name=M.name)

    def unit_label(self):
        labs = self.complex.labels(0)
        if len(labs) != 1:
            raise ValueError(f"{self.name or 'coalgebra'} is not reduced: {len(labs)} cells in degree 0")
        return labs[0]

    def reduced_coproduct(self, c) -> dict:
        one = self.unit_label()
        out = {k: v for k, v in self.coproduct(c).items() if one not in k}
        return out

    def coassociativity_witness(self):
        C = self.complex
        for n in C.degrees:
            for c in C.labels(n):
                left: dict = {}
                right: dict = {}
                for (a, b), v in self.coproduct(c).items():
                    for (a1, a2), u in self.coproduct(a).items():
                        add_into(left, {(a1, a2, b): 1}, u * v)
                    for (b1, b2), u in self.coproduct(b).items():
                        add_into(right, {(a, b1, b2): 1}, u * v)
                if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
                    return c
        return None

    def counit_witness(self):
        C = self.complex
        for n in C.degrees:
            for c in C.labels(n):
                d = self.coproduct(c)
                left: dict = {}
                right: dict = {}
                for (a, b), v in d.items():
                    if C.degree_of(a) == 0:
                        add_into(left, {b: self.counit.get(a, 0)}, v)
                    if C.degree_of(b) == 0:
                        add_into(right, {a: self.counit.get(b, 0)}, v)
                if {k: v for k, v in left.items() if v} != {c: 1} or {k: v for k, v in right.items() if v} != {c: 1}:
                    return c
        return None


def word_degree(C: FreeComplex, word) -> int:
    return sum(C.degree_of(c) - 1 for c in word)


def _words(letters_by_degree, n):
    """Words of total desuspended degree ``n``."""
    if n == 0:
        return [()]
    out = []
    for d, labs in letters_by_degree.items():
        if 1 <= d <= n:
            for rest in _words(letters_by_degree, n - d):
                for c in labs:
                    out.append((c,) + rest)
    return sorted(set(out), key=lambda w: (len(w), [repr(x) for x in w]))


@dataclass
class CobarComplex:
    coalgebra: Coalgebra
    complex: FreeComplex
    degree_bound: int

    def d(self, vec):
        return self.complex.d(vec)

    def multiply(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for a, x in u.items():
            for b, y in v.items():
                add_into(out, {a + b: 1}, x * y)
        return out

    def alpha(self, c) -> dict:
        """Canonical twisting cochain on a basis label."""
        C = self.coalgebra.complex
        return {(c,): 1} if C.degree_of(c) > 0 else {}

    def leibniz_witness(self):
        K = self.complex
        for n in K.degrees:
            for m in K.degrees:
                if n + m > self.degree_bound:
                    continue
                for u in K.labels(n):
                    for v in K.labels(m):
                        lhs = K.d({u + v: 1})
                        rhs = self.multiply(K.boundary_of(u), {v: 1})
                        add_into(rhs, self.multiply({u: 1}, K.boundary_of(v)), -1 if n & 1 else 1)
                        if {k: x for k, x in lhs.items() if x} != {k: x for k, x in rhs.items() if x}:
                            return (u, v)
        return None


def _letter_d(co: Coalgebra, c) -> dict:
    C = co.complex
    out: dict = {}
    for y, v in C.boundary_of(c).items():
        if C.degree_of(y) > 0:
            add_into(out, {(y,): 1}, -v)
    for (a, b), v in co.reduced_coproduct(c).items():
        add_into(out, {(a, b): 1}, (-1 if C.degree_of(a) & 1 else 1) * v)
    return out


def _word_d(co: Coalgebra, word) -> dict:
    C = co.complex
    out: dict = {}
    pre = 0
    for i, c in enumerate(word):
        sgn = -1 if pre & 1 else 1
        for w, v in _letter_d(co, c).items():
            add_into(out, {word[:i] + w + word[i + 1:]: 1}, sgn * v)
        pre += C.degree_of(c) - 1
    return out


def cobar(co, degree_bound: int) -> CobarComplex:
    """Truncated cobar construction of a 1-reduced coassociative coalgebra."""
    if not isinstance(co, Coalgebra):
        co = Coalgebra.from_mcoalgebra(co)
    C = co.complex
    co.unit_label()
    if C.labels(1):
        raise ValueError(f"not 1-reduced: {len(C.labels(1))} cells in degree 1")
    bad = co.coassociativity_witness()
    if bad is not None:
        raise ValueError(f"coproduct is not coassociative at {bad!r}")
    letters: dict = {}
    for n in C.degrees:
        if n >= 2:
            letters[n - 1] = list(C.labels(n))
    basis = {n: _words(letters, n) for n in range(degree_bound + 1)}
    bd = {w: _word_d(co, w) for labs in basis.values() for w in labs}
    K = FreeComplex(basis, bd, name=f"cobar({co.name})")
    if K.d_squared_witnesses():
        raise ValueError(f"cobar differential does not square to zero at {K.d_squared_witnesses()[0]!r}")
    return CobarComplex(co, K, degree_bound)


@dataclass
class TwistingCochain:
    """``τ: A -> Ω`` of degree -1, given on basis labels of ``A``."""

    source: Coalgebra
    cobar: CobarComplex
    rule: object  # label -> dict of words

    def __call__(self, x) -> dict:
        return self.rule(x)


def canonical_twisting(Om: CobarComplex) -> TwistingCochain:
    return TwistingCochain(Om.coalgebra, Om, Om.alpha)


def composite_twisting(Om: CobarComplex, a: GradedMap, source: Coalgebra) -> TwistingCochain:
    """``α∘a`` for a coalgebra map ``a: A -> C``."""
    def rule(x):
        out: dict = {}
        for c, v in a.image(x).items():
            add_into(out, Om.alpha(c), v)
        return out
    return TwistingCochain(source, Om, rule)


def twisted_tensor(A: Coalgebra, tau: TwistingCochain, degree_bound: int | None = None) -> FreeComplex:
    """``A ⊗_τ Ω`` truncated at total degree ``degree_bound``; ``∂² = 0`` is enforced."""
    Om = tau.cobar
    K = Om.complex
    N = Om.degree_bound if degree_bound is None else min(degree_bound, Om.degree_bound)
    CA = A.complex
    basis: dict = {}
    for p in CA.degrees:
        for q in K.degrees:
            if p + q <= N:
                basis.setdefault(p + q, []).extend((x, w) for x in CA.labels(p) for w in K.labels(q))
    bd = {}
    for labs in basis.values():
        for (x, w) in labs:
            out: dict = {}
            for y, v in CA.boundary_of(x).items():
                add_into(out, {(y, w): 1}, v)
            sx = -1 if CA.degree_of(x) & 1 else 1
            for u, v in K.boundary_of(w).items():
                add_into(out, {(x, u): 1}, sx * v)
            for (x1, x2), v in A.coproduct(x).items():
                s1 = 1 if CA.degree_of(x1) & 1 else -1
                for t, u in tau(x2).items():
                    add_into(out, {(x1, t + w): 1}, s1 * u * v)
            bd[(x, w)] = {k: v for k, v in out.items() if v}
    T = FreeComplex(basis, bd, name=f"{A.name}⊗τΩ")
    bad = T.d_squared_witnesses()
    if bad:
        raise ValueError(f"twisted differential does not square to zero at {bad[0]!r}")
    return T


def cobar_functor(g: GradedMap, source: CobarComplex, target: CobarComplex) -> GradedMap:
    """``Ω(g)`` on words; ``g`` must be a coalgebra map."""
    cs, ct = source.coalgebra, target.coalgebra
    C = cs.complex
    for n in C.degrees:
        for c in C.labels(n):
            lhs: dict = {}
            for k, v in cs.coproduct(c).items():
                for a, u in g.image(k[0]).items():
                    for b, w in g.image(k[1]).items():
                        add_into(lhs, {(a, b): 1}, u * v * w)
            rhs: dict = {}
            for y, v in g.image(c).items():
                add_into(rhs, ct.coproduct(y), v)
            if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
                raise ValueError(f"not a coalgebra map at {c!r}")

    def rule(word):
        out = {(): 1}
        for c in word:
            nxt: dict = {}
            for w, v in out.items():
                for y, u in g.image(c).items():
                    add_into(nxt, {w + (y,): 1}, u * v)
            out = nxt
        return {k: v for k, v in out.items() if v}
    return GradedMap(source.complex, target.complex, 0, rule, name=f"Ω({g.name})")


# ---------------------------------------------------------------- rows over lifted zig-zags


@dataclass
class CobarRow:
    complexes: list
    maps: list  # (index_from, index_to, GradedMap)
    report: Report


def _tensor_one(g: GradedMap, omega_map: GradedMap | None, S: FreeComplex, T: FreeComplex) -> GradedMap:
    def rule(lab):
        x, w = lab
        out: dict = {}
        imgs = omega_map.image(w) if omega_map is not None else {w: 1}
        for y, v in g.image(x).items():
            for u, s in imgs.items():
                if (y, u) in T:
                    add_into(out, {(y, u): 1}, v * s)
        return out
    return GradedMap(S, T, 0, rule)


def _square_with_counit(f: GradedMap, g: GradedMap):
    """``(1⊗ε)∘f = g∘(1⊗ε)`` on basis elements; ``ε`` keeps the empty word."""
    S = f.source
    for n in S.degrees:
        for lab in S.labels(n):
            x, w = lab
            lhs = {y: v for (y, u), v in f.image(lab).items() if u == ()}
            rhs = g.image(x) if w == () else {}
            if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
                return lab
    return None


def _chain_witness(f: GradedMap):
    S, T = f.source, f.target
    for n in S.degrees:
        for lab in S.labels(n):
            lhs = {k: v for k, v in f(S.boundary_of(lab)).items() if v}
            rhs = {k: v for k, v in T.d(f.image(lab)).items() if v}
            if lhs != rhs:
                return lab
    return None


def cobar_row(lift, degree_bound: int) -> CobarRow:
    """Twisted tensor products ``U_i ⊗ ΩZ_i`` along a lifted zig-zag and their comparison maps."""
    rep = Report(f"cobar row (degree<={degree_bound})")
    cols = lift.columns
    top = lift.top
    omegas = []
    twisted = []
    for i, col in enumerate(cols):
        Zco = Coalgebra.from_mcoalgebra(col.Z)
        Om = cobar(Zco, degree_bound)
        U = top.objects[i]
        Aco = Coalgebra.from_mcoalgebra(U)
        T = twisted_tensor(Aco, composite_twisting(Om, col.p.g, Aco), degree_bound)
        omegas.append(Om)
        twisted.append(T)
    maps = []
    for i, step in enumerate(top.steps):
        if step.kind == "right":
            t = lift.t[i].injection
            Ot = cobar_functor(t, omegas[i], omegas[i + 1])
            f = _tensor_one(step.contraction.injection, Ot, twisted[i], twisted[i + 1])
            maps.append((i, i + 1, f))
        else:
            f = _tensor_one(step.contraction.injection, None, twisted[i + 1], twisted[i])
            maps.append((i + 1, i, f))
        w = _chain_witness(f)
        rep[f"step{i}.chain_map"].record(w is None, w)
        w = _square_with_counit(f, step.contraction.injection)
        rep[f"step{i}.counit_square"].record(w is None, w)
        hs = homology(f.source, range(degree_bound))
        ht = homology(f.target, range(degree_bound))
        rep[f"step{i}.homology_equal"].record(_same(hs, ht), (hs, ht))
    # ends: the source twisted by α∘a over C, the target by α∘b over C
    Cco = Coalgebra.from_mcoalgebra(lift.a.target)
    OmC = cobar(Cco, degree_bound)
    Aco = Coalgebra.from_mcoalgebra(top.source)
    TA = twisted_tensor(Aco, composite_twisting(OmC, lift.a.g, Aco), degree_bound)
    Bco = Coalgebra.from_mcoalgebra(top.target)
    TB = twisted_tensor(Bco, composite_twisting(OmC, lift.b.g, Bco), degree_bound)
    hA = homology(TA, range(degree_bound))
    hB = homology(TB, range(degree_bound))
    rep["ends.homology_equal"].record(_same(hA, hB), (hA, hB))
    rep["ends.first_column"].record(_same(hA, homology(twisted[0], range(degree_bound))))
    # splice: B ⊗ ΩC -> B ⊗ ΩZ_t through v_t, twisted by α∘b̄
    vt = cols[-1].v.injection
    Ov = cobar_functor(vt, OmC, omegas[-1])
    TBbar = twisted_tensor(Bco, composite_twisting(omegas[-1], lift.bbar.g, Bco), degree_bound)
    sp = _tensor_one(GradedMap.identity(top.target.complex), Ov, TB, TBbar)
    w = _chain_witness(sp)
    rep["splice.chain_map"].record(w is None, w)
    w = _square_with_counit(sp, GradedMap.identity(top.target.complex))
    rep["splice.counit_square"].record(w is None, w)
    rep["splice.homology_equal"].record(_same(hB, homology(TBbar, range(degree_bound))))
    rep.facts["homology_source"] = {n: str(h) for n, h in hA.items()}
    rep.facts["homology_target"] = {n: str(h) for n, h in hB.items()}
    return CobarRow([TA] + twisted + [TB, TBbar], maps, rep)


def _same(h1, h2):
    return all((h1[n].rank, h1[n].torsion) == (h2[n].rank, h2[n].torsion) for n in h1 if n in h2)


# ---------------------------------------------------------------- k-invariants


@dataclass
class KInvariant:
    degree: int
    group: HomologyGroup
    orders: tuple  # cyclic orders of M (0 = Z), one per coordinate
    cocycle: dict  # label of the target -> tuple of coordinates
    cone_cocycle: dict
    is_zero: bool
    facts: dict = field(default_factory=dict)

    def to_json(self):
        from .zmod import label_to_json
        return {"degree": self.degree, "M": str(self.group), "orders": list(self.orders),
                "cocycle": [[label_to_json(k), list(v)] for k, v in sorted(self.cocycle.items(), key=lambda kv: repr(kv[0]))],
                "is_zero": self.is_zero}


def _identity_cocycle(cone: FreeComplex, k: int):
    """Orders of ``H_k`` and a cocycle ``C_k -> ⊕ Z/o`` inducing the identity on ``H_k``.

    With ``U ∂_k V = S`` (rank ``r``) the cycles are spanned by the columns
    ``r..`` of ``V``, so rows ``r..`` of ``V^{-1}`` retract ``C_k`` onto
    cycle coordinates. A second Smith form of the boundary relations in those
    coordinates splits ``H_k`` into cyclic pieces.
    """
    labs = list(cone.labels(k))
    nk = len(labs)
    if cone.labels(k - 1) and nk:
        S, _, _, _, Vi = smith_form(cone.matrix(k))
        r = sum(1 for t in range(min(len(S), nk)) if S[t][t])
    else:
        Vi = [[int(i == j) for j in range(nk)] for i in range(nk)]
        r = 0
    P = Vi[r:]
    nz = len(P)
    up = list(cone.labels(k + 1))
    pos = {x: i for i, x in enumerate(labs)}
    R = [[0] * len(up) for _ in range(nz)]
    for j, x in enumerate(up):
        for y, v in cone.boundary_of(x).items():
            for i in range(nz):
                R[i][j] += P[i][pos[y]] * v
    if up and nz:
        S2, U2, _, _, _ = smith_form(R)
        diag = [S2[i][i] if i < len(up) else 0 for i in range(nz)]
    else:
        U2 = [[int(i == j) for j in range(nz)] for i in range(nz)]
        diag = [0] * nz
    keep = [i for i in range(nz) if diag[i] != 1]
    orders = tuple(diag[i] for i in keep)
    Q = [[sum(U2[i][t] * P[t][j] for t in range(nz)) for j in range(nk)] for i in keep]
    coc = {}
    for j, x in enumerate(labs):
        coc[x] = tuple(Q[a][j] % o if o else Q[a][j] for a, o in enumerate(orders))
    # free coordinates: the first nonzero value (in basis order) is made positive
    for a, o in enumerate(orders):
        if o == 0:
            first = next((coc[x][a] for x in labs if coc[x][a]), 1)
            if first < 0:
                coc = {x: c[:a] + (-c[a],) + c[a + 1:] for x, c in coc.items()}
    return orders, coc


def k_invariant(f: GradedMap, k: int) -> KInvariant:
    """``M = H_k(cone f)`` and the image of ``1_M`` in ``H^k(target; M)``.

    ``1_M`` is represented by a cocycle on the cone that projects cycles onto
    ``H_k`` and vanishes on a complement of the cycles (a summand, because
    the cone is acyclic below ``k``); ``μ`` is its restriction to the target.
    """
    cone = mapping_cone(f).complex
    H = homology(cone, range(0, k + 1))
    for n in range(0, k):
        if not H[n].is_zero:
            raise ValueError(f"cone is not acyclic below {k}: first nonzero H_{n} = {H[n]}")
    orders, coc = _identity_cocycle(cone, k)
    mu = {y: coc[("tgt", y)] for y in f.target.labels(k) if any(coc[("tgt", y)])}
    zero = True
    for a, o in enumerate(orders):
        comp = {y: c[a] for y, c in mu.items() if c[a]}
        if coboundary_solution(f.target, k, comp, modulus=o) is None:
            zero = False
    return KInvariant(k, H[k], orders, mu, coc, zero)
