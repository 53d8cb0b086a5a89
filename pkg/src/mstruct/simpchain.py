"""Finite simplicial sets, normalized chains and their canonical m-structure.

A simplex of any dimension is written ``(base, eta)``: ``base`` is the id of
a nondegenerate simplex and ``eta`` a monotone surjection ``[m] -> [dim base]``
stored as a tuple. ``eta`` is the identity exactly when the simplex is
nondegenerate, so degeneracies never need to be stored separately.

The canonical m-structure sends a bar word to its Barratt–Eccles simplex,
reduces that to surjections and lets each surjection cut the simplex into
faces (see :mod:`mstruct.surjection`).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .mcoalg import MCoalgebra
from .report import Report
from .surjection import interval_cuts, table_reduction
from .symbar import simplex_sign, to_simplex
from .zmod import FreeComplex, GradedMap, add_into, coboundary_solution, label_from_json, label_to_json


def identity_eta(m):
    return tuple(range(m + 1))


def is_identity_eta(eta):
    return all(a == i for i, a in enumerate(eta))


def _factor(theta):
    """Split a monotone map into (sorted image, surjection onto its positions)."""
    image = sorted(set(theta))
    pos = {v: i for i, v in enumerate(image)}
    return tuple(image), tuple(pos[v] for v in theta)


class SimplicialSet:
    """Nondegenerate simplices with their faces.

    ``simplices`` maps a dimension to a list of ids. ``faces`` maps an id of
    dimension ``m > 0`` to ``m + 1`` entries; each entry is an id (a
    nondegenerate face) or a pair ``(id, eta)``.
    """

    def __init__(self, simplices, faces=None, basepoint=None, name="", simply_connected=None, check=True):
        self.simplices = {int(d): list(ids) for d, ids in sorted(simplices.items()) if ids}
        self.dim = {}
        for d, ids in self.simplices.items():
            for x in ids:
                if x in self.dim:
                    raise ValueError(f"duplicate simplex id {x!r}")
                self.dim[x] = d
        faces = faces or {}
        self._faces = {}
        for x, d in self.dim.items():
            if d == 0:
                continue
            raw = faces.get(x)
            if raw is None or len(raw) != d + 1:
                raise ValueError(f"simplex {x!r} of dimension {d} needs {d + 1} faces")
            self._faces[x] = tuple(self._normalize(f, d - 1, x) for f in raw)
        self.basepoint = basepoint if basepoint is not None else (self.simplices.get(0, [None])[0])
        self.name = name
        self.simply_connected = simply_connected
        self._vface: dict = {}
        if check:
            bad = self.identity_violations()
            if bad:
                raise ValueError(f"simplicial identity fails at {bad[0]!r}")

    def _normalize(self, f, m, owner):
        if isinstance(f, (list, tuple)) and len(f) == 2 and isinstance(f[1], (list, tuple)):
            base, eta = f[0], tuple(int(v) for v in f[1])
        else:
            base, eta = f, None
        if base not in self.dim:
            raise ValueError(f"face of {owner!r} refers to unknown simplex {base!r}")
        if eta is None:
            eta = identity_eta(self.dim[base])
        if len(eta) != m + 1 or eta[0] != 0 or eta[-1] != self.dim[base] \
                or any(b - a not in (0, 1) for a, b in zip(eta, eta[1:])):
            raise ValueError(f"face of {owner!r}: {eta!r} is not a surjection [{m}] -> [{self.dim[base]}]")
        return base, eta

    # ------------------------------------------------------------ structure
    def ids(self):
        return [x for d in sorted(self.simplices) for x in self.simplices[d]]

    def face(self, x, j):
        """``d_j`` of the nondegenerate simplex ``x``."""
        return self._faces[x][j]

    def vertex_face(self, x, verts):
        """Face of nondegenerate ``x`` spanned by the increasing vertex tuple ``verts``."""
        key = (x, verts)
        try:
            return self._vface[key]
        except KeyError:
            pass
        d = self.dim[x]
        if len(verts) == d + 1:
            res = (x, identity_eta(d))
        else:
            missing = max(set(range(d + 1)) - set(verts))
            base, eta = self.face(x, missing)
            shifted = tuple(v - 1 if v > missing else v for v in verts)
            res = self.apply((base, eta), shifted)
        self._vface[key] = res
        return res

    def apply(self, simplex, theta):
        """Simplicial operator ``theta: [q] -> [m]`` (monotone) applied to ``(base, eta)``."""
        base, eta = simplex
        composite = tuple(eta[t] for t in theta)
        image, surj = _factor(composite)
        fb, feta = self.vertex_face(base, image)
        return fb, tuple(feta[s] for s in surj)

    def d(self, simplex, j):
        m = len(simplex[1]) - 1
        return self.apply(simplex, tuple(v for v in range(m + 1) if v != j))

    def identity_violations(self):
        bad = []
        for x, dd in self.dim.items():
            if dd < 2:
                continue
            s = (x, identity_eta(dd))
            for j in range(dd + 1):
                for i in range(j):
                    if self.d(self.d(s, j), i) != self.d(self.d(s, i), j - 1):
                        bad.append((x, i, j))
        return bad

    # ------------------------------------------------------------ chains
    def chains(self) -> FreeComplex:
        """Normalized chains; the skeleton tag of a simplex is its dimension."""
        basis = {d: list(ids) for d, ids in self.simplices.items()}
        bd = {}
        for x, dd in self.dim.items():
            out: dict = {}
            if dd:
                for j, (base, eta) in enumerate(self._faces[x]):
                    if is_identity_eta(eta):
                        add_into(out, {base: 1}, -1 if j & 1 else 1)
            bd[x] = out
        return FreeComplex(basis, bd, {x: dd for x, dd in self.dim.items()}, name=self.name)

    def to_json(self):
        out = {}
        for d, ids in self.simplices.items():
            entries = []
            for x in ids:
                e = {"id": label_to_json(x)}
                if d:
                    e["faces"] = [label_to_json(b) if is_identity_eta(eta) else {"id": label_to_json(b), "eta": list(eta)}
                                  for b, eta in self._faces[x]]
                entries.append(e)
            out[str(d)] = entries
        return {"name": self.name, "simplices": out}

    @classmethod
    def from_json(cls, data, name=""):
        simplices, faces = {}, {}
        for d, entries in data["simplices"].items():
            for e in entries:
                x = label_from_json(e["id"])
                simplices.setdefault(int(d), []).append(x)
                if "faces" in e:
                    faces[x] = [(label_from_json(f["id"]), tuple(f["eta"])) if isinstance(f, dict)
                                else label_from_json(f) for f in e["faces"]]
        return cls(simplices, faces, name=data.get("name", name))

    def __repr__(self):
        return f"SimplicialSet({self.name!r}, counts={ {d: len(v) for d, v in self.simplices.items()} })"


# ---------------------------------------------------------------- constructions


def _vertex_name(vs):
    return "".join(map(str, vs)) if all(0 <= v < 10 for v in vs) else ",".join(map(str, vs))


def from_facets(facets, name="") -> SimplicialSet:
    """Ordered simplicial complex generated by the given vertex sets."""
    faces_all = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            faces_all.update(combinations(f, k))
    simplices: dict = {}
    faces = {}
    for s in sorted(faces_all, key=lambda t: (len(t), t)):
        sid = _vertex_name(s)
        simplices.setdefault(len(s) - 1, []).append(sid)
        if len(s) > 1:
            faces[sid] = [_vertex_name(s[:j] + s[j + 1:]) for j in range(len(s))]
    X = SimplicialSet(simplices, faces, name=name)
    X.vertices = {_vertex_name(s): s for s in faces_all}
    return X


def vertex_map(X: SimplicialSet, Y: SimplicialSet, psi, name="") -> "SimplicialMap":
    """Simplicial map of ordered complexes induced by a weakly monotone vertex map."""
    lookup = {v: k for k, v in Y.vertices.items()}
    images = {}
    for x, verts in X.vertices.items():
        img = tuple(psi[v] for v in verts)
        if any(b < a for a, b in zip(img, img[1:])):
            raise ValueError(f"vertex map is not monotone on {x!r}")
        image, eta = _factor(img)
        if image not in lookup:
            raise ValueError(f"image of {x!r} is not a simplex of the target")
        images[x] = (lookup[image], eta)
    return SimplicialMap(X, Y, images, name=name)


def simplex(n: int) -> SimplicialSet:
    return from_facets([range(n + 1)], name=f"delta{n}")


def sphere_minimal(n: int, vertex="*", cell=None) -> SimplicialSet:
    """One vertex and one ``n``-simplex with all faces collapsed."""
    cell = cell or f"s{n}"
    if n == 0:
        return SimplicialSet({0: [vertex, cell]}, name="s0")
    faces = {cell: [(vertex, (0,) * n) for _ in range(n + 1)]}
    return SimplicialSet({0: [vertex], n: [cell]}, faces, basepoint=vertex,
                         name=f"s{n}-min", simply_connected=n >= 2)


def circle() -> SimplicialSet:
    return sphere_minimal(1, cell="a")


RP2_FACETS = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
              (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6)]


def rp2() -> SimplicialSet:
    """The 6-vertex triangulation of the projective plane."""
    X = from_facets(RP2_FACETS, name="rp2")
    X.simply_connected = False
    return X


def moore(m: int, n: int) -> SimplicialSet:
    """One-vertex model with ``H_n = Z/m``: cells ``x, v_1..v_{m-1}`` and ``y_1..y_m``.

    ``∂y_i = x - v_i + v_{i-1}`` (``v_0``, ``v_m`` collapsed), so the ``y`` sum
    to ``m·x``.
    """
    if m < 1 or n < 1:
        raise ValueError("moore(m, n) needs m >= 1 and n >= 1")
    pt = "*"
    deg_n = (pt, (0,) * (n + 1))
    deg_n1 = (pt, (0,) * n)
    simplices = {0: [pt], n: ["x"] + [f"v{i}" for i in range(1, m)], n + 1: [f"y{i}" for i in range(1, m + 1)]}
    faces = {lab: [deg_n1] * (n + 1) for lab in simplices[n]}
    for i in range(1, m + 1):
        f = [deg_n] * (n + 2)
        f[0] = "x"
        f[1] = f"v{i}" if i < m else deg_n
        f[2] = f"v{i - 1}" if i > 1 else deg_n
        faces[f"y{i}"] = f
    return SimplicialSet(simplices, faces, basepoint=pt, name=f"moore({m},{n})", simply_connected=n >= 2)


def _paths(p, q, n):
    """Jointly injective pairs of surjections ``[n] -> [p]``, ``[n] -> [q]``."""
    def rec(a, b, ea, eb):
        if len(ea) == n + 1:
            if a == p and b == q:
                yield tuple(ea), tuple(eb)
            return
        for da, db in ((1, 0), (0, 1), (1, 1)):
            if a + da <= p and b + db <= q:
                yield from rec(a + da, b + db, ea + [a + da], eb + [b + db])
    yield from rec(0, 0, [0], [0])


def product_set(X: SimplicialSet, Y: SimplicialSet, max_dim: int | None = None, name="") -> SimplicialSet:
    """Cartesian product; simplices are ``(x, eta_x, y, eta_y)`` with jointly injective etas."""
    simplices: dict = {}
    top = max(X.simplices) + max(Y.simplices)
    if max_dim is not None:
        top = min(top, max_dim)
    for x in X.ids():
        for y in Y.ids():
            p, q = X.dim[x], Y.dim[y]
            for n in range(max(p, q), min(p + q, top) + 1):
                for ex, ey in _paths(p, q, n):
                    simplices.setdefault(n, []).append((x, ex, y, ey))
    faces = {}
    for n, labs in simplices.items():
        if n == 0:
            continue
        for lab in labs:
            x, ex, y, ey = lab
            fs = []
            for j in range(n + 1):
                theta = tuple(v for v in range(n + 1) if v != j)
                fx = X.apply((x, ex), theta)
                fy = Y.apply((y, ey), theta)
                pairs = list(zip(fx[1], fy[1]))
                image, surj = _factor(pairs)
                ex2 = tuple(a for a, _ in image)
                ey2 = tuple(b for _, b in image)
                fs.append(((fx[0], ex2, fy[0], ey2), surj))
            faces[lab] = fs
    return SimplicialSet(simplices, faces, name=name or f"{X.name}x{Y.name}")


def torus() -> SimplicialSet:
    X = product_set(circle(), circle(), name="torus")
    X.simply_connected = False
    return X


# ---------------------------------------------------------------- Eilenberg–MacLane models


def _cocycles(orders, k, n):
    """Normalized ``k``-cocycles on ``Δ^n`` with values in ``⊕ Z/m``.

    A cocycle is fixed by its values on ``k``-simplices through vertex 0.
    """
    simp = list(combinations(range(n + 1), k + 1))
    free = [s for s in simp if s[0] == 0]
    rest = [s for s in simp if s[0] != 0]
    zero = tuple(0 for _ in orders)
    values = list(product(*[range(m) for m in orders]))
    out = []
    for choice in product(values, repeat=len(free)):
        z = dict(zip(free, choice))
        for s in rest:
            acc = [0] * len(orders)
            for i in range(len(s)):
                face = (0,) + s[:i] + s[i + 1:]
                sg = -1 if (i + 1) & 1 else 1
                for c, m in enumerate(orders):
                    acc[c] -= sg * z[face][c]
            z[s] = tuple(a % m for a, m in zip(acc, orders))
        out.append(tuple(z[s] for s in simp))
    return simp, out, zero


def em_space(orders, k: int, dimension_bound: int) -> SimplicialSet:
    """Truncated ``K(M, k)`` for ``M = ⊕ Z/m_i`` (``m_i = 0`` meaning ``Z``).

    Finite summands use the simplicial abelian group of normalized cocycles
    on standard simplices, kept through dimension ``dimension_bound + 1`` so
    that homology is right through ``dimension_bound``. A free summand uses
    the one-cell sphere, which is exact for ``k = 1`` and agrees with
    ``K(Z, k)`` through degree ``k + 1`` otherwise.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if dimension_bound < k:
        raise ValueError(f"dimension bound {dimension_bound} is below k = {k}")
    orders = list(orders)
    finite = [m for m in orders if m]
    free = len(orders) - len(finite)
    if free and k > 1 and dimension_bound > k + 1:
        raise ValueError(f"free summand: the sphere model is only valid through degree {k + 1}")
    top = dimension_bound + 1
    parts = []
    if finite:
        parts.append(_em_finite(finite, k, top))
    for _ in range(free):
        parts.append(sphere_minimal(k, cell=f"z{len(parts)}"))
    if not parts:
        return sphere_minimal(0).__class__({0: ["*"]}, name=f"K(0,{k})")
    X = parts[0]
    for Y in parts[1:]:
        X = product_set(X, Y, max_dim=top)
    X.name = f"K({'+'.join(str(m) if m else 'Z' for m in orders)},{k})"
    return X


def _em_finite(orders, k, top) -> SimplicialSet:
    simplices: dict = {}
    faces = {}
    all_simp: dict = {}
    index: dict = {}
    for n in range(top + 1):
        simp, cocs, zero = _cocycles(orders, k, n) if n >= k else ([], [()], None)
        all_simp[n] = (simp, cocs)
        index[n] = {z: i for i, z in enumerate(cocs)}
    def restrict(n, z, theta):
        simp, _ = all_simp[n]
        val = dict(zip(simp, z))
        q = len(theta) - 1
        tgt, _ = all_simp[q]
        zero = tuple(0 for _ in orders)
        out = []
        for s in tgt:
            img = tuple(theta[v] for v in s)
            out.append(val[img] if len(set(img)) == len(img) else zero)
        return tuple(out) if q >= k else ()

    def name(n, z):
        return f"{n}:{index[n][z]}"

    def degenerate_source(n, z):
        for i in range(n):
            face = restrict(n, z, tuple(v for v in range(n + 1) if v != i))
            sigma = tuple(v if v <= i else v - 1 for v in range(n + 1))
            if restrict(n - 1, face, sigma) == z:
                return i
        return None

    nondeg = {}
    for n in range(top + 1):
        _, cocs = all_simp[n]
        for z in cocs:
            if n == 0 or degenerate_source(n, z) is None:
                nondeg[(n, z)] = name(n, z)
                simplices.setdefault(n, []).append(name(n, z))

    def as_simplex(n, z):
        # (base, eta): peel degeneracies until nondegenerate
        eta = identity_eta(n)
        while (n, z) not in nondeg:
            i = degenerate_source(n, z)
            z = restrict(n, z, tuple(v for v in range(n + 1) if v != i))
            eta = tuple(v if v <= i else v - 1 for v in eta)
            n -= 1
        return nondeg[(n, z)], eta

    for (n, z), lab in nondeg.items():
        if n == 0:
            continue
        faces[lab] = [as_simplex(n - 1, restrict(n, z, tuple(v for v in range(n + 1) if v != j)))
                      for j in range(n + 1)]
    return SimplicialSet(simplices, faces, name=f"K({'+'.join(map(str, orders))},{k})")


# ---------------------------------------------------------------- canonical m-structure


@lru_cache(maxsize=None)
def _cuts(u, m):
    return tuple(interval_cuts(u, m))


@lru_cache(maxsize=None)
def _reduced(r):
    simplex = tuple(tuple(v) for v in to_simplex(r))
    return simplex_sign(len(r[1])), table_reduction(simplex)


def surjection_action(X: SimplicialSet, u, x) -> dict:
    """The surjection ``u`` acting on the nondegenerate simplex ``x``."""
    out: dict = {}
    for cuts, factors, sign in _cuts(u, X.dim[x]):
        labs = []
        for verts in factors:
            base, eta = X.vertex_face(x, verts)
            if not is_identity_eta(eta):
                break
            labs.append(base)
        else:
            add_into(out, {tuple(labs): 1}, sign)
    return out


def canonical_mstructure(X: SimplicialSet, rank_bound: int = 3, degree_bound: int = 4) -> MCoalgebra:
    """Higher diagonals on normalized chains of ``X``.

    ``[ ]_2`` acts as the Alexander–Whitney diagonal and ``e_i`` as the
    classical cup-``i`` coproduct.
    """
    C = X.chains()

    def adjoint(r, x):
        g, word = r
        n = len(g)
        if n == 0:
            return {(): 1} if (X.dim[x] == 0 and not word) else {}
        eps, surjections = _reduced(r)
        out: dict = {}
        for u, c in surjections.items():
            add_into(out, surjection_action(X, u, x), eps * c)
        return out
    return MCoalgebra(C, adjoint, name=f"C({X.name})", rank_bound=rank_bound, degree_bound=degree_bound)


def alexander_whitney(X: SimplicialSet, x) -> dict:
    """Classical front-face/back-face diagonal, for comparison."""
    m = X.dim[x]
    out: dict = {}
    for i in range(m + 1):
        a = X.vertex_face(x, tuple(range(i + 1)))
        b = X.vertex_face(x, tuple(range(i, m + 1)))
        if is_identity_eta(a[1]) and is_identity_eta(b[1]):
            add_into(out, {(a[0], b[0]): 1})
    return out


# ---------------------------------------------------------------- maps of simplicial sets


class SimplicialMap:
    """Map given on nondegenerate simplices as ``id -> (id, eta)`` (or a plain id)."""

    def __init__(self, source: SimplicialSet, target: SimplicialSet, images, name=""):
        self.source, self.target = source, target
        self.images = {}
        for x, img in images.items():
            if isinstance(img, tuple) and len(img) == 2 and isinstance(img[1], tuple):
                self.images[x] = img
            else:
                self.images[x] = (img, identity_eta(target.dim[img]))
        self.name = name
        bad = self.violations()
        if bad:
            raise ValueError(f"not simplicial at {bad[0]!r}")

    def __call__(self, simplex):
        base, eta = simplex
        tb, teta = self.images[base]
        return tb, tuple(teta[e] for e in eta)

    def violations(self):
        bad = []
        for x, dd in self.source.dim.items():
            if x not in self.images:
                bad.append(x)
                continue
            if len(self.images[x][1]) != dd + 1:
                bad.append(x)
                continue
            for j in range(dd + 1 if dd else 0):
                lhs = self(self.source.face(x, j))
                rhs = self.target.d(self.images[x], j)
                if lhs != rhs:
                    bad.append((x, j))
        return bad

    def chain_map(self, C=None, D=None) -> GradedMap:
        C = C or self.source.chains()
        D = D or self.target.chains()

        def rule(x):
            b, eta = self.images[x]
            return {b: 1} if is_identity_eta(eta) else {}
        return GradedMap(C, D, 0, rule, name=self.name)


def to_point(X: SimplicialSet, P: SimplicialSet | None = None) -> SimplicialMap:
    P = P or from_facets([(0,)], name="point")
    v = P.simplices[0][0]
    return SimplicialMap(X, P, {x: (v, (0,) * (d + 1)) for x, d in X.dim.items()}, name="collapse")


# ---------------------------------------------------------------- Steenrod squares


def _mod2_cocycle_basis(C: FreeComplex, n: int):
    """Cocycles mod 2 in degree ``n`` representing a basis of ``H^n(C; Z/2)``."""
    import numpy as np
    cols = list(C.labels(n))
    if not cols:
        return []

    def rows_of(m):
        # coboundary δ: C^{m-1} -> C^m as a matrix over F_2, rows indexed by C_m
        src = list(C.labels(m - 1))
        M = np.zeros((len(C.labels(m)), len(src)), dtype=np.uint8)
        pos = {x: i for i, x in enumerate(src)}
        for j, x in enumerate(C.labels(m)):
            for y, v in C.boundary_of(x).items():
                M[j, pos[y]] ^= v & 1
        return M
    # cocycles: φ with φ∘∂_{n+1} = 0
    up = list(C.labels(n + 1))
    A = np.zeros((len(up), len(cols)), dtype=np.uint8)
    pos = {x: i for i, x in enumerate(cols)}
    for i, x in enumerate(up):
        for y, v in C.boundary_of(x).items():
            A[i, pos[y]] ^= v & 1
    Z = _nullspace_f2(A, len(cols))
    B = rows_of(n) if C.labels(n - 1) else np.zeros((len(cols), 0), dtype=np.uint8)
    basis = []
    span = [B[:, j].copy() for j in range(B.shape[1])]
    for z in Z:
        if _rank_f2(span + basis + [z]) > _rank_f2(span + basis):
            basis.append(z)
    return [{cols[i]: 1 for i in range(len(cols)) if z[i]} for z in basis]


def _rank_f2(vectors):
    import numpy as np
    if not vectors:
        return 0
    M = np.array(vectors, dtype=np.uint8) & 1
    r = 0
    rows, cols = M.shape
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i, c]), None)
        if piv is None:
            continue
        M[[r, piv]] = M[[piv, r]]
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] ^= M[r]
        r += 1
        if r == rows:
            break
    return r


def _nullspace_f2(A, ncols):
    import numpy as np
    M = A.copy() & 1
    rows = M.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if M[i, c]), None)
        if piv is None:
            continue
        M[[r, piv]] = M[[piv, r]]
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] ^= M[r]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = np.zeros(ncols, dtype=np.uint8)
        v[f] = 1
        for i, c in enumerate(pivots):
            if M[i, f]:
                v[c] = 1
        out.append(v)
    return out


def mod2_cohomology_basis(X, n: int):
    C = X.chains() if isinstance(X, SimplicialSet) else X
    return _mod2_cocycle_basis(C, n)


@dataclass
class ModTwoClass:
    degree: int
    cocycle: dict
    is_zero: bool


def cup_i_coproduct(M: MCoalgebra, i: int, x) -> dict:
    """``Δ_{e_i}(x)``; ``e_i`` is the word ``[t|...|t]`` of length ``i``."""
    from .symbar import Permutation
    t = Permutation((2, 1))
    return M.adjoint((Permutation.identity(2), (t,) * i), x)


def steenrod_square(X: SimplicialSet, k: int, cocycle: dict, M: MCoalgebra | None = None) -> ModTwoClass:
    """``Sq^k`` of a mod-2 cocycle of degree ``p``: evaluate ``φ ⊗ φ`` on ``Δ_{e_{p-k}}``."""
    C = X.chains()
    degs = {C.degree_of(x) for x, v in cocycle.items() if v % 2}
    if len(degs) > 1:
        raise ValueError("inhomogeneous cocycle")
    if not degs:
        return ModTwoClass(0, {}, True)
    p = degs.pop()
    M = M or canonical_mstructure(X, rank_bound=2, degree_bound=max(p, 0))
    if M.rank_bound < 2:
        raise ValueError("Steenrod squares need the rank-2 structure")
    bad = _cocycle_defect(C, p, cocycle)
    if bad is not None:
        raise ValueError(f"not a cocycle mod 2 (fails on {bad!r})")
    q = p + k
    if k > p or k < 0:
        return ModTwoClass(q, {}, True)
    out = {}
    for y in C.labels(q):
        acc = 0
        for (a, b), v in cup_i_coproduct(M, p - k, y).items():
            acc += v * cocycle.get(a, 0) * cocycle.get(b, 0)
        if acc % 2:
            out[y] = 1
    zero = coboundary_solution(C, q, out, modulus=2) is not None
    return ModTwoClass(q, out, zero)


def _cocycle_defect(C, p, cocycle):
    for y in C.labels(p + 1):
        if sum(v * cocycle.get(x, 0) for x, v in C.boundary_of(y).items()) % 2:
            return y
    return None


def same_class_mod2(C: FreeComplex, n: int, a: dict, b: dict) -> bool:
    diff = {x: (a.get(x, 0) - b.get(x, 0)) % 2 for x in set(a) | set(b)}
    return coboundary_solution(C, n, {x: v for x, v in diff.items() if v}, modulus=2) is not None


# ---------------------------------------------------------------- fixtures


def cp2_chains() -> FreeComplex:
    """Cellular chains of the complex projective plane (cells in degrees 0, 2, 4)."""
    return FreeComplex({0: ["e0"], 2: ["e2"], 4: ["e4"]}, name="cp2")


def reorient(M: MCoalgebra, flipped, name="") -> MCoalgebra:
    """Same m-coalgebra written in the basis where the labels in ``flipped`` change sign."""
    flipped = set(flipped)

    def sg(labs):
        return -1 if sum(1 for x in labs if x in flipped) & 1 else 1

    def adjoint(r, c):
        s = sg((c,))
        return {t: s * sg(t) * v for t, v in M.adjoint_basis(r, c).items()}
    return MCoalgebra(M.complex, adjoint, M.resolution, name=name or M.name,
                      rank_bound=M.rank_bound, degree_bound=M.degree_bound)


def example_b(rank_bound: int = 3, degree_bound: int = 6) -> MCoalgebra:
    """``Z ⊕ Z·x`` with ``|x| = 3``, carried by the one-cell model of the 3-sphere.

    ``x`` is the top cell with reversed orientation, which makes
    ``Δ_{e_3}(x) = x⊗x`` rather than ``-x⊗x``.
    """
    X = sphere_minimal(3, vertex="1", cell="x")
    return reorient(canonical_mstructure(X, rank_bound, degree_bound), {"x"}, name="example-B")


def load_example_b() -> MCoalgebra:
    """The packaged example-B table (regenerate with ``scripts/make_example_b.py``)."""
    from importlib.resources import files
    return MCoalgebra.from_json(json.loads(files("mstruct").joinpath("data/example_b.json").read_text()))


SIMPLICIAL_FIXTURES = {
    "delta0": lambda: simplex(0),
    "delta1": lambda: simplex(1),
    "delta2": lambda: simplex(2),
    "delta3": lambda: simplex(3),
    "s2-min": lambda: sphere_minimal(2),
    "s3-min": lambda: sphere_minimal(3),
    "s2": lambda: from_facets([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)], name="s2"),
    "circle": circle,
    "rp2": rp2,
    "torus": torus,
}

FIXTURE_NAMES = sorted(list(SIMPLICIAL_FIXTURES) + ["cp2", "example-B", "moore(m,n)"])


def fixture(name: str):
    """Look up a built-in fixture by name (``moore(m,n)`` takes two integers)."""
    if name in SIMPLICIAL_FIXTURES:
        return SIMPLICIAL_FIXTURES[name]()
    if name == "cp2":
        return cp2_chains()
    if name in ("example-B", "example-b"):
        return load_example_b()
    if name.startswith("moore"):
        inner = name[len("moore"):].strip("()")
        try:
            m, n = (int(v) for v in inner.split(","))
        except ValueError:
            raise KeyError(f"bad moore fixture {name!r}; use moore(m,n)") from None
        return moore(m, n)
    raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")


def load_simplicial_set(path) -> SimplicialSet:
    with open(path) as fh:
        return SimplicialSet.from_json(json.load(fh))


def naturality_report(f: SimplicialMap, rank_bound=2, degree_bound=3) -> Report:
    from .mcoalg import StrictMorphism
    MX = canonical_mstructure(f.source, rank_bound, degree_bound)
    MY = canonical_mstructure(f.target, rank_bound, degree_bound)
    g = f.chain_map(MX.complex, MY.complex)
    return StrictMorphism(MX, MY, g, name=f.name).check(rank_bound, degree_bound)
