"""Small zig-zags of simplicial complexes for exercising the lifting construction.

Every object is an ordered simplicial complex; a rightward step glues a cone
on one face (a new apex vertex joined to the face), a leftward step removes
such a cone again. Cones deformation retract onto their face, which gives
the contraction data, and everything retracts onto the base complex.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .mcoalg import Step, StrictMorphism, ZigZag, contraction_from_maps
from .simpchain import SimplicialMap, SimplicialSet, canonical_mstructure, from_facets, sphere_minimal, vertex_map

BASES = {
    "vertex": [(0,)],
    "edge": [(0, 1)],
    "path": [(0, 1), (1, 2)],
    "circle": [(0, 1), (1, 2), (0, 2)],
    "triangle": [(0, 1, 2)],
    "sphere": [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)],
}


@dataclass
class ConeState:
    base: list
    cones: list = field(default_factory=list)  # (face, apex)

    def facets(self):
        return list(self.base) + [tuple(f) + (v,) for f, v in self.cones]

    def next_apex(self):
        used = {v for f in self.facets() for v in f}
        return max(used) + 1

    def removable(self):
        used = {v for f, _ in self.cones for v in f}
        return [c for c in self.cones if c[1] not in used]

    def retraction(self):
        """Vertex map onto the base: each apex goes where the top of its face goes."""
        psi = {v: v for f in self.base for v in f}
        for f, v in self.cones:
            psi[v] = psi[max(f)]
        return psi


def _faces_of(facets):
    out = set()
    for f in facets:
        f = tuple(sorted(f))
        n = len(f)
        for mask in range(1, 1 << n):
            out.add(tuple(f[i] for i in range(n) if mask >> i & 1))
    return sorted(out, key=lambda t: (len(t), t))


def _size(facets):
    return len(_faces_of(facets))


@dataclass
class ZigZagExample:
    top: ZigZag
    a: StrictMorphism
    b: StrictMorphism
    description: str
    sets: list


def build_zigzag(base, ops, target="point", rank_bound=2, degree_bound=2) -> ZigZagExample:
    """``ops`` is a list of ``("right", face)`` or ``("left", apex)``; ``target`` is ``point`` or ``base``."""
    state = ConeState(list(base))
    states = [ConeState(list(base))]
    for kind, arg in ops:
        if kind == "right":
            state = ConeState(state.base, state.cones + [(tuple(sorted(arg)), state.next_apex())])
        elif kind == "left":
            if arg not in [v for _, v in state.removable()]:
                raise ValueError(f"cone with apex {arg} cannot be removed")
            state = ConeState(state.base, [c for c in state.cones if c[1] != arg])
        else:
            raise ValueError(f"unknown step {kind!r}")
        states.append(state)
    sets = [from_facets(s.facets(), name=f"U{i}") for i, s in enumerate(states)]
    Ms = [canonical_mstructure(X, rank_bound, degree_bound) for X in sets]
    steps = []
    for i, (kind, arg) in enumerate(ops):
        small, big = (i, i + 1) if kind == "right" else (i + 1, i)
        cone = [c for c in states[big].cones if c not in states[small].cones][0]
        psi = {v: v for verts in sets[small].vertices.values() for v in verts}
        psi[cone[1]] = max(cone[0])
        Xs, Xb = sets[small], sets[big]
        proj = vertex_map(Xb, Xs, psi).chain_map(Ms[big].complex, Ms[small].complex)
        inj = vertex_map(Xs, Xb, {v: v for verts in Xs.vertices.values() for v in verts})
        inj = inj.chain_map(Ms[small].complex, Ms[big].complex)
        K = contraction_from_maps(Ms[big].complex, Ms[small].complex, inj, proj, name=f"s{i}")
        steps.append(Step(kind, contraction=K))
    top = ZigZag(Ms, steps)
    if target == "point":
        P = from_facets([(0,)], name="point")
        maps = [{v: 0 for verts in X.vertices.values() for v in verts} for X in sets]
    elif target == "base":
        P = from_facets(base, name="base")
        maps = [s.retraction() for s in states]
    else:
        raise ValueError(f"unknown target {target!r}")
    MP = canonical_mstructure(P, rank_bound, degree_bound)
    a = StrictMorphism(Ms[0], MP, vertex_map(sets[0], P, maps[0]).chain_map(Ms[0].complex, MP.complex), name="a")
    b = StrictMorphism(Ms[-1], MP, vertex_map(sets[-1], P, maps[-1]).chain_map(Ms[-1].complex, MP.complex), name="b")
    desc = f"base={base} ops={ops} target={target}"
    return ZigZagExample(top, a, b, desc, sets)


def random_zigzag(seed: int, max_cells: int = 12, max_steps: int = 3) -> ZigZagExample:
    """A reproducible random zig-zag whose complexes have at most ``max_cells`` simplices."""
    rng = random.Random(seed)
    names = [k for k, v in BASES.items() if _size(v) <= max_cells - 2]
    base = BASES[rng.choice(names)]
    state = ConeState(list(base))
    ops = []
    nsteps = rng.randint(1, max_steps)
    for _ in range(nsteps):
        options = []
        for f in _faces_of(state.facets()):
            trial = ConeState(state.base, state.cones + [(f, state.next_apex())])
            if _size(trial.facets()) <= max_cells:
                options.append(("right", f))
        options += [("left", v) for _, v in state.removable()]
        if not options:
            break
        kind, arg = rng.choice(options)
        if kind == "right":
            state = ConeState(state.base, state.cones + [(arg, state.next_apex())])
        else:
            state = ConeState(state.base, [c for c in state.cones if c[1] != arg])
        ops.append((kind, arg))
    target = rng.choice(["point", "base"])
    return build_zigzag(base, ops, target)


# ---------------------------------------------------------------- 1-reduced zig-zags


def _bubbled(k: int, base="s2"):
    """The minimal 2-sphere with ``k`` bubbles: ``b_j`` a 2-simplex and ``B_j`` with ``∂B_j = s2 - b_j``."""
    pt = ("*", (0, 0))
    flat = ("*", (0, 0, 0))
    simplices = {0: ["*"], 2: [base] + [f"b{j}" for j in range(k)]}
    faces = {base: [pt] * 3}
    for j in range(k):
        faces[f"b{j}"] = [pt] * 3
    if k:
        simplices[3] = [f"B{j}" for j in range(k)]
    for j in range(k):
        faces[f"B{j}"] = [base, f"b{j}", flat, flat]
    return SimplicialSet(simplices, faces, basepoint="*", name=f"s2+{k}", simply_connected=True)


def _bubble_retraction(X, k_keep: int, Y, base="s2"):
    """Collapse bubbles ``j >= k_keep`` of ``X`` onto the base cell of ``Y``."""
    images = {"*": "*", base: base}
    for j in range(len(X.simplices.get(2, ())) - 1):
        if j < k_keep:
            images[f"b{j}"] = f"b{j}"
            images[f"B{j}"] = f"B{j}"
        else:
            images[f"b{j}"] = base
            images[f"B{j}"] = (base, (0, 0, 1, 2))
    return SimplicialMap(X, Y, images)


def bubble_zigzag(ops, rank_bound=2, degree_bound=3) -> ZigZagExample:
    """Zig-zag of 1-reduced models of the 2-sphere; ``ops`` is a list of ``"right"``/``"left"``.

    A right step attaches one more bubble, a left step removes the newest
    one. Both ends map to the minimal 2-sphere by collapsing every bubble.
    """
    counts = [0]
    for op in ops:
        if op == "right":
            counts.append(counts[-1] + 1)
        elif op == "left":
            if not counts[-1]:
                raise ValueError("no bubble to remove")
            counts.append(counts[-1] - 1)
        else:
            raise ValueError(f"unknown step {op!r}")
    sets = [_bubbled(k) for k in counts]
    Ms = [canonical_mstructure(X, rank_bound, degree_bound) for X in sets]
    steps = []
    for i, op in enumerate(ops):
        small, big = (i, i + 1) if op == "right" else (i + 1, i)
        Xs, Xb = sets[small], sets[big]
        proj = _bubble_retraction(Xb, counts[small], Xs).chain_map(Ms[big].complex, Ms[small].complex)
        inj = SimplicialMap(Xs, Xb, {x: x for x in Xs.dim}).chain_map(Ms[small].complex, Ms[big].complex)
        K = contraction_from_maps(Ms[big].complex, Ms[small].complex, inj, proj, name=f"s{i}")
        steps.append(Step(op, contraction=K))
    top = ZigZag(Ms, steps)
    S = sphere_minimal(2, cell="s2")
    MS = canonical_mstructure(S, rank_bound, degree_bound)
    a = StrictMorphism(Ms[0], MS, _bubble_retraction(sets[0], 0, S).chain_map(Ms[0].complex, MS.complex), name="a")
    b = StrictMorphism(Ms[-1], MS, _bubble_retraction(sets[-1], 0, S).chain_map(Ms[-1].complex, MS.complex), name="b")
    return ZigZagExample(top, a, b, f"bubbles ops={list(ops)}", sets)
