"""Command-line front end.

Every verb builds a :class:`~mstruct.report.Report` and writes it as JSON
(default) or text. Exit status: 0 when every check passes, 1 on a failed
check, 2 on unusable input, 3 when the requested bounds are out of range.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .report import Report

MAX_RANK = 4
MAX_DEGREE = 8

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BOUND = 0, 1, 2, 3

MAP_FIXTURES = {
    "point-s2": "basepoint into the minimal 2-sphere",
    "point-s3": "basepoint into the minimal 3-sphere",
    "double-s2": "degree-2 self-map of the minimal 2-sphere",
    "identity-s2": "identity of the minimal 2-sphere",
    "point-boundary-s2": "basepoint into the boundary of the 3-simplex",
}


class InputError(Exception):
    """Unusable input (exit 2)."""


class BoundError(Exception):
    """Requested bounds are beyond what the command supports (exit 3)."""


def _threads():
    raw = os.environ.get("MSTRUCT_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"MSTRUCT_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise InputError(f"MSTRUCT_THREADS must be a positive integer, got {raw!r}")
    return n


# ---------------------------------------------------------------- inputs


def _load_input(args):
    from .mcoalg import MCoalgebra
    from .simpchain import SimplicialSet, fixture
    if args.fixture and args.input:
        raise InputError("give either --fixture or --input, not both")
    if args.fixture:
        try:
            return fixture(args.fixture)
        except KeyError as e:
            raise InputError(str(e.args[0])) from None
    if args.input:
        try:
            with open(args.input) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise InputError(f"cannot read {args.input}: {e}") from None
        try:
            if "adjoints" in data:
                return MCoalgebra.from_json(data)
            if "simplices" in data:
                return SimplicialSet.from_json(data)
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"malformed input {args.input}: {e}") from None
        raise InputError(f"{args.input} is neither a simplicial set nor an m-coalgebra")
    raise InputError("an input is required: --fixture NAME or --input PATH")


def _simplicial(obj, verb):
    from .simpchain import SimplicialSet
    if not isinstance(obj, SimplicialSet):
        raise InputError(f"{verb} needs a simplicial set")
    return obj


def _coalgebra(obj, rank, degree):
    from .mcoalg import MCoalgebra
    from .simpchain import SimplicialSet, canonical_mstructure
    if isinstance(obj, MCoalgebra):
        if rank > obj.rank_bound:
            raise BoundError(f"the input carries ranks <= {obj.rank_bound}, {rank} requested")
        return obj
    if isinstance(obj, SimplicialSet):
        return canonical_mstructure(obj, rank_bound=rank, degree_bound=degree)
    raise InputError("this command needs a simplicial set or an m-coalgebra")


def _chains(obj):
    from .mcoalg import MCoalgebra
    from .simpchain import SimplicialSet
    if isinstance(obj, SimplicialSet):
        return obj.chains()
    if isinstance(obj, MCoalgebra):
        return obj.complex
    return obj


def _table(H):
    return {str(n): str(g) for n, g in sorted(H.items())}


def _merge(rep, prefix, sub):
    for k, o in sub.outcomes.items():
        rep.outcomes[f"{prefix}{k}"] = o


# ---------------------------------------------------------------- verbs


def cmd_homology(args):
    from .zmod import homology
    C = _chains(_load_input(args))
    top = C.degree_range[1] if C.degree_range else 0
    degrees = range(0, (args.degree if args.degree is not None else top) + 1)
    rep = Report(f"homology of {C.name or 'input'}")
    rep["d_squared"].record(not C.d_squared_witnesses(), (C.d_squared_witnesses() or [None])[0])
    rep.facts["homology"] = _table(homology(C, degrees))
    return rep


def cmd_mstructure(args):
    from .mcoalg import check_mstructure, homotopy_commutativity
    rank = args.rank or 3
    degree = args.degree if args.degree is not None else 3
    M = _coalgebra(_load_input(args), rank, degree)
    rep = check_mstructure(M, rank, degree)
    rep.title = f"m-structure on {M.name} (rank<={rank}, degree<={degree})"
    hc = homotopy_commutativity(M, degree)
    _merge(rep, "commutativity.", hc)
    rep.facts["commutativity_sign"] = hc.facts["sign"]
    return rep


def cmd_coherence(args):
    from .mcoalg import coherence_reports
    rank = args.rank or 2
    degree = args.degree if args.degree is not None else 4
    M = _coalgebra(_load_input(args), rank + 1, degree)
    if M.rank_bound < 2 * rank - 1:
        raise BoundError(f"weak coherence up to rank {rank} needs structure maps up to rank {2 * rank - 1}")
    rep = Report(f"weak coherence of {M.name} (n,m<={rank}, degree<={degree})")
    for sub in coherence_reports(M, rank, degree):
        n, m, i = sub.facts["n"], sub.facts["m"], sub.facts["i"]
        _merge(rep, f"n{n}.m{m}.i{i}.", sub)
    return rep


def cmd_steenrod(args):
    from .simpchain import canonical_mstructure, mod2_cohomology_basis, same_class_mod2, steenrod_square
    X = _simplicial(_load_input(args), "steenrod")
    top = max(X.dim.values()) if X.dim else 0
    degree = args.degree if args.degree is not None else top
    M = canonical_mstructure(X, rank_bound=2, degree_bound=top)
    C = M.complex
    rep = Report(f"Steenrod squares on {X.name} (classes of degree<={degree})")
    rows = []
    for n in range(0, degree + 1):
        for idx, coc in enumerate(mod2_cohomology_basis(X, n)):
            for k in range(0, n + 2):
                if n + k > top and k <= n:
                    continue
                sq = steenrod_square(X, k, coc, M)
                if k == 0:
                    rep["sq0_identity"].record(same_class_mod2(C, n, sq.cocycle, coc), (n, idx))
                if k > n:
                    rep["above_degree_zero"].record(sq.is_zero, (n, idx, k))
                rows.append({"degree": n, "class": idx, "k": k, "zero": sq.is_zero,
                             "cocycle": sorted(str(x) for x in sq.cocycle)})
    rep.facts["squares"] = rows
    return rep


def _cobar_input(args):
    from .cobar import Coalgebra, cobar
    degree = args.degree if args.degree is not None else 4
    M = _coalgebra(_load_input(args), 2, degree + 2)
    try:
        Om = cobar(Coalgebra.from_mcoalgebra(M), degree)
    except ValueError as e:
        raise InputError(str(e)) from None
    return M, Om, degree


def cmd_cobar(args):
    from .zmod import homology
    M, Om, degree = _cobar_input(args)
    rep = Report(f"cobar construction on {M.name} (degree<={degree})")
    rep["d_squared"].record(not Om.complex.d_squared_witnesses())
    w = Om.leibniz_witness()
    rep["leibniz"].record(w is None, w)
    rep.facts["homology"] = _table(homology(Om.complex, range(degree + 1)))
    return rep


def cmd_twisted(args):
    from .cobar import canonical_twisting, twisted_tensor
    from .zmod import homology
    M, Om, degree = _cobar_input(args)
    T = twisted_tensor(Om.coalgebra, canonical_twisting(Om), degree)
    H = homology(T, range(degree))
    rep = Report(f"canonical twisted product on {M.name} (acyclic below {degree})")
    for n, g in sorted(H.items()):
        expected = (1, ()) if n == 0 else (0, ())
        rep["acyclic"].record((g.rank, g.torsion) == expected, n)
    rep.facts["homology"] = _table(H)
    return rep


def _zigzag_example(name):
    from .samples import bubble_zigzag, random_zigzag
    if name is None:
        raise InputError("zigzag-lift needs --fixture random-SEED or bubbles-OPS (e.g. bubbles-right-left)")
    if name.startswith("random-"):
        try:
            return random_zigzag(int(name[len("random-"):]))
        except ValueError:
            raise InputError(f"bad seed in {name!r}") from None
    if name.startswith("bubbles-"):
        ops = name[len("bubbles-"):].split("-")
        try:
            return bubble_zigzag(ops)
        except ValueError as e:
            raise InputError(str(e)) from None
    raise InputError(f"unknown zig-zag {name!r}; use random-SEED or bubbles-OPS")


def cmd_zigzag_lift(args):
    from .mcoalg import check_lift, zigzag_lift
    if args.input:
        raise InputError("zigzag-lift reads built-in zig-zags only (--fixture)")
    rank = args.rank or 2
    degree = args.degree if args.degree is not None else 2
    ex = _zigzag_example(args.fixture)
    L = zigzag_lift(ex.top, ex.a, ex.b)
    rep = check_lift(L, rank, degree)
    rep.title = f"zig-zag lift of {ex.description}"
    if args.fixture.startswith("bubbles-"):
        from .cobar import cobar_row
        row = cobar_row(L, max(degree, 3))
        _merge(rep, "cobar.", row.report)
        rep.facts.update(row.report.facts)
    rep.facts["columns"] = len(L.columns)
    rep.facts["steps"] = [s.kind for s in ex.top.steps]
    return rep


def _map_fixture(name):
    from .simpchain import from_facets, sphere_minimal
    from .zmod import GradedMap
    P = from_facets([(0,)], name="point").chains()
    if name in ("point-s2", "point-s3"):
        C = sphere_minimal(int(name[-1])).chains()
        return GradedMap(P, C, 0, lambda x: {"*": 1}, name=name), int(name[-1])
    if name == "point-boundary-s2":
        C = from_facets([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)], name="s2").chains()
        v = C.labels(0)[0]
        return GradedMap(P, C, 0, lambda x: {v: 1}, name=name), 2
    if name in ("double-s2", "identity-s2"):
        C = sphere_minimal(2).chains()
        m = 2 if name == "double-s2" else 1
        return GradedMap(C, C, 0, lambda x: {x: m if C.degree_of(x) == 2 else 1}, name=name), 2
    raise InputError(f"unknown map fixture {name!r}; known: {', '.join(sorted(MAP_FIXTURES))}")


def cmd_kinvariant(args):
    from .cobar import k_invariant
    if args.input or not args.fixture:
        raise InputError("kinvariant reads built-in maps only (--fixture NAME)")
    f, natural = _map_fixture(args.fixture)
    k = args.degree if args.degree is not None else natural
    try:
        K = k_invariant(f, k)
    except ValueError as e:
        rep = Report(f"k-invariant of {f.name} in degree {k}")
        rep["cone_acyclic_below_k"].record(False, str(e))
        return rep
    rep = Report(f"k-invariant of {f.name} in degree {k}")
    C = f.target
    for a, o in enumerate(K.orders):
        for y in C.labels(k + 1):
            val = sum(v * K.cocycle.get(x, (0,) * len(K.orders))[a] for x, v in C.boundary_of(y).items())
            rep["mu_cocycle"].record((val % o == 0) if o else val == 0, y)
    rep.facts.update(K.to_json())
    return rep


def cmd_fixtures(args):
    from .simpchain import FIXTURE_NAMES
    rep = Report("fixtures")
    rep.facts["spaces"] = list(FIXTURE_NAMES)
    rep.facts["maps"] = dict(sorted(MAP_FIXTURES.items()))
    rep.facts["zigzags"] = ["random-SEED", "bubbles-OPS (OPS like right-left)"]
    return rep


def cmd_check_operad(args):
    from .operads import check_operad_identities, endomorphism_operad, symmetric_construct, trivial_operad
    from .simpchain import simplex
    rank = args.rank or 3
    degree = args.degree if args.degree is not None else 2
    which = args.which
    names = ["trivial", "endomorphism", "symmetric"] if which == "all" else [which]
    rep = Report(f"operad identities (rank<={rank}, degree<={degree})")
    for name in names:
        if name == "trivial":
            O = trivial_operad()
        elif name == "endomorphism":
            O = endomorphism_operad(simplex(1).chains(), rank_bound=rank)
        else:
            O = symmetric_construct(rank, degree)
        r = check_operad_identities(O, rank, degree)
        res = r.results
        rep.outcomes[f"{name}.associativity"] = res["associativity"]["printed"]
        rep.outcomes[f"{name}.commutation"] = res["commutation"][r.orientation or "koszul"]
        for key in ("leibniz", "unit", "rank_degree"):
            rep.outcomes[f"{name}.{key}"] = res[key]
        rep.facts[f"{name}.orientations"] = list(r.orientations)
    return rep


VERBS = {
    "homology": cmd_homology,
    "mstructure": cmd_mstructure,
    "coherence": cmd_coherence,
    "steenrod": cmd_steenrod,
    "cobar": cmd_cobar,
    "twisted": cmd_twisted,
    "zigzag-lift": cmd_zigzag_lift,
    "kinvariant": cmd_kinvariant,
    "fixtures": cmd_fixtures,
    "check-operad": cmd_check_operad,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def build_parser():
    ap = _Parser(prog="mstruct", description="Checks for m-structures on chain complexes.")
    ap.add_argument("verb", choices=sorted(VERBS))
    ap.add_argument("--fixture", help="built-in input (see the fixtures verb)")
    ap.add_argument("--input", help="JSON file holding a simplicial set or an m-coalgebra")
    ap.add_argument("--rank", type=int, help="rank bound")
    ap.add_argument("--degree", type=int, help="degree bound")
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--format", choices=["json", "text"], default="json")
    ap.add_argument("--which", choices=["trivial", "endomorphism", "symmetric", "all"], default="all",
                    help="operad for check-operad")
    return ap


def render(rep: Report, fmt: str) -> str:
    if fmt == "text":
        return rep.to_text() + "\n"
    return json.dumps(rep.to_json(), sort_keys=True, indent=2, default=str) + "\n"


def run(argv=None):
    """Parse ``argv``, run the verb and return ``(exit status, rendered report or None)``."""
    args = build_parser().parse_args(argv)
    try:
        _threads()
        if args.rank is not None and args.rank < 1 or args.degree is not None and args.degree < 0:
            raise InputError("bounds must be positive")
        if (args.rank or 0) > MAX_RANK or (args.degree or 0) > MAX_DEGREE:
            raise BoundError(f"bounds are capped at rank {MAX_RANK} and degree {MAX_DEGREE}")
        rep = VERBS[args.verb](args)
    except InputError as e:
        print(f"mstruct: {e}", file=sys.stderr)
        return EXIT_PARSE, None
    except BoundError as e:
        print(f"mstruct: {e}", file=sys.stderr)
        return EXIT_BOUND, None
    text = render(rep, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return (EXIT_OK if rep.passed else EXIT_FAIL), text


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
