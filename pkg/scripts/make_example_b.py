"""Regenerate the packaged example-B m-coalgebra (ranks <= 3, degrees <= 6)."""
import argparse
import json
from pathlib import Path

from mstruct.mcoalg import example_b_table
from mstruct.simpchain import example_b
from mstruct.symbar import Permutation

DEFAULT = Path(__file__).resolve().parents[1] / "src" / "mstruct" / "data" / "example_b.json"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DEFAULT)
    args = ap.parse_args()
    M = example_b(rank_bound=3, degree_bound=6)
    e = Permutation.identity(2)
    for (n, word, c), val in example_b_table().items():
        if M.adjoint((e, word), c) != val:
            raise SystemExit(f"structure disagrees with the listed value at {word!r}, {c!r}")
    args.out.write_text(json.dumps(M.to_json(), sort_keys=True, indent=1) + "\n")
    print(f"wrote {args.out} ({args.out.stat().st_size} bytes)")


if __name__ == "__main__":
    main()
