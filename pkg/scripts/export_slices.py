"""Export 2-D slices of both Green's functions as CSV through the command line.

Writes one file per problem into --out, ready for any plotting tool:

    poisson.csv   Neumann-Poisson field of a point source
    eeg.csv       EEG field of a tangential dipole at the same position

and a short summary of the value range and of the skipped nodes.

    python scripts/export_slices.py --out slices --resolution 101
"""

import argparse
import csv
import io
from pathlib import Path

from ballgreen.cli import main as cli


def export(path, argv):
    buf = io.StringIO()
    code = cli(argv, out=buf)
    if code:
        raise SystemExit(f"grid export failed with exit code {code}: {' '.join(argv)}")
    path.write_text(buf.getvalue())
    rows = list(csv.DictReader(io.StringIO(buf.getvalue())))
    vals = [float(r["value"]) for r in rows if r["value"]]
    print(f"{path}: {len(rows)} nodes, {len(rows) - len(vals)} empty, value range [{min(vals):.4g}, {max(vals):.4g}]")


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--out", default="slices")
    ap.add_argument("--resolution", type=int, default=101)
    ap.add_argument("--z", default="0.55,0.2")
    ap.add_argument("--moment", default="-0.2,0.55", help="pass as --moment=-0.2,0.55")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    # the --flag=value form keeps vectors with a leading minus from reading as options
    common = ["--dim", "2", f"--z={args.z}", "--resolution", str(args.resolution)]
    export(out / "poisson.csv", ["grid", *common])
    export(out / "eeg.csv", ["grid", *common, f"--moment={args.moment}"])


if __name__ == "__main__":
    main()
