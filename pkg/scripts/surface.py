"""Write the I(b0, q) lattice as CSV and, if matplotlib is importable, a contour plot."""

import argparse
import csv

from pingpong.infotheory import surface_csv_lines


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--resolution", type=int, default=100)
    p.add_argument("--csv", default="surface.csv")
    p.add_argument("--png", default=None)
    args = p.parse_args()

    with open(args.csv, "w", newline="\n") as fh:
        for line in surface_csv_lines(args.resolution):
            fh.write(line + "\n")
    print(f"wrote {args.csv}")

    if args.png:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
        import numpy as np

        n = args.resolution + 1
        with open(args.csv) as fh:
            mi = [float("nan") if r["mi"] == "NA" else float(r["mi"]) for r in csv.DictReader(fh)]
        grid = np.array(mi).reshape(n, n)  # rows b0, columns q
        axis = np.linspace(0, 1, n)
        fig, ax = plt.subplots(figsize=(5, 4))
        cs = ax.contourf(axis, axis, grid, levels=20)
        fig.colorbar(cs, label="I (bits)")
        ax.set_xlabel("q")
        ax.set_ylabel("b0")
        fig.savefig(args.png, dpi=150, bbox_inches="tight")
        print(f"wrote {args.png}")


if __name__ == "__main__":
    main()
