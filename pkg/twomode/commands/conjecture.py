import argparse
import sys

import numpy as np

from ..experiments import CONJECTURE_HEADER, conjecture_rows
from ..output import plot_svg, write_csv
from . import Command, map_rows


class ConjectureCommand(Command):
    NAME = "conjecture"
    HELP = "Scan the omega consistency residual for an exact eigenvector"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "-N",
            dest="N",
            type=int,
            nargs="+",
            default=[4, 8, 16, 32],
            help="Particle numbers, even (default: %(default)s)",
        )
        parser.add_argument(
            "--sign",
            choices=["+", "-", "both"],
            default="both",
            help="Omega branch to scan (default: both)",
        )
        parser.add_argument("--cmin", type=float, default=0.05)
        parser.add_argument("--cmax", type=float, default=1.5)
        parser.add_argument("--points", type=int, default=300)

    @classmethod
    def run(cls, args: argparse.Namespace) -> int:
        if not (0 < args.cmin < args.cmax) or args.points < 3:
            print(
                "Error: need 0 < --cmin < --cmax and --points >= 3", file=sys.stderr
            )
            return 2

        manifest = cls.manifest(args)
        grid = np.linspace(args.cmin, args.cmax, args.points)
        signs = "+-" if args.sign == "both" else args.sign
        cases = [(N, sign) for N in args.N for sign in signs]
        scans = map_rows(lambda case: conjecture_rows(*case, grid), cases, args)

        rows = [row for scan, _ in scans for row in scan]
        minima = [row for _, found in scans for row in found]
        manifest.add_output(
            write_csv(
                args.out / "conjecture.csv", "conjecture", CONJECTURE_HEADER, rows
            )
        )
        manifest.add_output(
            write_csv(
                args.out / "conjecture_minima.csv",
                "conjecture-minima",
                CONJECTURE_HEADER,
                minima,
            )
        )
        if args.svg:
            series = {
                f"N={N} {sign}": [row[3] for row in scan]
                for (N, sign), (scan, _) in zip(cases, scans)
            }
            manifest.add_output(
                plot_svg(
                    args.out / "conjecture.svg",
                    grid,
                    series,
                    "Consistency residual of omega(c)",
                    "c",
                    "residual",
                    logy=True,
                )
            )

        manifest.write(args.out)
        for N, sign, c, residual in minima:
            print(f"  N={N:4d} omega{sign} c={c:.10f} residual={residual:.3e}")
        return 0
