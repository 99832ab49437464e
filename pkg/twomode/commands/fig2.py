import argparse
from functools import partial

from ..experiments import FIG2_HEADER, fig2_exact_row, fig2_row
from ..output import plot_svg, write_csv
from . import Command, add_sweep_arguments, map_rows, sweep_values


class Fig2Command(Command):
    NAME = "fig2"
    HELP = "Overlap of the omega states with the two lowest pair eigenvectors"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        add_sweep_arguments(parser, 8, 160, 4)

    @classmethod
    def run(cls, args: argparse.Namespace) -> int:
        manifest = cls.manifest(args)
        rows = map_rows(partial(fig2_row, tol=args.tol), sweep_values(args), args)
        exact = fig2_exact_row(args.tol)

        manifest.add_output(
            write_csv(args.out / "fig2.csv", "fig2", FIG2_HEADER, [*rows, exact])
        )
        if args.svg:
            manifest.add_output(
                plot_svg(
                    args.out / "fig2.svg",
                    [row[0] for row in rows],
                    {
                        "ground": [1 - max(row[2], row[4]) for row in rows],
                        "first excited": [1 - max(row[3], row[5]) for row in rows],
                    },
                    "Infidelity of the best omega state",
                    "N",
                    "1 - F",
                    logy=True,
                )
            )

        manifest.write(args.out)
        for row in rows:
            N, c, plus_E1, plus_E2, minus_E1, minus_E2 = row
            ground_sign = "+" if plus_E1 >= minus_E1 else "-"
            best = max(plus_E1, minus_E1)
            print(f"  N={N:4d} c~={c:.6f} ground: omega{ground_sign} F={best:.12f}")
        print(f"fig2: {len(rows)} rows, exact N=4 row F={max(exact[2], exact[4]):.12f}")
        return 0
