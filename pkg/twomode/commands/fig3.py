import argparse
from functools import partial

from ..experiments import FIG3_HEADER, fig3_row
from ..output import plot_svg, write_csv
from . import Command, add_sweep_arguments, map_rows, sweep_values


class Fig3Command(Command):
    NAME = "fig3"
    HELP = "Infidelity of the (|i> +- |-i>) cat states against the pair ground state"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        add_sweep_arguments(parser, 8, 160, 4)

    @classmethod
    def run(cls, args: argparse.Namespace) -> int:
        manifest = cls.manifest(args)
        rows = map_rows(partial(fig3_row, tol=args.tol), sweep_values(args), args)

        manifest.add_output(write_csv(args.out / "fig3.csv", "fig3", FIG3_HEADER, rows))
        if args.svg:
            series = {}
            for sign in "+-":
                series[f"best sign {sign}"] = [
                    row[4] if row[3] == sign else float("nan") for row in rows
                ]
            manifest.add_output(
                plot_svg(
                    args.out / "fig3.svg",
                    [row[0] for row in rows],
                    series,
                    "Infidelity of the coherent cat state",
                    "N",
                    "1 - F",
                    logy=True,
                )
            )

        manifest.write(args.out)
        signs = "".join(row[3] for row in rows)
        print(f"fig3: {len(rows)} rows, best signs {signs}")
        return 0
