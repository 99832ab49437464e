import argparse

from ..experiments import pair_spectrum
from ..output import plot_svg, write_csv
from ..spectral import gap_rows, spectrum_rows
from . import Command


class Fig1Command(Command):
    NAME = "fig1"
    HELP = "Spectrum and intrapair gaps of the pair-tunnelling term"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "-N",
            dest="N",
            type=int,
            default=160,
            help="Particle number, even (default: 160)",
        )

    @classmethod
    def run(cls, args: argparse.Namespace) -> int:
        manifest = cls.manifest(args, cluster=1e-10)
        spectrum = pair_spectrum(args.N, args.tol)
        levels = spectrum_rows(spectrum)
        gaps = gap_rows(spectrum)

        manifest.add_output(
            write_csv(
                args.out / "fig1_spectrum.csv", "fig1", ["n", "eigenvalue"], levels
            )
        )
        manifest.add_output(
            write_csv(
                args.out / "fig1_gaps.csv",
                "fig1",
                ["n", "intrapair_gap", "interpair_gap"],
                gaps,
            )
        )
        if args.svg:
            manifest.add_output(
                plot_svg(
                    args.out / "fig1_spectrum.svg",
                    [n for n, _ in levels],
                    {"eigenvalue": [value for _, value in levels]},
                    f"Pair-tunnelling spectrum, N={args.N}",
                    "n",
                    "eigenvalue",
                )
            )
            manifest.add_output(
                plot_svg(
                    args.out / "fig1_gaps.svg",
                    [row[0] for row in gaps],
                    {"intrapair": [max(row[1], 1e-300) for row in gaps]},
                    f"Intrapair gaps, N={args.N}",
                    "n",
                    "gap",
                    logy=True,
                )
            )

        manifest.write(args.out)
        low, high = levels[0][1], levels[-1][1]
        print(f"fig1: N={args.N}, {len(levels)} eigenvalues in [{low:.6g}, {high:.6g}]")
        return 0
