import argparse
from functools import partial

from ..experiments import TABLE1_HEADER, TABLE1_N, table1_row
from ..output import write_csv
from . import Command, map_rows


class Table1Command(Command):
    NAME = "table1"
    HELP = "Normalized QFI of the two-axis-twisting ground state along J_x"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "-N",
            dest="N",
            type=int,
            nargs="+",
            default=list(TABLE1_N),
            help="Particle numbers (default: %(default)s)",
        )

    @classmethod
    def run(cls, args: argparse.Namespace) -> int:
        manifest = cls.manifest(args)
        rows = map_rows(partial(table1_row, tol=args.tol), args.N, args)
        manifest.add_output(
            write_csv(args.out / "table1.csv", "table1", TABLE1_HEADER, rows)
        )
        manifest.write(args.out)

        print("     N  QFI / (2N)^2")
        for N, normalized, _ in rows:
            print(f"  {N:4d}  {normalized:.4f}")
        return 0
