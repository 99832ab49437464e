import argparse

from ..experiments import headline_scalars
from ..output import write_json
from . import Command


class ScalarsCommand(Command):
    NAME = "scalars"
    HELP = "QFI gaps of the near-optimal and psi4 probes, and the repetition ratio"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "-N",
            dest="N",
            type=int,
            default=160,
            help="Particle number, even (default: 160)",
        )
        parser.add_argument(
            "--eta-points",
            type=int,
            default=73,
            help="Grid over the relative phase eta (default: 73)",
        )

    @classmethod
    def run(cls, args: argparse.Namespace) -> int:
        manifest = cls.manifest(args)
        scalars = headline_scalars(args.N, args.eta_points, args.tol)
        manifest.add_output(write_json(args.out / "scalars.json", scalars))
        manifest.write(args.out)

        width = max(len(key) for key in scalars)
        for key, value in scalars.items():
            shown = f"{value:.12g}" if isinstance(value, float) else value
            print(f"  {key:{width}s}  {shown}")
        if not scalars["family_bound_holds"]:
            print("Warning: the fidelity bound on the QFI gap was violated")
        return 0
