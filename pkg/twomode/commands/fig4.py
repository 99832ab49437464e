import argparse
import sys

from ..experiments import FIG4_HEADER, fig4_result
from ..output import plot_svg, write_csv
from ..variational import OptimizerConfig
from . import Command, add_sweep_arguments, map_rows, sweep_values


class Fig4Command(Command):
    NAME = "fig4"
    HELP = "Ansatz infidelities against the number-weighted tunnelling ground state"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        add_sweep_arguments(parser, 8, 160, 4)
        parser.add_argument(
            "--optimizer-step",
            type=int,
            default=8,
            help="Optimize only at N divisible by this (default: 8)",
        )
        parser.add_argument(
            "--no-optimize",
            action="store_true",
            help="Skip the Nelder-Mead column",
        )
        parser.add_argument(
            "--max-iter",
            type=int,
            default=4000,
            help="Nelder-Mead iterations per run (default: 4000)",
        )
        parser.add_argument(
            "--trace",
            action="store_true",
            help="Write the optimizer evaluations of every optimized row",
        )

    @classmethod
    def run(cls, args: argparse.Namespace) -> int:
        if args.optimizer_step <= 0:
            print("Error: --optimizer-step must be positive", file=sys.stderr)
            return 2
        cfg = OptimizerConfig(init=(0.0, 0.0), max_iter=args.max_iter)
        manifest = cls.manifest(args, optimizer_f=cfg.tol_f, optimizer_x=cfg.tol_x)

        def compute(N):
            optimize = not args.no_optimize and N % args.optimizer_step == 0
            return fig4_result(N, optimize, cfg, args.tol)

        results = map_rows(compute, sweep_values(args), args)
        rows = [row for row, _ in results]

        manifest.add_output(write_csv(args.out / "fig4.csv", "fig4", FIG4_HEADER, rows))
        if args.trace:
            for row, result in results:
                if result is None:
                    continue
                manifest.add_output(
                    write_csv(
                        args.out / f"fig4_trace_N{row[0]}.csv",
                        "fig4-trace",
                        ["evaluation", "w", "z", "log_infidelity"],
                        result.trace_rows(),
                    )
                )
        if args.svg:
            manifest.add_output(
                plot_svg(
                    args.out / "fig4.svg",
                    [row[0] for row in rows],
                    {
                        "coherent": [row[2] for row in rows],
                        "two-equation xi": [row[5] for row in rows],
                        "optimized xi": [row[8] for row in rows],
                    },
                    "Infidelity against the weighted-tunnelling ground state",
                    "N",
                    "1 - F",
                    logy=True,
                )
            )

        manifest.write(args.out)
        failed = [row[0] for row in rows if not row[9]]
        print(f"fig4: {len(rows)} rows")
        if failed:
            listed = ", ".join(str(N) for N in failed)
            print(f"Error: optimizer did not converge at N={listed}", file=sys.stderr)
            return 3
        return 0
