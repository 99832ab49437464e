import argparse
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Iterable

from ..experiments import DEFAULT_TOL, sweep
from ..output import RunManifest, resolve_threads


class Command:
    NAME = ""
    HELP = ""

    @classmethod
    def add_parser(cls, subparsers) -> argparse.ArgumentParser:
        parser = subparsers.add_parser(cls.NAME, help=cls.HELP)
        cls.add_arguments(parser)
        add_output_arguments(parser)
        return parser

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        pass

    @classmethod
    def run(cls, args: argparse.Namespace) -> int:
        raise NotImplementedError

    @classmethod
    def manifest(cls, args: argparse.Namespace, **tolerances) -> RunManifest:
        parameters = {
            key: str(value) if isinstance(value, Path) else value
            for key, value in sorted(vars(args).items())
            if key != "command"
        }
        return RunManifest(
            command=cls.NAME,
            parameters=parameters,
            tolerances={"residual": args.tol, **tolerances},
        )


def add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--out",
        type=Path,
        default=Path("out"),
        help="Directory for CSV, JSON and SVG outputs (default: out)",
    )
    parser.add_argument(
        "--tol",
        type=float,
        default=DEFAULT_TOL,
        help=f"Eigenvector residual tolerance (default: {DEFAULT_TOL})",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="Rows computed in parallel; METRO_THREADS overrides (default: 1)",
    )
    parser.add_argument(
        "--svg",
        action="store_true",
        help="Also render the results as SVG (needs matplotlib)",
    )
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Report every row as it completes",
    )


def add_sweep_arguments(
    parser: argparse.ArgumentParser, nmin: int, nmax: int, step: int
) -> None:
    parser.add_argument(
        "--nmin", type=int, default=nmin, help=f"Smallest N (default: {nmin})"
    )
    parser.add_argument(
        "--nmax", type=int, default=nmax, help=f"Largest N (default: {nmax})"
    )
    parser.add_argument(
        "--step", type=int, default=step, help=f"Step in N (default: {step})"
    )


def sweep_values(args: argparse.Namespace) -> list[int]:
    return sweep(args.nmin, args.nmax, args.step)


def map_rows(
    function: Callable, values: Iterable, args: argparse.Namespace
) -> list:
    """Evaluate ``function`` over ``values``, results in input order."""
    values = list(values)
    threads = resolve_threads(args.threads)
    with ThreadPoolExecutor(max_workers=threads) as executor:
        results = []
        for value, result in zip(values, executor.map(function, values)):
            if args.verbose:
                print(f"  {args.command} N={value} done")
            results.append(result)
    return results
