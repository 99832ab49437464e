import argparse
import sys
import warnings
from typing import List, Optional

from .commands.conjecture import ConjectureCommand
from .commands.fig1 import Fig1Command
from .commands.fig2 import Fig2Command
from .commands.fig3 import Fig3Command
from .commands.fig4 import Fig4Command
from .commands.probe import ProbeCommand
from .commands.scalars import ScalarsCommand
from .commands.table1 import Table1Command
from .errors import ConvergenceError, MetrologyError, MetrologyWarning

COMMANDS = {
    command.NAME: command
    for command in (
        Fig1Command,
        Fig2Command,
        Fig3Command,
        Fig4Command,
        Table1Command,
        ScalarsCommand,
        ProbeCommand,
        ConjectureCommand,
    )
}


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twomode",
        description="Quantum metrology with two-mode bosonic states",
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    for command in COMMANDS.values():
        command.add_parser(subparsers)

    return parser


def main(args: Optional[List[str]] = None) -> int:
    parser = create_parser()

    if args is None:
        args = sys.argv[1:]

    parsed_args = parser.parse_args(args)
    if not parsed_args.command:
        parser.print_help()
        return 1

    warnings.simplefilter("always", MetrologyWarning)
    try:
        return COMMANDS[parsed_args.command].run(parsed_args)
    except ConvergenceError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 3
    except (MetrologyError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2
    except ImportError as e:
        print(
            f"Error: {e.name} is needed for --svg (pip install twomode[plot])",
            file=sys.stderr,
        )
        return 2
    except OSError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
