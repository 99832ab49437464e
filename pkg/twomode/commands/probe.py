import argparse
import json
from pathlib import Path

from ..config import load_probe_config
from ..fock_dicke import expectation
from ..metrology import classical_fisher, fragmentation, qfi_pure, sld
from ..output import write_csv, write_json
from ..spectral import eigh
from . import Command


class ProbeCommand(Command):
    NAME = "probe"
    HELP = "QFI report for a configured Hamiltonian, probe state and generator"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("config", type=Path, help="Probe configuration (JSON)")
        parser.add_argument(
            "--check",
            action="store_true",
            help="Only validate the configuration",
        )

    @classmethod
    def run(cls, args: argparse.Namespace) -> int:
        config, errors = load_probe_config(args.config)
        if errors:
            print(f"{args.config}: {len(errors)} errors")
            for error in errors:
                print(f"  - {error['field']}: {error['text']}")
            return 2
        if args.check:
            if args.verbose:
                print(f"{args.config}: 0 errors")
            return 0

        manifest = cls.manifest(args)
        hamiltonian = config.hamiltonian()
        generator = config.generator_operator(hamiltonian)
        state = config.state.build(config.N, hamiltonian, generator)
        spectrum = eigh(generator, tol=args.tol)
        report = qfi_pure(state, generator, spectrum)

        result = {
            "config": config.asdict(),
            "energy": expectation(hamiltonian, state),
            "report": report.asdict(config.nu),
            "efficiency": report.efficiency,
        }
        if config.sld:
            measurement = sld(state, generator)
            result["sld"] = {
                "eigenvalues": list(measurement.eigenvalues),
                "projectors": [v.asdict() for v in measurement.projectors],
                "classical_fisher": classical_fisher(
                    state, generator, measurement, spectrum=spectrum
                ),
            }
        if config.fragmentation:
            result["fragmentation"] = fragmentation(state).asdict()

        manifest.add_output(write_json(args.out / "probe.json", result))
        manifest.add_output(
            write_csv(
                args.out / "probe_state.csv",
                "probe-state",
                ["k", "re", "im"],
                state.to_rows(),
            )
        )
        manifest.write(args.out)
        print(json.dumps(result["report"], indent=2, sort_keys=True))
        return 0
