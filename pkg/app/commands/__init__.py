import argparse
from app.core.core_config import settings
from . import command_compile, command_correlate, command_scan, command_sweep, command_tomo


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.APP_NAME,
        description="Wen plaquette model: spectra, adiabatic sweeps, NMR pulse compilation and tomography"
    )
    parser.add_argument("--version", action="version", version=settings.APP_VERSION)
    subparsers = parser.add_subparsers(dest="command", required=True)

    # 注冊各個子命令
    command_scan.register(subparsers)
    command_sweep.register(subparsers)
    command_correlate.register(subparsers)
    command_compile.register(subparsers)
    command_tomo.register(subparsers)
    return parser
