"""
elbowkit command group
"""
import click

from elbowkit import __version__
from elbowkit.commands.compare_command import compare
from elbowkit.commands.detect_command import detect
from elbowkit.commands.experiment_command import experiment
from elbowkit.utils.logging_config import setup_logging


@click.group()
@click.version_option(__version__, prog_name='elbowkit')
@click.option('--verbose', is_flag=True, help='Log INFO events to stderr')
def cli(verbose):
    """
    Elbow detection and information-criterion order selection.

    Exit codes: 0 success, 1 I/O or fitting failure, 2 invalid input.
    """
    setup_logging('INFO' if verbose else None)


# commands
cli.add_command(detect)
cli.add_command(compare)
cli.add_command(experiment)


def main():
    cli(prog_name='elbowkit')
