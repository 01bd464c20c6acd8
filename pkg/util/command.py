"""
    A small command framework on top of argparse.

    Command groups subclass `Group` and mark methods with `@command`; each module under
    `commands/` exposes `setup(registry)` which adds its groups. The registry builds one
    subcommand per marked method and routes every error through `error_handler`.
"""

import argparse
import importlib
import logging
import sys
from collections import namedtuple

from util.cardinal import CardTagError
from util.document import DocumentError
from util.kposet import KPosetError
from util.oracle import OracleError
from util.poset import PosetError
from util.splitting import SplittingError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2


class CommandError(Exception):
    pass


class CheckFailedError(CommandError):
    def __init__(self, violations, message=None):
        super().__init__(message or f'Check failed: {violations[0]}')
        self.violations = violations


CommandSpec = namedtuple('CommandSpec', 'name brief arguments')


def argument(*flags, **kwargs):
    return flags, kwargs


def command(name=None, *, brief=None, arguments=()):
    def decorator(func):
        func.command_spec = CommandSpec(name or func.__name__.replace('_', '-'),
                                        brief or (func.__doc__ or '').strip(), arguments)
        return func
    return decorator


class Group:
    def __init__(self, registry):
        self.registry = registry
        self.logger = logging.getLogger(self.__class__.__name__)

    def get_commands(self):
        for name in dir(self):
            method = getattr(self, name)
            if callable(method) and hasattr(method, 'command_spec'):
                yield method


class Registry:
    def __init__(self, prog='ksplit'):
        self.prog = prog
        self.groups = {}

    def add_group(self, group):
        self.groups[group.__class__.__name__] = group

    def load_extension(self, name):
        importlib.import_module(name).setup(self)

    def commands(self):
        return {method.command_spec.name: method
                for group in self.groups.values() for method in group.get_commands()}

    def build_parser(self):
        parser = argparse.ArgumentParser(prog=self.prog)
        subparsers = parser.add_subparsers(dest='command', required=True)
        for name, method in sorted(self.commands().items()):
            sub = subparsers.add_parser(name, help=method.command_spec.brief)
            for flags, kwargs in method.command_spec.arguments:
                sub.add_argument(*flags, **kwargs)
            sub.set_defaults(handler=method)
        return parser

    def run(self, args):
        try:
            status = args.handler(args)
        except Exception as exception:
            return error_handler(args.command, exception)
        return EXIT_OK if status is None else status


def error_handler(name, exception):
    """Exit status for a failed command; unexpected exceptions are logged and re-raised."""
    if isinstance(exception, CheckFailedError):
        for violation in exception.violations:
            print(f'violation {violation}')
        print(f'error: {exception}', file=sys.stderr)
        return EXIT_CHECK_FAILED
    if isinstance(exception, (DocumentError, PosetError, CardTagError, OracleError, OSError)):
        print(f'error: {exception}', file=sys.stderr)
        return EXIT_BAD_INPUT
    if isinstance(exception, (KPosetError, SplittingError)):
        print(f'error: {exception}', file=sys.stderr)
        return EXIT_CHECK_FAILED
    logger.exception(f'Unexpected exception in command {name}')
    raise exception
