import logging
import os
import sys
from logging.handlers import TimedRotatingFileHandler
from os import environ
from pathlib import Path

import KSconstants
from util.command import Registry


def apply_environment():
    output_dir = environ.get('KSPLIT_OUTPUT_DIR')
    if output_dir:
        KSconstants.OUTPUT_DIR = output_dir
    logs_dir = environ.get('KSPLIT_LOGS_DIR')
    if logs_dir:
        KSconstants.LOGS_DIR = logs_dir
        KSconstants.LOG_FILE_PATH = os.path.join(logs_dir, 'ksplit.log')
    log_level = environ.get('KSPLIT_LOG_LEVEL')
    if log_level:
        KSconstants.LOG_LEVEL = log_level.upper()


def setup():
    # Make required directories.
    for path in KSconstants.all_dirs():
        os.makedirs(path, exist_ok=True)

    # logging to console and file on daily interval
    logging.basicConfig(format='{asctime}:{levelname}:{name}:{message}', style='{',
                        datefmt='%d-%m-%Y %H:%M:%S', level=KSconstants.LOG_LEVEL,
                        handlers=[logging.StreamHandler(),
                                  TimedRotatingFileHandler(KSconstants.LOG_FILE_PATH, when='D',
                                                           backupCount=3, utc=True)])


def build_registry():
    registry = Registry()
    groups = [file.stem for file in (Path(__file__).parent / 'commands').glob('*.py')]
    for extension in sorted(groups):
        registry.load_extension(f'commands.{extension}')
    logging.info(f'Command groups loaded: {", ".join(registry.groups)}')
    return registry


def main(argv=None):
    apply_environment()
    setup()
    registry = build_registry()
    args = registry.build_parser().parse_args(argv)
    return registry.run(args)


if __name__ == '__main__':
    sys.exit(main())
