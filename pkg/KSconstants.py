import os

DATA_DIR = 'data'
LOGS_DIR = 'logs'
OUTPUT_DIR = os.path.join(DATA_DIR, 'out')

LOG_FILE_PATH = os.path.join(LOGS_DIR, 'ksplit.log')
LOG_LEVEL = 'WARNING'


def all_dirs():
    return [attrib_value for attrib_name, attrib_value in list(globals().items())
            if attrib_name.endswith('_DIR')]


# Anonymous class members are pairwise incomparable, so a handful of them is
# order-faithful for every predicate we recompute by brute force.
HEIGHT_TRUNCATION = 2
ORACLE_TRUNCATION = 3

MAX_ENUMERATION_NODES = 5
MAX_ENUMERATION_CLASSES = 3

# numpy bit generator used by the instance generator; part of the file format contract.
PRNG_ALGORITHM = 'PCG64'

FRESH_LABEL_SEPARATOR = '#'
