import logging
import os
from argparse import ArgumentTypeError

from .errors import TrotterDisorderError, UsageError, DomainError, NumericalError

__version__ = "0.1.0"

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def str2bool(v):
    if isinstance(v, bool):
        return v
    if v.lower() in ('yes', 'true', 't', 'y', '1'):
        return True
    elif v.lower() in ('no', 'false', 'f', 'n', '0'):
        return False
    else:
        raise ArgumentTypeError('Boolean value expected.')


def setup_logging(level="INFO"):
    """
    Configure the root logger once for command line use.
    :param level: logging level name or number
    """
    if isinstance(level, str):
        level = level.upper()
    logging.basicConfig(level=level, format=LOG_FORMAT)
    # Lightning is chatty on INFO about things irrelevant here
    logging.getLogger("pytorch_lightning").setLevel(logging.WARNING)


def default_workers():
    """
    Worker count from TROTTERDISORDER_WORKERS, falling back to the number of CPUs.
    """
    value = os.environ.get("TROTTERDISORDER_WORKERS")
    if value is None:
        return os.cpu_count() or 1
    try:
        workers = int(value)
    except ValueError:
        raise UsageError("TROTTERDISORDER_WORKERS must be an integer, got {!r}".format(value))
    if workers <= 0:
        raise UsageError("TROTTERDISORDER_WORKERS must be positive, got {}".format(workers))
    return workers
