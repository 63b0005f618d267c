# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

"""
Utils module for painleve
"""

import os
import json
import time
import types
import hashlib
import tempfile
import contextlib

import decorator
import numpy as np

from painleve.logger import log


class AttributeDict(dict):
    """
    Subclass of dict that allows read-only attribute-like access to
    dictionary key/values
    """
    def __getattr__(self, name):
        try:
            return self.__getitem__(name)
        except KeyError:
            return super(AttributeDict, self).__getattribute__(name)


def print_timing(msg=None, debug=False):
    """
    Decorator for printing execution time (in mins) of a function
    Optionally takes a user-friendly msg as argument. This msg will
    appear in the sentence "[msg] took XXX mins". If no msg is specified,
    msg will default to the decorated function's name. e.g:

    >>> @print_timing
    ... def myfunc():
    ...     print('Running myfunc')
    >>> myfunc()
    Running myfunc
    myfunc took 0.000 mins

    >>> @print_timing('Sweep')
    ... def myfunc():
    ...    print('Running myfunc')
    >>> myfunc()
    Running myfunc
    Sweep took 0.000 mins
    """
    prefix = msg
    if isinstance(msg, types.FunctionType):
        prefix = msg.__name__

    def wrap_f(func, *arg, **kargs):
        """Raw timing function """
        time1 = time.time()
        res = func(*arg, **kargs)
        time2 = time.time()
        msg = '%s took %0.3f mins' % (prefix, (time2 - time1) / 60.0)
        if debug:
            log.debug(msg)
        else:
            log.info(msg)
        return res

    if isinstance(msg, types.FunctionType):
        return decorator.decorator(wrap_f, msg)
    else:
        return decorator.decorator(wrap_f)


def fmt_float(value):
    """
    Full precision scientific notation (17 significant digits)
    """
    return '%.16e' % value


def config_hash(sections):
    """
    SHA-256 of the canonical JSON dump of a resolved config (nested dicts of
    plain values)
    """
    blob = json.dumps(sections, sort_keys=True, separators=(',', ':'),
                      default=str)
    return hashlib.sha256(blob.encode('utf-8')).hexdigest()


def grid(start, stop, step, decimals=12):
    """
    Inclusive evenly spaced grid from start to stop. Values are built from the
    integer index so that no rounding error accumulates along the grid.

    >>> list(grid(0.1, 0.3, 0.1))
    [0.1, 0.2, 0.3]
    """
    if step <= 0:
        raise ValueError("grid step must be positive")
    n = int(round((stop - start) / step)) + 1
    values = start + step * np.arange(max(n, 1))
    return [float(v) for v in np.round(values, decimals)]


@contextlib.contextmanager
def atomic_write(path):
    """
    Write to a temporary file next to path and move it into place only when
    the block completes without error
    """
    dirname = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(dirname):
        os.makedirs(dirname)
    fd, tmp = tempfile.mkstemp(dir=dirname, prefix='.%s.' %
                               os.path.basename(path))
    try:
        with os.fdopen(fd, 'w', newline='') as fp:
            yield fp
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
