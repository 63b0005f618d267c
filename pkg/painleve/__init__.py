# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

from painleve import static

__version__ = static.VERSION
__all__ = [
    "bifurcation",
    "cli",
    "commands",
    "config",
    "contact",
    "control",
    "exception",
    "logger",
    "model",
    "output",
    "sim",
    "static",
    "templates",
    "tests",
    "threadpool",
    "utils",
    "validators",
]


def test(slow=False):
    try:
        import os
        import pytest
        args = ['-xv', os.path.dirname(__file__)]
        if slow:
            args.append('--slow')
        return pytest.main(args)
    except ImportError:
        print('error importing pytest')


test.__test__ = False
