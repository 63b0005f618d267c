#!/usr/bin/env python
# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version.
#
# painleve is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more
# details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with painleve. If not, see <http://www.gnu.org/licenses/>.

import os
import re
import sys

if sys.version_info < (3, 6):
    error = "ERROR: painleve requires Python 3.6+ ... exiting."
    sys.stderr.write(error + '\n')
    sys.exit(1)

from setuptools import setup, find_packages
from setuptools.command.test import test as TestCommand


class PyTest(TestCommand):
    user_options = TestCommand.user_options[:]
    user_options += [
        ('slow', 'S', 'Run the long reproductions of the published runs'),
        ('coverage', 'C', 'Produce a coverage report for painleve'),
    ]

    def initialize_options(self):
        TestCommand.initialize_options(self)
        self.slow = None
        self.coverage = None

    def finalize_options(self):
        TestCommand.finalize_options(self)
        self.test_suite = True
        self.test_args = []
        if self.coverage:
            self.test_args += ['--cov', 'painleve', '--cov-report',
                               'term-missing']
        if self.slow:
            self.test_args.append('--slow')

    def run_tests(self):
        # import here, cause outside the eggs aren't loaded
        import pytest
        errno = pytest.main(self.test_args)
        sys.exit(errno)


def read_version():
    static = os.path.join('painleve', 'static.py')
    with open(static) as fp:
        match = re.search(r'^VERSION = "([^"]+)"', fp.read(), re.M)
    return match.group(1)


console_scripts = ['painleve = painleve.cli:main']

with open('README.rst') as fp:
    README = fp.read()

setup(
    name='painleve',
    version=read_version(),
    packages=find_packages(),
    package_data={'painleve.templates': ['*.txt']},
    include_package_data=True,
    license='LGPL3',
    author='The painleve developers',
    description="Event-driven simulation of the Painleve paradox in a "
    "two-link arm sliding on a moving belt",
    long_description=README,
    python_requires='>=3.6',
    install_requires=["workerpool>=0.9.2", "Jinja2>=2.7",
                      "decorator>=3.4.0", "numpy>=1.17", "scipy>=1.3",
                      "tqdm>=4.19"],
    tests_require=["pytest>=3.0", "pytest-cov>=2.5"],
    cmdclass={"test": PyTest},
    entry_points=dict(console_scripts=console_scripts),
    zip_safe=False,
    classifiers=[
        'Environment :: Console',
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Intended Audience :: Education',
        'License :: OSI Approved :: GNU Library or Lesser General Public '
        'License (LGPL)',
        'Natural Language :: English',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Physics',
    ],
)
