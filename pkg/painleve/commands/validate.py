# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

import sys

from painleve import validators
from painleve.templates import config as config_template

from painleve.commands.base import CmdBase


class CmdValidate(CmdBase):
    """
    validate [options]

    Check the configuration and print how it will be interpreted

    Nothing is simulated. The report lists the parameters with their units,
    the initial state before and after projection onto the contact manifold,
    the initial gap and solution mode, the controller settings and any
    admissibility warning.

    Examples:

        $ painleve --config run.cfg validate
        $ painleve validate --template > ~/.painleve/config
    """
    names = ['validate']
    needs_config = False

    def addopts(self, parser):
        parser.add_option("-t", "--template", dest="template",
                          action="store_true", default=False,
                          help="print a complete config file holding the "
                          "reference setup and exit")

    def execute(self, args):
        if self.opts.template:
            sys.stdout.write(config_template.config_template)
            return
        self.cfg = self.load_config()
        validator = validators.RunValidator(self.cfg)
        validator.validate()
        sys.stdout.write(validator.report())
