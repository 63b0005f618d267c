# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

import unittest
import tempfile

from painleve import model
from painleve.config import PainleveConfig
from painleve.tests.templates import config


class PainleveTest(unittest.TestCase):

    __cfg = None

    @property
    def config(self):
        """ Returns (valid) default test config """
        if not self.__cfg:
            self.__cfg = self.get_config(config.config_test_template %
                                         config.default_config)
        return self.__cfg

    @property
    def params(self):
        return model.RobotParams.standard()

    def get_config(self, contents, overrides=None):
        with tempfile.NamedTemporaryFile('w', suffix='.cfg') as tmp_file:
            tmp_file.write(contents)
            tmp_file.flush()
            cfg = PainleveConfig(tmp_file.name, overrides=overrides)
            cfg.load()
        return cfg

    def get_custom_config(self, **kwargs):
        """ Returns default test config modified by kwargs """
        kwords = {}
        kwords.update(config.default_config)
        kwords.update(kwargs)
        return self.get_config(config.config_test_template % kwords)
