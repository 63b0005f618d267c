# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

import sys

from painleve import config
from painleve import output
from painleve.logger import log


class CmdBase(object):
    """
    Base class for painleve commands

    Each command consists of a class, which has the following properties:

    - Must have a class member 'names' which is a list of the names for
    the command

    - Can optionally define an addopts(self, parser) method which adds options
    to the given parser. This defines the command's options.

    - Commands that do not need the run configuration set needs_config to
    False
    """
    parser = None
    opts = None
    gopts = None
    gparser = None
    subcmds_map = None
    cfg = None
    needs_config = True

    @property
    def goptions_dict(self):
        """
        Returns global options dictionary
        """
        return dict(getattr(self.gopts, '__dict__', {}))

    @property
    def log(self):
        return log

    @property
    def jobs(self):
        return max(self.goptions_dict.get('JOBS') or 1, 1)

    def load_config(self):
        """
        Loads the run configuration named by the global options
        """
        g = self.goptions_dict
        cfg = config.PainleveConfig(g.get('CONFIG'),
                                    overrides=g.get('SET'),
                                    seed=g.get('SEED'),
                                    output_dir=g.get('OUT'))
        return cfg.load()

    def addopts(self, parser):
        pass

    def execute(self, args):
        raise NotImplementedError()

    def _float_list(self, option, opt_str, value, parser):
        try:
            values = [float(v) for v in value.split(',') if v.strip()]
        except ValueError:
            parser.error("option %s must be a comma separated list of "
                         "numbers" % opt_str)
        if not values:
            parser.error("option %s needs at least one value" % opt_str)
        setattr(parser.values, option.dest, values)

    def output_path(self, suffix):
        return self.cfg.output_path(suffix)

    def write_csv(self, suffix, columns, rows):
        path = self.output_path(suffix)
        output.write_csv(path, columns, rows, self.cfg.config_hash,
                         self.cfg.seed)
        return path

    def write_jsonl(self, suffix, records):
        path = self.output_path(suffix)
        output.write_jsonl(path, records, self.cfg.config_hash,
                           self.cfg.seed)
        return path

    def print_json(self, obj):
        sys.stdout.write(output.dumps(obj) + '\n')
        sys.stdout.flush()
