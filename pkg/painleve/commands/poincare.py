# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

import collections

from painleve import static

from painleve.commands.sweep import CmdSweep


class CmdPoincare(CmdSweep):
    """
    poincare [options]

    Poincare sections along one row of the bifurcation sweep

    theta1 is recorded at every upward zero crossing of theta1_dot during
    the record window of each v_belt value. The section points are written
    to <prefix>-poincare.csv (v_belt, theta1 in degrees) and the per-point
    classification to <prefix>-sweep.csv.

    Examples:

        $ painleve poincare --mu 0.6 --ic x0_a
        $ painleve --jobs 8 poincare --mu 0.6
    """
    names = ['poincare']

    def addopts(self, parser):
        CmdSweep.addopts(self, parser)
        parser.add_option("-m", "--mu", dest="mu", action="store",
                          type="float", default=None,
                          help="friction coefficient of the row (default: "
                          "the [sweep] mu grid)")
        parser.add_option("-i", "--ic", dest="ic", action="store",
                          choices=sorted(static.PRESETS), default=None,
                          help="initial condition preset (default: the "
                          "[sweep] initial_conditions)")

    def execute(self, args):
        spec = self.cfg.sweep_spec()
        if self.opts.mu is not None:
            spec = spec._replace(mu_values=[self.opts.mu])
        if self.opts.ic is not None:
            spec = spec._replace(initial_conditions=[self.opts.ic],
                                 random_ics=0)
        result = self.run_sweep(spec.validate())
        columns = list(static.POINCARE_COLUMNS)
        sweep_columns = list(static.SWEEP_COLUMNS)
        if result.restitutions:
            columns.append('restitution')
            sweep_columns.append('restitution')
        out = dict(poincare=self.write_csv('poincare.csv', columns,
                                           result.poincare_rows()),
                   sweep=self.write_csv('sweep.csv', sweep_columns,
                                        result.rows()))
        counts = collections.Counter(p.classification.kind for p in result)
        out['classification'] = dict(counts)
        self.print_json(out)
