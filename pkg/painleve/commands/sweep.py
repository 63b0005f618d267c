# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

from painleve import static
from painleve import bifurcation

from painleve.commands.base import CmdBase


class CmdSweep(CmdBase):
    """
    sweep [options]

    Brute-force bifurcation sweep over (mu, v_belt)

    Every grid point of the [sweep] section is simulated from every initial
    condition for the transient time and then recorded. The result is
    written to <prefix>-sweep.csv with one row per (mu, v_belt, initial
    condition). When the [controller] section selects the hybrid controller
    the sweep runs in closed loop.

    Examples:

        $ painleve --jobs 8 sweep
        $ painleve --set sweep.mu_min=0.6 --set sweep.mu_max=0.6 sweep
        $ painleve sweep --restitution 0,0.2,0.5
    """
    names = ['sweep']

    def addopts(self, parser):
        parser.add_option("-e", "--restitution", dest="restitution",
                          action="callback", type="string", default=None,
                          callback=self._float_list,
                          help="comma separated touchdown restitution values; "
                          "the sweep is repeated for each and rows are "
                          "tagged with the value")

    def _check_restitutions(self):
        for e in self.opts.restitution or []:
            if not 0 <= e <= 1:
                self.parser.error("restitution values must lie in [0, 1]")

    def run_sweep(self, spec):
        self._check_restitutions()
        params = self.cfg.robot_params()
        sim_config = self.cfg.sim_config()
        if spec.controller.kind == static.HYBRID_CONTROL:
            run = bifurcation.closed_loop_sweep
        else:
            run = bifurcation.sweep
        self.log.info("Sweeping %d mu x %d v_belt values, %d runs on %d "
                      "job(s)" % (len(spec.mu_values), len(spec.v_values),
                                  spec.n_runs, self.jobs))
        return run(spec, params, sim_config, jobs=self.jobs,
                   restitutions=self.opts.restitution)

    def summary(self, result):
        windows = []
        tags = result.restitutions or [None]
        for e in tags:
            for mu in result.spec.mu_values:
                labels = []
                for p in result.select(mu=mu, restitution=e):
                    if p.ic_label not in labels:
                        labels.append(p.ic_label)
                for label in labels:
                    window = result.bounce_window(mu, label, e)
                    entry = dict(mu=mu, ic_label=label, bounce_window=window)
                    if e is not None:
                        entry['restitution'] = e
                    windows.append(entry)
        failed = sum(1 for p in result if p.error)
        return dict(runs=len(result), failed=failed,
                    bounces=sum(1 for p in result if p.bounce),
                    windows=windows)

    def execute(self, args):
        spec = self.cfg.sweep_spec()
        result = self.run_sweep(spec)
        columns = list(static.SWEEP_COLUMNS)
        if result.restitutions:
            columns.append('restitution')
        out = dict(sweep=self.write_csv('sweep.csv', columns, result.rows()))
        out.update(self.summary(result))
        self.print_json(out)
