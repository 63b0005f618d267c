# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

from painleve import sim
from painleve import static
from painleve import validators

from painleve.commands.base import CmdBase


class CmdSimulate(CmdBase):
    """
    simulate [options]

    Simulate one run and write its trajectory and event log

    The run is described by the [robot], [sim], [controller] and [scenario]
    sections. Two files are written to the output directory:

        <prefix>-trajectory.csv   sampled states, contact forces, torques
        <prefix>-events.jsonl     mode transitions and impacts

    Examples:

        $ painleve simulate
        $ painleve --set sim.t_end=30 --set controller.type=hybrid simulate
    """
    names = ['simulate', 'sim']

    def addopts(self, parser):
        parser.add_option("-n", "--no-events", dest="no_events",
                          action="store_true", default=False,
                          help="do not write the event log")

    def execute(self, args):
        validator = validators.RunValidator(self.cfg)
        validator.validate()
        params = validator.params
        scenario = validator.scenario
        config = self.cfg.sim_config()
        controller = validator.spec.build(scenario.state, params)
        self.log.info("Simulating %g s from %s with %s control" %
                      (config.t_end, scenario.label, controller.kind))
        traj = sim.simulate(scenario.state, controller, params, config)
        rows = traj.rows() if config.t_end > 0 else []
        result = dict(trajectory=self.write_csv(
            'trajectory.csv', static.TRAJECTORY_COLUMNS, rows))
        if not self.opts.no_events:
            result['events'] = self.write_jsonl(
                'events.jsonl', (e.as_dict() for e in traj.events))
        transitions = traj.transitions
        result.update(final_time=traj.final_time, samples=len(traj),
                      transitions=len(transitions),
                      lifted_off=traj.lifted_off(),
                      controller_flags=[kind for t, kind in
                                        controller.flags])
        self.log.info("%d samples, %d transitions%s" % (
            len(traj), len(transitions),
            ', lift-off occurred' if traj.lifted_off() else ''))
        self.print_json(result)
