# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

from painleve import model
from painleve import static
from painleve import control
from painleve import exception
from painleve import validators

from painleve.commands.base import CmdBase


class CmdZtMax(CmdBase):
    """
    ztmax [options]

    Find the largest target z_t reachable without lift-off

    Targets are approached from the initial posture with a ramp at [ztmax]
    ramp_rate and held for [ztmax] hold seconds; the largest target for
    which no lift-off occurs is located by bisection to [ztmax] tol.

    Example:

        $ painleve --set controller.type=hybrid \\
            --set controller.gains=standard \\
            ztmax
    """
    names = ['ztmax']

    def execute(self, args):
        validator = validators.RunValidator(self.cfg)
        validator.validate()
        spec = validator.spec
        if spec.kind == static.OPEN_LOOP:
            raise exception.RunValidationError(
                "ztmax needs a pid or hybrid controller")
        params = validator.params
        scenario = validator.scenario
        search = self.cfg.ztmax_search()
        z0 = model.forward_kinematics(scenario.state, params).z_t
        self.log.info("Searching z_t,sliding from z_t = %.4f m (%s, %s "
                      "control)" % (z0, scenario.label, spec.kind))
        z_max = control.find_Zt_sliding(spec, scenario.state, params, search,
                                        self.cfg.sim_config())
        self.log.info("z_t,sliding = %.4f m" % z_max)
        interval = validator.interval
        self.print_json(dict(
            z_t_sliding=z_max, z_t_initial=z0, controller=spec.kind,
            initial=scenario.label, elbow=scenario.elbow,
            tol=search.tol,
            admissible=interval.as_dict() if interval is not None else None))
