# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

from painleve import static
from painleve import contact
from painleve import exception

from painleve.commands.base import CmdBase


class CmdAdmissible(CmdBase):
    """
    admissible [options]

    Print the admissible z_t range of both elbow branches as JSON

    The admissible range is the interval of tangential positions on the
    contact manifold where the normal force gain p stays positive for a tip
    slipping forward, so that no paradoxical mode can occur.

    Example:

        $ painleve --set robot.mu=0.6 admissible
    """
    names = ['admissible']

    def execute(self, args):
        params = self.cfg.robot_params()
        if params.mu <= 0:
            raise exception.RunValidationError(
                "admissible ranges need mu > 0 (got %g)" % params.mu)
        out = dict(mu=params.mu, reach=params.reach)
        for elbow in static.ELBOWS:
            interval = contact.admissible_range(params, elbow)
            self.log.info("%s elbow: z_t in %s" % (elbow, interval))
            out[elbow] = interval.as_dict()
        self.print_json(out)
