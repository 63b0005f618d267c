# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

import math

import numpy as np

from painleve import static
from painleve import contact
from painleve import exception

from painleve.commands.base import CmdBase


class CmdRegions(CmdBase):
    """
    regions [options]

    Map the solution modes over (theta1, theta1_dot) on the contact manifold

    Each grid point of the [regions] section is put on the contact closure of
    the chosen elbow branch and classified as sliding, flight, indeterminate
    or inconsistent with zero motor torque. Two files are written:

        <prefix>-regions.csv       theta1 (deg), theta1_dot (rad/s), mode
        <prefix>-regions-zero.csv  b = 0 and p = 0 zero-level points
    """
    names = ['regions']

    def grids(self):
        r = self.cfg.settings.regions
        if r.theta1_points < 2 or r.theta1_dot_points < 2:
            raise exception.RunValidationError(
                "[regions] grids need at least 2 points per axis")
        theta1 = np.radians(np.linspace(r.theta1_min, r.theta1_max,
                                        r.theta1_points))
        theta1_dot = np.linspace(r.theta1_dot_min, r.theta1_dot_max,
                                 r.theta1_dot_points)
        return theta1, theta1_dot, r.elbow

    def execute(self, args):
        params = self.cfg.robot_params()
        theta1, theta1_dot, elbow = self.grids()
        self.log.info("Classifying %d x %d grid points (%s elbow)" %
                      (len(theta1), len(theta1_dot), elbow))
        region = contact.region_map(theta1, theta1_dot, params, None, elbow)

        def rows():
            for i, t1 in enumerate(region.theta1):
                for j, t1d in enumerate(region.theta1_dot):
                    yield [math.degrees(t1), t1d, region.modes[i][j]]

        def zero_rows():
            for name, points in (('b', region.b_zero), ('p', region.p_zero)):
                for t1, t1d in points:
                    yield [name, math.degrees(t1), t1d]

        out = dict(
            regions=self.write_csv('regions.csv', static.REGION_COLUMNS,
                                   rows()),
            zero_levels=self.write_csv('regions-zero.csv',
                                       static.ZERO_LEVEL_COLUMNS,
                                       zero_rows()),
            fractions=contact.region_fractions(region))
        self.print_json(out)
