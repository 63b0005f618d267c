# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

pid_elbow_up_liftoff = """\
The joint space PID controller is known to lose contact when started from \
the elbow up posture %(initial)s: the normal force decays and eventually \
becomes zero, after which the arm lifts off the belt.

Consider the hybrid force/motion controller instead:

    $ painleve simulate --set controller.type=hybrid
"""

outside_admissible = """\
Initial position z_t = %(z_t).4f m lies outside the admissible range \
%(interval)s of the %(elbow)s elbow branch for mu = %(mu)g. The normal force \
gain p is negative there and paradoxical modes may occur.
"""

reference_outside_admissible = """\
The reference end position z_t* = %(z_end).4f m lies outside the admissible \
range %(interval)s of the %(elbow)s elbow branch. Lift-off is expected before \
the reference is reached.
"""

long_sweep = """\
This sweep runs %(runs)d simulations of %(seconds)g s each. Reduce \
[sweep] v_step, transient or record, or raise --jobs, for a quicker run.
"""

crash_report = """\
Oops! Looks like you've found a bug in painleve.

A crash report has been saved to: %(crash_file)s

Please include it when reporting the issue along with the configuration \
file used for the run.
"""
