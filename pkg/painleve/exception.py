# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

"""
painleve Exception Classes
"""

from painleve.logger import log
from painleve.templates import config


class BaseException(Exception):
    def __init__(self, *args):
        self.args = args
        self.msg = args[0]

    def __str__(self):
        return self.msg

    def explain(self):
        return "%s: %s" % (self.__class__.__name__, self.msg)

    def as_dict(self):
        """
        Machine-readable form written by the command line on failure
        """
        return dict(error=self.__class__.__name__, message=self.msg)


class ModelError(BaseException):
    """Base class for kinematics and dynamics errors"""


class UnreachableTarget(ModelError):
    def __init__(self, z_t, z_n, reach):
        self.z_t = z_t
        self.z_n = z_n
        self.msg = ("target (z_t=%g, z_n=%g) is outside the reachable "
                    "disk of radius %g" % (z_t, z_n, reach))


class BranchDegenerate(ModelError):
    def __init__(self, theta):
        self.theta = theta
        self.msg = ("straight arm at theta1 = theta2 = %g rad: elbow "
                    "branches coincide" % theta)


class ContactError(BaseException):
    """Base class for contact mechanics errors"""


class AmbiguousSlip(ContactError):
    def __init__(self, z_r_dot, tol):
        self.z_r_dot = z_r_dot
        self.msg = ("slip velocity %g is within the slip tolerance %g; "
                    "stick handling is required" % (z_r_dot, tol))


class DegenerateSign(ContactError):
    def __init__(self, name, value):
        self.msg = "%s = %g is within the sign tolerance" % (name, value)


class NoContactSolution(ContactError):
    def __init__(self, theta1):
        self.theta1 = theta1
        self.msg = ("no theta2 puts the tip on the belt for theta1 = %g rad" %
                    theta1)


class RateSingular(ContactError):
    def __init__(self, theta2):
        self.msg = ("sin(theta2) = 0 at theta2 = %g rad: theta2_dot is "
                    "undefined by the rate constraint" % theta2)


class SimulationError(BaseException):
    """
    Base class for integration errors. Carries the simulation time and the
    phase in which the error occurred.
    """
    def __init__(self, msg, t=None, kind=None):
        self.msg = msg
        self.t = t
        self.kind = kind

    def __str__(self):
        if self.t is None:
            return self.msg
        return "%s (t=%.6f s, phase=%s)" % (self.msg, self.t, self.kind)

    def as_dict(self):
        d = BaseException.as_dict(self)
        d.update(t=self.t, phase=self.kind)
        return d


class IntegratorFailure(SimulationError):
    pass


class ConstraintDriftExceeded(SimulationError):
    def __init__(self, gap, t=None, kind=None):
        msg = "contact constraint drifted to gap = %g m" % gap
        SimulationError.__init__(self, msg, t, kind)


class ImpulseNonTermination(SimulationError):
    def __init__(self, impulse, t=None, kind=None):
        msg = ("impulse integration exceeded the cap (normal impulse %g "
               "N*s) without terminating" % impulse)
        SimulationError.__init__(self, msg, t, kind)


class IWCNoLiftOff(SimulationError):
    def __init__(self, z_n_dot, t=None, kind=None):
        msg = ("impact without collision ended with z_n_dot = %g m/s, the "
               "tip does not lift off" % z_n_dot)
        SimulationError.__init__(self, msg, t, kind)


class EventLimitExceeded(SimulationError):
    def __init__(self, count, t=None, kind=None):
        msg = ("more than %d events: likely an accumulation of impacts" %
               count)
        SimulationError.__init__(self, msg, t, kind)


class ControlError(BaseException):
    """Base class for controller errors"""


class JacobianSingular(ControlError):
    def __init__(self, det, threshold):
        self.det = det
        self.msg = ("|det J| = %g m^2 is below the singularity threshold %g" %
                    (abs(det), threshold))


class AllTargetsLiftOff(ControlError):
    def __init__(self, z_t):
        self.msg = ("lift-off occurs even when holding the initial position "
                    "z_t = %g m" % z_t)


class ConfigError(BaseException):
    """Base class for all config related errors"""


class ConfigSectionMissing(ConfigError):
    pass


class ConfigHasNoSections(ConfigError):
    def __init__(self, cfg_file):
        self.msg = "No valid sections defined in config file %s" % cfg_file


class ConfigNotFound(ConfigError):
    def __init__(self, *args):
        self.msg = args[0]
        self.cfg = args[1]
        self.template = config.copy_paste_template

    def display_options(self):
        log.info("The config file %s does not exist." % self.cfg)
        log.info("A complete template, with the parameters of the reference "
                 "setup, can be printed with: painleve validate --template")


class ValidationError(BaseException):
    """Base class for validation related errors"""


class RunValidationError(ValidationError):
    """Raised when a run configuration fails a semantic check"""


class ThreadPoolException(BaseException):
    def __init__(self, msg, exceptions):
        self.msg = msg
        self.exceptions = exceptions

    def format_excs(self):
        excs = []
        for exception in self.exceptions:
            e, tb_msg, jobid = exception
            excs.append('error occurred in job (id=%s): %s' % (jobid, str(e)))
            excs.append(tb_msg)
        return '\n'.join(excs)
