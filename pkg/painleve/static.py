# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

"""
Module for storing static data structures
"""
import os
import sys
import tempfile


def __expand_all(path):
    path = os.path.expanduser(path)
    path = os.path.expandvars(path)
    return path


def __makedirs(path, exit_on_failure=False):
    if not os.path.exists(path):
        try:
            os.makedirs(path)
        except OSError:
            if exit_on_failure:
                sys.stderr.write("!!! ERROR - %s *must* be a directory\n" %
                                 path)
    elif not os.path.isdir(path) and exit_on_failure:
        sys.stderr.write("!!! ERROR - %s *must* be a directory\n" % path)
        sys.exit(1)


def create_painleve_config_dirs():
    __makedirs(PAINLEVE_CFG_DIR, exit_on_failure=True)
    __makedirs(PAINLEVE_LOG_DIR)


VERSION = "0.4.0"
PID = os.getpid()
TMP_DIR = tempfile.gettempdir()

PAINLEVE_CFG_DIR = __expand_all(os.environ.get('PAINLEVE_HOME',
                                               '~/.painleve'))
PAINLEVE_CFG_FILE = os.path.join(PAINLEVE_CFG_DIR, 'config')
PAINLEVE_LOG_DIR = os.path.join(PAINLEVE_CFG_DIR, 'logs')

DEBUG_FILE = os.path.join(PAINLEVE_LOG_DIR, 'debug.log')
CRASH_FILE = os.path.join(PAINLEVE_LOG_DIR, 'crash-report-%d.txt' % PID)

# exit codes
EXIT_OK = 0
EXIT_CRASH = 1
EXIT_VALIDATION = 2
EXIT_SIMULATION = 3

# contact tolerances
TOL_CONTACT = 1e-8
TOL_CONTACT_RATE = 1e-8
TOL_SLIP = 1e-6
TOL_SIGN = 1e-9

# rebounds slower than this (m/s) end in sustained contact
TOL_REBOUND = 1e-3

# |det J| below which the hybrid law is not evaluated
CONTROLLER_SINGULAR_THRESHOLD = 1e-6

# drift allowed before a projection is refused
DRIFT_FACTOR = 100.0

ELBOW_UP = 'up'
ELBOW_DOWN = 'down'
ELBOWS = (ELBOW_UP, ELBOW_DOWN)

DEGREES = 'degrees'
RADIANS = 'radians'
UNITS = (DEGREES, RADIANS)

# solution modes
SLIDING = 'sliding'
FLIGHT = 'flight'
INDETERMINATE = 'indeterminate'
INCONSISTENT = 'inconsistent'
STICK = 'stick'
UNREACHABLE = 'unreachable'
MODES = (SLIDING, FLIGHT, INDETERMINATE, INCONSISTENT)

# event kinds
EV_TOUCHDOWN = 'touchdown'
EV_LIFTOFF = 'liftoff'
EV_PARADOX = 'paradox'
EV_SLIP_STOP = 'slip-stop'
EV_SLIP_ONSET = 'slip-onset'
EV_IWC = 'iwc'
EV_INDETERMINATE = 'indeterminate'
EV_JACOBIAN_SINGULAR = 'jacobian-singular'
EV_T_END = 't-end'
EV_POINCARE = 'poincare'
LIFTOFF_EVENTS = (EV_LIFTOFF, EV_IWC, EV_INDETERMINATE)

OPEN_LOOP = 'open-loop'
PID_CONTROL = 'pid'
HYBRID_CONTROL = 'hybrid'
CONTROLLERS = (OPEN_LOOP, PID_CONTROL, HYBRID_CONTROL)

PROFILE_HOLD = 'hold'
PROFILE_STEP = 'step'
PROFILE_RAMP = 'ramp'
PROFILE_SMOOTHSTEP = 'smoothstep'
PROFILES = (PROFILE_HOLD, PROFILE_STEP, PROFILE_RAMP, PROFILE_SMOOTHSTEP)

NO_BOUNCE = 'no-bounce'
PERIODIC = 'periodic'
CHAOTIC = 'chaotic'
INSUFFICIENT_DATA = 'insufficient-data'
FAILED = 'failed'

# initial condition presets [theta1, theta1_dot, theta2, theta2_dot] in
# degrees and degrees/s
PRESETS = {
    'x0_a': (32.0, 0.0, 18.27, 0.0),
    'x0_d': (-11.4, 0.0, -35.1, 0.0),
    'x0_u': (-35.1, 0.0, -11.4, 0.0),
}
PRESET_ELBOWS = {
    'x0_a': ELBOW_DOWN,
    'x0_d': ELBOW_DOWN,
    'x0_u': ELBOW_UP,
}
EXPLICIT = 'explicit'

# random initial conditions are drawn over this theta1 range (degrees)
RANDOM_IC_THETA1 = (-40.0, 40.0)

TRAJECTORY_COLUMNS = ['t', 'theta1', 'theta1_dot', 'theta2', 'theta2_dot',
                      'z_t', 'z_n', 'f_n', 'f_t', 'mode', 'u1', 'u2']
SWEEP_COLUMNS = ['mu', 'v_belt', 'ic_label', 'max_theta1_dot', 'bounce',
                 'classification', 'period']
POINCARE_COLUMNS = ['v_belt', 'theta1_deg']
REGION_COLUMNS = ['theta1_deg', 'theta1_dot', 'mode']
ZERO_LEVEL_COLUMNS = ['curve', 'theta1_deg', 'theta1_dot']


ROBOT_SETTINGS = {
    'm': (float, True, None, None, None),
    'l': (float, True, None, None, None),
    'sigma': (float, True, None, None, None),
    'k': (float, True, None, None, None),
    'h': (float, True, None, None, None),
    'alpha0': (float, True, None, None, None),
    'alpha0_units': (str, False, DEGREES, UNITS, None),
    'mu': (float, True, None, None, None),
    'v_belt': (float, True, None, None, None),
    'g': (float, False, 9.81, None, None),
}

SIM_SETTINGS = {
    't_end': (float, False, 10.0, None, None),
    'rel_tol': (float, False, 1e-8, None, None),
    'abs_tol': (float, False, 1e-10, None, None),
    'event_tol': (float, False, 1e-10, None, None),
    'max_step': (float, False, 0.01, None, None),
    'restitution': (float, False, 0.1, None, None),
    'iwc_restitution': (float, False, 1.0, None, None),
    'output_dt': (float, False, 1e-3, None, None),
    'record_start': (float, False, 0.0, None, None),
    'stick_enabled': (bool, False, True, None, None),
    'impulse_cap': (float, False, 1e3, None, None),
    'max_events': (int, False, 200000, None, None),
}

CONTROLLER_SETTINGS = {
    'type': (str, False, OPEN_LOOP, CONTROLLERS, None),
    'gains': (str, False, 'custom', ['custom', 'standard'], None),
    'kp1': (float, False, 200.0, None, None),
    'ki1': (float, False, 25.0, None, None),
    'kd1': (float, False, 2.0, None, None),
    'kp2': (float, False, 0.0, None, None),
    'ki2': (float, False, 0.0, None, None),
    'kd2': (float, False, 0.0, None, None),
    'kp_prime': (float, False, 900.0, None, None),
    'kd_prime': (float, False, 900.0, None, None),
    'ki_prime': (float, False, 650.0, None, None),
    'fn_ref': (float, False, 10.0, None, None),
    'profile': (str, False, PROFILE_HOLD, PROFILES, None),
    'z_start': (float, False, None, None, None),
    'z_end': (float, False, None, None, None),
    't_start': (float, False, 0.0, None, None),
    'duration': (float, False, 20.0, None, None),
    'singular_threshold': (float, False, CONTROLLER_SINGULAR_THRESHOLD, None,
                           None),
}

SCENARIO_SETTINGS = {
    'initial': (str, False, 'x0_d', sorted(PRESETS) + [EXPLICIT], None),
    'units': (str, False, DEGREES, UNITS, None),
    'theta1': (float, False, None, None, None),
    'theta1_dot': (float, False, 0.0, None, None),
    'theta2': (float, False, None, None, None),
    'theta2_dot': (float, False, 0.0, None, None),
    'project': (bool, False, True, None, None),
}

SWEEP_SETTINGS = {
    'mu_min': (float, False, 0.1, None, None),
    'mu_max': (float, False, 1.0, None, None),
    'mu_step': (float, False, 0.1, None, None),
    'v_min': (float, False, -1.0, None, None),
    'v_max': (float, False, -0.1, None, None),
    'v_step': (float, False, 0.005, None, None),
    'initial_conditions': (list, False, ['x0_a', 'x0_d'], None, None),
    'random_ics': (int, False, 0, None, None),
    'transient': (float, False, 250.0, None, None),
    'record': (float, False, 50.0, None, None),
    'threshold': (float, False, 1e-6, None, None),
    'period_tol': (float, False, 1e-3, None, None),
    'n_max': (int, False, 32, None, None),
    'sweep_output_dt': (float, False, 0.01, None, None),
}

ZTMAX_SETTINGS = {
    'ramp_rate': (float, False, 0.01, None, None),
    'hold': (float, False, 10.0, None, None),
    'tol': (float, False, 1e-3, None, None),
}

REGIONS_SETTINGS = {
    'theta1_min': (float, False, -40.0, None, None),
    'theta1_max': (float, False, 40.0, None, None),
    'theta1_points': (int, False, 161, None, None),
    'theta1_dot_min': (float, False, -10.0, None, None),
    'theta1_dot_max': (float, False, 10.0, None, None),
    'theta1_dot_points': (int, False, 161, None, None),
    'elbow': (str, False, ELBOW_DOWN, ELBOWS, None),
}

OUTPUT_SETTINGS = {
    'directory': (str, False, '.', None, None),
    'prefix': (str, False, 'painleve', None, None),
}

GLOBAL_SETTINGS = {
    'seed': (int, False, 0, None, None),
}

SECTIONS = (
    ('global', GLOBAL_SETTINGS),
    ('robot', ROBOT_SETTINGS),
    ('sim', SIM_SETTINGS),
    ('controller', CONTROLLER_SETTINGS),
    ('scenario', SCENARIO_SETTINGS),
    ('sweep', SWEEP_SETTINGS),
    ('ztmax', ZTMAX_SETTINGS),
    ('regions', REGIONS_SETTINGS),
    ('output', OUTPUT_SETTINGS),
)

# sections that must be present in every config file
REQUIRED_SECTIONS = ('robot',)
