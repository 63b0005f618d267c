# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

from painleve import static

config_template = """\
#################################
## painleve Configuration File ##
#################################
[global]
# seed for random initial conditions (default: 0)
SEED = 0

#####################################
## Arm, spring/damper and belt     ##
#####################################
[robot]
# link mass (kg) and link length (m)
M = 0.12
L = 0.21
# joint damping (N*m*s/rad) and joint stiffness (N*m/rad)
SIGMA = 0.005
K = 1.3
# height of the pivot above the belt (m)
H = 0.3775
# spring rest angle; units are one of: %(units)s
ALPHA0 = 13.72
ALPHA0_UNITS = degrees
# friction coefficient and belt velocity (m/s)
MU = 0.6
V_BELT = -0.4
# gravity (default: 9.81)
#G = 9.81

[sim]
# simulated time (s)
T_END = 10
# integrator tolerances and event localization tolerance (s)
#REL_TOL = 1e-8
#ABS_TOL = 1e-10
#EVENT_TOL = 1e-10
#MAX_STEP = 0.01
# Poisson restitution for touchdowns and for impacts without collision
#RESTITUTION = 0.1
#IWC_RESTITUTION = 1
# sampling period (s) and time of the first sample written
#OUTPUT_DT = 1e-3
#RECORD_START = 0
#STICK_ENABLED = True
#IMPULSE_CAP = 1e3
#MAX_EVENTS = 200000

[controller]
# one of: %(controllers)s
TYPE = open-loop
# 'standard' picks the reference gains matching the scenario preset
#GAINS = custom
# joint space PID gains (loop 1 on theta1, loop 2 on theta2 - theta1)
#KP1 = 200
#KI1 = 25
#KD1 = 2
#KP2 = 0
#KI2 = 0
#KD2 = 0
# hybrid force/motion gains and reference normal force (N)
#KP_PRIME = 900
#KD_PRIME = 900
#KI_PRIME = 650
#FN_REF = 10
# tangential reference; profile is one of: %(profiles)s
#PROFILE = hold
#Z_START = -0.1624
#Z_END = 0.0375
#T_START = 0
#DURATION = 20
#SINGULAR_THRESHOLD = 1e-6

[scenario]
# one of: %(presets)s
INITIAL = x0_d
# angles of an explicit initial state use these units
#UNITS = degrees
#THETA1 = -11.4
#THETA1_DOT = 0
#THETA2 = -35.1
#THETA2_DOT = 0
# put the initial state exactly on the belt
#PROJECT = True

[sweep]
#MU_MIN = 0.1
#MU_MAX = 1.0
#MU_STEP = 0.1
#V_MIN = -1.0
#V_MAX = -0.1
#V_STEP = 0.005
#INITIAL_CONDITIONS = x0_a, x0_d
#RANDOM_ICS = 0
#TRANSIENT = 250
#RECORD = 50
#THRESHOLD = 1e-6
#PERIOD_TOL = 1e-3
#N_MAX = 32
#SWEEP_OUTPUT_DT = 0.01

[ztmax]
#RAMP_RATE = 0.01
#HOLD = 10
#TOL = 1e-3

[regions]
#THETA1_MIN = -40
#THETA1_MAX = 40
#THETA1_POINTS = 161
#THETA1_DOT_MIN = -10
#THETA1_DOT_MAX = 10
#THETA1_DOT_POINTS = 161
#ELBOW = down

[output]
#DIRECTORY = .
#PREFIX = painleve
""" % {
    'units': ', '.join(static.UNITS),
    'controllers': ', '.join(static.CONTROLLERS),
    'profiles': ', '.join(static.PROFILES),
    'presets': ', '.join(sorted(static.PRESETS) + [static.EXPLICIT]),
}

DASHES = '-' * 10
copy_below = ' '.join([DASHES, 'COPY BELOW THIS LINE', DASHES])
end_copy = ' '.join([DASHES, 'END COPY', DASHES])
copy_paste_template = '\n'.join([copy_below, config_template, end_copy]) + '\n'
