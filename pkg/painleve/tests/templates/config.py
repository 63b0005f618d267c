# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

default_config = {
    'seed': 7,
    'm': 0.12,
    'l': 0.21,
    'sigma': 0.005,
    'k': 1.3,
    'h': 0.3775,
    'alpha0': 13.72,
    'alpha0_units': 'degrees',
    'mu': 0.6,
    'v_belt': -0.4,
    't_end': 0.5,
    'output_dt': 0.01,
    'controller_type': 'open-loop',
    'gains': 'custom',
    'initial': 'x0_d',
    'units': 'degrees',
    'mu_min': 0.3,
    'mu_max': 0.4,
    'mu_step': 0.1,
    'v_min': -0.5,
    'v_max': -0.4,
    'v_step': 0.05,
    'initial_conditions': 'x0_a, x0_d',
    'transient': 0.2,
    'record': 0.2,
    'theta1_points': 9,
    'theta1_dot_points': 9,
    'directory': '/tmp',
    'prefix': 'painleve-test',
}

config_test_template = """
[global]
SEED = %(seed)s

[robot]
M = %(m)s
L = %(l)s
SIGMA = %(sigma)s
K = %(k)s
H = %(h)s
ALPHA0 = %(alpha0)s
ALPHA0_UNITS = %(alpha0_units)s
MU = %(mu)s  # friction coefficient
V_BELT = %(v_belt)s

[sim]
T_END = %(t_end)s
OUTPUT_DT = %(output_dt)s

[controller]
TYPE = %(controller_type)s
GAINS = %(gains)s

[scenario]
INITIAL = %(initial)s
UNITS = %(units)s

[sweep]
MU_MIN = %(mu_min)s
MU_MAX = %(mu_max)s
MU_STEP = %(mu_step)s
V_MIN = %(v_min)s
V_MAX = %(v_max)s
V_STEP = %(v_step)s
INITIAL_CONDITIONS = %(initial_conditions)s
TRANSIENT = %(transient)s
RECORD = %(record)s

[regions]
THETA1_POINTS = %(theta1_points)s
THETA1_DOT_POINTS = %(theta1_dot_points)s

[output]
DIRECTORY = %(directory)s
PREFIX = %(prefix)s
"""
