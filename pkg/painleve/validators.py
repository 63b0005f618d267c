# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

import math

from painleve import model
from painleve import static
from painleve import contact
from painleve import exception
from painleve.logger import log
from painleve.templates import get_template, user_msgs


class Validator(object):
    """
    Base class for all validating classes
    """
    def validate(self):
        """
        Raises an exception if any validation tests fail
        """
        pass

    def is_valid(self):
        """
        Returns False if any validation tests fail, otherwise returns True
        """
        pass


class RunValidator(Validator):
    """
    Validates that a loaded PainleveConfig describes a sane run and derives
    what the run will start from (initial state, gap, mode) without
    integrating anything. Throws exception.RunValidationError for all
    validation failures. Admissibility concerns are collected as warnings.
    """
    def __init__(self, cfg):
        self.cfg = cfg
        self.warnings = []
        self.params = None
        self.scenario = None
        self.spec = None
        self.interval = None
        self.initial_contact = None

    def is_valid(self):
        try:
            self.validate()
            return True
        except (exception.ValidationError, exception.ConfigError) as e:
            log.error(e.msg)
            return False

    def validate(self):
        log.debug("Validating run settings...")
        self.warnings = []
        self.params = self.cfg.robot_params()
        self.cfg.sim_config()
        self.spec = self.cfg.controller_spec()
        self.validate_scenario()
        self.validate_admissible()
        self.validate_controller()
        for w in self.warnings:
            log.warning(w, extra=dict(__textwrap__=True))
        return True

    def validate_scenario(self):
        try:
            self.scenario = self.cfg.initial_scenario(self.params)
        except exception.ModelError as e:
            raise exception.RunValidationError("[scenario] %s" % e.msg)
        state = self.scenario.state
        if not all(math.isfinite(v) for v in state):
            raise exception.RunValidationError(
                "[scenario] initial state must be finite")
        ee = model.forward_kinematics(state, self.params)
        if ee.gap < -static.DRIFT_FACTOR * static.TOL_CONTACT:
            raise exception.RunValidationError(
                "[scenario] initial tip penetrates the belt (gap = %g m)" %
                ee.gap)
        try:
            self.initial_contact = self._initial_mode(state)
        except (exception.ControlError, exception.ModelError) as e:
            raise exception.RunValidationError("[controller] %s" % e.msg)

    def _initial_mode(self, state):
        controller = self.spec.build(state, self.params)
        terms = model.eval_terms(state, self.params)
        z_r_dot = contact.slip_velocity(state, self.params)
        u = controller.torques(0.0, state, controller.initial_integral(),
                               terms, static.SLIDING,
                               contact.sign(z_r_dot))
        try:
            return contact.classify_mode(state, u, self.params, terms)
        except exception.AmbiguousSlip:
            return contact.ContactState(static.STICK, None, None, None, None,
                                        z_r_dot)

    def validate_admissible(self):
        if self.params.mu <= 0:
            self.interval = None
            return
        elbow = self.scenario.elbow
        self.interval = contact.admissible_range(self.params, elbow)
        z_t = model.forward_kinematics(self.scenario.state, self.params).z_t
        if z_t not in self.interval:
            self.warnings.append(user_msgs.outside_admissible % dict(
                z_t=z_t, interval=self.interval, elbow=elbow,
                mu=self.params.mu))
        if self.spec.kind != static.OPEN_LOOP and \
                self.spec.z_end is not None and \
                self.spec.z_end not in self.interval:
            self.warnings.append(user_msgs.reference_outside_admissible %
                                 dict(z_end=self.spec.z_end,
                                      interval=self.interval, elbow=elbow))

    def validate_controller(self):
        spec = self.spec
        if spec.kind == static.PID_CONTROL and \
                self.scenario.elbow == static.ELBOW_UP:
            self.warnings.append(user_msgs.pid_elbow_up_liftoff % dict(
                initial=self.scenario.label))
        if spec.kind == static.OPEN_LOOP:
            return
        try:
            spec.reference_for(self.scenario.state, self.params).validate()
        except exception.ControlError as e:
            raise exception.RunValidationError("[controller] %s" % e.msg)

    def report(self):
        """
        Renders the validation report. validate() must have been called.
        """
        cfg = self.cfg
        sc = self.scenario
        ee = model.forward_kinematics(sc.state, self.params)
        raw_ee = model.forward_kinematics(sc.raw, self.params)
        cs = self.initial_contact
        units = cfg.settings.scenario.units if sc.label == static.EXPLICIT \
            else static.DEGREES
        tmpl = get_template('validation_report.txt')
        return tmpl.render(
            version=static.VERSION, config_hash=cfg.config_hash,
            seed=cfg.seed, robot=self.params,
            alpha0_input=cfg.settings.robot.alpha0,
            alpha0_units=cfg.settings.robot.alpha0_units,
            initial=sc.label, elbow=sc.elbow, units=units,
            raw_degrees=sc.raw.as_degrees(), state=tuple(sc.state),
            projected=sc.projected, raw_gap=raw_ee.gap,
            z_t=ee.z_t, gap=ee.gap, mode=cs.mode, p=cs.p, b=cs.b,
            controller=self.spec.kind,
            gains=sorted(self.spec.as_dict().items()),
            interval=self.interval if self.interval is not None else 'n/a',
            warnings=[' '.join(w.split()) for w in self.warnings])
