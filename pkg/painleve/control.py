# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

"""
Joint space PID and hybrid force/motion controllers

Controllers are evaluated continuously inside the integrator's right-hand
side. Their integral terms live in three extra slots of the integrated state
(two PID integrals and the normal force integral) so that every controller,
including the open-loop one, integrates the same augmented system.
"""
import math
import collections

import numpy as np

from painleve import model
from painleve import static
from painleve import exception
from painleve.logger import log

N_INTEGRALS = 3

STANDARD_PID_GAINS = dict(kp=(200.0, 0.0), ki=(25.0, 0.0), kd=(2.0, 0.0))


def standard_hybrid_gains(label):
    """
    Reference hybrid gains for the x0_d and x0_u experiments. The force loop
    integral is switched off for the elbow up posture.
    """
    return dict(kp_prime=900.0, kd_prime=900.0,
                ki_prime={'x0_u': 0.0}.get(label, 650.0), fn_ref=10.0)


class ControlTorques(collections.namedtuple('ControlTorques', 'u1 u2')):
    """
    Motor torques at the lower (u1) and upper (u2) joint. The generalized
    torque entering the equations of motion is [u1 - u2, u2].
    """
    __slots__ = ()

    @classmethod
    def zero(cls):
        return cls(0.0, 0.0)

    @classmethod
    def from_generalized(cls, u):
        return cls(float(u[0] + u[1]), float(u[1]))

    @property
    def generalized(self):
        return np.array([self.u1 - self.u2, self.u2])


class TrapezoidIntegrator(object):
    """
    Running integral advanced with the trapezoidal rule. A fresh integrator
    uses the first error for both ends of its first interval.
    """
    def __init__(self, size=1):
        self.size = size
        self.reset()

    def reset(self):
        self.value = np.zeros(self.size)
        self.prev = None

    def advance(self, err, dt):
        err = np.asarray(err, dtype=float).reshape(self.size)
        prev = err if self.prev is None else self.prev
        self.value = self.value + 0.5 * dt * (prev + err)
        self.prev = err
        return self.value


class PIDGains(object):
    """
    Gains of the two independent PID loops on q' = [theta1, theta2 - theta1]
    together with their integrator state
    """
    def __init__(self, kp=(0.0, 0.0), ki=(0.0, 0.0), kd=(0.0, 0.0)):
        self.kp = np.array(kp, dtype=float)
        self.ki = np.array(ki, dtype=float)
        self.kd = np.array(kd, dtype=float)
        if not np.all(np.isfinite(np.concatenate([self.kp, self.ki,
                                                  self.kd]))):
            raise exception.ControlError("PID gains must be finite")
        self.integrator = TrapezoidIntegrator(2)

    @classmethod
    def standard(cls):
        return cls(**STANDARD_PID_GAINS)

    def reset(self):
        self.integrator.reset()

    def as_dict(self):
        return dict(kp1=self.kp[0], ki1=self.ki[0], kd1=self.kd[0],
                    kp2=self.kp[1], ki2=self.ki[1], kd2=self.kd[1])

    def __repr__(self):
        return '<PIDGains: kp=%s ki=%s kd=%s>' % (list(self.kp),
                                                  list(self.ki),
                                                  list(self.kd))


class ReferenceProfile(collections.namedtuple(
        'ReferenceProfile', 'kind z_start z_end t_start duration')):
    """
    Tangential reference z_t*(t). Returns (z, z_dot, z_ddot) when called.
    """
    __slots__ = ()

    def validate(self):
        if self.kind not in static.PROFILES:
            raise exception.ControlError("unknown reference profile '%s'" %
                                         self.kind)
        if self.kind in (static.PROFILE_RAMP, static.PROFILE_SMOOTHSTEP):
            if not self.duration > 0:
                raise exception.ControlError(
                    "%s profile needs a positive duration" % self.kind)
        return self

    def __call__(self, t):
        return reference_profile(self.kind, t, self.z_start, self.z_end,
                                 self.t_start, self.duration)


def reference_profile(kind, t, z_start, z_end=None, t_start=0.0,
                      duration=1.0):
    if z_end is None:
        z_end = z_start
    if kind == static.PROFILE_HOLD:
        return z_start, 0.0, 0.0
    if kind == static.PROFILE_STEP:
        return (z_start if t < t_start else z_end), 0.0, 0.0
    span = z_end - z_start
    s = min(max((t - t_start) / duration, 0.0), 1.0)
    inside = t_start <= t < t_start + duration
    if kind == static.PROFILE_RAMP:
        return z_start + span * s, (span / duration if inside else 0.0), 0.0
    if kind == static.PROFILE_SMOOTHSTEP:
        z = z_start + span * s ** 3 * (10.0 - 15.0 * s + 6.0 * s * s)
        zd = span / duration * 30.0 * s * s * (1.0 - s) ** 2
        zdd = span / duration ** 2 * 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s)
        return z, zd, zdd
    raise exception.ControlError("unknown reference profile '%s'" % kind)


class HybridGains(collections.namedtuple(
        'HybridGains', 'kp_prime kd_prime ki_prime fn_ref reference')):
    __slots__ = ()

    def validate(self):
        if not self.fn_ref > 0:
            raise exception.ControlError(
                "reference normal force must be > 0 (got %g)" % self.fn_ref)
        self.reference.validate()
        return self


def joint_reference(z_t, z_t_dot, params, elbow):
    """
    Converts a tangential reference on the belt to q'* and q'_dot* through
    inverse kinematics on the given elbow branch
    """
    ik = model.inverse_kinematics(z_t, -params.H, params, elbow)
    qdot = np.zeros(2)
    if z_t_dot:
        J = np.array([[math.cos(ik.theta1), math.cos(ik.theta2)],
                      [math.sin(ik.theta1), math.sin(ik.theta2)]]) * params.l
        if abs(np.linalg.det(J)) > 1e-12:
            qdot = np.linalg.solve(J, [z_t_dot, 0.0])
    q_prime = np.array([ik.theta1, ik.theta2 - ik.theta1])
    qdot_prime = np.array([qdot[0], qdot[1] - qdot[0]])
    return q_prime, qdot_prime


def joint_coordinates(state):
    return (np.array([state.theta1, state.theta2 - state.theta1]),
            np.array([state.theta1_dot, state.theta2_dot - state.theta1_dot]))


def pid_torques(state, reference, gains, dt):
    """
    Evaluates both PID loops for reference = (q'*, q'_dot*), advancing the
    integral term of gains by dt
    """
    q_ref, qd_ref = reference
    q, qd = joint_coordinates(state)
    err = np.asarray(q_ref) - q
    integral = gains.integrator.advance(err, dt)
    u = gains.kp * err + gains.ki * integral + gains.kd * (
        np.asarray(qd_ref) - qd)
    return ControlTorques(float(u[0]), float(u[1]))


def _hybrid_law(terms, qdot, alpha_v, alpha_f, f_t):
    """
    u = w + c + M J^-1 (-Jdot qdot + i_x alpha_v) + J^T (-i_x f_t - i_y
    alpha_f)
    """
    acc = -terms.Jdot.dot(qdot) + np.array([alpha_v, 0.0])
    u = terms.w + terms.c + terms.M.dot(np.linalg.solve(terms.J, acc))
    return u + terms.J.T.dot([-f_t, -alpha_f])


def _alpha_v(gains, t, ee):
    z_ref, zd_ref, zdd_ref = gains.reference(t)
    return (zdd_ref + gains.kp_prime * (z_ref - ee.z_t) +
            gains.kd_prime * (zd_ref - ee.z_t_dot))


def hybrid_torques(state, terms, contact_state, gains, dt, params, t=0.0,
                   integrator=None,
                   threshold=static.CONTROLLER_SINGULAR_THRESHOLD):
    """
    Hybrid force/motion law for a measured contact force (contact_state.f_n,
    contact_state.f_t). The normal force integral in integrator is advanced
    by dt.
    """
    det = model.jacobian_det(terms)
    if abs(det) <= threshold:
        raise exception.JacobianSingular(det, threshold)
    integrator = integrator or TrapezoidIntegrator()
    ee = model.forward_kinematics(state, params)
    xi = integrator.advance(gains.fn_ref - contact_state.f_n, dt)[0]
    alpha_f = gains.fn_ref + gains.ki_prime * xi
    u = _hybrid_law(terms, state.qdot, _alpha_v(gains, t, ee), alpha_f,
                    contact_state.f_t)
    return ControlTorques.from_generalized(u)


class Controller(object):
    """
    Continuous-time controller interface used by the simulator.

    torques() maps the current time, state and integral slots to motor
    torques; integrand() returns the time derivative of the integral slots.
    """
    kind = None

    def __init__(self):
        self.flags = []

    def initial_integral(self):
        return np.zeros(N_INTEGRALS)

    def torques(self, t, state, xi, terms, phase=static.FLIGHT,
                slip_sign=1.0):
        raise NotImplementedError()

    def integrand(self, t, state, xi, f_n):
        return np.zeros(N_INTEGRALS)

    def describe(self):
        return dict(type=self.kind)


class OpenLoop(Controller):
    kind = static.OPEN_LOOP

    def torques(self, t, state, xi, terms, phase=static.FLIGHT,
                slip_sign=1.0):
        return ControlTorques.zero()


class PIDController(Controller):
    kind = static.PID_CONTROL

    def __init__(self, gains, reference, params, elbow):
        Controller.__init__(self)
        self.gains = gains
        self.reference = reference.validate()
        self.params = params
        self.elbow = elbow

    def _errors(self, t, state):
        z, zd, zdd = self.reference(t)
        q_ref, qd_ref = joint_reference(z, zd, self.params, self.elbow)
        q, qd = joint_coordinates(state)
        return q_ref - q, qd_ref - qd

    def torques(self, t, state, xi, terms, phase=static.FLIGHT,
                slip_sign=1.0):
        err, derr = self._errors(t, state)
        g = self.gains
        u = g.kp * err + g.ki * xi[:2] + g.kd * derr
        return ControlTorques(float(u[0]), float(u[1]))

    def integrand(self, t, state, xi, f_n):
        err = self._errors(t, state)[0]
        return np.array([err[0], err[1], 0.0])

    def describe(self):
        d = dict(type=self.kind)
        d.update(self.gains.as_dict())
        return d


class HybridController(Controller):
    """
    Continuous form of the hybrid force/motion law. The friction force fed
    forward is the one consistent with the commanded normal force, so while
    sliding f_n = alpha_f and f_t = -mu sign(z_r_dot) alpha_f. In flight and
    stick no tangential force is fed forward.
    """
    kind = static.HYBRID_CONTROL

    def __init__(self, gains, params,
                 threshold=static.CONTROLLER_SINGULAR_THRESHOLD):
        Controller.__init__(self)
        self.gains = gains.validate()
        self.params = params
        self.threshold = threshold
        self._last = ControlTorques.zero()
        self._singular = False

    def torques(self, t, state, xi, terms, phase=static.FLIGHT,
                slip_sign=1.0):
        det = model.jacobian_det(terms)
        if abs(det) <= self.threshold:
            if not self._singular:
                log.warning("|det J| = %g below %g at t = %g, holding last "
                            "torque" % (abs(det), self.threshold, t))
                self.flags.append((t, static.EV_JACOBIAN_SINGULAR))
                self._singular = True
            return self._last
        self._singular = False
        g = self.gains
        ee = model.forward_kinematics(state, self.params)
        alpha_f = g.fn_ref + g.ki_prime * xi[2]
        f_t = 0.0
        if phase == static.SLIDING:
            f_t = -self.params.mu * slip_sign * alpha_f
        u = _hybrid_law(terms, state.qdot, _alpha_v(g, t, ee), alpha_f, f_t)
        self._last = ControlTorques.from_generalized(u)
        return self._last

    def integrand(self, t, state, xi, f_n):
        return np.array([0.0, 0.0, self.gains.fn_ref - f_n])

    def describe(self):
        g = self.gains
        return dict(type=self.kind, kp_prime=g.kp_prime, kd_prime=g.kd_prime,
                    ki_prime=g.ki_prime, fn_ref=g.fn_ref)


class ControllerSpec(collections.namedtuple(
        'ControllerSpec', 'kind pid hybrid profile z_start z_end t_start '
        'duration singular_threshold')):
    """
    Declarative controller description. build() creates a fresh controller
    with its own integral state for a given initial posture.
    """
    __slots__ = ()

    @classmethod
    def open_loop(cls):
        return cls(static.OPEN_LOOP, STANDARD_PID_GAINS,
                   standard_hybrid_gains('x0_d'), static.PROFILE_HOLD, None,
                   None, 0.0, 1.0, static.CONTROLLER_SINGULAR_THRESHOLD)

    @classmethod
    def from_config(cls, section, preset=None):
        cfg = section
        if cfg.get('gains') == 'standard':
            pid = dict(STANDARD_PID_GAINS)
            hybrid = standard_hybrid_gains(preset)
        else:
            pid = dict(kp=(cfg['kp1'], cfg['kp2']),
                       ki=(cfg['ki1'], cfg['ki2']),
                       kd=(cfg['kd1'], cfg['kd2']))
            hybrid = dict(kp_prime=cfg['kp_prime'],
                          kd_prime=cfg['kd_prime'],
                          ki_prime=cfg['ki_prime'], fn_ref=cfg['fn_ref'])
        return cls(cfg['type'], pid, hybrid, cfg['profile'],
                   cfg.get('z_start'), cfg.get('z_end'), cfg['t_start'],
                   cfg['duration'], cfg['singular_threshold'])

    def reference_for(self, initial, params):
        z_start = self.z_start
        if z_start is None:
            z_start = model.forward_kinematics(initial, params).z_t
        z_end = z_start if self.z_end is None else self.z_end
        return ReferenceProfile(self.profile, z_start, z_end, self.t_start,
                                self.duration)

    def build(self, initial, params):
        if self.kind == static.OPEN_LOOP:
            return OpenLoop()
        reference = self.reference_for(initial, params)
        if self.kind == static.PID_CONTROL:
            return PIDController(PIDGains(**self.pid), reference, params,
                                 model.elbow_of(initial))
        if self.kind == static.HYBRID_CONTROL:
            gains = HybridGains(reference=reference, **self.hybrid)
            return HybridController(gains, params, self.singular_threshold)
        raise exception.ControlError("unknown controller type '%s'" %
                                     self.kind)

    def as_dict(self):
        d = dict(type=self.kind, profile=self.profile, z_start=self.z_start,
                 z_end=self.z_end, t_start=self.t_start,
                 duration=self.duration)
        if self.kind == static.PID_CONTROL:
            d.update(self.pid)
        elif self.kind == static.HYBRID_CONTROL:
            d.update(self.hybrid)
        return d


ZtSearch = collections.namedtuple('ZtSearch', 'ramp_rate hold tol')


def find_Zt_sliding(spec, initial, params, search, sim_config):
    """
    Largest target z_t* reachable from the initial posture without lift-off.

    Each candidate is approached with a ramp at search.ramp_rate and held for
    search.hold seconds. The search is a bisection between the initial
    position and the end of the reach along the belt. Targets whose run
    fails are counted as lift-off.
    """
    from painleve import sim

    z0 = model.forward_kinematics(initial, params).z_t

    def lifts_off(z_target):
        if z_target == z0:
            candidate = spec._replace(profile=static.PROFILE_HOLD,
                                      z_start=z0, z_end=z0)
            t_end = search.hold
        else:
            duration = abs(z_target - z0) / search.ramp_rate
            candidate = spec._replace(profile=static.PROFILE_RAMP,
                                      z_start=z0, z_end=z_target,
                                      t_start=0.0, duration=duration)
            t_end = duration + search.hold
        config = sim_config._replace(t_end=t_end, record_start=t_end)
        try:
            traj = sim.simulate(initial, candidate.build(initial, params),
                                params, config)
        except (exception.SimulationError, exception.ModelError,
                exception.ContactError) as e:
            log.warning("target z_t* = %.4f failed (%s), counted as "
                        "lift-off" % (z_target, e))
            return True
        lifted = traj.lifted_off()
        log.debug("target z_t* = %.6f: %s" %
                  (z_target, 'lift-off' if lifted else 'sliding'))
        return lifted

    if lifts_off(z0):
        raise exception.AllTargetsLiftOff(z0)
    hi = params.reach
    lo = z0
    if hi <= lo:
        return lo
    if not lifts_off(hi):
        return hi
    while hi - lo > search.tol:
        mid = 0.5 * (lo + hi)
        if lifts_off(mid):
            hi = mid
        else:
            lo = mid
    log.info("Z_t,sliding = %.4f m (ramp %g m/s, hold %g s)" %
             (lo, search.ramp_rate, search.hold))
    return lo
