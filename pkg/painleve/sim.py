# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

"""
Event-driven integration of the arm through flight, sliding and stick phases

Smooth phases are integrated with an explicit Runge-Kutta 4(5) pair stepped
one step at a time. After every accepted step the phase's event functions
are checked for sign changes and any crossing is located on the step's dense
output. Impacts are resolved in impulse space.

The integrated vector is [theta1, theta1_dot, theta2, theta2_dot] followed by
the controller's integral slots.
"""
import math
import collections

import numpy as np
from scipy import integrate
from scipy import optimize

from painleve import model
from painleve import static
from painleve import contact
from painleve import control
from painleve import exception
from painleve.logger import log

# integral slots do not take part in step size control
INTEGRAL_ATOL = 1e30

# smallest rise of theta1_dot over a step taken as a section crossing
POINCARE_NOISE = 1e-9

# upper bound on impact segments (slip, stick, compression, restitution)
MAX_IMPACT_SEGMENTS = 32


class SimConfig(collections.namedtuple(
        'SimConfig', 't_end rel_tol abs_tol event_tol max_step restitution '
        'iwc_restitution output_dt record_start stick_enabled impulse_cap '
        'max_events')):
    __slots__ = ()

    @classmethod
    def default(cls, **kwargs):
        settings = dict((key, static.SIM_SETTINGS[key][2])
                        for key in cls._fields)
        settings.update(kwargs)
        return cls(**settings).validate()

    @classmethod
    def from_config(cls, section):
        return cls(**dict((key, section[key]) for key in
                          cls._fields)).validate()

    def validate(self):
        for name in ('rel_tol', 'abs_tol', 'event_tol', 'max_step',
                     'output_dt', 'impulse_cap'):
            if not getattr(self, name) > 0:
                raise exception.RunValidationError(
                    "[sim] %s must be > 0" % name)
        if not 0 <= self.restitution <= 1:
            raise exception.RunValidationError(
                "[sim] restitution must lie in [0, 1]")
        # a plastic impact without collision ends at z_n_dot = 0
        if not 0 < self.iwc_restitution <= 1:
            raise exception.RunValidationError(
                "[sim] iwc_restitution must lie in (0, 1]")
        if self.t_end < 0:
            raise exception.RunValidationError("[sim] t_end must be >= 0")
        if self.max_events < 1:
            raise exception.RunValidationError("[sim] max_events must be > 0")
        return self


class Event(collections.namedtuple('Event', 't kind pre post')):
    """
    Mode transition, impact or section crossing. pre and post are the joint
    states just before and after the event.
    """
    __slots__ = ()

    def as_dict(self):
        return dict(t=self.t, kind=self.kind, pre=list(self.pre),
                    post=list(self.post))


ImpactResult = collections.namedtuple(
    'ImpactResult', 'state normal_impulse tangential_impulse '
    'compression_impulse')


class Trajectory(object):
    """
    Samples on the output grid plus the event log of one run
    """
    def __init__(self):
        self.times = []
        self.states = []
        self.end_effectors = []
        self.contacts = []
        self.torques = []
        self.events = []
        self.final_time = None
        self.final_state = None
        self.records_crossings = False

    def __len__(self):
        return len(self.times)

    def __repr__(self):
        return '<Trajectory: %d samples, %d events>' % (len(self),
                                                         len(self.events))

    def append(self, t, state, ee, contact_state, torques):
        self.times.append(t)
        self.states.append(state)
        self.end_effectors.append(ee)
        self.contacts.append(contact_state)
        self.torques.append(torques)

    @property
    def transitions(self):
        return [e for e in self.events if e.kind != static.EV_POINCARE]

    def crossings(self, t_from=0.0):
        """
        (t, theta1) at every recorded upward zero crossing of theta1_dot
        """
        return [(e.t, e.post[0]) for e in self.events
                if e.kind == static.EV_POINCARE and e.t >= t_from]

    def lifted_off(self):
        return any(e.kind in static.LIFTOFF_EVENTS for e in self.events)

    def max_theta1_dot(self, t_from=0.0):
        values = [s.theta1_dot for t, s in zip(self.times, self.states)
                  if t >= t_from]
        values.extend(e.post[1] for e in self.transitions if e.t >= t_from)
        if not values:
            return float('nan')
        return max(values)

    def array(self, name):
        if name == 't':
            return np.array(self.times)
        return np.array([getattr(s, name) for s in self.states])

    def rows(self):
        """
        Export rows: angles in degrees, rates in degrees/s, SI elsewhere
        """
        for t, s, ee, cs, u in zip(self.times, self.states,
                                   self.end_effectors, self.contacts,
                                   self.torques):
            deg = s.as_degrees()
            yield [t, deg[0], deg[1], deg[2], deg[3], ee.z_t, ee.z_n,
                   cs.f_n, cs.f_t, cs.mode, u.u1, u.u2]


def sign(x):
    return 1.0 if x > 0 else -1.0


def _impact_mode(r_slip, terms, mu, stuck):
    """
    Tangential impulse ratio of the current impact segment and whether the
    contact point sticks
    """
    Q = terms.Q
    if stuck:
        lam = -Q[0, 1] / Q[0, 0]
        if abs(lam) <= mu:
            return lam, True
        return -mu * sign(Q[0, 1]), False
    return -mu * sign(r_slip), False


def integrate_impulse(state, params, restitution, cap, iwc=False):
    """
    Darboux-Keller integration of an impact with the normal impulse as
    independent variable. Configuration is frozen during the impact so the
    tip velocity is piecewise linear in the impulse and every segment is
    integrated exactly.

    Compression ends when z_n_dot returns to zero from below; restitution
    then applies the Poisson ratio to the normal impulse. For an impact
    without collision the initial paradoxical slip segment always belongs to
    compression.
    """
    terms = model.eval_terms(state, params)
    mu = params.mu
    qdot0 = state.qdot
    v = terms.J.dot(qdot0)
    r_slip = v[0] - params.v_belt
    stuck = abs(r_slip) <= static.TOL_SLIP
    impulse = 0.0
    tangential = 0.0
    compression = None
    target = None
    paradox_segment = iwc and not stuck
    if not iwc and v[1] >= 0:
        return ImpactResult(state, 0.0, 0.0, 0.0)
    for _ in range(MAX_IMPACT_SEGMENTS):
        lam, stuck = _impact_mode(r_slip, terms, mu, stuck)
        rate = terms.Q.dot([lam, 1.0])
        if stuck:
            rate[0] = 0.0
        steps = {}
        if not stuck and r_slip * rate[0] < 0:
            steps['slip-stop'] = -r_slip / rate[0]
        if compression is None and not paradox_segment and rate[1] > 0:
            steps['compressed'] = max(-v[1], 0.0) / rate[1]
        if target is not None:
            steps['restituted'] = target - impulse
        if not steps:
            raise exception.ImpulseNonTermination(impulse)
        kind = min(steps, key=steps.get)
        step = steps[kind]
        impulse += step
        tangential += lam * step
        v = v + rate * step
        r_slip = v[0] - params.v_belt
        if impulse > cap:
            raise exception.ImpulseNonTermination(impulse)
        if kind == 'slip-stop':
            r_slip = 0.0
            v[0] = params.v_belt
            stuck = True
            paradox_segment = False
        elif kind == 'compressed':
            v[1] = 0.0
            compression = impulse
            target = (1.0 + restitution) * impulse
            if target <= impulse:
                break
        else:
            break
    else:
        raise exception.ImpulseNonTermination(impulse)
    if iwc and impulse > 0 and not v[1] > static.TOL_CONTACT_RATE:
        raise exception.IWCNoLiftOff(float(v[1]))
    qdot = qdot0 + terms.Minv.dot(terms.J.T.dot([tangential, impulse]))
    post = model.State(state.theta1, float(qdot[0]), state.theta2,
                       float(qdot[1]))
    return ImpactResult(post, impulse, tangential, compression)


def resolve_touchdown(state, params, config):
    """
    Post-impact state of a touchdown (gap = 0, z_n_dot < 0) with Poisson
    restitution config.restitution
    """
    return integrate_impulse(state, params, config.restitution,
                             config.impulse_cap).state


def resolve_inconsistent(state, u, params, config):
    """
    Impact without collision from an inconsistent sliding state. The finite
    torques u take no part in the impulsive dynamics.
    """
    result = integrate_impulse(state, params, config.iwc_restitution,
                               config.impulse_cap, iwc=True)
    return result.state


class HybridIntegrator(object):
    """
    Runs one simulation. Holds the current phase, slip sign and output grid
    position; instances are confined to a single thread.
    """
    def __init__(self, params, controller=None, config=None):
        self.params = params
        self.controller = controller or control.OpenLoop()
        self.config = config or SimConfig.default()
        self.traj = Trajectory()
        self.traj.records_crossings = True
        self.phase = static.FLIGHT
        self.slip_sign = 1.0
        self.n_events = 0
        self._grid_index = max(0, int(math.ceil(
            self.config.record_start / self.config.output_dt - 1e-9)))
        self._atol = np.array([self.config.abs_tol] * 4 +
                              [INTEGRAL_ATOL] * control.N_INTEGRALS)

    @staticmethod
    def _state(y):
        return model.State(float(y[0]), float(y[1]), float(y[2]),
                           float(y[3]))

    def _torques(self, t, state, y, terms, phase=None, slip_sign=None):
        return self.controller.torques(
            t, state, y[4:], terms, phase or self.phase,
            self.slip_sign if slip_sign is None else slip_sign)

    def _contact_force(self, state, u, terms):
        p = self.params
        if self.phase == static.SLIDING:
            gain = contact.normal_gain(terms, p.mu, self.slip_sign)
            f_n = -contact.free_normal_acceleration(terms, u) / gain
            return np.array([-p.mu * self.slip_sign * f_n, f_n])
        if self.phase == static.STICK:
            return contact.stick_forces(state, u, p, terms)
        return None

    def _rhs(self, t, y):
        state = self._state(y)
        terms = model.eval_terms(state, self.params)
        u = self._torques(t, state, y, terms)
        f = self._contact_force(state, u, terms)
        qdd = model.joint_accelerations(state, u, self.params, f=f,
                                        terms=terms)
        f_n = 0.0 if f is None else f[1]
        dxi = self.controller.integrand(t, state, y[4:], f_n)
        return np.concatenate([[y[1], qdd[0], y[3], qdd[1]], dxi])

    def _event_values(self, t, y):
        """
        Event functions of the current phase as {kind: (value, direction,
        terminal)}. direction -1 fires on a downward crossing.
        """
        p = self.params
        state = self._state(y)
        values = {static.EV_POINCARE: (y[1], 1, False)}
        if self.phase == static.FLIGHT:
            ee = model.forward_kinematics(state, p)
            values[static.EV_TOUCHDOWN] = (ee.gap + static.TOL_CONTACT, -1,
                                           True)
            return values
        terms = model.eval_terms(state, p)
        u = self._torques(t, state, y, terms)
        if self.phase == static.SLIDING:
            ee = model.forward_kinematics(state, p)
            values[static.EV_LIFTOFF] = (
                contact.free_normal_acceleration(terms, u), 1, True)
            values[static.EV_PARADOX] = (
                contact.normal_gain(terms, p.mu, self.slip_sign), -1, True)
            values[static.EV_SLIP_STOP] = (
                self.slip_sign * (ee.z_t_dot - p.v_belt), -1, True)
        else:
            f_t, f_n = contact.stick_forces(state, u, p, terms)
            values[static.EV_LIFTOFF] = (f_n, -1, True)
            values[static.EV_SLIP_ONSET] = (p.mu * f_n - abs(f_t), -1, True)
        return values

    def _locate(self, sol, t_old, t_new, g_old, g_new):
        """
        Earliest terminal event in (t_old, t_new] as (t, kind), recording
        section crossings that precede it
        """
        def crossed(old, new, direction):
            if direction < 0:
                return old > 0 and new <= 0
            return old < 0 and new >= 0

        def root(kind):
            return optimize.brentq(
                lambda s: self._event_values(s, sol(s))[kind][0],
                t_old, t_new, xtol=self.config.event_tol)

        hits = []
        for kind, (old, direction, terminal) in sorted(g_old.items()):
            new = g_new[kind][0]
            if terminal and crossed(old, new, direction):
                hits.append((root(kind), kind))
        hit = min(hits) if hits else None
        old, new = g_old[static.EV_POINCARE][0], g_new[static.EV_POINCARE][0]
        if crossed(old, new, 1) and new - old > POINCARE_NOISE:
            t_c = root(static.EV_POINCARE)
            if hit is None or t_c <= hit[0]:
                post = self._state(sol(t_c))
                self.traj.events.append(
                    Event(t_c, static.EV_POINCARE, post, post))
        return hit

    def _project(self, t, y):
        state = self._state(y)
        ee = model.forward_kinematics(state, self.params)
        if abs(ee.gap) > static.DRIFT_FACTOR * static.TOL_CONTACT:
            raise exception.ConstraintDriftExceeded(ee.gap, t, self.phase)
        try:
            state = contact.project_to_manifold(state, self.params)
        except exception.ContactError:
            raise exception.ConstraintDriftExceeded(ee.gap, t, self.phase)
        y = np.array(y, dtype=float)
        y[:4] = state
        return y

    def _record(self, t, y):
        p = self.params
        state = self._state(y)
        ee = model.forward_kinematics(state, p)
        terms = model.eval_terms(state, p)
        u = self._torques(t, state, y, terms)
        z_r_dot = ee.z_t_dot - p.v_belt
        sgn = self.slip_sign if self.phase == static.SLIDING else sign(
            z_r_dot)
        gain = contact.normal_gain(terms, p.mu, sgn)
        b = contact.free_normal_acceleration(terms, u)
        f = self._contact_force(state, u, terms)
        f_t, f_n = (0.0, 0.0) if f is None else (float(f[0]), float(f[1]))
        cs = contact.ContactState(self.phase, gain, b, f_n, f_t, z_r_dot)
        self.traj.append(t, state, ee, cs, u)

    def _sample(self, sol, t_lo, t_hi):
        cfg = self.config
        slack = 1e-9 * cfg.output_dt
        while True:
            t_k = self._grid_index * cfg.output_dt
            if t_k > t_hi + slack or t_k > cfg.t_end + slack:
                break
            if t_k > t_lo:
                y = sol(t_k)
                if self.phase != static.FLIGHT:
                    y = self._project(t_k, y)
                self._record(t_k, y)
            self._grid_index += 1

    def _drain_flags(self, y):
        state = self._state(y)
        while self.controller.flags:
            t, kind = self.controller.flags.pop(0)
            self.traj.events.append(Event(t, kind, state, state))

    def run_phase(self, t0, y0):
        """
        Integrates the current phase from (t0, y0). Returns (t, y, kind) at
        the first terminal event, or at t_end with kind t-end.
        """
        cfg = self.config
        if t0 >= cfg.t_end:
            return t0, y0, static.EV_T_END
        solver = integrate.RK45(self._rhs, t0, y0, cfg.t_end,
                                rtol=cfg.rel_tol, atol=self._atol,
                                max_step=cfg.max_step)
        g_old = self._event_values(t0, y0)
        while True:
            t_old = solver.t
            message = solver.step()
            if solver.status == 'failed':
                raise exception.IntegratorFailure(
                    "integrator failed: %s" % message, solver.t, self.phase)
            t_new = solver.t
            sol = solver.dense_output()
            g_new = self._event_values(t_new, solver.y)
            hit = self._locate(sol, t_old, t_new, g_old, g_new)
            self._drain_flags(solver.y)
            if hit is not None:
                t_ev, kind = hit
                self._sample(sol, t_old, t_ev)
                y_ev = sol(t_ev)
                if self.phase != static.FLIGHT:
                    y_ev = self._project(t_ev, y_ev)
                return t_ev, y_ev, kind
            if self.phase != static.FLIGHT:
                y_proj = self._project(t_new, solver.y)
                solver.y = y_proj
                solver.f = solver.fun(t_new, y_proj)
                g_new = self._event_values(t_new, y_proj)
            self._sample(sol, t_old, t_new)
            g_old = g_new
            if solver.status == 'finished':
                return t_new, solver.y, static.EV_T_END

    def _log_event(self, t, kind, pre, post):
        if kind not in (static.EV_POINCARE, static.EV_JACOBIAN_SINGULAR):
            self.n_events += 1
            if self.n_events > self.config.max_events:
                raise exception.EventLimitExceeded(self.config.max_events,
                                                   t, self.phase)
        log.debug("t=%.10f %s (%s)" % (t, kind, self.phase))
        self.traj.events.append(Event(t, kind, pre, post))
        if kind != static.EV_POINCARE and pre.theta1_dot < 0 <= \
                post.theta1_dot:
            self.traj.events.append(Event(t, static.EV_POINCARE, post, post))

    def _with_state(self, y, state):
        y = np.array(y, dtype=float)
        y[:4] = state
        return y

    def _slip_direction(self, t, state, y, terms):
        """
        Slip sign whose sliding solution accelerates z_r in that direction
        """
        p = self.params
        for sgn in (1.0, -1.0):
            u = self._torques(t, state, y, terms, static.SLIDING, sgn)
            gain = contact.normal_gain(terms, p.mu, sgn)
            b = contact.free_normal_acceleration(terms, u)
            f_n = max(-b / gain, 0.0) if gain > 0 else 0.0
            qdd = model.joint_accelerations(
                state, u, p, f=[-p.mu * sgn * f_n, f_n], terms=terms)
            z_t_ddot = terms.J[0].dot(qdd) + terms.s[0]
            if sgn * z_t_ddot > 0:
                return sgn
        u = self._torques(t, state, y, terms, static.FLIGHT)
        qdd = model.joint_accelerations(state, u, p, terms=terms)
        return sign(terms.J[0].dot(qdd) + terms.s[0])

    def _enter_contact(self, t, y, slip_sign=None):
        """
        Picks the phase of an on-manifold state; impacts without collision
        are resolved here
        """
        p = self.params
        state = self._state(y)
        terms = model.eval_terms(state, p)
        z_r_dot = contact.slip_velocity(state, p)
        if slip_sign is None and abs(z_r_dot) > static.TOL_SLIP:
            slip_sign = sign(z_r_dot)
        if slip_sign is None:
            if self.config.stick_enabled:
                u = self._torques(t, state, y, terms, static.STICK)
                f = contact.stick_forces(state, u, p, terms)
                if f[1] > 0 and contact.stick_sustainable(f, p.mu):
                    self.phase = static.STICK
                    return y
            slip_sign = self._slip_direction(t, state, y, terms)
        u = self._torques(t, state, y, terms, static.SLIDING, slip_sign)
        gain = contact.normal_gain(terms, p.mu, slip_sign)
        b = contact.free_normal_acceleration(terms, u)
        mode = contact.mode_from_signs(gain, b)
        self.slip_sign = slip_sign
        if mode == static.SLIDING:
            self.phase = static.SLIDING
            return y
        if mode == static.INDETERMINATE:
            self._log_event(t, static.EV_INDETERMINATE, state, state)
        elif mode == static.INCONSISTENT:
            return self._impact_without_collision(t, y)
        self.phase = static.FLIGHT
        return y

    def _impact_without_collision(self, t, y):
        pre = self._state(y)
        post = resolve_inconsistent(pre, None, self.params, self.config)
        self._log_event(t, static.EV_IWC, pre, post)
        self.phase = static.FLIGHT
        return self._with_state(y, post)

    def _touchdown(self, t, y):
        pre = self._state(y)
        post = resolve_touchdown(pre, self.params, self.config)
        self._log_event(t, static.EV_TOUCHDOWN, pre, post)
        y = self._with_state(y, post)
        ee = model.forward_kinematics(post, self.params)
        if ee.z_n_dot > static.TOL_REBOUND:
            self.phase = static.FLIGHT
            return self._with_state(y, contact.snap_to_belt(post,
                                                            self.params))
        self.phase = static.SLIDING
        return self._enter_contact(t, self._project(t, y))

    def _transition(self, t, y, kind):
        state = self._state(y)
        if kind == static.EV_TOUCHDOWN:
            return self._touchdown(t, y)
        if kind == static.EV_LIFTOFF:
            self._log_event(t, kind, state, state)
            self.phase = static.FLIGHT
            return y
        if kind == static.EV_PARADOX:
            self._log_event(t, kind, state, state)
            terms = model.eval_terms(state, self.params)
            u = self._torques(t, state, y, terms)
            if contact.free_normal_acceleration(terms, u) < 0:
                return self._impact_without_collision(t, y)
            self.phase = static.FLIGHT
            return y
        if kind == static.EV_SLIP_STOP:
            self._log_event(t, kind, state, state)
            return self._enter_contact(t, y)
        if kind == static.EV_SLIP_ONSET:
            self._log_event(t, kind, state, state)
            terms = model.eval_terms(state, self.params)
            u = self._torques(t, state, y, terms, static.STICK)
            f_t = contact.stick_forces(state, u, self.params, terms)[0]
            return self._enter_contact(t, y, slip_sign=-sign(f_t))
        raise exception.SimulationError("unknown event '%s'" % kind, t,
                                        self.phase)

    def start(self, t, y):
        """
        Chooses the phase of the initial state
        """
        ee = model.forward_kinematics(self._state(y), self.params)
        if ee.gap < -static.DRIFT_FACTOR * static.TOL_CONTACT:
            raise exception.ConstraintDriftExceeded(ee.gap, t, 'initial')
        if contact.on_manifold(ee):
            self.phase = static.SLIDING
            return self._enter_contact(t, self._project(t, y))
        if ee.gap <= static.TOL_CONTACT and ee.z_n_dot < 0:
            return self._touchdown(t, y)
        self.phase = static.FLIGHT
        return y

    def run(self, initial, t0=0.0):
        y = np.concatenate([np.asarray(initial, dtype=float),
                            self.controller.initial_integral()])
        t = t0
        y = self.start(t, y)
        if abs(self._grid_index * self.config.output_dt - t) <= \
                1e-9 * self.config.output_dt:
            self._record(t, y)
            self._grid_index += 1
        while t < self.config.t_end:
            t, y, kind = self.run_phase(t, y)
            if kind == static.EV_T_END:
                break
            y = self._transition(t, y, kind)
        self.traj.final_time = t
        self.traj.final_state = self._state(y)
        return self.traj


def _single_phase(phase, state, controller, params, config, t0, slip_sign):
    engine = HybridIntegrator(params, controller, config)
    engine.phase = phase
    if slip_sign is not None:
        engine.slip_sign = slip_sign
    engine._grid_index = max(engine._grid_index, int(math.ceil(
        t0 / config.output_dt - 1e-9)))
    y0 = np.concatenate([state.as_array(),
                         engine.controller.initial_integral()])
    t, y, kind = engine.run_phase(t0, y0)
    engine.traj.final_time = t
    engine.traj.final_state = engine._state(y)
    return engine.traj, Event(t, kind, state, engine._state(y))


def step_flight(state, controller, params, config, t0=0.0):
    """
    Integrates contact-free motion until touchdown or t_end
    """
    return _single_phase(static.FLIGHT, state, controller, params, config,
                         t0, None)


def step_sliding(state, controller, params, config, t0=0.0):
    """
    Integrates sliding contact from an on-manifold state until lift-off, the
    paradox boundary, slip stop or t_end
    """
    ee = model.forward_kinematics(state, params)
    if not contact.on_manifold(ee):
        raise exception.SimulationError(
            "sliding requires the tip on the belt (gap = %g m)" % ee.gap,
            t0, static.SLIDING)
    z_r_dot = ee.z_t_dot - params.v_belt
    if abs(z_r_dot) <= static.TOL_SLIP:
        raise exception.AmbiguousSlip(z_r_dot, static.TOL_SLIP)
    return _single_phase(static.SLIDING, state, controller, params, config,
                         t0, sign(z_r_dot))


def step_stick(state, controller, params, config, t0=0.0):
    return _single_phase(static.STICK, state, controller, params, config,
                         t0, None)


def simulate(initial, controller, params, config):
    """
    Full hybrid run from initial until config.t_end. Identical inputs give
    identical trajectories and event logs.
    """
    traj = HybridIntegrator(params, controller, config).run(initial)
    log.debug("simulated %g s: %d samples, %d transitions" %
              (config.t_end, len(traj), len(traj.transitions)))
    return traj
