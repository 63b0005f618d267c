# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

"""
Brute-force bifurcation sweeps over (mu, v_belt)

Every grid point is simulated for a transient followed by a record window.
The maximum theta1_dot over the record window flags persistent bouncing and
the Poincare section (theta1 at upward zero crossings of theta1_dot) tells
periodic from chaotic bouncing.
"""
import math
import collections

import numpy as np
from scipy import interpolate
from scipy import optimize

from painleve import sim
from painleve import model
from painleve import utils
from painleve import static
from painleve import contact
from painleve import control
from painleve import exception
from painleve import threadpool
from painleve.logger import log
from painleve.templates import user_msgs

MIN_SECTION_POINTS = 8


class Classification(collections.namedtuple('Classification',
                                            'kind period')):
    __slots__ = ()

    def __str__(self):
        if self.kind == static.PERIODIC:
            return '%s(%d)' % (self.kind, self.period)
        return self.kind


class SweepSpec(collections.namedtuple(
        'SweepSpec', 'mu_values v_values initial_conditions random_ics seed '
        'transient record threshold period_tol n_max output_dt controller')):
    """
    Parameter grid, initial condition set, time windows and the controller
    applied at every grid point
    """
    __slots__ = ()

    @classmethod
    def from_config(cls, sweep, controller=None, seed=None):
        for key in ('mu_step', 'v_step'):
            if not sweep[key] > 0:
                raise exception.RunValidationError(
                    "[sweep] %s must be > 0" % key)
        return cls(
            mu_values=utils.grid(sweep['mu_min'], sweep['mu_max'],
                                 sweep['mu_step']),
            v_values=utils.grid(sweep['v_min'], sweep['v_max'],
                                sweep['v_step']),
            initial_conditions=list(sweep['initial_conditions']),
            random_ics=sweep['random_ics'], seed=seed,
            transient=sweep['transient'], record=sweep['record'],
            threshold=sweep['threshold'], period_tol=sweep['period_tol'],
            n_max=sweep['n_max'], output_dt=sweep['sweep_output_dt'],
            controller=controller or control.ControllerSpec.open_loop(),
        ).validate()

    def validate(self):
        if not self.mu_values or not self.v_values:
            raise exception.RunValidationError("sweep grid is empty")
        if not (self.transient > 0 and self.record > 0):
            raise exception.RunValidationError(
                "sweep transient and record times must be > 0")
        if self.random_ics and self.seed is None:
            raise exception.RunValidationError(
                "random initial conditions require a seed")
        for label in self.initial_conditions:
            if label not in static.PRESETS:
                raise exception.RunValidationError(
                    "unknown initial condition preset '%s'" % label)
        return self

    @property
    def n_runs(self):
        n_ics = len(self.initial_conditions) + self.random_ics
        return len(self.mu_values) * len(self.v_values) * n_ics


class SweepPoint(collections.namedtuple(
        'SweepPoint', 'mu v_belt ic_label max_theta1_dot bounce '
        'classification poincare error restitution')):
    __slots__ = ()

    @property
    def period(self):
        return self.classification.period


class SweepResult(object):
    """
    Sweep points in grid order (restitution, mu, v_belt, initial condition)
    """
    def __init__(self, spec, points, restitutions=None):
        self.spec = spec
        self.points = points
        self.restitutions = restitutions

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def select(self, mu=None, ic_label=None, restitution=None):
        def close(a, b):
            return b is None or abs(a - b) < 1e-9
        return [p for p in self.points
                if close(p.mu, mu) and close(p.restitution, restitution) and
                (ic_label is None or p.ic_label == ic_label)]

    def bounce_window(self, mu, ic_label, restitution=None):
        """
        (lowest, highest) v_belt with a bounce flag on the given row, or None
        """
        vs = [p.v_belt for p in self.select(mu, ic_label, restitution)
              if p.bounce]
        if not vs:
            return None
        return min(vs), max(vs)

    def rows(self):
        for p in self.points:
            row = [p.mu, p.v_belt, p.ic_label, p.max_theta1_dot,
                   int(p.bounce), p.classification.kind,
                   '' if p.period is None else p.period]
            if self.restitutions:
                row.append(p.restitution)
            yield row

    def poincare_rows(self):
        for p in self.points:
            for theta1 in p.poincare:
                row = [p.v_belt, math.degrees(theta1)]
                if self.restitutions:
                    row.append(p.restitution)
                yield row


def poincare_section(trajectory, t_from=0.0, event_tol=1e-10):
    """
    theta1 at every upward zero crossing of theta1_dot at or after t_from.

    Crossings recorded by the simulator are used as they are. For a
    trajectory built only from samples the crossings are located on a cubic
    Hermite interpolant of theta1 through the samples.
    """
    if getattr(trajectory, 'records_crossings', False):
        return [theta1 for t, theta1 in trajectory.crossings(t_from)]
    t = trajectory.array('t')
    if len(t) < 2:
        return []
    spline = interpolate.CubicHermiteSpline(t, trajectory.array('theta1'),
                                            trajectory.array('theta1_dot'))
    rate = spline.derivative()
    theta1_dot = trajectory.array('theta1_dot')
    points = []
    for i in range(len(t) - 1):
        if t[i + 1] < t_from:
            continue
        lo, hi = theta1_dot[i], theta1_dot[i + 1]
        if lo < 0 <= hi:
            t_c = optimize.brentq(rate, t[i], t[i + 1], xtol=event_tol)
            if t_c >= t_from:
                points.append(float(spline(t_c)))
    return points


def classify_attractor(points, tol=1e-3, n_max=32):
    """
    periodic(n) for the smallest n <= n_max such that the last 3n section
    points each repeat the point n places earlier to within tol; chaotic when
    no such n exists
    """
    x = np.asarray(points, dtype=float)
    if len(x) < MIN_SECTION_POINTS:
        return Classification(static.INSUFFICIENT_DATA, None)
    for n in range(1, min(n_max, len(x) // 4) + 1):
        tail = np.arange(len(x) - 3 * n, len(x))
        if np.all(np.abs(x[tail] - x[tail - n]) <= tol):
            return Classification(static.PERIODIC, n)
    return Classification(static.CHAOTIC, None)


def preset_state(label, params):
    """
    Named initial condition put on the contact manifold
    """
    state = model.State.from_degrees(*static.PRESETS[label])
    return contact.project_to_manifold(state, params)


def random_initial_conditions(count, seed, params):
    """
    Resting contact postures with theta1 uniform over the random range and a
    random elbow branch. Draws without a contact closure are repeated.
    """
    rng = np.random.default_rng(seed)
    lo, hi = [math.radians(v) for v in static.RANDOM_IC_THETA1]
    ics = []
    while len(ics) < count:
        theta1 = rng.uniform(lo, hi)
        elbow = static.ELBOW_UP if rng.random() < 0.5 else static.ELBOW_DOWN
        try:
            state = contact.contact_closure(theta1, 0.0, params, elbow)
        except exception.ContactError:
            continue
        ics.append(('rand%d' % len(ics), state))
    return ics


def initial_conditions(spec, params):
    ics = [(label, preset_state(label, params))
           for label in spec.initial_conditions]
    if spec.random_ics:
        ics.extend(random_initial_conditions(spec.random_ics, spec.seed,
                                             params))
    return ics


def run_point(spec, params, sim_config, mu, v_belt, label, state,
              restitution=None):
    """
    Simulates one grid point. Errors are recorded in the returned point.
    """
    params = params._replace(mu=mu, v_belt=v_belt)
    t_end = spec.transient + spec.record
    config = sim_config._replace(t_end=t_end, record_start=spec.transient,
                                 output_dt=spec.output_dt)
    if restitution is not None:
        config = config._replace(restitution=restitution)
    try:
        controller = spec.controller.build(state, params)
        traj = sim.simulate(state, controller, params, config)
    except (exception.SimulationError, exception.ContactError,
            exception.ModelError, exception.ControlError) as e:
        log.error("mu=%g v_belt=%g %s: %s" % (mu, v_belt, label, e))
        return SweepPoint(mu, v_belt, label, float('nan'), False,
                          Classification(static.FAILED, None), [], str(e),
                          restitution)
    max_rate = traj.max_theta1_dot(spec.transient)
    bounce = bool(max_rate > spec.threshold)
    section = poincare_section(traj, spec.transient, config.event_tol)
    if bounce:
        kind = classify_attractor(section, spec.period_tol, spec.n_max)
    else:
        kind = Classification(static.NO_BOUNCE, None)
    return SweepPoint(mu, v_belt, label, max_rate, bounce, kind, section,
                      None, restitution)


@utils.print_timing("Sweep")
def sweep(spec, params, sim_config, jobs=1, restitutions=None):
    """
    Runs every (restitution, mu, v_belt, initial condition) combination.
    Results are gathered in grid order whatever the number of jobs.
    """
    ics = initial_conditions(spec, params)
    tags = list(restitutions) if restitutions else [None]
    work = []
    for e in tags:
        for mu in spec.mu_values:
            for v_belt in spec.v_values:
                for label, state in ics:
                    work.append((mu, v_belt, label, state, e))
    runs = len(work)
    if runs * (spec.transient + spec.record) > 1e5:
        log.info(user_msgs.long_sweep % dict(
            runs=runs, seconds=spec.transient + spec.record),
            extra=dict(__textwrap__=True))

    def job(mu, v_belt, label, state, e):
        return run_point(spec, params, sim_config, mu, v_belt, label, state,
                         e)

    pool = threadpool.get_thread_pool(size=max(jobs, 1),
                                      disable_threads=jobs <= 1)
    try:
        results = pool.map(job, *zip(*work))
    finally:
        pool.shutdown()
    points = [point for jobid, point in results]
    n_bounce = sum(1 for p in points if p.bounce)
    log.info("%d grid points simulated, %d with persistent bouncing" %
             (len(points), n_bounce))
    return SweepResult(spec, points, restitutions)


def closed_loop_sweep(spec, params, sim_config, jobs=1, restitutions=None):
    """
    Sweep with the controller of spec active at every grid point
    """
    if spec.controller.kind != static.HYBRID_CONTROL:
        log.warning("closed loop sweep with a %s controller" %
                    spec.controller.kind)
    return sweep(spec, params, sim_config, jobs, restitutions)
