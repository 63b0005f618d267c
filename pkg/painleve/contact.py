# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

"""
Unilateral frictional contact between the end effector and the belt

While in contact the normal acceleration of the tip is affine in the normal
reaction:

    z_n_ddot = b + p * f_n

b is the free normal acceleration and p the normal force gain. The signs of
(p, b) select one of four solution modes; p < 0 is the Painleve paradox.
"""
import math
import collections

import numpy as np
from scipy import optimize

from painleve import model
from painleve import static
from painleve import exception
from painleve.logger import log


class ContactState(collections.namedtuple(
        'ContactState', 'mode p b f_n f_t z_r_dot')):
    __slots__ = ()


RegionMap = collections.namedtuple(
    'RegionMap', 'theta1 theta1_dot modes b_zero p_zero')


class AdmissibleInterval(collections.namedtuple(
        'AdmissibleInterval',
        'lower upper lower_closed upper_closed elbow mu')):
    __slots__ = ()

    @property
    def empty(self):
        return self.lower is None

    def __contains__(self, z_t):
        if self.empty:
            return False
        above = z_t >= self.lower if self.lower_closed else z_t > self.lower
        below = z_t <= self.upper if self.upper_closed else z_t < self.upper
        return above and below

    def as_dict(self):
        return dict(elbow=self.elbow, mu=self.mu, lower=self.lower,
                    upper=self.upper, lower_closed=self.lower_closed,
                    upper_closed=self.upper_closed)

    def __str__(self):
        if self.empty:
            return 'empty'
        return '%s%.4f, %.4f%s' % ('[' if self.lower_closed else '(',
                                   self.lower, self.upper,
                                   ']' if self.upper_closed else ')')


def sign(x):
    return 1.0 if x > 0 else -1.0


def slip_velocity(state, params):
    ee = model.forward_kinematics(state, params)
    return ee.z_t_dot - params.v_belt


def _slip_sign(state, params, slip_sign=None):
    if slip_sign is not None:
        return sign(slip_sign)
    z_r_dot = slip_velocity(state, params)
    if abs(z_r_dot) <= static.TOL_SLIP:
        raise exception.AmbiguousSlip(z_r_dot, static.TOL_SLIP)
    return sign(z_r_dot)


def normal_gain(terms, mu, slip_sign):
    """
    p = -mu sign(z_r_dot) Q21 + Q22
    """
    return -mu * slip_sign * terms.Q[1, 0] + terms.Q[1, 1]


def free_normal_acceleration(terms, u):
    """
    b = -j2^T M^-1 (w + c - u) + s2
    """
    j2 = terms.J[1]
    rhs = terms.w + terms.c - model.generalized_torques(u)
    return -j2.dot(terms.Minv.dot(rhs)) + terms.s[1]


def painleve_pb(state, u, params, terms=None, slip_sign=None):
    """
    Returns (p, b). The slip sign is read from the state unless given
    explicitly; AmbiguousSlip is raised when the tip does not slip.
    """
    sgn = _slip_sign(state, params, slip_sign)
    terms = terms or model.eval_terms(state, params)
    return (normal_gain(terms, params.mu, sgn),
            free_normal_acceleration(terms, u))


def mode_from_signs(p, b, tol=static.TOL_SIGN):
    """
    Sign table of the four solution modes. |p| below tol counts as p > 0
    (no paradox) so the p = 0 boundary resolves to Sliding when b < 0 and to
    Flight when b >= 0.
    """
    paradox = p < -tol
    if b < 0:
        return static.INCONSISTENT if paradox else static.SLIDING
    return static.INDETERMINATE if paradox else static.FLIGHT


def on_manifold(ee, tol=static.TOL_CONTACT, tol_rate=static.TOL_CONTACT_RATE):
    return abs(ee.gap) <= tol and abs(ee.z_n_dot) <= tol_rate


def classify_mode(state, u, params, terms=None, slip_sign=None,
                  strict=False):
    ee = model.forward_kinematics(state, params)
    z_r_dot = ee.z_t_dot - params.v_belt
    terms = terms or model.eval_terms(state, params)
    if not on_manifold(ee):
        sgn = sign(z_r_dot) if slip_sign is None else sign(slip_sign)
        p = normal_gain(terms, params.mu, sgn)
        b = free_normal_acceleration(terms, u)
        return ContactState(static.FLIGHT, p, b, 0.0, 0.0, z_r_dot)
    sgn = _slip_sign(state, params, slip_sign)
    p = normal_gain(terms, params.mu, sgn)
    b = free_normal_acceleration(terms, u)
    for name, value in (('p', p), ('b', b)):
        if abs(value) < static.TOL_SIGN:
            if strict:
                raise exception.DegenerateSign(name, value)
            log.debug("%s = %g within sign tolerance, applying tie-break" %
                      (name, value))
    mode = mode_from_signs(p, b)
    f_n = 0.0
    if mode == static.SLIDING:
        f_n = -b / p
    return ContactState(mode, p, b, f_n, -params.mu * sgn * f_n, z_r_dot)


def _closure_rate(theta1, theta1_dot, theta2):
    s2 = math.sin(theta2)
    num = -math.sin(theta1) * theta1_dot
    if abs(s2) < 1e-12:
        if abs(num) <= 1e-15:
            return 0.0
        raise exception.RateSingular(theta2)
    return num / s2


def _closure_roots(theta1, params):
    cos2 = params.H / params.l - math.cos(theta1)
    if abs(cos2) > 1.0 + 1e-12:
        raise exception.NoContactSolution(theta1)
    a = math.acos(max(-1.0, min(1.0, cos2)))
    return a, -a


def contact_closure(theta1, theta1_dot, params, elbow=static.ELBOW_DOWN):
    """
    Full state with the tip on the belt (gap = 0, z_n_dot = 0) for the given
    theta1 and theta1_dot.

    The elbow flag picks the root of l(cos(theta1) + cos(theta2)) = H lying
    on the requested side of theta2 = theta1. When both roots lie on that
    side the one nearest theta1 is used; when neither does, the one closest
    to the requested side.
    """
    roots = _closure_roots(theta1, params)
    if elbow == static.ELBOW_UP:
        side = [r for r in roots if r - theta1 >= 0]
        fallback = max(roots, key=lambda r: r - theta1)
    else:
        side = [r for r in roots if r - theta1 < 0]
        fallback = min(roots, key=lambda r: r - theta1)
    if side:
        theta2 = min(side, key=lambda r: abs(r - theta1))
    else:
        log.debug("no %s-elbow closure for theta1=%g, using %g" %
                  (elbow, theta1, fallback))
        theta2 = fallback
    theta2_dot = _closure_rate(theta1, theta1_dot, theta2)
    return model.State(theta1, theta1_dot, theta2, theta2_dot)


def snap_to_belt(state, params):
    """
    Moves theta2 to the closure root nearest to it, keeping the rates
    """
    roots = _closure_roots(state.theta1, params)
    theta2 = min(roots, key=lambda r: abs(r - state.theta2))
    return state._replace(theta2=theta2)


def project_to_manifold(state, params):
    """
    Puts a state that drifted off the contact manifold back on it. theta2 is
    replaced by the closure root nearest to it and the rates by the closure
    rate; near sin(theta2) = 0 the rates are projected with the minimum-norm
    correction instead.
    """
    theta2 = snap_to_belt(state, params).theta2
    if abs(math.sin(theta2)) > 1e-6:
        theta2_dot = _closure_rate(state.theta1, state.theta1_dot, theta2)
        return model.State(state.theta1, state.theta1_dot, theta2,
                           theta2_dot)
    j2 = np.array([math.sin(state.theta1), math.sin(theta2)])
    qd = np.array([state.theta1_dot, state.theta2_dot])
    qd = qd - j2 * j2.dot(qd) / j2.dot(j2)
    return model.State(state.theta1, qd[0], theta2, qd[1])


def stick_forces(state, u, params, terms=None):
    """
    Bilateral stick solve: the contact force [f_t, f_n] that keeps both
    z_t_ddot and z_n_ddot at zero
    """
    terms = terms or model.eval_terms(state, params)
    rhs = terms.w + terms.c - model.generalized_torques(u)
    a_free = -terms.J.dot(terms.Minv.dot(rhs)) + terms.s
    return -np.linalg.solve(terms.Q, a_free)


def stick_sustainable(f, mu):
    f_t, f_n = f
    return f_n >= 0 and abs(f_t) <= mu * f_n


def _closure_pb(theta1, theta1_dot, params, u, elbow):
    state = contact_closure(theta1, theta1_dot, params, elbow)
    terms = model.eval_terms(state, params)
    z_r_dot = slip_velocity(state, params)
    sgn = sign(z_r_dot)
    return (normal_gain(terms, params.mu, sgn),
            free_normal_acceleration(terms, u), sgn, z_r_dot, state, terms)


def _grid_mode(theta1, theta1_dot, params, u, elbow):
    try:
        state = contact_closure(theta1, theta1_dot, params, elbow)
    except (exception.NoContactSolution, exception.RateSingular):
        return static.UNREACHABLE
    try:
        return classify_mode(state, u, params).mode
    except exception.AmbiguousSlip:
        return static.STICK


def _zero_crossing(func, a, b):
    """
    Root of func in [a, b] or None. Sign changes across a jump of the closure
    branch are not roots and are dropped.
    """
    try:
        fa, fb = func(a), func(b)
        root = optimize.brentq(func, a, b, xtol=1e-12)
        if abs(func(root)) > 1e-6 * max(abs(fa), abs(fb)):
            return None
        return root
    except (ValueError, exception.ContactError):
        return None


def _zero_levels(theta1_grid, theta1_dot_grid, params, u, elbow, values):
    """
    Locates b = 0 and p = 0 along every grid edge whose end values differ in
    sign, with the slip sign equal at both ends
    """
    b_zero, p_zero = [], []
    n1, n2 = len(theta1_grid), len(theta1_dot_grid)

    def value(idx, theta1, theta1_dot):
        return _closure_pb(theta1, theta1_dot, params, u, elbow)[idx]

    for i in range(n1):
        for j in range(n2):
            here = values[i][j]
            if here is None:
                continue
            neighbours = []
            if i + 1 < n1:
                neighbours.append((i + 1, j))
            if j + 1 < n2:
                neighbours.append((i, j + 1))
            for ni, nj in neighbours:
                there = values[ni][nj]
                if there is None or here[2] != there[2]:
                    continue
                t1a, t1b = theta1_grid[i], theta1_grid[ni]
                tda, tdb = theta1_dot_grid[j], theta1_dot_grid[nj]
                for idx, store in ((1, b_zero), (0, p_zero)):
                    if here[idx] * there[idx] >= 0:
                        continue
                    if ni != i:
                        root = _zero_crossing(
                            lambda t: value(idx, t, tda), t1a, t1b)
                        point = (root, tda)
                    else:
                        root = _zero_crossing(
                            lambda t: value(idx, t1a, t), tda, tdb)
                        point = (t1a, root)
                    if root is not None:
                        store.append(point)
    return sorted(b_zero), sorted(p_zero)


def region_map(theta1_grid, theta1_dot_grid, params, u=None,
               elbow=static.ELBOW_DOWN):
    """
    Solution mode on the contact closure of every (theta1, theta1_dot) grid
    point together with the b = 0 and p = 0 zero-level point sets. Angles in
    radians. Points with no contact closure are tagged unreachable.
    """
    theta1_grid = [float(t) for t in theta1_grid]
    theta1_dot_grid = [float(t) for t in theta1_dot_grid]
    if not all(math.isfinite(t) for t in theta1_grid + theta1_dot_grid):
        raise exception.ContactError("region grids must be finite")
    modes, values = [], []
    for theta1 in theta1_grid:
        mode_row, value_row = [], []
        for theta1_dot in theta1_dot_grid:
            mode_row.append(_grid_mode(theta1, theta1_dot, params, u, elbow))
            try:
                p, b, sgn = _closure_pb(theta1, theta1_dot, params, u,
                                        elbow)[:3]
                value_row.append((p, b, sgn))
            except exception.ContactError:
                value_row.append(None)
        modes.append(mode_row)
        values.append(value_row)
    b_zero, p_zero = _zero_levels(theta1_grid, theta1_dot_grid, params, u,
                                  elbow, values)
    return RegionMap(theta1_grid, theta1_dot_grid, modes, b_zero, p_zero)


def region_fractions(region):
    """
    Fraction of reachable grid points carrying each mode tag
    """
    counts = collections.Counter(m for row in region.modes for m in row
                                 if m != static.UNREACHABLE)
    total = float(sum(counts.values())) or 1.0
    return dict((mode, counts.get(mode, 0) / total) for mode in
                static.MODES)


def manifold_state(z_t, params, elbow):
    """
    Resting posture with the tip on the belt at tangential position z_t
    """
    ik = model.inverse_kinematics(z_t, -params.H, params, elbow)
    return model.State(ik.theta1, 0.0, ik.theta2, 0.0)


def admissible_range(params, elbow=static.ELBOW_DOWN, samples=2001):
    """
    Maximal z_t interval along the contact manifold where p > 0 for a tip
    slipping forward (z_r_dot > 0). Interior endpoints are roots of p and are
    open; endpoints at the reach limit are closed.
    """
    if params.mu <= 0:
        raise exception.ContactError("admissible_range requires mu > 0")
    reach = params.reach

    def p_of(z_t):
        state = manifold_state(z_t, params, elbow)
        return normal_gain(model.eval_terms(state, params), params.mu, 1.0)

    zs = np.linspace(-reach, reach, samples)
    positive = [p_of(z) > 0 for z in zs]
    best, start = None, None
    for i, pos in enumerate(positive + [False]):
        if pos and start is None:
            start = i
        elif not pos and start is not None:
            if best is None or i - start > best[1] - best[0]:
                best = (start, i)
            start = None
    if best is None:
        return AdmissibleInterval(None, None, False, False, elbow, params.mu)
    lo, hi = best
    if lo == 0:
        lower, lower_closed = -reach, True
    else:
        lower = optimize.brentq(p_of, zs[lo - 1], zs[lo], xtol=1e-10)
        lower_closed = False
    if hi == samples:
        upper, upper_closed = reach, True
    else:
        upper = optimize.brentq(p_of, zs[hi - 1], zs[hi], xtol=1e-10)
        upper_closed = False
    return AdmissibleInterval(float(lower), float(upper), lower_closed,
                              upper_closed, elbow, params.mu)
