# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

"""
Closed-form kinematics and dynamics of the two-link arm

Angles are measured from the downward vertical. The arm hangs from a pivot
placed at height H above the belt; the end effector touches the belt when
z_n = -H. All values are SI with angles in radians.
"""
import math
import collections

import numpy as np

from painleve import static
from painleve import exception


class RobotParams(collections.namedtuple(
        'RobotParams', 'm l sigma k H alpha0 mu v_belt g')):
    """
    Physical constants of the arm, the spring/damper joints and the belt.
    alpha0 is the spring rest angle in radians.
    """
    __slots__ = ()

    @classmethod
    def standard(cls, mu=0.6, v_belt=-0.4, g=9.81):
        return cls(m=0.12, l=0.21, sigma=0.005, k=1.3, H=0.3775,
                   alpha0=math.radians(13.72), mu=mu, v_belt=v_belt, g=g)

    @property
    def reach(self):
        """
        Largest |z_t| on the contact manifold (straight arm)
        """
        return math.sqrt(max(4.0 * self.l ** 2 - self.H ** 2, 0.0))

    def validate(self):
        if not all(math.isfinite(v) for v in self):
            raise exception.ModelError("robot parameters must be finite")
        if self.m <= 0 or self.l <= 0:
            raise exception.ModelError("mass and link length must be > 0")
        if not 0 < self.H < 2 * self.l:
            raise exception.ModelError(
                "H = %g must satisfy 0 < H < 2l = %g (contact manifold "
                "would be empty)" % (self.H, 2 * self.l))
        if self.mu < 0 or self.sigma < 0 or self.k < 0:
            raise exception.ModelError("mu, sigma and k must be >= 0")
        return self


class State(collections.namedtuple(
        'State', 'theta1 theta1_dot theta2 theta2_dot')):
    """
    Joint angles and rates, ordered as [theta1, theta1_dot, theta2,
    theta2_dot]
    """
    __slots__ = ()

    @classmethod
    def from_array(cls, arr):
        return cls(float(arr[0]), float(arr[1]), float(arr[2]),
                   float(arr[3]))

    @classmethod
    def from_degrees(cls, theta1, theta1_dot, theta2, theta2_dot):
        return cls(math.radians(theta1), math.radians(theta1_dot),
                   math.radians(theta2), math.radians(theta2_dot))

    def as_array(self):
        return np.array(self, dtype=float)

    def as_degrees(self):
        return tuple(math.degrees(v) for v in self)

    @property
    def q(self):
        return np.array([self.theta1, self.theta2])

    @property
    def qdot(self):
        return np.array([self.theta1_dot, self.theta2_dot])

    def mirrored(self):
        return State(-self.theta1, -self.theta1_dot, -self.theta2,
                     -self.theta2_dot)


DynamicsTerms = collections.namedtuple('DynamicsTerms',
                                       'M Minv w c J Jdot Q s')

EndEffector = collections.namedtuple('EndEffector',
                                     'z_t z_n z_t_dot z_n_dot gap')

IKSolution = collections.namedtuple('IKSolution', 'theta1 theta2 degenerate')


def generalized_torques(u):
    """
    Returns the generalized 2-vector for u, which may be None (no control),
    a ControlTorques or anything array-like already in generalized form
    """
    if u is None:
        return np.zeros(2)
    gen = getattr(u, 'generalized', None)
    if gen is not None:
        return np.asarray(gen, dtype=float)
    return np.asarray(u, dtype=float)


def forward_kinematics(state, params):
    l = params.l
    t1, t1d, t2, t2d = state
    s1, c1 = math.sin(t1), math.cos(t1)
    s2, c2 = math.sin(t2), math.cos(t2)
    z_n = -l * (c1 + c2)
    return EndEffector(z_t=l * (s1 + s2), z_n=z_n,
                       z_t_dot=l * (c1 * t1d + c2 * t2d),
                       z_n_dot=l * (s1 * t1d + s2 * t2d),
                       gap=z_n + params.H)


def eval_terms(state, params):
    """
    Evaluates the mass matrix M (and its inverse), the spring/damper/gravity
    torques w, the Coriolis/centrifugal torques c, the end effector Jacobian
    J and its time derivative, Q = J M^-1 J^T and the centripetal
    acceleration s = Jdot qdot.
    """
    m, l, g = params.m, params.l, params.g
    t1, t1d, t2, t2d = state
    ml2 = m * l * l
    s1, c1 = math.sin(t1), math.cos(t1)
    s2, c2 = math.sin(t2), math.cos(t2)
    m12 = 0.5 * ml2 * math.cos(t2 - t1)
    M = np.array([[4.0 / 3.0 * ml2, m12],
                  [m12, ml2 / 3.0]])
    det = M[0, 0] * M[1, 1] - m12 * m12
    Minv = np.array([[M[1, 1], -m12],
                     [-m12, M[0, 0]]]) / det
    spring = params.k * (t2 - t1 + params.alpha0)
    w = np.array([
        1.5 * m * g * l * s1 - spring - params.sigma * (t2d - 2.0 * t1d),
        0.5 * m * g * l * s2 + spring + params.sigma * (t2d - t1d)])
    s12 = math.sin(t1 - t2)
    c = np.array([0.5 * ml2 * t2d * t2d * s12,
                  -0.5 * ml2 * t1d * t1d * s12])
    J = np.array([[l * c1, l * c2],
                  [l * s1, l * s2]])
    Jdot = np.array([[-l * s1 * t1d, -l * s2 * t2d],
                     [l * c1 * t1d, l * c2 * t2d]])
    Q = J.dot(Minv).dot(J.T)
    Q = 0.5 * (Q + Q.T)
    s = np.array([-l * (t1d * t1d * s1 + t2d * t2d * s2),
                  l * (t1d * t1d * c1 + t2d * t2d * c2)])
    return DynamicsTerms(M=M, Minv=Minv, w=w, c=c, J=J, Jdot=Jdot, Q=Q, s=s)


def jacobian_det(terms):
    J = terms.J
    return J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]


def joint_accelerations(state, u, params, f=None, terms=None):
    """
    q_ddot = M^-1 (-w - c + J^T f + u) with f = [f_t, f_n] the contact force
    acting on the end effector
    """
    terms = terms or eval_terms(state, params)
    rhs = -terms.w - terms.c + generalized_torques(u)
    if f is not None:
        rhs = rhs + terms.J.T.dot(f)
    return terms.Minv.dot(rhs)


def free_dynamics(state, u, params, terms=None):
    return joint_accelerations(state, u, params, terms=terms)


def inverse_kinematics(z_t, z_n, params, elbow=static.ELBOW_DOWN,
                       strict=False):
    """
    Joint angles placing the end effector at (z_t, z_n) on the requested
    elbow branch (up: theta2 > theta1, down: theta2 < theta1).

    Both links are symmetric about the direction of the target, so
    theta1 = phi -/+ delta and theta2 = phi +/- delta with
    cos(delta) = r / 2l.
    """
    l = params.l
    r = math.hypot(z_t, z_n)
    reach = 2.0 * l
    if r > reach * (1.0 + 1e-12):
        raise exception.UnreachableTarget(z_t, z_n, reach)
    phi = math.atan2(z_t, -z_n)
    delta = math.acos(min(1.0, r / reach))
    if elbow == static.ELBOW_UP:
        theta1, theta2 = phi - delta, phi + delta
    else:
        theta1, theta2 = phi + delta, phi - delta
    degenerate = delta == 0.0
    if degenerate and strict:
        raise exception.BranchDegenerate(phi)
    return IKSolution(theta1, theta2, degenerate)


def elbow_of(state):
    """
    Branch of a posture; the straight arm counts as elbow up
    """
    if state.theta2 - state.theta1 >= 0:
        return static.ELBOW_UP
    return static.ELBOW_DOWN


def energy(state, params):
    """
    Returns (kinetic, gravitational, spring) energy
    """
    terms_M = eval_terms(state, params).M
    qd = state.qdot
    kinetic = 0.5 * qd.dot(terms_M).dot(qd)
    gravity = -params.m * params.g * params.l * (
        1.5 * math.cos(state.theta1) + 0.5 * math.cos(state.theta2))
    spring = 0.5 * params.k * (state.theta2 - state.theta1 +
                               params.alpha0) ** 2
    return kinetic, gravity, spring


def dissipation(state, params):
    """
    Power absorbed by the two dashpots (base and elbow)
    """
    rel = state.theta2_dot - state.theta1_dot
    return params.sigma * (state.theta1_dot ** 2 + rel ** 2)
