# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

from unittest import mock

import pytest
import numpy as np

import logging
logging.disable(logging.WARN)

from painleve import sim
from painleve import tests
from painleve import model
from painleve import static
from painleve import contact
from painleve import control
from painleve import exception
from painleve import bifurcation


def pid_spec(label):
    return control.ControllerSpec.open_loop()._replace(
        kind=static.PID_CONTROL, pid=dict(control.STANDARD_PID_GAINS),
        hybrid=control.standard_hybrid_gains(label))


def hybrid_spec(label):
    return pid_spec(label)._replace(kind=static.HYBRID_CONTROL)


class TestTorques(tests.PainleveTest):

    def test_generalized_mapping(self):
        u = control.ControlTorques(3.0, 1.0)
        assert list(u.generalized) == [2.0, 1.0]
        assert control.ControlTorques.from_generalized(u.generalized) == u
        assert list(model.generalized_torques(u)) == [2.0, 1.0]

    def test_zero(self):
        assert control.ControlTorques.zero() == (0.0, 0.0)


class TestReferenceProfile(tests.PainleveTest):

    def test_hold_and_step(self):
        assert control.reference_profile('hold', 5.0, 0.1) == (0.1, 0.0, 0.0)
        ref = control.ReferenceProfile('step', 0.0, 0.1, 1.0, 1.0)
        assert ref(0.5)[0] == 0.0
        assert ref(1.0)[0] == 0.1
        assert ref(7.0) == (0.1, 0.0, 0.0)

    def test_ramp(self):
        ref = control.ReferenceProfile('ramp', -0.1624, 0.0375, 0.0, 20.0)
        for t in (0.0, 5.0, 19.9):
            assert abs(ref(t)[1] - 0.009995) < 1e-12
        assert abs(ref(10.0)[0] - (-0.1624 + 0.09995)) < 1e-12
        z, zd, zdd = ref(25.0)
        assert abs(z - 0.0375) < 1e-15 and zd == 0.0 and zdd == 0.0

    def test_smoothstep_endpoints(self):
        ref = control.ReferenceProfile('smoothstep', 0.0, 0.2, 1.0, 2.0)
        z, zd, zdd = ref(1.0)
        assert z == 0.0 and zd == 0.0 and zdd == 0.0
        z, zd, zdd = ref(3.0)
        assert abs(z - 0.2) < 1e-15 and abs(zd) < 1e-15 and abs(zdd) < 1e-15
        assert abs(ref(2.0)[0] - 0.1) < 1e-15

    def test_smoothstep_derivatives(self):
        ref = control.ReferenceProfile('smoothstep', -0.1, 0.1, 0.0, 1.0)
        h = 1e-6
        for t in (0.2, 0.5, 0.8):
            z, zd, zdd = ref(t)
            assert abs((ref(t + h)[0] - ref(t - h)[0]) / (2 * h) - zd) < 1e-6
            assert abs((ref(t + h)[1] - ref(t - h)[1]) / (2 * h) - zdd) < \
                1e-5

    def test_invalid_profiles(self):
        for ref in (control.ReferenceProfile('ramp', 0.0, 0.1, 0.0, 0.0),
                    control.ReferenceProfile('sine', 0.0, 0.1, 0.0, 1.0)):
            try:
                ref.validate()
            except exception.ControlError:
                pass
            else:
                raise Exception("invalid profile accepted: %s" % (ref,))


class TestIntegrator(tests.PainleveTest):

    def test_constant_error(self):
        integ = control.TrapezoidIntegrator()
        for i in range(5):
            value = integ.advance(2.0, 0.1)
        assert abs(value[0] - 1.0) < 1e-12

    def test_linear_error_exact(self):
        integ = control.TrapezoidIntegrator()
        integ.advance(0.0, 0.0)
        for i in range(1, 11):
            value = integ.advance(i * 0.1, 0.1)
        assert abs(value[0] - 0.5) < 1e-12

    def test_reset(self):
        integ = control.TrapezoidIntegrator(2)
        integ.advance([1.0, 2.0], 1.0)
        integ.reset()
        assert list(integ.value) == [0.0, 0.0]
        assert integ.prev is None


class TestPID(tests.PainleveTest):

    def test_standard_gains(self):
        gains = control.PIDGains.standard()
        assert list(gains.kp) == [200.0, 0.0]
        assert list(gains.ki) == [25.0, 0.0]
        assert list(gains.kd) == [2.0, 0.0]

    def test_nonfinite_gains(self):
        try:
            control.PIDGains(kp=(float('inf'), 0.0))
        except exception.ControlError:
            pass
        else:
            raise Exception("infinite gain accepted")

    def test_joint_reference(self):
        p = self.params
        state = bifurcation.preset_state('x0_d', p)
        z_t = model.forward_kinematics(state, p).z_t
        q_ref, qd_ref = control.joint_reference(z_t, 0.01, p,
                                                static.ELBOW_DOWN)
        assert abs(q_ref[0] - state.theta1) < 1e-9
        assert abs(q_ref[1] - (state.theta2 - state.theta1)) < 1e-9
        ref_state = model.State(q_ref[0], qd_ref[0], q_ref[0] + q_ref[1],
                                qd_ref[0] + qd_ref[1])
        ee = model.forward_kinematics(ref_state, p)
        assert abs(ee.z_t_dot - 0.01) < 1e-12
        assert abs(ee.z_n_dot) < 1e-12

    def test_on_reference_no_torque(self):
        p = self.params
        state = bifurcation.preset_state('x0_d', p)
        gains = control.PIDGains.standard()
        reference = control.joint_coordinates(state)
        u = control.pid_torques(state, reference, gains, 0.01)
        assert u == (0.0, 0.0)

    def test_proportional_sign(self):
        p = self.params
        state = bifurcation.preset_state('x0_d', p)
        gains = control.PIDGains(kp=(200.0, 0.0))
        q, qd = control.joint_coordinates(state)
        u = control.pid_torques(state, (q + [0.01, 0.0], qd), gains, 0.0)
        assert abs(u.u1 - 2.0) < 1e-12 and u.u2 == 0.0

    def test_zero_gains_match_open_loop(self):
        p = self.params
        state = bifurcation.preset_state('x0_d', p)
        spec = pid_spec('x0_d')._replace(pid=dict(
            kp=(0.0, 0.0), ki=(0.0, 0.0), kd=(0.0, 0.0)))
        config = sim.SimConfig.default(t_end=0.2, output_dt=0.01)
        pid = sim.simulate(state, spec.build(state, p), p, config)
        free = sim.simulate(state, control.OpenLoop(), p, config)
        assert len(pid) == len(free)
        assert np.allclose(pid.states, free.states, atol=1e-12, rtol=0)
        assert [e.kind for e in pid.events] == [e.kind for e in free.events]


class TestHybrid(tests.PainleveTest):

    def _gains(self, z_t, **kwargs):
        hold = control.ReferenceProfile('hold', z_t, z_t, 0.0, 1.0)
        gains = dict(control.standard_hybrid_gains('x0_d'), reference=hold)
        gains.update(kwargs)
        return control.HybridGains(**gains)

    def test_fn_ref_positive(self):
        try:
            self._gains(0.0, fn_ref=0.0).validate()
        except exception.ControlError:
            pass
        else:
            raise Exception("non-positive reference force accepted")

    def test_standard_gains(self):
        assert control.standard_hybrid_gains('x0_d')['ki_prime'] == 650.0
        assert control.standard_hybrid_gains('x0_u')['ki_prime'] == 0.0
        assert control.standard_hybrid_gains('x0_u')['fn_ref'] == 10.0

    def test_law_is_exact_in_sliding(self):
        p = self.params
        state = bifurcation.preset_state('x0_d', p)._replace(theta1_dot=0.3)
        state = contact.project_to_manifold(state, p)
        terms = model.eval_terms(state, p)
        ee = model.forward_kinematics(state, p)
        gains = self._gains(ee.z_t + 0.01)
        cs = contact.ContactState(static.SLIDING, 1.0, -1.0, 7.0, -4.2,
                                  ee.z_t_dot - p.v_belt)
        u = control.hybrid_torques(state, terms, cs, gains, 0.0, p)
        qdd = model.joint_accelerations(state, u, p, f=[cs.f_t, 10.0],
                                        terms=terms)
        z_ddot = terms.J.dot(qdd) + terms.s
        alpha_v = 900.0 * 0.01 - 900.0 * ee.z_t_dot
        assert abs(z_ddot[0] - alpha_v) < 1e-8
        assert abs(z_ddot[1]) < 1e-8

    def test_singular_jacobian_raises(self):
        p = self.params
        state = model.State(0.3, 0.0, 0.3, 0.0)
        terms = model.eval_terms(state, p)
        cs = contact.ContactState(static.FLIGHT, 1.0, 1.0, 0.0, 0.0, 0.0)
        try:
            control.hybrid_torques(state, terms, cs, self._gains(0.0), 0.0,
                                   p)
        except exception.JacobianSingular:
            pass
        else:
            raise Exception("hybrid law evaluated with a singular Jacobian")

    def test_controller_holds_last_torque(self):
        p = self.params
        ctrl = control.HybridController(self._gains(0.0), p)
        xi = ctrl.initial_integral()
        regular = bifurcation.preset_state('x0_d', p)
        u = ctrl.torques(0.0, regular, xi, model.eval_terms(regular, p))
        straight = model.State(0.3, 0.0, 0.3, 0.0)
        terms = model.eval_terms(straight, p)
        assert ctrl.torques(0.1, straight, xi, terms) == u
        assert ctrl.torques(0.2, straight, xi, terms) == u
        assert ctrl.flags == [(0.1, static.EV_JACOBIAN_SINGULAR)]

    def test_force_integrand(self):
        ctrl = control.HybridController(self._gains(0.0), self.params)
        dxi = ctrl.integrand(0.0, None, ctrl.initial_integral(), 4.0)
        assert list(dxi) == [0.0, 0.0, 6.0]


class TestControllerSpec(tests.PainleveTest):

    def test_build(self):
        p = self.params
        down = bifurcation.preset_state('x0_d', p)
        up = bifurcation.preset_state('x0_u', p)
        assert isinstance(control.ControllerSpec.open_loop().build(down, p),
                          control.OpenLoop)
        ctrl = pid_spec('x0_u').build(up, p)
        assert isinstance(ctrl, control.PIDController)
        assert ctrl.elbow == static.ELBOW_UP
        ctrl = hybrid_spec('x0_d').build(down, p)
        assert isinstance(ctrl, control.HybridController)
        z0 = model.forward_kinematics(down, p).z_t
        assert ctrl.gains.reference(3.0)[0] == z0

    def test_unknown_kind(self):
        p = self.params
        state = bifurcation.preset_state('x0_d', p)
        try:
            pid_spec('x0_d')._replace(kind='bang-bang').build(state, p)
        except exception.ControlError:
            pass
        else:
            raise Exception("unknown controller type built")


class TestZtSliding(tests.PainleveTest):

    def test_all_targets_lift_off(self):
        p = self.params
        state = contact.manifold_state(0.178, p, static.ELBOW_DOWN)
        search = control.ZtSearch(ramp_rate=0.1, hold=0.05, tol=0.01)
        try:
            control.find_Zt_sliding(control.ControllerSpec.open_loop(),
                                    state, p, search, sim.SimConfig.default())
        except exception.AllTargetsLiftOff:
            pass
        else:
            raise Exception("inconsistent initial state could be held")

    def test_bounded_by_admissible_range(self):
        p = self.params
        state = bifurcation.preset_state('x0_d', p)
        search = control.ZtSearch(ramp_rate=0.2, hold=0.2, tol=0.05)
        z = control.find_Zt_sliding(hybrid_spec('x0_d'), state, p, search,
                                    sim.SimConfig.default())
        upper = contact.admissible_range(p, static.ELBOW_DOWN).upper
        z0 = model.forward_kinematics(state, p).z_t
        assert z0 <= z <= upper

    def test_search_covers_full_reach(self):
        p = self.params
        state = bifurcation.preset_state('x0_d', p)
        upper = contact.admissible_range(p, static.ELBOW_DOWN).upper
        limit = 0.5 * (upper + p.reach)

        class Run(object):
            def __init__(self, z_end):
                self.z_end = z_end

            def lifted_off(self):
                return self.z_end > limit

        def simulate(initial, controller, params, config):
            return Run(controller.gains.reference.z_end)

        search = control.ZtSearch(ramp_rate=0.2, hold=0.2, tol=1e-4)
        with mock.patch.object(sim, 'simulate', simulate):
            z = control.find_Zt_sliding(hybrid_spec('x0_d'), state, p,
                                        search, sim.SimConfig.default())
        assert upper < z <= limit
        assert limit - z <= 1e-4

    @pytest.mark.slow
    def test_pid_from_x0_d(self):
        p = self.params
        state = bifurcation.preset_state('x0_d', p)
        search = control.ZtSearch(ramp_rate=0.01, hold=10.0, tol=1e-3)
        z = control.find_Zt_sliding(pid_spec('x0_d'), state, p, search,
                                    sim.SimConfig.default())
        assert abs(z - 0.0375) <= 0.02
        assert z <= contact.admissible_range(p, static.ELBOW_DOWN).upper

    @pytest.mark.slow
    def test_pid_from_x0_u_lifts_off(self):
        p = self.params
        state = bifurcation.preset_state('x0_u', p)
        z0 = model.forward_kinematics(state, p).z_t
        spec = pid_spec('x0_u')._replace(profile='ramp', z_start=z0,
                                         z_end=0.0375, duration=20.0)
        config = sim.SimConfig.default(t_end=30.0, output_dt=0.1)
        traj = sim.simulate(state, spec.build(state, p), p, config)
        assert traj.lifted_off()

    @pytest.mark.slow
    def test_hybrid_beats_pid(self):
        p = self.params
        search = control.ZtSearch(ramp_rate=0.01, hold=10.0, tol=1e-3)
        expected = dict(x0_d=0.148, x0_u=0.163)
        for label in sorted(expected):
            state = bifurcation.preset_state(label, p)
            z = control.find_Zt_sliding(hybrid_spec(label), state, p, search,
                                        sim.SimConfig.default())
            assert abs(z - expected[label]) <= 0.02
            assert z > 0.0375
            elbow = static.PRESET_ELBOWS[label]
            assert z <= contact.admissible_range(p, elbow).upper
