# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

import math

import numpy as np
import pytest

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


def fine_impulse(state, params, restitution, dp=1e-6):
    """
    Reference impact solution by explicit steps in the normal impulse. Steps
    are shortened to land on slip stop, the end of compression and the
    restitution target, so the tip velocity is exact up to rounding.
    """
    terms = model.eval_terms(state, params)
    Q, mu = terms.Q, params.mu
    v = terms.J.dot(state.qdot)
    impulse, tangential, target = 0.0, 0.0, None
    stuck = False
    while target is None or impulse < target:
        r = v[0] - params.v_belt
        lam = -mu * math.copysign(1.0, r)
        if stuck:
            lam = -Q[0, 1] / Q[0, 0]
            if abs(lam) > mu:
                lam = -mu * math.copysign(1.0, Q[0, 1])
                stuck = False
        rate = Q.dot([lam, 1.0])
        if stuck:
            rate[0] = 0.0
        limits = [(dp, None)]
        if target is not None:
            limits.append((target - impulse, 'restituted'))
        elif v[1] < 0 < rate[1]:
            limits.append((-v[1] / rate[1], 'compressed'))
        if not stuck and r * rate[0] < 0:
            limits.append((-r / rate[0], 'slip-stop'))
        step, kind = min(limits, key=lambda limit: limit[0])
        v = v + rate * step
        impulse += step
        tangential += lam * step
        if kind == 'slip-stop':
            v[0] = params.v_belt
            stuck = True
        elif kind == 'compressed':
            v[1] = 0.0
            target = (1.0 + restitution) * impulse
        elif kind == 'restituted':
            break
    qdot = state.qdot + terms.Minv.dot(terms.J.T.dot([tangential, impulse]))
    return impulse, qdot


class TestSimConfig(tests.PainleveTest):

    def test_defaults_valid(self):
        config = sim.SimConfig.default()
        assert config.restitution == 0.1
        assert config.iwc_restitution == 1.0
        assert config.stick_enabled

    def test_invalid_values(self):
        cases = [dict(rel_tol=0.0), dict(output_dt=-1.0),
                 dict(restitution=1.5), dict(iwc_restitution=-0.1),
                 dict(iwc_restitution=0.0), dict(t_end=-1.0),
                 dict(max_events=0)]
        for case in cases:
            try:
                sim.SimConfig.default(**case)
            except exception.RunValidationError:
                pass
            else:
                raise Exception("invalid sim config accepted: %s" % case)


class TestImpulse(tests.PainleveTest):

    def _falling(self, params):
        state = contact.contact_closure(math.radians(-11.4), 0.0, params)
        # theta2_dot > 0 drives the tip down into the belt here
        return state._replace(theta2_dot=1.0)

    def test_falling_state(self):
        state = self._falling(self.params)
        ee = model.forward_kinematics(state, self.params)
        assert ee.z_n_dot < 0
        assert abs(ee.gap) < 1e-12

    def test_plastic_impact(self):
        p = self.params
        result = sim.integrate_impulse(self._falling(p), p, 0.0, 1e3)
        ee = model.forward_kinematics(result.state, p)
        assert result.normal_impulse > 0
        assert abs(ee.z_n_dot) < 1e-10
        assert abs(result.normal_impulse - result.compression_impulse) < \
            1e-15

    def test_restitution_doubles_impulse(self):
        p = self.params
        result = sim.integrate_impulse(self._falling(p), p, 1.0, 1e3)
        ee = model.forward_kinematics(result.state, p)
        assert ee.z_n_dot > 0
        assert abs(result.normal_impulse -
                   2 * result.compression_impulse) < 1e-12

    def test_frictionless_has_no_tangential_impulse(self):
        params = self.params._replace(mu=0.0)
        result = sim.integrate_impulse(self._falling(params), params, 0.5,
                                       1e3)
        assert result.tangential_impulse == 0.0

    def test_against_fine_steps(self):
        p = self.params
        falling = self._falling(p)
        states = [falling, falling._replace(theta1_dot=-2.0),
                  falling._replace(theta1_dot=3.0, theta2_dot=4.0)]
        for state in states:
            assert model.forward_kinematics(state, p).z_n_dot < 0
            for restitution in (0.0, 0.5, 1.0):
                result = sim.integrate_impulse(state, p, restitution, 1e3)
                impulse, qdot = fine_impulse(state, p, restitution)
                assert abs(result.normal_impulse - impulse) < 1e-10
                assert np.allclose(result.state.qdot, qdot, rtol=0,
                                   atol=1e-8)

    def test_fine_steps_converge(self):
        p = self.params
        state = self._falling(p)
        result = sim.integrate_impulse(state, p, 0.5, 1e3)
        for dp in (1e-4, 1e-5, 1e-6):
            impulse, qdot = fine_impulse(state, p, 0.5, dp=dp)
            assert abs(result.normal_impulse - impulse) < 1e-10
            assert np.allclose(result.state.qdot, qdot, rtol=0, atol=1e-8)

    def test_separating_state_untouched(self):
        p = self.params
        state = self._falling(p)._replace(theta2_dot=-1.0)
        result = sim.integrate_impulse(state, p, 0.0, 1e3)
        assert result.normal_impulse == 0.0
        assert result.state == state

    def test_cap_exceeded(self):
        p = self.params
        try:
            sim.integrate_impulse(self._falling(p), p, 0.0, 1e-9)
        except exception.ImpulseNonTermination:
            pass
        else:
            raise Exception("impulse cap ignored")


class TestImpactWithoutCollision(tests.PainleveTest):

    def _inconsistent(self):
        return contact.manifold_state(0.178, self.params, static.ELBOW_DOWN)

    def test_state_is_inconsistent(self):
        cs = contact.classify_mode(self._inconsistent(), None, self.params)
        assert cs.mode == static.INCONSISTENT

    def test_impulse_lifts_tip(self):
        p = self.params
        state = self._inconsistent()
        result = sim.integrate_impulse(state, p, 1.0, 1e3, iwc=True)
        assert result.normal_impulse > 0
        assert model.forward_kinematics(result.state, p).z_n_dot > 0

    def test_plastic_iwc_rejected(self):
        p = self.params
        try:
            sim.integrate_impulse(self._inconsistent(), p, 0.0, 1e3, iwc=True)
        except exception.IWCNoLiftOff as e:
            assert e.msg.startswith("impact without collision")
        else:
            raise Exception("impact without collision left the tip on the "
                            "belt")

    def test_simulation_starts_with_iwc(self):
        p = self.params
        config = sim.SimConfig.default(t_end=0.02, output_dt=0.01)
        traj = sim.simulate(self._inconsistent(), control.OpenLoop(), p,
                            config)
        iwcs = [e for e in traj.events if e.kind == static.EV_IWC]
        assert iwcs and iwcs[0].t == 0.0
        for event in iwcs:
            assert model.forward_kinematics(event.post, p).z_n_dot > 0
        assert traj.lifted_off()


class TestTouchdown(tests.PainleveTest):

    def _engine(self, **kwargs):
        config = sim.SimConfig.default(t_end=0.1, **kwargs)
        return sim.HybridIntegrator(self.params, control.OpenLoop(), config)

    def _landing(self):
        """
        Falling state located by the touchdown event, TOL_CONTACT below the
        belt
        """
        state = model.State.from_degrees(30.0, 0.0, 30.0, 0.0)
        config = sim.SimConfig.default(t_end=2.0)
        traj, event = sim.step_flight(state, control.OpenLoop(), self.params,
                                      config)
        assert event.kind == static.EV_TOUCHDOWN
        return event.t, event.post

    def test_rebound_starts_on_belt(self):
        p = self.params
        t, state = self._landing()
        engine = self._engine(restitution=0.5)
        y = engine.start(t, state.as_array())
        after = model.forward_kinematics(engine._state(y), p)
        assert engine.phase == static.FLIGHT
        assert after.z_n_dot > static.TOL_REBOUND
        assert abs(after.gap) < 1e-12
        assert [e.kind for e in engine.traj.transitions] == \
            [static.EV_TOUCHDOWN]

    def test_slow_rebound_ends_in_contact(self):
        p = self.params
        state = contact.contact_closure(math.radians(-11.4), 0.0, p)
        state = state._replace(theta2_dot=1e-4)
        assert model.forward_kinematics(state, p).z_n_dot < 0
        engine = self._engine()
        y = engine.start(0.0, state.as_array())
        after = model.forward_kinematics(engine._state(y), p)
        assert engine.phase in (static.SLIDING, static.STICK)
        assert abs(after.gap) < 1e-12
        assert abs(after.z_n_dot) < 1e-12


class TestSimulate(tests.PainleveTest):

    def _run(self, t_end=0.3, **kwargs):
        config = sim.SimConfig.default(t_end=t_end, output_dt=0.01, **kwargs)
        state = bifurcation.preset_state('x0_d', self.params)
        return sim.simulate(state, control.OpenLoop(), self.params, config)

    def test_zero_duration(self):
        traj = self._run(t_end=0.0)
        assert len(traj) == 1
        assert traj.times == [0.0]
        assert traj.transitions == []
        assert traj.final_time == 0.0
        assert traj.contacts[0].mode == static.SLIDING

    def test_output_grid(self):
        traj = self._run()
        assert len(traj) == 31
        assert np.allclose(traj.array('t'), np.arange(31) * 0.01)
        assert traj.final_time == 0.3

    def test_complementarity(self):
        p = self.params
        traj = self._run()
        for ee, cs in zip(traj.end_effectors, traj.contacts):
            assert cs.f_n >= -1e-9
            assert abs(cs.f_n * ee.gap) <= 1e-8
            if cs.mode == static.FLIGHT:
                assert cs.f_n == 0.0
            if cs.mode == static.SLIDING and abs(cs.z_r_dot) > 1e-6:
                assert abs(cs.f_t + p.mu * math.copysign(1.0, cs.z_r_dot)
                           * cs.f_n) < 1e-9
            assert ee.gap > -static.DRIFT_FACTOR * static.TOL_CONTACT

    def test_deterministic(self):
        first, second = self._run(), self._run()
        assert first.events == second.events
        assert first.states == second.states

    def test_record_start(self):
        traj = self._run(record_start=0.2)
        assert len(traj) == 11
        assert abs(traj.times[0] - 0.2) < 1e-12

    def test_rows(self):
        traj = self._run(t_end=0.05)
        rows = list(traj.rows())
        assert len(rows) == len(traj)
        assert len(rows[0]) == len(static.TRAJECTORY_COLUMNS)
        assert abs(rows[0][1] + 11.4) < 1e-9

    def test_penetrating_initial_state(self):
        state = model.State.from_degrees(*static.PRESETS['x0_d'])
        config = sim.SimConfig.default(t_end=0.01)
        try:
            sim.simulate(state, control.OpenLoop(), self.params, config)
        except exception.ConstraintDriftExceeded:
            pass
        else:
            raise Exception("penetrating initial state accepted")


class TestSinglePhase(tests.PainleveTest):

    def test_flight_until_touchdown(self):
        p = self.params
        state = model.State.from_degrees(30.0, 0.0, 30.0, 0.0)
        assert model.forward_kinematics(state, p).gap > 0
        config = sim.SimConfig.default(t_end=2.0)
        traj, event = sim.step_flight(state, control.OpenLoop(), p, config)
        assert event.kind == static.EV_TOUCHDOWN
        gap = model.forward_kinematics(event.post, p).gap
        assert abs(gap + static.TOL_CONTACT) < 1e-7

    def test_sliding_requires_contact(self):
        p = self.params
        state = model.State.from_degrees(30.0, 0.0, 30.0, 0.0)
        config = sim.SimConfig.default(t_end=0.1)
        try:
            sim.step_sliding(state, control.OpenLoop(), p, config)
        except exception.SimulationError:
            pass
        else:
            raise Exception("sliding step accepted a state off the belt")

    def test_sliding_from_x0_d(self):
        p = self.params
        state = bifurcation.preset_state('x0_d', p)
        config = sim.SimConfig.default(t_end=0.05, output_dt=0.01)
        traj, event = sim.step_sliding(state, control.OpenLoop(), p, config)
        assert event.t > 0
        assert all(cs.mode == static.SLIDING for cs in traj.contacts)

    def test_stick_holds_belt_speed(self):
        p = self.params
        theta1 = math.radians(-11.4)
        unit = contact.contact_closure(theta1, 1.0, p)
        rate = model.forward_kinematics(unit, p).z_t_dot
        state = contact.contact_closure(theta1, p.v_belt / rate, p)
        config = sim.SimConfig.default(t_end=0.05, output_dt=0.01)
        traj, event = sim.step_stick(state, control.OpenLoop(), p, config)
        assert event.kind in (static.EV_LIFTOFF, static.EV_SLIP_ONSET,
                              static.EV_T_END)
        for cs in traj.contacts:
            assert cs.mode == static.STICK
            assert abs(cs.z_r_dot) < 1e-6


class TestFlightAccuracy(tests.PainleveTest):

    def _high(self):
        state = model.State.from_degrees(60.0, 0.0, 90.0, 0.0)
        assert model.forward_kinematics(state, self.params).gap > 0.2
        return state

    def _fly(self, state, params, **kwargs):
        config = sim.SimConfig.default(**kwargs)
        traj, event = sim.step_flight(state, control.OpenLoop(), params,
                                      config)
        assert event.kind == static.EV_T_END
        return event.post

    def test_tolerance_halving(self):
        p = self.params
        coarse = self._fly(self._high(), p, t_end=0.1)
        fine = self._fly(self._high(), p, t_end=0.1, rel_tol=5e-9,
                         abs_tol=5e-11)
        assert np.allclose(coarse, fine, rtol=1e-7, atol=1e-9)

    def test_time_reversal_without_damping(self):
        params = self.params._replace(sigma=0.0)
        start = self._high()
        there = self._fly(start, params, t_end=0.05)
        assert abs(there.theta1_dot) > 0.1
        back = self._fly(there._replace(theta1_dot=-there.theta1_dot,
                                        theta2_dot=-there.theta2_dot),
                         params, t_end=0.05)
        back = back._replace(theta1_dot=-back.theta1_dot,
                             theta2_dot=-back.theta2_dot)
        assert np.allclose(back, start, rtol=0, atol=1e-7)


class TestReferenceRuns(tests.PainleveTest):

    def _run(self, label, t_end):
        config = sim.SimConfig.default(t_end=t_end, output_dt=0.01)
        state = bifurcation.preset_state(label, self.params)
        return sim.simulate(state, control.OpenLoop(), self.params, config)

    def _lift_off_times(self, traj):
        return [e.t for e in traj.transitions
                if e.kind in static.LIFTOFF_EVENTS]

    def _check_iwc_lifts_tip(self, traj):
        for event in traj.events:
            if event.kind == static.EV_IWC:
                ee = model.forward_kinematics(event.post, self.params)
                assert ee.z_n_dot > 0

    def test_x0_d_settles_sliding(self):
        # the tip hops during the first half second, then slides for good
        traj = self._run('x0_d', 10.0)
        assert max(self._lift_off_times(traj), default=0.0) < 1.0
        assert traj.max_theta1_dot(8.0) < 1e-6
        assert traj.contacts[-1].mode == static.SLIDING
        assert abs(math.degrees(traj.final_state.theta1) + 17.43) < 0.05

    def test_x0_a_keeps_bouncing(self):
        traj = self._run('x0_a', 25.0)
        late = [e.kind for e in traj.transitions if e.t >= 15.0]
        assert static.EV_TOUCHDOWN in late
        assert set(late) & set(static.LIFTOFF_EVENTS)
        assert traj.max_theta1_dot(15.0) > 1e-6
        self._check_iwc_lifts_tip(traj)

    @pytest.mark.slow
    def test_x0_d_long_run(self):
        traj = self._run('x0_d', 300.0)
        assert max(self._lift_off_times(traj), default=0.0) < 1.0
        assert traj.max_theta1_dot(250.0) < 1e-6

    @pytest.mark.slow
    def test_x0_a_long_run(self):
        traj = self._run('x0_a', 300.0)
        assert [t for t in self._lift_off_times(traj) if t >= 250.0]
        assert traj.max_theta1_dot(250.0) > 1e-6
        self._check_iwc_lifts_tip(traj)
