# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

import os
import math
import collections
import configparser

from painleve import sim
from painleve import model
from painleve import utils
from painleve import static
from painleve import contact
from painleve import control
from painleve import exception
from painleve import bifurcation
from painleve.utils import AttributeDict
from painleve.templates import config as config_template

from painleve.logger import log

DEBUG_CONFIG = False

# presets further than this from the belt are not projected (m)
PROJECT_GAP_LIMIT = 1e-3

Scenario = collections.namedtuple('Scenario',
                                  'label raw state elbow projected')


def get_config(config_file=None, overrides=None):
    """Factory for PainleveConfig"""
    return PainleveConfig(config_file, overrides).load()


class PainleveConfig(object):
    """
    Loads painleve run settings defined in config_file which defaults to
    ~/.painleve/config. When no config file is given and the default does
    not exist the built-in template (the standard arm, belt and x0_d) is
    used.

    Settings are available as follows:

    cfg = PainleveConfig('/path/to/run.cfg', overrides=['robot.mu=0.3'])
    cfg.load()
    mu = cfg.robot.mu
    params = cfg.robot_params()
    """

    sections = static.SECTIONS

    def __init__(self, config_file=None, overrides=None, seed=None,
                 output_dir=None):
        self.cfg_file = config_file \
            or os.environ.get('PAINLEVE_CONFIG') \
            or static.PAINLEVE_CFG_FILE
        self.cfg_file = os.path.expandvars(os.path.expanduser(self.cfg_file))
        self.use_template = config_file is None and \
            not os.path.exists(self.cfg_file)
        self.overrides = overrides or []
        self.seed_override = seed
        self.output_override = output_dir
        self.type_validators = {
            int: self._get_int,
            float: self._get_float,
            str: self._get_string,
            bool: self._get_bool,
            list: self._get_list,
        }
        self._config = None
        self.settings = AttributeDict()

    def __repr__(self):
        if self.use_template:
            return "<PainleveConfig: built-in template>"
        return "<PainleveConfig: %s>" % self.cfg_file

    def __getattr__(self, name):
        settings = self.__dict__.get('settings', {})
        if name in settings:
            return settings[name]
        raise AttributeError(name)

    def _get_fp(self, cfg_file):
        log.debug("Loading file: %s" % cfg_file)
        if os.path.exists(cfg_file):
            if not os.path.isfile(cfg_file):
                raise exception.ConfigError(
                    'config %s exists but is not a regular file' % cfg_file)
        else:
            raise exception.ConfigNotFound("config file %s does not exist\n" %
                                           cfg_file, cfg_file)
        return open(cfg_file)

    def _get_bool(self, config, section, option):
        try:
            return config.getboolean(section, option)
        except (configparser.NoSectionError, configparser.NoOptionError):
            pass
        except ValueError:
            raise exception.ConfigError(
                "Expected True/False value for setting %s in section [%s]" %
                (option, section))

    def _get_int(self, config, section, option):
        try:
            return config.getint(section, option)
        except (configparser.NoSectionError, configparser.NoOptionError):
            pass
        except ValueError:
            raise exception.ConfigError(
                "Expected integer value for setting %s in section [%s]" %
                (option, section))

    def _get_float(self, config, section, option):
        try:
            value = config.getfloat(section, option)
        except (configparser.NoSectionError, configparser.NoOptionError):
            return None
        except ValueError:
            raise exception.ConfigError(
                "Expected float value for setting %s in section [%s]" %
                (option, section))
        if not math.isfinite(value):
            raise exception.ConfigError(
                "Expected finite value for setting %s in section [%s]" %
                (option, section))
        return value

    def _get_string(self, config, section, option):
        try:
            return config.get(section, option)
        except (configparser.NoSectionError, configparser.NoOptionError):
            pass

    def _get_list(self, config, section, option):
        val = self._get_string(config, section, option)
        if val:
            val = [v.strip() for v in val.split(',') if v.strip()]
        return val

    def _apply_overrides(self, cp):
        for override in self.overrides:
            key, sep, value = override.partition('=')
            section, dot, option = key.strip().partition('.')
            if not (sep and dot and section and option):
                raise exception.ConfigError(
                    "override '%s' must look like section.key=value" %
                    override)
            if not cp.has_section(section):
                cp.add_section(section)
            log.debug("override [%s] %s = %s" % (section, option, value))
            cp.set(section, option, value.strip())

    def __load_config(self):
        """
        Populates self._config with a new ConfigParser instance
        """
        cp = InlineCommentsIgnoredConfigParser()
        try:
            if self.use_template:
                log.debug("Loading built-in config template")
                cp.read_string(config_template.config_template, '<template>')
            else:
                with self._get_fp(self.cfg_file) as fp:
                    cp.read_file(fp)
        except configparser.MissingSectionHeaderError:
            raise exception.ConfigHasNoSections(self.cfg_file)
        except configparser.Error as e:
            raise exception.ConfigError(str(e))
        self._apply_overrides(cp)
        return cp

    @property
    def config(self):
        if self._config is None:
            self._config = self.__load_config()
        return self._config

    def _load_settings(self, section_name, settings, store):
        """
        Load section settings into a dictionary
        """
        if not self.config.has_section(section_name):
            raise exception.ConfigSectionMissing(
                'Missing section %s in config' % section_name)
        for option in self.config.options(section_name):
            if option not in settings:
                log.warning("unknown setting %s in section [%s] ignored" %
                            (option, section_name))
        for setting in settings:
            func, required, default, options, callback = settings[setting]
            func = self.type_validators.get(func)
            value = func(self.config, section_name, setting)
            if value is not None:
                if options and value not in options:
                    raise exception.ConfigError(
                        '"%s" setting in section "%s" must be one of: %s' %
                        (setting, section_name,
                         ', '.join([str(o) for o in options])))
                if callback:
                    value = callback(value)
                store[setting] = value

    def _check_required(self, section_name, settings, store):
        """
        Check that all required settings were specified in the config.
        Raises ConfigError otherwise.

        A required setting must have None as its default.
        """
        for setting in settings:
            required = settings[setting][1]
            if store.get(setting) is None and required:
                raise exception.ConfigError(
                    'missing required option %s in section "%s"' %
                    (setting, section_name))

    def _load_defaults(self, settings, store):
        """
        Sets the default for each setting in settings not specified in the
        config
        """
        for setting in settings:
            default = settings[setting][2]
            if store.get(setting) is None:
                if DEBUG_CONFIG:
                    log.debug('%s setting not specified. Defaulting to %s' %
                              (setting, default))
                store[setting] = default

    def _load_section(self, section_name, section_settings):
        """
        Returns a dictionary containing all section_settings for a given
        section_name by first loading the settings in the config, loading
        the defaults for all settings not specified, and then checking
        that all required options have been specified
        """
        store = AttributeDict()
        try:
            self._load_settings(section_name, section_settings, store)
        except exception.ConfigSectionMissing:
            if section_name in static.REQUIRED_SECTIONS:
                raise exception.ConfigError(
                    'missing required section [%s]' % section_name)
        self._load_defaults(section_settings, store)
        self._check_required(section_name, section_settings, store)
        return store

    def load(self):
        """
        Populate this config object from the painleve config
        """
        log.debug('Loading config')
        for name in self.config.sections():
            if name not in dict(self.sections):
                log.warning("unknown section [%s] ignored" % name)
        for name, settings in self.sections:
            self.settings[name] = self._load_section(name, settings)
        if self.seed_override is not None:
            self.settings['global']['seed'] = self.seed_override
        if self.output_override is not None:
            self.settings.output['directory'] = self.output_override
        return self

    @property
    def seed(self):
        return self.settings['global'].seed

    @property
    def config_hash(self):
        return utils.config_hash(self.settings)

    def output_path(self, suffix):
        out = self.settings.output
        return os.path.join(os.path.expanduser(out.directory),
                            '%s-%s' % (out.prefix, suffix))

    def robot_params(self):
        r = self.settings.robot
        alpha0 = r.alpha0
        if r.alpha0_units == static.DEGREES:
            alpha0 = math.radians(alpha0)
        params = model.RobotParams(m=r.m, l=r.l, sigma=r.sigma, k=r.k,
                                   H=r.h, alpha0=alpha0, mu=r.mu,
                                   v_belt=r.v_belt, g=r.g)
        try:
            return params.validate()
        except exception.ModelError as e:
            raise exception.RunValidationError("[robot] %s" % e.msg)

    def sim_config(self):
        return sim.SimConfig.from_config(self.settings.sim)

    def controller_spec(self):
        label = self.settings.scenario.initial
        spec = control.ControllerSpec.from_config(self.settings.controller,
                                                  preset=label)
        if spec.kind == static.HYBRID_CONTROL and not spec.hybrid[
                'fn_ref'] > 0:
            raise exception.RunValidationError(
                "[controller] fn_ref must be > 0 for the hybrid controller")
        if spec.profile in (static.PROFILE_RAMP, static.PROFILE_SMOOTHSTEP) \
                and not spec.duration > 0:
            raise exception.RunValidationError(
                "[controller] duration must be > 0 for a %s profile" %
                spec.profile)
        return spec

    def initial_scenario(self, params=None):
        """
        Initial state of the run. Presets and explicit states close to the
        belt are put exactly on the contact manifold when [scenario] project
        is set.
        """
        sc = self.settings.scenario
        params = params or self.robot_params()
        if sc.initial == static.EXPLICIT:
            for key in ('theta1', 'theta2'):
                if sc.get(key) is None:
                    raise exception.ConfigError(
                        'missing required option %s in section "scenario"' %
                        key)
            values = (sc.theta1, sc.theta1_dot, sc.theta2, sc.theta2_dot)
            if sc.units == static.DEGREES:
                raw = model.State.from_degrees(*values)
            else:
                raw = model.State(*values)
            elbow = model.elbow_of(raw)
        else:
            raw = model.State.from_degrees(*static.PRESETS[sc.initial])
            elbow = static.PRESET_ELBOWS[sc.initial]
        state, projected = raw, False
        gap = model.forward_kinematics(raw, params).gap
        if sc.project and abs(gap) <= PROJECT_GAP_LIMIT:
            try:
                state = contact.project_to_manifold(raw, params)
                projected = True
            except exception.ContactError as e:
                log.warning("initial state not projected: %s" % e)
        return Scenario(sc.initial, raw, state, elbow, projected)

    def sweep_spec(self):
        return bifurcation.SweepSpec.from_config(
            self.settings.sweep, self.controller_spec(), self.seed)

    def ztmax_search(self):
        z = self.settings.ztmax
        for key in ('ramp_rate', 'hold', 'tol'):
            if not z[key] > 0:
                raise exception.RunValidationError(
                    "[ztmax] %s must be > 0" % key)
        return control.ZtSearch(z.ramp_rate, z.hold, z.tol)


class InlineCommentsIgnoredConfigParser(configparser.ConfigParser):
    """
    ConfigParser that ignores inline comments introduced by '#' or ';'. A
    whitespace character must precede the comment marker:

        MU = 0.6 # some comment...

    is parsed as:

        MU = 0.6

    Values are taken literally (no % interpolation).
    """
    def __init__(self):
        configparser.ConfigParser.__init__(
            self, inline_comment_prefixes=('#', ';'), interpolation=None)
