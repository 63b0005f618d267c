# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

"""
painleve Command Line Interface:

painleve [global-opts] action [action-opts] [<action-args> ...]
"""
import os
import sys
import json
import signal
import optparse
import platform

from painleve import config
from painleve import static
from painleve import logger
from painleve import commands
from painleve import exception
from painleve.logger import log, console
from painleve.templates import user_msgs
from painleve import __version__

__description__ = """
painleve (v. %s)
Event-driven simulation of the Painleve paradox in a two-link arm sliding on
a moving belt
""" % __version__

VALIDATION_ERRORS = (exception.ConfigError, exception.ValidationError)
SIMULATION_ERRORS = (exception.SimulationError, exception.ControlError,
                     exception.ModelError, exception.ContactError)


def _write_error(e):
    sys.stderr.write(json.dumps(e.as_dict(), sort_keys=True) + '\n')


class PainleveCLI(object):
    """
    painleve Command Line Interface
    """
    def __init__(self):
        self._gparser = None
        self.subcmds_map = {}

    @property
    def gparser(self):
        if not self._gparser:
            self._gparser = self.create_global_parser()
        return self._gparser

    def print_header(self):
        sys.stderr.write(__description__.replace('\n', '', 1))

    def parse_subcommands(self, argv=None, gparser=None):
        """
        Parse global arguments, find subcommand from list of subcommand
        objects, parse local subcommand arguments and return a tuple of
        global options, selected command object, command options, and
        command arguments.

        Call execute() on the command object to run. The command object has
        members 'gopts' and 'opts' set for global and command options
        respectively.
        """
        gparser = gparser or self.gparser
        gopts, args = gparser.parse_args(argv)
        if not args:
            gparser.print_help()
            raise SystemExit("\nError: you must specify an action.")
        if gopts.DEBUG:
            console.setLevel(logger.DEBUG)
            config.DEBUG_CONFIG = True
        subcmdname, subargs = args[0], args[1:]
        try:
            sc = self.subcmds_map[subcmdname]
        except KeyError:
            raise SystemExit("Error: invalid command '%s'" % subcmdname)
        lparser = optparse.OptionParser(sc.__doc__.strip())
        sc.gopts = gopts
        sc.parser = lparser
        sc.gparser = gparser
        sc.subcmds_map = self.subcmds_map
        sc.addopts(lparser)
        sc.opts, subsubargs = lparser.parse_args(subargs)
        return gopts, sc, sc.opts, subsubargs

    def create_global_parser(self, subcmds=None, no_usage=False,
                             add_help=True):
        if no_usage:
            gparser = optparse.OptionParser(usage=optparse.SUPPRESS_USAGE,
                                            add_help_option=add_help)
        else:
            gparser = optparse.OptionParser(__doc__.strip(),
                                            version=__version__,
                                            add_help_option=add_help)
            cmds_header = 'Available Commands:'
            gparser.usage += '\n\n%s\n' % cmds_header
            gparser.usage += '%s\n' % ('-' * len(cmds_header))
            gparser.usage += "NOTE: Pass --help to any command for a list of "
            gparser.usage += 'its options and detailed usage information\n\n'
            subcmds = subcmds or commands.all_cmds
            for sc in subcmds:
                helptxt = sc.__doc__.splitlines()[3].strip()
                gparser.usage += '- %s: %s\n' % (', '.join(sc.names), helptxt)
                for n in sc.names:
                    assert n not in self.subcmds_map
                    self.subcmds_map[n] = sc
        gparser.add_option("-d", "--debug", dest="DEBUG",
                           action="store_true", default=False,
                           help="print debug messages (useful for "
                           "diagnosing problems)")
        gparser.add_option("-c", "--config", dest="CONFIG", action="store",
                           metavar="FILE",
                           help="use alternate config file (default: %s)" %
                           static.PAINLEVE_CFG_FILE)
        gparser.add_option("-s", "--set", dest="SET", action="append",
                           metavar="SECTION.KEY=VALUE", default=[],
                           help="override a config setting (repeatable)")
        gparser.add_option("-j", "--jobs", dest="JOBS", action="store",
                           type="int", default=1,
                           help="number of parallel simulations in sweeps "
                           "(default: 1)")
        gparser.add_option("-o", "--out", dest="OUT", action="store",
                           metavar="DIR", default=None,
                           help="directory for output files (overrides "
                           "[output] directory)")
        gparser.add_option("--seed", dest="SEED", action="store",
                           type="int", default=None,
                           help="seed for random initial conditions "
                           "(overrides [global] seed)")
        gparser.disable_interspersed_args()
        return gparser

    def __write_module_version(self, modname, fp):
        """
        Write module version information to a file
        """
        try:
            mod = __import__(modname)
            fp.write("%s: %s\n" % (mod.__name__, mod.__version__))
        except Exception as e:
            fp.write("error getting version for '%s' module: %s\n" %
                     (modname, e))

    def bug_found(self):
        """
        Builds a crash-report when painleve encounters an unhandled
        exception. Report includes system info, python version, dependency
        versions, and a full debug log and stack-trace of the crash.
        """
        dashes = '-' * 10
        header = dashes + ' %s ' + dashes + '\n'
        argv = sys.argv[:]
        argv[0] = os.path.basename(argv[0])
        argv = ' '.join(argv)
        static.create_painleve_config_dirs()
        with open(static.CRASH_FILE, 'w') as crashfile:
            crashfile.write(header % "SYSTEM INFO")
            crashfile.write("painleve: %s\n" % __version__)
            crashfile.write("Python: %s\n" % sys.version.replace('\n', ' '))
            crashfile.write("Platform: %s\n" % platform.platform())
            for dep in ['numpy', 'scipy', 'jinja2', 'tqdm']:
                self.__write_module_version(dep, crashfile)
            crashfile.write("\n" + header % "CRASH DETAILS")
            crashfile.write('Command: %s\n\n' % argv)
            for line in logger.get_session_log():
                crashfile.write(line)
        log.error(user_msgs.crash_report % dict(crash_file=static.CRASH_FILE),
                  extra=dict(__textwrap__=True))
        return static.EXIT_CRASH

    def run(self, argv=None):
        """
        Parses argv, runs the selected command and returns the exit status
        """
        gopts, sc, opts, args = self.parse_subcommands(argv)
        if args and args[0] == 'help':
            sc.parser.print_help()
            return static.EXIT_OK
        try:
            if sc.needs_config:
                sc.cfg = sc.load_config()
            sc.execute(args)
        except exception.ConfigNotFound as e:
            log.error(e.msg)
            e.display_options()
            _write_error(e)
            return static.EXIT_VALIDATION
        except VALIDATION_ERRORS as e:
            log.error(e.msg, extra={'__textwrap__': True})
            _write_error(e)
            return static.EXIT_VALIDATION
        except SIMULATION_ERRORS as e:
            log.error(str(e), extra={'__textwrap__': True})
            log.debug(e.explain(), exc_info=True)
            _write_error(e)
            return static.EXIT_SIMULATION
        except exception.ThreadPoolException as e:
            log.error(e.format_excs())
            _write_error(e)
            return static.EXIT_SIMULATION
        except SystemExit:
            # re-raise SystemExit to avoid the bug-catcher below
            raise
        except Exception:
            log.error("Unhandled exception occured", exc_info=True)
            return self.bug_found()
        return static.EXIT_OK

    def main(self, argv=None):
        """
        painleve main
        """
        self.print_header()
        sys.exit(self.run(argv))


def sigterm_handler(signum, stack_frame):
    log.info("Received SIGTERM")
    sys.exit(signal.SIGTERM + 128)


def main():
    signal.signal(signal.SIGTERM, sigterm_handler)
    try:
        static.create_painleve_config_dirs()
        logger.configure_painleve_logging()
        PainleveCLI().main()
    except KeyboardInterrupt:
        print("Interrupted, exiting.")
        sys.exit(1)


if __name__ == '__main__':
    main()
