# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

from painleve.commands.simulate import CmdSimulate
from painleve.commands.sweep import CmdSweep
from painleve.commands.poincare import CmdPoincare
from painleve.commands.regions import CmdRegions
from painleve.commands.admissible import CmdAdmissible
from painleve.commands.ztmax import CmdZtMax
from painleve.commands.validate import CmdValidate
from painleve.commands.help import CmdHelp

all_cmds = [
    CmdSimulate(),
    CmdSweep(),
    CmdPoincare(),
    CmdRegions(),
    CmdAdmissible(),
    CmdZtMax(),
    CmdValidate(),
    CmdHelp(),
]
