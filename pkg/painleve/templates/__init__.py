# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

import jinja2

__all__ = [
    'config',
    'user_msgs',
]

_tmpl_loader = jinja2.Environment(
    loader=jinja2.PackageLoader('painleve', 'templates'),
    keep_trailing_newline=True)

get_template = _tmpl_loader.get_template
