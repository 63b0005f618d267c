# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

"""
Artifact writers

Every file starts with a comment line naming the package version, the config
hash and the seed of the run that produced it. Files are written to a
temporary name and moved into place when complete.
"""
import csv
import json
import numbers

from painleve import utils
from painleve import static
from painleve.logger import log


def header(config_hash, seed):
    return '# painleve %s config_hash=%s seed=%s' % (static.VERSION,
                                                    config_hash, seed)


def format_value(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, numbers.Integral):
        return str(value)
    if isinstance(value, numbers.Real):
        return utils.fmt_float(float(value))
    return str(value)


def write_csv(path, columns, rows, config_hash, seed):
    """
    Writes rows under the given column names. Floats are written with 17
    significant digits. Returns the number of rows written.
    """
    count = 0
    with utils.atomic_write(path) as fp:
        fp.write(header(config_hash, seed) + '\n')
        writer = csv.writer(fp, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
            count += 1
    log.info("Wrote %d rows to %s" % (count, path))
    return count


def write_jsonl(path, records, config_hash, seed):
    """
    One JSON object per line with sorted keys. Floats keep their repr so
    that reruns give byte-identical files.
    """
    count = 0
    with utils.atomic_write(path) as fp:
        fp.write(header(config_hash, seed) + '\n')
        for record in records:
            fp.write(json.dumps(record, sort_keys=True) + '\n')
            count += 1
    log.info("Wrote %d records to %s" % (count, path))
    return count


def dumps(obj):
    """
    Pretty JSON for results printed on stdout
    """
    return json.dumps(obj, sort_keys=True, indent=2)
