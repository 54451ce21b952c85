#!/usr/bin/env python
"""csvout.py - Versioned CSV output

Rows start with a ``schema`` column naming the table and its version, e.g.
``states-sweep/1``. Floats are written with 17 significant digits so the
values read back bit-identical; files use LF line endings and UTF-8.
"""
import csv
import io
import numbers

from reluinit import config


def schema_tag(table):
    return '{0}/{1}'.format(table, config.CSV_SCHEMA_VERSION)


def format_value(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return config.CSV_FLOAT_FORMAT % float(value)
    return str(value)


class CsvTable(object):
    """Rows of one output table

    :param str table: table name written in the schema column
    :param list columns: column names after the schema column
    """
    def __init__(self, table, columns):
        self._table = table
        self._columns = list(columns)
        self._rows = []

    @property
    def columns(self):
        return ['schema'] + self._columns

    @property
    def rows(self):
        return list(self._rows)

    def add(self, **values):
        missing = [c for c in self._columns if c not in values]
        extra = [k for k in values if k not in self._columns]
        if missing or extra:
            raise ValueError('row for {0} has missing {1} / unknown {2} '
                             'columns'.format(self._table, missing, extra))
        self._rows.append([values[c] for c in self._columns])

    def extend(self, rows):
        for row in rows:
            self.add(**row)

    def __len__(self):
        return len(self._rows)

    def render(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator='\n')
        writer.writerow(self.columns)
        tag = schema_tag(self._table)
        for row in self._rows:
            writer.writerow([tag] + [format_value(v) for v in row])
        return buf.getvalue()

    def write(self, path):
        with io.open(path, 'w', encoding='utf-8', newline='') as fd:
            fd.write(self.render())
