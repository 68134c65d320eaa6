import re

import helpers


def _key(row):
    m = re.match(r"(\d+)(.*)", str(row[0]))
    return int(m.group(1)), m.group(2)


def pytest_terminal_summary(terminalreporter):
    if not helpers.ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed in sorted(helpers.ACCEPTANCE, key=_key):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {number}: {title}")
