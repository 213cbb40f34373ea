"""
CSV renderings of convergence reports and average tables.

Exact rationals print as "num/den" (integers as plain integers, so a zero
error is "0"); floats print as their shortest round-trip repr.
"""
import csv
from fractions import Fraction
import io

from densities.numerics import RealInterval

CONVERGENCE_HEADER = ('n', 'error_sup', 'error_lp', 'runtime_ms')


def format_number(value):
    if isinstance(value, RealInterval):
        return repr(value.mid)
    if isinstance(value, float):
        return repr(value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _writer():
    buffer = io.StringIO()
    return buffer, csv.writer(buffer, lineterminator='\n')


def format_convergence_csv(report):
    buffer, writer = _writer()
    writer.writerow(CONVERGENCE_HEADER)
    for row in report.rows:
        writer.writerow((row.n, format_number(row.error_sup), format_number(row.error_lp), row.runtime_ms))
    return buffer.getvalue()


def format_summary(report):
    """'# key=value' comment lines printed after the CSV."""
    lines = [f"# family={report.family}"]
    if report.approximate:
        lines.append("# approximate=true")
    for key, value in report.summary.items():
        text = str(value).lower() if isinstance(value, bool) else format_number(value)
        lines.append(f"# {key}={text}")
    return "\n".join(lines) + "\n"
