"""Experiment config files and the results CSV schema.

Config files are INI text with one section per experiment::

    [scenario]
    M = 3
    N = 2
    J = 4
    alpha = 0.5
    snr_exponents = 6, 7.5, 9, 10.5, 12
    trials = 200
    seed = 2024

    [simulate]
    M = 2, 3, 4
    alpha = 0, 0.5, 1
    schemes = SRS, ZF

Integer lists accept ranges such as ``1..8``.
"""

import configparser
import csv
import io
from dataclasses import astuple, dataclass, fields

__all__ = (
    "SCHEMA_TAG",
    "CSV_COLUMNS",
    "ConfigError",
    "ExperimentResultRow",
    "load_config",
    "parse_int_list",
    "parse_float_list",
    "parse_str_list",
    "format_results_csv",
    "write_results_csv",
    "read_results_csv",
)

SCHEMA_TAG = "# srs-sdof-results v1"
CSV_COLUMNS = (
    "scheme", "M", "N", "J", "K", "alpha", "formula",
    "slope", "leak_slope", "stderr", "trials", "seed",
)


class ConfigError(ValueError):
    """Invalid or incomplete experiment configuration."""


@dataclass(frozen=True)
class ExperimentResultRow:
    scheme: str
    M: int
    N: int
    J: int | None
    K: int | None
    alpha: float
    formula: float
    slope: float | None = None
    leak_slope: float | None = None
    stderr: float | None = None
    trials: int = 0
    seed: int = 0


_CASTS = {
    "scheme": str, "M": int, "N": int, "J": int, "K": int, "alpha": float,
    "formula": float, "slope": float, "leak_slope": float, "stderr": float,
    "trials": int, "seed": int,
}
_OPTIONAL = {"J", "K", "slope", "leak_slope", "stderr"}


def load_config(path):
    """Read an INI config; a missing path yields an empty config."""
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    cp.optionxform = str  # keep M and N distinct from m and n
    if path is not None:
        try:
            with open(path) as fh:
                cp.read_file(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except configparser.Error as exc:
            raise ConfigError(f"malformed config {path}: {exc}") from exc
    return cp


def parse_int_list(text):
    """``"1..8"`` or ``"2, 3, 4"`` (ranges may be mixed in) to a list of ints."""
    out = []
    for tok in str(text).replace(" ", "").split(","):
        if not tok:
            continue
        try:
            if ".." in tok:
                lo, hi = tok.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(tok))
        except ValueError as exc:
            raise ConfigError(f"bad integer list {text!r}") from exc
    if not out:
        raise ConfigError(f"empty list {text!r}")
    return out


def parse_float_list(text):
    try:
        out = [float(t) for t in str(text).split(",") if t.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad number list {text!r}") from exc
    if not out:
        raise ConfigError(f"empty list {text!r}")
    return out


def parse_str_list(text):
    return [t.strip() for t in str(text).split(",") if t.strip()]


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_results_csv(rows):
    buf = io.StringIO()
    buf.write(SCHEMA_TAG + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow([_fmt(v) for v in astuple(row)])
    return buf.getvalue()


def write_results_csv(rows, path):
    text = format_results_csv(rows)
    with open(path, "w", newline="") as fh:
        fh.write(text)
    return text


def read_results_csv(path, required=CSV_COLUMNS):
    """Parse a results CSV back into :class:`ExperimentResultRow` objects.

    Raises :class:`ConfigError` when a required column is missing.
    """
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    header = reader.fieldnames or []
    missing = [c for c in required if c not in header]
    if missing:
        raise ConfigError(f"{path}: missing columns {missing}")
    rows = []
    for rec in reader:
        kw = {}
        for f in fields(ExperimentResultRow):
            raw = (rec.get(f.name) or "").strip()
            if raw == "" and (f.name in _OPTIONAL or f.name not in required):
                kw[f.name] = None if f.name in _OPTIONAL else f.default
                continue
            try:
                kw[f.name] = _CASTS[f.name](raw)
            except ValueError as exc:
                raise ConfigError(f"{path}: bad {f.name} value {raw!r}") from exc
        rows.append(ExperimentResultRow(**kw))
    return rows
