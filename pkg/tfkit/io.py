"""Exposes readers and writers for signals and grids.

Three CSV formats are supported, each opening with a versioned header:

    # tfkit-signal v1, fs=<float>, t0=<float>
    # tfkit-tfgrid v1, n=<int>, fs=<float>[, kernel=..., energy=..., ...]
    # tfkit-ambgrid v1, n=<int>, fs=<float>, t0=<float>, f0=<float>

Each has a JSON twin carrying the same fields. Numbers are written so
they parse back to the identical doubles. Readers tell JSON from CSV by a
leading '{'.
"""

import io
import logging
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np
import orjson
from pydantic import ValidationError

from ._shared.grid import AmbGrid, TFGrid
from ._shared.utils import format_float, from_bytes_to_str, parse_header, to_json
from .errors import FormatError
from .signal import SampledSignal

logger = logging.getLogger(__name__)

VERSION = 1
SIGNAL_FORMAT = "tfkit-signal"
TFGRID_FORMAT = "tfkit-tfgrid"
AMBGRID_FORMAT = "tfkit-ambgrid"
FORMATS = ("csv", "json")

PathLike = Union[str, Path]


def format_signal(signal: SampledSignal, fmt: str = "csv") -> str:
    """Renders a signal in the given format ('csv' or 'json')."""
    if _check_format(fmt) == "json":
        return dump_json(
            {
                "format": SIGNAL_FORMAT,
                "version": VERSION,
                "sample_rate": signal.sample_rate,
                "t0": signal.t0,
                "re": np.ascontiguousarray(signal.samples.real),
                "im": np.ascontiguousarray(signal.samples.imag),
            }
        )

    header = (
        f"{SIGNAL_FORMAT} v{VERSION}, fs={format_float(signal.sample_rate)}, "
        f"t0={format_float(signal.t0)}"
    )
    return _csv(header, np.column_stack([signal.samples.real, signal.samples.imag]))


def parse_signal(text: Union[str, bytes]) -> SampledSignal:
    """Reads a signal from the text of a signal file.

    Raises:
        FormatError: if the text is not a valid signal file
    """
    text = from_bytes_to_str(text)
    try:
        if _is_json(text):
            data = _load(text, SIGNAL_FORMAT)
            samples = np.asarray(data["re"], dtype=float) + 1j * np.asarray(data["im"], dtype=float)
            return SampledSignal(samples=samples, sample_rate=data["sample_rate"], t0=data["t0"])

        header, rows = _split_csv(text, SIGNAL_FORMAT, extra_lines=0)
        table = _table(rows, columns=2)
        return SampledSignal(
            samples=table[:, 0] + 1j * table[:, 1],
            sample_rate=float(header["fs"]),
            t0=float(header["t0"]),
        )
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, ValidationError) as exp:
        raise FormatError(f"invalid {SIGNAL_FORMAT} file: {exp}")


def format_tfgrid(grid: TFGrid, fmt: str = "csv") -> str:
    """Renders a TF grid in the given format ('csv' or 'json')."""
    if _check_format(fmt) == "json":
        data = {
            "format": TFGRID_FORMAT,
            "version": VERSION,
            "n": grid.n,
            "sample_rate": grid.sample_rate,
            "kernel": grid.kernel,
            "energy": grid.energy,
            "time_marginal": grid.time_marginal,
            "freq_marginal": grid.freq_marginal,
            "t_axis": grid.t_axis,
            "f_axis": grid.f_axis,
        }
        data.update(_json_values(grid.values))
        return dump_json(data)

    header = (
        f"{TFGRID_FORMAT} v{VERSION}, n={grid.n}, fs={format_float(grid.sample_rate)}, "
        f"kernel={grid.kernel}, time_marginal={int(grid.time_marginal)}, "
        f"freq_marginal={int(grid.freq_marginal)}, complex={int(not grid.is_real)}"
    )
    if grid.energy is not None:
        header += f", energy={format_float(grid.energy)}"
    return _csv(header, _csv_values(grid.values), grid.t_axis, grid.f_axis)


def parse_tfgrid(text: Union[str, bytes]) -> TFGrid:
    """Reads a TF grid from the text of a grid file.

    Raises:
        FormatError: if the text is not a valid tfgrid file
    """
    text = from_bytes_to_str(text)
    try:
        if _is_json(text):
            data = _load(text, TFGRID_FORMAT)
            return TFGrid(
                values=_from_json_values(data),
                sample_rate=data["sample_rate"],
                t_axis=data["t_axis"],
                f_axis=data["f_axis"],
                energy=data.get("energy"),
                kernel=data.get("kernel", "wigner"),
                time_marginal=data.get("time_marginal", True),
                freq_marginal=data.get("freq_marginal", True),
            )

        header, rows = _split_csv(text, TFGRID_FORMAT, extra_lines=2)
        n = int(header["n"])
        is_complex = header.get("complex", "0") == "1"
        return TFGrid(
            values=_from_csv_values(_table(rows[2:], columns=2 * n if is_complex else n), is_complex),
            sample_rate=float(header["fs"]),
            t_axis=_line(rows[0]),
            f_axis=_line(rows[1]),
            energy=float(header["energy"]) if "energy" in header else None,
            kernel=header.get("kernel", "wigner"),
            time_marginal=header.get("time_marginal", "1") == "1",
            freq_marginal=header.get("freq_marginal", "1") == "1",
        )
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, ValidationError) as exp:
        raise FormatError(f"invalid {TFGRID_FORMAT} file: {exp}")


def format_ambgrid(grid: AmbGrid, fmt: str = "csv") -> str:
    """Renders an ambiguity grid in the given format ('csv' or 'json')."""
    if _check_format(fmt) == "json":
        data = {
            "format": AMBGRID_FORMAT,
            "version": VERSION,
            "n": grid.n,
            "sample_rate": grid.sample_rate,
            "t0": grid.t_origin,
            "f0": grid.f_origin,
            "tau_axis": grid.tau_axis,
            "nu_axis": grid.nu_axis,
        }
        data.update(_json_values(grid.values.astype(complex)))
        return dump_json(data)

    header = (
        f"{AMBGRID_FORMAT} v{VERSION}, n={grid.n}, fs={format_float(grid.sample_rate)}, "
        f"t0={format_float(grid.t_origin)}, f0={format_float(grid.f_origin)}"
    )
    return _csv(header, _csv_values(grid.values.astype(complex)), grid.tau_axis, grid.nu_axis)


def parse_ambgrid(text: Union[str, bytes]) -> AmbGrid:
    """Reads an ambiguity grid from the text of a grid file.

    Raises:
        FormatError: if the text is not a valid ambgrid file
    """
    text = from_bytes_to_str(text)
    try:
        if _is_json(text):
            data = _load(text, AMBGRID_FORMAT)
            return AmbGrid(
                values=_from_json_values(data),
                sample_rate=data["sample_rate"],
                tau_axis=data["tau_axis"],
                nu_axis=data["nu_axis"],
                t_origin=data["t0"],
                f_origin=data["f0"],
            )

        header, rows = _split_csv(text, AMBGRID_FORMAT, extra_lines=2)
        n = int(header["n"])
        return AmbGrid(
            values=_from_csv_values(_table(rows[2:], columns=2 * n), is_complex=True),
            sample_rate=float(header["fs"]),
            tau_axis=_line(rows[0]),
            nu_axis=_line(rows[1]),
            t_origin=float(header["t0"]),
            f_origin=float(header["f0"]),
        )
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, ValidationError) as exp:
        raise FormatError(f"invalid {AMBGRID_FORMAT} file: {exp}")


def write_signal(signal: SampledSignal, path: PathLike, fmt: str = "csv"):
    """Writes a signal file."""
    _write(path, format_signal(signal, fmt))


def read_signal(path: PathLike) -> SampledSignal:
    """Reads a signal file, CSV or JSON."""
    return parse_signal(_read(path))


def write_tfgrid(grid: TFGrid, path: PathLike, fmt: str = "csv"):
    """Writes a TF grid file."""
    _write(path, format_tfgrid(grid, fmt))


def read_tfgrid(path: PathLike) -> TFGrid:
    """Reads a TF grid file, CSV or JSON."""
    return parse_tfgrid(_read(path))


def write_ambgrid(grid: AmbGrid, path: PathLike, fmt: str = "csv"):
    """Writes an ambiguity grid file."""
    _write(path, format_ambgrid(grid, fmt))


def read_ambgrid(path: PathLike) -> AmbGrid:
    """Reads an ambiguity grid file, CSV or JSON."""
    return parse_ambgrid(_read(path))


def dump_json(data: Any) -> str:
    """Renders a report, a pydantic model or plain data as JSON text."""
    return from_bytes_to_str(to_json(data)) + "\n"


def _check_format(fmt: str) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}, expected one of {FORMATS}")
    return fmt


def _load(text: str, magic: str) -> Dict[str, Any]:
    data = orjson.loads(text)
    if not isinstance(data, dict) or data.get("format") != magic:
        raise FormatError(f"expected a {magic} document")
    if data.get("version") != VERSION:
        raise FormatError(f"unsupported {magic} version {data.get('version')!r}")
    return data


def _is_json(text: str) -> bool:
    return text.lstrip().startswith("{")


def _csv(header: str, table: np.ndarray, *axes: np.ndarray) -> str:
    buffer = io.StringIO()
    buffer.write(f"# {header}\n")
    for axis in axes:
        buffer.write(",".join(format_float(value) for value in axis) + "\n")
    np.savetxt(buffer, table, fmt="%.17g", delimiter=",")
    return buffer.getvalue()


def _split_csv(text: str, magic: str, extra_lines: int):
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise FormatError(f"empty {magic} file")
    try:
        header = parse_header(lines[0], magic)
    except ValueError as exp:
        raise FormatError(str(exp))
    if header["version"] != str(VERSION):
        raise FormatError(f"unsupported {magic} version v{header['version']}")
    if len(lines) < 1 + extra_lines:
        raise FormatError(f"truncated {magic} file")
    return header, lines[1:]


def _table(rows, columns: int) -> np.ndarray:
    table = np.loadtxt(io.StringIO("\n".join(rows)), delimiter=",", ndmin=2)
    if table.shape[1] != columns:
        raise FormatError(f"expected {columns} columns, got {table.shape[1]}")
    return table


def _line(row: str) -> np.ndarray:
    return np.array([float(value) for value in row.split(",")])


def _csv_values(values: np.ndarray) -> np.ndarray:
    if not np.iscomplexobj(values):
        return values
    # re, im interleaved along each row
    interleaved = np.empty((values.shape[0], 2 * values.shape[1]))
    interleaved[:, 0::2] = values.real
    interleaved[:, 1::2] = values.imag
    return interleaved


def _from_csv_values(table: np.ndarray, is_complex: bool) -> np.ndarray:
    if not is_complex:
        return table
    return table[:, 0::2] + 1j * table[:, 1::2]


def _json_values(values: np.ndarray) -> Dict[str, np.ndarray]:
    if not np.iscomplexobj(values):
        return {"values": np.ascontiguousarray(values)}
    return {
        "values_re": np.ascontiguousarray(values.real),
        "values_im": np.ascontiguousarray(values.imag),
    }


def _from_json_values(data: Dict[str, Any]) -> np.ndarray:
    if "values" in data:
        return np.asarray(data["values"], dtype=float)
    return np.asarray(data["values_re"], dtype=float) + 1j * np.asarray(data["values_im"], dtype=float)


def _write(path: PathLike, text: str):
    Path(path).write_text(text)
    logger.debug("wrote %s", path)


def _read(path: PathLike) -> str:
    try:
        return Path(path).read_text()
    except OSError as exp:
        raise FormatError(f"cannot read {path}: {exp}")
