"""Exposes common utilities for the file formats.

"""

from typing import Any, Dict, Union

import numpy as np
import orjson

JSON_OPTIONS = orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_INDENT_2


def strip_leading(word: str, substring: str) -> str:
    """Strips the leading substring if it exists.

    This is contrary to lstrip which removes each character in the substring

    Args:
        word: the string to strip from
        substring: the string to be stripped from the word.

    Returns:
        the stripped word
    """
    if word.startswith(substring):
        return word[len(substring) :]
    return word


def format_float(value: Any) -> str:
    """Renders a real number with 17 significant digits.

    17 digits are enough for the text to parse back to the identical double.

    Args:
        value: anything `float()` accepts, numpy scalars included

    Returns:
        the decimal representation
    """
    return format(float(value), ".17g")


def parse_header(line: str, magic: str) -> Dict[str, str]:
    """Parses a `# <magic> v<version>, key=value, ...` header line.

    Args:
        line: the first line of the file
        magic: the expected format name e.g. 'tfkit-signal'

    Returns:
        the key-value pairs of the header, with the version under 'version'

    Raises:
        ValueError: if the line is not a header for `magic`
    """
    body = strip_leading(line.strip(), "#").strip()
    head, *pairs = [part.strip() for part in body.split(",")]
    name, _, version = head.partition(" ")
    if name != magic or not version.startswith("v"):
        raise ValueError(f"expected a '{magic}' header, got {line.strip()!r}")

    parsed = {"version": version[1:]}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep:
            raise ValueError(f"malformed header entry {pair!r}")
        parsed[key.strip()] = value.strip()
    return parsed


def from_bytes_to_str(value: Union[str, bytes]) -> str:
    """Converts bytes to str.

    Args:
        value: the potentially bytes object to transform.

    Returns:
        the string value of the argument passed
    """
    try:
        return str(value, "utf-8")
    except TypeError:
        return value


def default_json_dump(obj: Any):
    """Serializes objects orjson cannot serialize.

    Args:
        obj: the object to serialize

    Returns:
        a serializable version of the object
    """
    try:
        return obj.model_dump(mode="json", by_alias=True)
    except AttributeError:
        pass
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(data: Any) -> bytes:
    """Dumps data, numpy arrays and pydantic models included, as JSON bytes.

    Scalar floats are written with 17 significant digits. Array elements keep
    orjson's shortest round-trip form, which parses back to the same doubles.
    """
    return orjson.dumps(with_fixed_digits(data), default=default_json_dump, option=JSON_OPTIONS)


def with_fixed_digits(data: Any) -> Any:
    """Replaces the finite scalar floats in nested dicts and lists with 17-digit JSON fragments.

    Pydantic models are dumped first. Arrays and non-finite floats are left as they are.

    Args:
        data: the data to be dumped

    Returns:
        the same structure, ready for `orjson.dumps`
    """
    if hasattr(data, "model_dump"):
        data = data.model_dump(mode="json", by_alias=True)
    if isinstance(data, dict):
        return {key: with_fixed_digits(value) for key, value in data.items()}
    if isinstance(data, (list, tuple)):
        return [with_fixed_digits(value) for value in data]
    if isinstance(data, (float, np.floating)) and np.isfinite(data):
        text = format_float(data)
        if not any(mark in text for mark in ".e"):
            text += ".0"
        return orjson.Fragment(text)
    return data
