"""Tokenizer for the ``key=value`` text records used by descriptors and the CLI."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Union

from .gauge import Gauge, parse_gauge

GAUGE_HEADS = ("powerlog", "tabulated")
POWERLOG_KEYS = ("s", "t", "c0")


class ParseError(ValueError):
    pass


def split_record(tokens: Union[str, Sequence[str]]) -> Dict[str, Union[str, Gauge]]:
    """Split tokens into fields; a gauge-valued field swallows its own
    ``s=/t=/c0=`` (powerlog) or sample-list (tabulated) tokens."""
    toks: List[str] = tokens.split() if isinstance(tokens, str) else list(tokens)
    out: Dict[str, Union[str, Gauge]] = {}
    i = 0
    while i < len(toks):
        key, sep, val = toks[i].partition("=")
        if not sep:
            raise ParseError(f"expected key=value, got {toks[i]!r}")
        i += 1
        if val.lower() in GAUGE_HEADS:
            sub = [val.lower()]
            if val.lower() == "powerlog":
                while i < len(toks) and toks[i].partition("=")[0] in POWERLOG_KEYS:
                    sub.append(toks[i])
                    i += 1
            else:
                while i < len(toks) and "=" not in toks[i]:
                    sub.append(toks[i])
                    i += 1
            try:
                out[key] = parse_gauge(sub)
            except ValueError as exc:
                raise ParseError(str(exc)) from exc
        else:
            out[key] = val
    return out


def rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational: {text!r}") from exc


def integer(text: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise ParseError(f"not an integer: {text!r}") from exc


def rat_vector(text: str) -> tuple:
    return tuple(rat(p) for p in text.split(",") if p != "")


def int_vector(text: str) -> tuple:
    return tuple(integer(p) for p in text.split(",") if p != "")
