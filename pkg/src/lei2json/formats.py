"""Lexical checks for the supported string formats."""

from __future__ import annotations

import datetime as _dt
import re

SUPPORTED_FORMATS = ("date-time", "date", "email")

_DATE_RE = re.compile(r"(\d{4})-(\d{2})-(\d{2})", re.ASCII)
_DATE_TIME_RE = re.compile(
    r"(\d{4})-(\d{2})-(\d{2})[Tt](\d{2}):(\d{2}):(\d{2})(\.\d+)?"
    r"([Zz]|[+-](\d{2}):(\d{2}))", re.ASCII
)
_EMAIL_RE = re.compile(r"[^@\s]+@([^@\s.]+\.)+[^@\s.]+")


def _valid_ymd(year: str, month: str, day: str) -> bool:
    try:
        _dt.date(int(year), int(month), int(day))
    except ValueError:
        return False
    return True


def is_date(text: str) -> bool:
    m = _DATE_RE.fullmatch(text)
    return bool(m) and _valid_ymd(*m.groups())


def is_date_time(text: str) -> bool:
    """RFC 3339 ``date-time``; a leap second (``:60``) is accepted."""
    m = _DATE_TIME_RE.fullmatch(text)
    if not m:
        return False
    year, month, day, hour, minute, second, _frac, _zone, off_h, off_m = m.groups()
    if not _valid_ymd(year, month, day):
        return False
    if int(hour) > 23 or int(minute) > 59 or int(second) > 60:
        return False
    if off_h is not None and (int(off_h) > 23 or int(off_m) > 59):
        return False
    return True


def is_email(text: str) -> bool:
    """``local@domain`` where the domain has at least one inner dot."""
    return bool(_EMAIL_RE.fullmatch(text))


_CHECKS = {"date-time": is_date_time, "date": is_date, "email": is_email}


def check_format(fmt: str, text: str) -> bool:
    return _CHECKS[fmt](text)
