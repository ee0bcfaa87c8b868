"""Hand-written temporal grammar for chart captions.

Recognizes years (1000-2999), month-year, month-day-year, bare months,
seasons, quarters, decades and trailing relative durations, resolving each
mention to the calendar window of the unit it names.  Surrounding tokens
classify a mention's boundary role: range start, range end, or point.
"""

from __future__ import annotations

import calendar
from dataclasses import dataclass
from datetime import date, timedelta

from .chart import Granularity
from .text import Token

_MONTHS = {name.lower(): i for i, name in enumerate(calendar.month_name) if name}
_MONTHS.update({name.lower(): i for i, name in enumerate(calendar.month_abbr) if name})
_MONTHS["sept"] = 9

# Season to (first month, last month); winter wraps into the next year.
_SEASONS = {
    "spring": (3, 5),
    "summer": (6, 8),
    "fall": (9, 11),
    "autumn": (9, 11),
    "winter": (12, 2),
}

_ORDINAL_QUARTERS = {"first": 1, "second": 2, "third": 3, "fourth": 4}

_NUMBER_WORDS = {
    "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6,
    "seven": 7, "eight": 8, "nine": 9, "ten": 10, "eleven": 11, "twelve": 12,
}

_DURATION_UNITS = {"day": "day", "week": "day", "month": "month", "year": "year"}

_START_MARKERS = {"from", "since", "after", "starting", "beginning"}
_END_MARKERS = {"to", "until", "till", "through", "by", "ending"}
# Fillers skipped when looking back for a boundary marker.
_SKIPPABLE = {"in", "on", "at", "around", "about", "of", "the", "early", "late", "mid"}


@dataclass(frozen=True)
class TimeReference:
    """One temporal mention resolved to the calendar window it names.

    unit_start/unit_end delimit the mentioned unit; boundary_role says how
    the mention bounds a range.  resolved_start/resolved_end expose only
    the side(s) the role actually pins down.
    """

    span: tuple[int, int]
    boundary_role: str                 # "point" | "start" | "end"
    unit_start: date
    unit_end: date
    granularity_of_mention: str        # "day" | "month" | "year" | "season" | "quarter"
    token_range: tuple[int, int]       # inclusive token indices within the sentence
    form: str                          # surface shape, used for canonical formatting

    def __post_init__(self):
        if self.boundary_role not in ("point", "start", "end"):
            raise ValueError(f"bad boundary role {self.boundary_role!r}")
        if self.unit_start > self.unit_end:
            raise ValueError("unit window is inverted")

    @property
    def resolved_start(self) -> date | None:
        return self.unit_start if self.boundary_role in ("point", "start") else None

    @property
    def resolved_end(self) -> date | None:
        return self.unit_end if self.boundary_role in ("point", "end") else None


def month_window(year: int, month: int) -> tuple[date, date]:
    last = calendar.monthrange(year, month)[1]
    return date(year, month, 1), date(year, month, last)


def year_window(year: int) -> tuple[date, date]:
    return date(year, 1, 1), date(year, 12, 31)


def season_window(year: int, season: str) -> tuple[date, date]:
    m0, m1 = _SEASONS[season]
    end_year = year + 1 if m1 < m0 else year
    return date(year, m0, 1), month_window(end_year, m1)[1]


def quarter_window(year: int, quarter: int) -> tuple[date, date]:
    m0 = 3 * (quarter - 1) + 1
    return date(year, m0, 1), month_window(year, m0 + 2)[1]


def _shift_months(d: date, months: int) -> date:
    """Calendar-aware month shift with day-of-month clamping."""
    total = d.year * 12 + (d.month - 1) + months
    year, month = divmod(total, 12)
    month += 1
    day = min(d.day, calendar.monthrange(year, month)[1])
    return date(year, month, day)


def _is_year_token(tok: Token) -> bool:
    return tok.is_number and len(tok.text) == 4 and 1000 <= int(tok.text) <= 2999


@dataclass
class _Mention:
    first: int
    last: int
    unit: tuple[date, date]
    granularity: str
    form: str
    role: str | None = None


class _Matcher:
    """Longest-match-first mention scanner over one sentence's tokens."""

    def __init__(self, tokens: list[Token], x_range: tuple[date, date]):
        self.tokens = tokens
        self.x_range = x_range

    def _tok(self, i: int) -> Token | None:
        return self.tokens[i] if 0 <= i < len(self.tokens) else None

    def match_at(self, i: int) -> _Mention | None:
        for rule in (self._month_day_year, self._month_year, self._quarter_short,
                     self._quarter_ordinal, self._season_year, self._duration,
                     self._decade, self._year, self._bare_month):
            m = rule(i)
            if m is not None:
                return m
        return None

    def _month_day_year(self, i: int) -> _Mention | None:
        t = self._tok(i)
        if t is None or not t.is_word or t.text.lower() not in _MONTHS:
            return None
        day_tok = self._tok(i + 1)
        if day_tok is None or not day_tok.text.isdigit() or not 1 <= int(day_tok.text) <= 31:
            return None
        j = i + 2
        if self._tok(j) is not None and self._tok(j).text == ",":
            j += 1
        year_tok = self._tok(j)
        if year_tok is None or not _is_year_token(year_tok):
            return None
        month = _MONTHS[t.text.lower()]
        year = int(year_tok.text)
        day = int(day_tok.text)
        if day > calendar.monthrange(year, month)[1]:
            return None
        d = date(year, month, day)
        return _Mention(i, j, (d, d), "day", "day")

    def _month_year(self, i: int) -> _Mention | None:
        t = self._tok(i)
        if t is None or not t.is_word or t.text.lower() not in _MONTHS:
            return None
        j = i + 1
        if self._tok(j) is not None and self._tok(j).text.lower() == "of":
            j += 1
        year_tok = self._tok(j)
        if year_tok is None or not _is_year_token(year_tok):
            return None
        window = month_window(int(year_tok.text), _MONTHS[t.text.lower()])
        return _Mention(i, j, window, "month", "month")

    def _quarter_short(self, i: int) -> _Mention | None:
        t = self._tok(i)
        if t is None or len(t.text) != 2 or t.text[0] not in "Qq" or t.text[1] not in "1234":
            return None
        j = i + 1
        if self._tok(j) is not None and self._tok(j).text.lower() == "of":
            j += 1
        year_tok = self._tok(j)
        if year_tok is None or not _is_year_token(year_tok):
            return None
        window = quarter_window(int(year_tok.text), int(t.text[1]))
        return _Mention(i, j, window, "quarter", "quarter")

    def _quarter_ordinal(self, i: int) -> _Mention | None:
        t = self._tok(i)
        if t is None or t.text.lower() not in _ORDINAL_QUARTERS:
            return None
        q_tok = self._tok(i + 1)
        if q_tok is None or q_tok.lemma != "quarter":
            return None
        j = i + 2
        if self._tok(j) is not None and self._tok(j).text.lower() == "of":
            j += 1
        year_tok = self._tok(j)
        if year_tok is None or not _is_year_token(year_tok):
            return None
        quarter = _ORDINAL_QUARTERS[t.text.lower()]
        window = quarter_window(int(year_tok.text), quarter)
        return _Mention(i, j, window, "quarter", "quarter")

    def _season_year(self, i: int) -> _Mention | None:
        # A season word alone is too ambiguous ("fall" names a trend far more
        # often than a season); only season-plus-year forms count.
        t = self._tok(i)
        if t is None or not t.is_word or t.text.lower() not in _SEASONS:
            return None
        j = i + 1
        if self._tok(j) is not None and self._tok(j).text.lower() == "of":
            j += 1
        year_tok = self._tok(j)
        if year_tok is None or not _is_year_token(year_tok):
            return None
        window = season_window(int(year_tok.text), t.text.lower())
        return _Mention(i, j, window, "season", "season")

    def _duration(self, i: int) -> _Mention | None:
        # "(the) last/past N unit(s)", resolved against the end of xRange.
        t = self._tok(i)
        if t is None or t.text.lower() not in ("last", "past"):
            return None
        count_tok = self._tok(i + 1)
        if count_tok is None:
            return None
        if count_tok.text.isdigit():
            count = int(count_tok.text)
        elif count_tok.text.lower() in _NUMBER_WORDS:
            count = _NUMBER_WORDS[count_tok.text.lower()]
        else:
            return None
        unit_tok = self._tok(i + 2)
        if unit_tok is None or unit_tok.lemma not in _DURATION_UNITS:
            return None
        if count < 1:
            return None
        end = self.x_range[1]
        if unit_tok.lemma == "day":
            start = end - timedelta(days=count)
        elif unit_tok.lemma == "week":
            start = end - timedelta(weeks=count)
        elif unit_tok.lemma == "month":
            start = _shift_months(end, -count)
        else:
            start = _shift_months(end, -12 * count)
        if start > end:
            return None
        gran = _DURATION_UNITS[unit_tok.lemma]
        return _Mention(i, i + 2, (start, end), gran, "duration")

    def _decade(self, i: int) -> _Mention | None:
        t = self._tok(i)
        if t is None or len(t.text) != 5 or not t.text.endswith("s"):
            return None
        head = t.text[:-1]
        if not head.isdigit():
            return None
        year = int(head)
        if not (1000 <= year <= 2999) or year % 10 != 0:
            return None
        return _Mention(i, i, (date(year, 1, 1), date(year + 9, 12, 31)), "year", "decade")

    def _year(self, i: int) -> _Mention | None:
        t = self._tok(i)
        if t is None or not _is_year_token(t):
            return None
        return _Mention(i, i, year_window(int(t.text)), "year", "year")

    def _bare_month(self, i: int) -> _Mention | None:
        # Title case required: "may" and "march" are ordinary words otherwise.
        t = self._tok(i)
        if t is None or not t.is_word or not t.text[0].isupper():
            return None
        name = t.text.lower()
        if name not in _MONTHS:
            return None
        month = _MONTHS[name]
        # Latest occurrence of the month that has begun by the visible range end.
        year = self.x_range[1].year
        if month > self.x_range[1].month:
            year -= 1
        return _Mention(i, i, month_window(year, month), "month", "month")


def _assign_roles(tokens: list[Token], mentions: list[_Mention]) -> None:
    # "between T1 and T2" binds the surrounding pair first.
    by_first = {m.first: m for m in mentions}
    for idx, tok in enumerate(tokens):
        if tok.text.lower() != "between":
            continue
        m1 = by_first.get(idx + 1)
        if m1 is None or m1.role is not None:
            continue
        and_idx = m1.last + 1
        if and_idx >= len(tokens) or tokens[and_idx].text.lower() != "and":
            continue
        m2 = by_first.get(and_idx + 1)
        if m2 is None or m2.role is not None:
            continue
        m1.role = "start"
        m2.role = "end"
    for m in mentions:
        if m.role is not None:
            continue
        j = m.first - 1
        while j >= 0 and tokens[j].text.lower() in _SKIPPABLE:
            j -= 1
        word = tokens[j].text.lower() if j >= 0 else ""
        if word in _START_MARKERS:
            m.role = "start"
        elif word in _END_MARKERS:
            m.role = "end"
        else:
            m.role = "point"


def extract_time_refs(tokens: list[Token], granularity: Granularity,
                      x_range: tuple[date, date]) -> list[TimeReference]:
    """Temporal mentions of one sentence as resolved TimeReferences.

    The series granularity is accepted for interface parity with the rest
    of the pipeline; resolution works from the mentions and xRange alone.
    Unparseable candidates are skipped silently.
    """
    del granularity
    matcher = _Matcher(tokens, x_range)
    mentions: list[_Mention] = []
    i = 0
    while i < len(tokens):
        m = matcher.match_at(i)
        if m is not None:
            mentions.append(m)
            i = m.last + 1
        else:
            i += 1
    _assign_roles(tokens, mentions)
    refs = []
    for m in mentions:
        span = (tokens[m.first].byte_span[0], tokens[m.last].byte_span[1])
        refs.append(TimeReference(span=span, boundary_role=m.role,
                                  unit_start=m.unit[0], unit_end=m.unit[1],
                                  granularity_of_mention=m.granularity,
                                  token_range=(m.first, m.last), form=m.form))
    return refs


def canonical_text(ref: TimeReference) -> str:
    """Canonical surface form that re-parses to the same unit window."""
    start, end = ref.unit_start, ref.unit_end
    if ref.form == "year":
        return str(start.year)
    if ref.form == "month":
        return f"{calendar.month_name[start.month]} {start.year}"
    if ref.form == "day":
        return f"{calendar.month_name[start.month]} {start.day}, {start.year}"
    if ref.form == "quarter":
        return f"Q{(start.month - 1) // 3 + 1} {start.year}"
    if ref.form == "season":
        for name, (m0, m1) in _SEASONS.items():
            if name != "autumn" and m0 == start.month:
                return f"{name} of {start.year}"
    if ref.form == "decade":
        return f"the {start.year}s"
    raise ValueError(f"no canonical form for {ref.form!r} mentions")
