"""Street model files: parsing, validation and canonical printing.

A model file is line-oriented UTF-8 text.  Blank lines are skipped and
``#`` starts a comment (outside of quotes).  The remaining lines are:

    MODEL 1
    BACKGROUND <width_px> <height_px>
    DEPOT <x_px> <y_px>
    BETA <real>
    PRECISION <int>
    PIXEL_VALUE <real>
    ATTRIBUTE <name> <level>=<value> [<level>=<value> ...]
    STREET "<name>" WIDTH <width_px> LEVELS <lvl,lvl,...> CHAIN <x>,<y> <x>,<y> ...

Each scalar field appears exactly once.  ATTRIBUTE lines define the table
used for street densities; every STREET picks one level per attribute, in
declaration order.  Coordinates and widths are pixels; PIXEL_VALUE
converts pixels to length units downstream.  BETA is already in length
units (it lives in the cost domain, not the pixel domain).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ModelError

_SCALAR_FIELDS = ("MODEL", "BACKGROUND", "DEPOT", "BETA", "PRECISION", "PIXEL_VALUE")


@dataclass(frozen=True)
class AttributeTable:
    """Ordered attribute names plus, per attribute, ordered (level, value) pairs."""

    names: tuple[str, ...]
    levels: tuple[tuple[tuple[str, float], ...], ...]

    def level_value(self, attr_index: int, level_name: str) -> float:
        for name, value in self.levels[attr_index]:
            if name == level_name:
                return value
        raise KeyError(level_name)

    def has_level(self, attr_index: int, level_name: str) -> bool:
        return any(name == level_name for name, _ in self.levels[attr_index])


@dataclass(frozen=True)
class Street:
    name: str
    chain: tuple[tuple[float, float], ...]
    level_choice: tuple[str, ...]
    width_px: float


@dataclass(frozen=True)
class StreetModel:
    streets: tuple[Street, ...]
    attr_table: AttributeTable
    depot_xy: tuple[float, float]
    beta: float
    pixel_value: float
    precision: int
    background: tuple[float, float]
    source_bytes: bytes = field(compare=False, repr=False, default=b"")


def density(model: StreetModel, street: Street) -> float:
    """Non-normalized delivery density: product of the chosen level values."""
    table = model.attr_table
    return math.prod(
        table.level_value(i, lvl) for i, lvl in enumerate(street.level_choice)
    )


def crossing_width(model: StreetModel, street: Street) -> float:
    """Cost of crossing the street, in length units."""
    return street.width_px * model.pixel_value


def _strip_comment(line: str) -> str:
    out = []
    in_quote = False
    for ch in line:
        if ch == '"':
            in_quote = not in_quote
        elif ch == "#" and not in_quote:
            break
        out.append(ch)
    return "".join(out)


def _parse_real(token: str, lineno: int, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ModelError(f"{what}: not a number: {token!r}", lineno) from None
    if math.isnan(value) or math.isinf(value):
        raise ModelError(f"{what}: not finite: {token!r}", lineno)
    return value


def _parse_point(token: str, lineno: int, what: str) -> tuple[float, float]:
    parts = token.split(",")
    if len(parts) != 2:
        raise ModelError(f"{what}: expected x,y but got {token!r}", lineno)
    return (
        _parse_real(parts[0], lineno, what),
        _parse_real(parts[1], lineno, what),
    )


def _parse_attribute_line(tokens: list[str], lineno: int) -> tuple[str, tuple[tuple[str, float], ...]]:
    if len(tokens) < 3:
        raise ModelError("ATTRIBUTE needs a name and at least one level=value", lineno)
    name = tokens[1]
    levels = []
    seen = set()
    for tok in tokens[2:]:
        if "=" not in tok:
            raise ModelError(f"bad level spec {tok!r} (expected name=value)", lineno)
        lvl, _, raw = tok.partition("=")
        if not lvl:
            raise ModelError(f"bad level spec {tok!r} (empty level name)", lineno)
        value = _parse_real(raw, lineno, f"level {lvl!r}")
        if value < 0:
            raise ModelError(f"level {lvl!r} value must be >= 0", lineno)
        if lvl in seen:
            raise ModelError(f"duplicate level {lvl!r} in attribute {name!r}", lineno)
        seen.add(lvl)
        levels.append((lvl, value))
    return name, tuple(levels)


def _parse_street_line(line: str, lineno: int, table: AttributeTable) -> Street:
    rest = line.strip()
    if not rest.startswith("STREET"):
        raise ModelError("internal: not a STREET line", lineno)
    rest = rest[len("STREET"):].lstrip()
    if not rest.startswith('"'):
        col = line.find(rest[:1]) + 1 if rest else len(line)
        raise ModelError("street name must be quoted", lineno, col)
    end = rest.find('"', 1)
    if end < 0:
        raise ModelError("unterminated street name", lineno)
    name = rest[1:end]
    if not name:
        raise ModelError("empty street name", lineno)
    tokens = rest[end + 1:].split()
    if len(tokens) < 2 or tokens[0] != "WIDTH":
        raise ModelError("expected WIDTH after street name", lineno)
    width = _parse_real(tokens[1], lineno, "WIDTH")
    if width < 0:
        raise ModelError("WIDTH must be >= 0", lineno)
    if len(tokens) < 4 or tokens[2] != "LEVELS":
        raise ModelError("expected LEVELS after WIDTH", lineno)
    level_choice = tuple(tokens[3].split(","))
    if len(level_choice) != len(table.names):
        raise ModelError(
            f"street {name!r} picks {len(level_choice)} levels but the model "
            f"defines {len(table.names)} attributes",
            lineno,
        )
    for i, lvl in enumerate(level_choice):
        if not table.has_level(i, lvl):
            raise ModelError(
                f"unknown level {lvl!r} for attribute {table.names[i]!r}", lineno
            )
    if len(tokens) < 5 or tokens[4] != "CHAIN":
        raise ModelError("expected CHAIN after LEVELS", lineno)
    pts = [_parse_point(tok, lineno, "CHAIN point") for tok in tokens[5:]]
    if len(pts) < 2:
        raise ModelError(f"street {name!r} chain needs at least 2 points", lineno)
    for a, b in zip(pts, pts[1:]):
        if a == b:
            raise ModelError(f"street {name!r} has two consecutive identical points", lineno)
    return Street(name=name, chain=tuple(pts), level_choice=level_choice, width_px=width)


def parse_model(data: bytes | str) -> StreetModel:
    """Parse and validate a model file; raises ModelError on any defect."""
    if isinstance(data, bytes):
        source = data
        text = data.decode("utf-8")
    else:
        source = data.encode("utf-8")
        text = data

    scalars: dict[str, tuple] = {}
    attr_names: list[str] = []
    attr_levels: list[tuple[tuple[str, float], ...]] = []
    street_lines: list[tuple[int, str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        keyword = line.split(None, 1)[0]
        tokens = line.split()
        if keyword in _SCALAR_FIELDS:
            if keyword in scalars:
                raise ModelError(f"duplicate {keyword} line", lineno)
            scalars[keyword] = (lineno, tokens)
        elif keyword == "ATTRIBUTE":
            name, levels = _parse_attribute_line(tokens, lineno)
            if name in attr_names:
                raise ModelError(f"duplicate attribute {name!r}", lineno)
            attr_names.append(name)
            attr_levels.append(levels)
        elif keyword == "STREET":
            street_lines.append((lineno, line))
        else:
            raise ModelError(f"unknown directive {keyword!r}", lineno, raw.find(keyword) + 1)

    for key in _SCALAR_FIELDS:
        if key not in scalars:
            raise ModelError(f"missing {key} line", None)

    lineno, tokens = scalars["MODEL"]
    if len(tokens) != 2 or tokens[1] != "1":
        raise ModelError("unsupported model version (expected MODEL 1)", lineno)

    lineno, tokens = scalars["BACKGROUND"]
    if len(tokens) != 3:
        raise ModelError("BACKGROUND needs width and height", lineno)
    bg = (_parse_real(tokens[1], lineno, "width"), _parse_real(tokens[2], lineno, "height"))
    if bg[0] <= 0 or bg[1] <= 0:
        raise ModelError("background dimensions must be positive", lineno)

    lineno, tokens = scalars["DEPOT"]
    if len(tokens) != 3:
        raise ModelError("DEPOT needs x and y", lineno)
    depot = (_parse_real(tokens[1], lineno, "x"), _parse_real(tokens[2], lineno, "y"))
    if not (0 <= depot[0] <= bg[0] and 0 <= depot[1] <= bg[1]):
        raise ModelError("depot lies outside the background", lineno)

    lineno, tokens = scalars["BETA"]
    if len(tokens) != 2:
        raise ModelError("BETA needs one value", lineno)
    beta = _parse_real(tokens[1], lineno, "BETA")
    if beta < 0:
        raise ModelError("BETA must be >= 0", lineno)

    lineno, tokens = scalars["PRECISION"]
    if len(tokens) != 2:
        raise ModelError("PRECISION needs one value", lineno)
    try:
        precision = int(tokens[1])
    except ValueError:
        raise ModelError(f"PRECISION: not an integer: {tokens[1]!r}", lineno) from None
    if not 0 <= precision <= 12:
        raise ModelError("PRECISION must be in [0, 12]", lineno)

    lineno, tokens = scalars["PIXEL_VALUE"]
    if len(tokens) != 2:
        raise ModelError("PIXEL_VALUE needs one value", lineno)
    pixel_value = _parse_real(tokens[1], lineno, "PIXEL_VALUE")
    if pixel_value <= 0:
        raise ModelError("PIXEL_VALUE must be > 0", lineno)

    if not attr_names:
        raise ModelError("model defines no attributes", None)
    table = AttributeTable(names=tuple(attr_names), levels=tuple(attr_levels))

    streets: list[Street] = []
    seen_names: set[str] = set()
    for lineno, line in street_lines:
        st = _parse_street_line(line, lineno, table)
        if st.name in seen_names:
            raise ModelError(f"duplicate street name {st.name!r}", lineno)
        seen_names.add(st.name)
        streets.append(st)
    if not streets:
        raise ModelError("model defines no streets", None)

    return StreetModel(
        streets=tuple(streets),
        attr_table=table,
        depot_xy=depot,
        beta=beta,
        pixel_value=pixel_value,
        precision=precision,
        background=bg,
        source_bytes=source,
    )


def _fmt_num(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def format_model(model: StreetModel) -> str:
    """Canonical text form; parse(format(m)) == m."""
    lines = [
        "MODEL 1",
        f"BACKGROUND {_fmt_num(model.background[0])} {_fmt_num(model.background[1])}",
        f"DEPOT {_fmt_num(model.depot_xy[0])} {_fmt_num(model.depot_xy[1])}",
        f"BETA {_fmt_num(model.beta)}",
        f"PRECISION {model.precision}",
        f"PIXEL_VALUE {_fmt_num(model.pixel_value)}",
    ]
    table = model.attr_table
    for name, levels in zip(table.names, table.levels):
        specs = " ".join(f"{lvl}={_fmt_num(v)}" for lvl, v in levels)
        lines.append(f"ATTRIBUTE {name} {specs}")
    for st in model.streets:
        chain = " ".join(f"{_fmt_num(x)},{_fmt_num(y)}" for x, y in st.chain)
        levels = ",".join(st.level_choice)
        lines.append(
            f'STREET "{st.name}" WIDTH {_fmt_num(st.width_px)} LEVELS {levels} CHAIN {chain}'
        )
    return "\n".join(lines) + "\n"
