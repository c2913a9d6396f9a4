"""Bundled models, attribute tables and benchmark catalogs.

The grid model is a small 4x4 demo city.  The benchmark catalogs come in
four sets sized for different workloads:

    toy        30 rows, n from 3 to 5000,      6 h routes, k from 5 to 15
    normal     15 rows, n from 10000 to 14000, 6 h routes, k = 30
    onstrike   15 rows, n from 15000 to 19000, 8 h routes, k = 30
    christmas  18 rows, n from 20000 to 30000, 8 h routes, k = 30

Hour-valued route caps become length units through HOURS_TO_UNITS
(an on-foot pace of 5000 units per hour, i.e. 5 km/h when one unit is a
meter).  synthetic_city() builds a deterministic 422-street town whose
graph lands at |V| = 2111, |E| = 3225 -- a full-scale stand-in for a real
roadmap, since none is bundled.
"""

from __future__ import annotations

from importlib import resources

from .errors import ModelError
from .instance import CatalogRow
from .model import AttributeTable, Street, StreetModel, parse_model

HOURS_TO_UNITS = 5000.0

_BENCHMARK_SETS = (
    # name, rows, n_lo, n_hi, hours, k_lo, k_hi, seed_base
    ("toy", 30, 3, 5000, 6, 5, 15, 1000),
    ("normal", 15, 10000, 14000, 6, 30, 30, 2000),
    ("onstrike", 15, 15000, 19000, 8, 30, 30, 3000),
    ("christmas", 18, 20000, 30000, 8, 30, 30, 4000),
)


def _data_text(name: str) -> str:
    return resources.files("postvrp.data").joinpath(name).read_text(encoding="utf-8")


def load_grid_model() -> StreetModel:
    """The bundled 8-street demo model."""
    return parse_model(_data_text("grid.model"))


def load_example_catalog() -> list[CatalogRow]:
    """Five demo rows (n = 0 to 10000) against the grid model, with golden MD5s."""
    from .instance import parse_catalog

    return parse_catalog(_data_text("ex.catalog"))


def region_type_zone_table() -> AttributeTable:
    """The Region/Type/Zone penalty preset."""
    names = []
    levels = []
    for line in _data_text("region_type_zone.attrs").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] != "ATTRIBUTE":
            raise ModelError(f"unexpected line in attribute preset: {line!r}")
        names.append(tokens[1])
        levels.append(
            tuple((lvl, float(val)) for lvl, _, val in (t.partition("=") for t in tokens[2:]))
        )
    return AttributeTable(names=tuple(names), levels=tuple(levels))


def benchmark_catalog(name: str, hours_to_units: float = HOURS_TO_UNITS) -> list[CatalogRow]:
    """One of the four bundled catalogs, rebuilt for a given hour-to-unit pace."""
    for set_name, rows, n_lo, n_hi, hours, k_lo, k_hi, seed_base in _BENCHMARK_SETS:
        if set_name == name:
            break
    else:
        raise KeyError(f"unknown benchmark set {name!r}")
    out = []
    for i in range(rows):
        frac = i / (rows - 1) if rows > 1 else 0.0
        n = round(n_lo + frac * (n_hi - n_lo))
        k = round(k_lo + frac * (k_hi - k_lo))
        out.append(
            CatalogRow(
                id=i,
                dir=set_name,
                subdir=f"{set_name}_{n}_{k}",
                n=n,
                k=k,
                w_max=hours * hours_to_units,
                comment=f"{set_name} workload, {hours}h route cap",
                seed=seed_base + i,
                md5="-",
            )
        )
    return out


def benchmark_catalogs(hours_to_units: float = HOURS_TO_UNITS) -> dict[str, list[CatalogRow]]:
    return {name: benchmark_catalog(name, hours_to_units) for name, *_ in _BENCHMARK_SETS}


def benchmark_hours(name: str) -> int:
    """Route cap in hours for a benchmark set."""
    for set_name, _, _, _, hours, *_ in _BENCHMARK_SETS:
        if set_name == name:
            return hours
    raise KeyError(f"unknown benchmark set {name!r}")


def synthetic_city() -> StreetModel:
    """Deterministic full-scale town: a 37 x 32 avenue grid plus 353 dead-end
    service stubs (84 of them bent), 422 streets total.

    One avenue is shortened to skip its last crossing; the construction is
    tuned so the embedded graph has exactly 2111 vertices and 3225 edges.
    """
    rows, cols = 37, 32
    step = 100.0
    margin = 50.0
    x_max = step * cols + step  # last vertical at x = 3200
    y_max = step * rows + step

    table = region_type_zone_table()
    region_levels = [lvl for lvl, _ in table.levels[0]]
    type_levels = ["AVENUE", "STREET", "WAY"]  # highways get no deliveries; keep them out
    zone_levels = [lvl for lvl, _ in table.levels[2]]

    def pick_levels(index: int, x: float, y: float) -> tuple[str, str, str]:
        # Center of town is central/commercial, the rim is isolated/residential.
        cx, cy = x_max / 2, y_max / 2
        r = max(abs(x - cx) / cx, abs(y - cy) / cy)
        region = region_levels[min(3, int(r * 4))]
        return region, type_levels[index % 3], zone_levels[(index // 3) % 3]

    streets: list[Street] = []

    def add_street(name: str, chain, width: float, index: int) -> None:
        mx = sum(p[0] for p in chain) / len(chain)
        my = sum(p[1] for p in chain) / len(chain)
        streets.append(
            Street(
                name=name,
                chain=tuple(chain),
                level_choice=tuple(pick_levels(index, mx, my)),
                width_px=width,
            )
        )

    idx = 0
    for j in range(rows):
        y = step * (j + 1)
        add_street(f"H{j + 1}", [(margin, y), (step * cols + margin, y)], 10, idx)
        idx += 1
    for i in range(cols):
        x = step * (i + 1)
        y_top = step * rows + margin
        if i == cols - 1:
            y_top = step * (rows - 1) + margin  # shortened: misses the last crossing
        add_street(f"V{i + 1}", [(x, margin), (x, y_top)], 10, idx)
        idx += 1

    # Stubs live inside grid blocks: a T junction on a horizontal street and a
    # short dead end reaching 40 px into the block, never touching anything else.
    n_stubs = 353
    n_bent = 84
    block_cols = cols - 1
    for s in range(n_stubs):
        cell = 3 * s
        ci = cell % block_cols
        cj = cell // block_cols
        x = step * (ci + 1) + 37.0
        y = step * (cj + 1)
        if s < n_bent:
            chain = [(x, y), (x + 9.0, y + 20.0), (x, y + 40.0)]
        else:
            chain = [(x, y), (x, y + 40.0)]
        add_street(f"S{s + 1}", chain, 4, idx)
        idx += 1

    return StreetModel(
        streets=tuple(streets),
        attr_table=table,
        depot_xy=(1650.0, 1900.0),
        beta=1.0,
        pixel_value=1.0,
        precision=4,
        background=(x_max + margin * 2, y_max + margin * 2),
    )
