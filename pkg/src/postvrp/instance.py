"""Benchmark instances: catalog files, generation, fingerprints, verification.

The canonical instance file is the compact identity of an instance: a
version header, the catalog row fields, the MD5 of the model file, then
one line per delivery (depot first).  Its MD5 is the instance fingerprint;
regenerating from (model bytes, row) reproduces the bytes exactly.

Catalog file: a header line ``ID Dir Subdir n k Wmax Comment Seed MD5``
followed by one whitespace-separated row per instance, comments quoted,
``-`` for an unset MD5.  ``#`` lines are skipped.
"""

from __future__ import annotations

import hashlib
import re
import shlex
from dataclasses import dataclass, replace

from .errors import CatalogError
from .geometry import DeliveryLocation, StreetGraph, attach_point
from .model import StreetModel, _fmt_num, format_model
from .sampling import DeliverySet, edge_probabilities, sample_deliveries

_MD5_RE = re.compile(r"^[0-9a-f]{32}$")


@dataclass(frozen=True)
class CatalogRow:
    id: int
    dir: str
    subdir: str
    n: int
    k: int
    w_max: float
    comment: str
    seed: int
    md5: str = "-"

    def __post_init__(self):
        if self.n < 0:
            raise CatalogError(f"row {self.id}: n must be >= 0")
        if self.k < 0:
            raise CatalogError(f"row {self.id}: k must be >= 0")
        if not self.w_max > 0:
            raise CatalogError(f"row {self.id}: Wmax must be > 0")
        if self.md5 != "-" and not _MD5_RE.match(self.md5):
            raise CatalogError(f"row {self.id}: malformed MD5 {self.md5!r}")


@dataclass(frozen=True)
class Instance:
    row: CatalogRow
    deliveries: DeliverySet
    model_fingerprint: str
    precision: int


def parse_catalog(text: str) -> list[CatalogRow]:
    rows: list[CatalogRow] = []
    seen_ids: set[int] = set()
    header_skipped = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_skipped:
            header_skipped = True
            if line.split()[0].upper() == "ID":
                continue
        try:
            tokens = shlex.split(line)
        except ValueError as exc:
            raise CatalogError(f"line {lineno}: {exc}") from None
        if len(tokens) != 9:
            raise CatalogError(f"line {lineno}: expected 9 fields, found {len(tokens)}")
        try:
            row = CatalogRow(
                id=int(tokens[0]),
                dir=tokens[1],
                subdir=tokens[2],
                n=int(tokens[3]),
                k=int(tokens[4]),
                w_max=float(tokens[5]),
                comment=tokens[6],
                seed=int(tokens[7]),
                md5=tokens[8].lower() if tokens[8] != "-" else "-",
            )
        except ValueError as exc:
            raise CatalogError(f"line {lineno}: {exc}") from None
        if row.id in seen_ids:
            raise CatalogError(f"line {lineno}: duplicate instance id {row.id}")
        seen_ids.add(row.id)
        rows.append(row)
    return rows


def format_catalog(rows: list[CatalogRow]) -> str:
    lines = ["ID Dir Subdir n k Wmax Comment Seed MD5"]
    for r in rows:
        lines.append(
            f'{r.id} {r.dir} {r.subdir} {r.n} {r.k} {_fmt_num(r.w_max)} '
            f'"{r.comment}" {r.seed} {r.md5}'
        )
    return "\n".join(lines) + "\n"


def model_fingerprint(model: StreetModel) -> str:
    """MD5 of the model file bytes (canonical form for in-memory models)."""
    data = model.source_bytes or format_model(model).encode("utf-8")
    return hashlib.md5(data).hexdigest()


def generate_instance(model: StreetModel, graph: StreetGraph, row: CatalogRow) -> Instance:
    table = edge_probabilities(model, graph)
    scale = model.pixel_value
    depot = attach_point(graph, (model.depot_xy[0] * scale, model.depot_xy[1] * scale))
    deliveries = sample_deliveries(graph, table, row.n, row.seed, depot)
    return Instance(
        row=row,
        deliveries=deliveries,
        model_fingerprint=model_fingerprint(model),
        precision=model.precision,
    )


def serialize_instance(instance: Instance) -> str:
    r = instance.row
    p = instance.precision
    lines = [
        "POSTVRP 1",
        f'ROW {r.id} {r.dir} {r.subdir} {r.n} {r.k} {r.w_max:.{p}f} "{r.comment}" {r.seed}',
        f"MODEL_MD5 {instance.model_fingerprint}",
    ]
    for d in instance.deliveries.deliveries:
        lines.append(f"D {d.edge} {d.alpha:.{p}f} {d.side}")
    return "\n".join(lines) + "\n"


def fingerprint(instance: Instance) -> str:
    """Lowercase hex MD5 of the canonical serialization."""
    return hashlib.md5(serialize_instance(instance).encode("ascii")).hexdigest()


def load_instance(text: str) -> Instance:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "POSTVRP 1":
        raise CatalogError("not an instance file (missing POSTVRP 1 header)")
    row_tokens = shlex.split(lines[1])
    if len(row_tokens) != 9 or row_tokens[0] != "ROW":
        raise CatalogError("malformed ROW line")
    w_max_token = row_tokens[6]
    row = CatalogRow(
        id=int(row_tokens[1]),
        dir=row_tokens[2],
        subdir=row_tokens[3],
        n=int(row_tokens[4]),
        k=int(row_tokens[5]),
        w_max=float(w_max_token),
        comment=row_tokens[7],
        seed=int(row_tokens[8]),
    )
    if not lines[2].startswith("MODEL_MD5 "):
        raise CatalogError("malformed MODEL_MD5 line")
    fp = lines[2].split()[1]
    precision = len(w_max_token.partition(".")[2])
    deliveries = []
    for ln in lines[3:]:
        tok = ln.split()
        if len(tok) != 4 or tok[0] != "D":
            raise CatalogError(f"malformed delivery line {ln!r}")
        deliveries.append(
            DeliveryLocation(edge=int(tok[1]), alpha=float(tok[2]), side=tok[3])
        )
    if len(deliveries) != row.n + 1:
        raise CatalogError(
            f"instance claims n={row.n} but has {len(deliveries)} delivery lines"
        )
    return Instance(
        row=row,
        deliveries=DeliverySet(deliveries=tuple(deliveries)),
        model_fingerprint=fp,
        precision=precision,
    )


@dataclass(frozen=True)
class VerifyResult:
    row: CatalogRow
    status: str  # PASS | FAIL | SKIP
    computed: str


def verify_catalog(
    model: StreetModel, graph: StreetGraph, rows: list[CatalogRow]
) -> list[VerifyResult]:
    """Regenerate every row and compare fingerprints against the MD5 column."""
    results = []
    for row in rows:
        computed = fingerprint(generate_instance(model, graph, row))
        if row.md5 == "-":
            status = "SKIP"
        elif row.md5 == computed:
            status = "PASS"
        else:
            status = "FAIL"
        results.append(VerifyResult(row=row, status=status, computed=computed))
    return results


def fill_catalog(model: StreetModel, graph: StreetGraph, rows: list[CatalogRow]) -> list[CatalogRow]:
    """Copy of the rows with the MD5 column set to freshly computed digests."""
    return [
        replace(row, md5=fingerprint(generate_instance(model, graph, row))) for row in rows
    ]
