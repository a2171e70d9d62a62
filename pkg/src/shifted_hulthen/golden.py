"""Loader for the embedded golden energy tables.

Each table is a tab-separated file with ``#`` header lines, verified
against ``SHA256SUMS`` before use.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from importlib import resources

from .errors import GoldenDataError

TABLE_IDS = (1, 2, 3)
FIXED = {
    1: {"q": 1.0, "v0": 5.0, "v1": 2.0},
    2: {"q": 2.0, "v0": 5.0, "v1": 2.0, "alpha": 0.025},
    3: {"q": -2.0, "v0": 5.0, "v1": 2.0, "alpha": 0.025},
}


@dataclass(frozen=True)
class GoldenCell:
    table: int
    n: int
    l: int
    alpha: float
    q: float
    scheme: int
    text: str

    @property
    def value(self) -> float:
        return float(self.text)


def _read(name: str) -> bytes:
    try:
        return resources.files(__package__).joinpath("golden", name).read_bytes()
    except (FileNotFoundError, OSError) as exc:
        raise GoldenDataError(f"golden data file {name} is missing") from exc


def _checksums() -> dict:
    out = {}
    for line in _read("SHA256SUMS").decode("ascii").splitlines():
        if line.strip():
            digest, name = line.split()
            out[name] = digest
    return out


def load_table(table: int) -> tuple:
    """All cells of one table, in file order, after checksum verification."""
    if table not in TABLE_IDS:
        raise GoldenDataError(f"no golden table {table!r}")
    name = f"table{table}.tsv"
    raw = _read(name)
    expected = _checksums().get(name)
    if expected is None or hashlib.sha256(raw).hexdigest() != expected:
        raise GoldenDataError(f"checksum mismatch for {name}")
    fixed = FIXED[table]
    lines = [ln for ln in raw.decode("utf-8").splitlines() if ln and not ln.startswith("#")]
    header = lines[0].split("\t")
    cells = []
    for ln in lines[1:]:
        rec = dict(zip(header, ln.split("\t")))
        alpha = float(rec["alpha"]) if "alpha" in rec else fixed["alpha"]
        for k in (1, 2, 3):
            cells.append(
                GoldenCell(table, int(rec["n"]), int(rec["l"]), alpha, fixed["q"], k, rec[f"approx{k}"])
            )
    return tuple(cells)
