"""Parsing and pairing of dyadic trade records.

Input files are delimited text (comma or tab) with the header row
``year,reporter,partner,export,import``.  Flow values are annual trade in
million USD; an empty cell means the flow was not reported.  Zero-valued
flows are treated as missing throughout: a reported zero cannot create a
link, since the network is defined by non-zero trade.  This zero-as-missing
convention is ours, not the data source's.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError, ParseError, ValidationError

HEADER = ("year", "reporter", "partner", "export", "import")

DUPLICATE_POLICIES = ("mean", "first", "max")

_DELIMITERS = {"csv": ",", "tsv": "\t"}


@dataclass(frozen=True)
class DyadicRecord:
    """One reported directed flow pair between two countries in one year."""

    year: int
    reporter: str
    partner: str
    export_value: float | None
    import_value: float | None


@dataclass(frozen=True)
class PairedFlows:
    """The four reported flows for one unordered country pair in one year.

    ``country_a < country_b`` under plain string order.  ``exp_ab`` is a's
    reported export to b, ``imp_ab`` a's reported import from b, and the
    ``_ba`` fields are b's reports in the opposite direction.  At least one
    field is present and positive.
    """

    year: int
    country_a: str
    country_b: str
    exp_ab: float | None = None
    imp_ab: float | None = None
    exp_ba: float | None = None
    imp_ba: float | None = None


def parse_records(source, fmt: str = "csv") -> list[DyadicRecord]:
    """Parse dyadic records from a delimited text stream or file path.

    ``source`` may be a path or an open text/binary file.  Structural
    problems (wrong column count, non-numeric cells, bad header) raise
    ParseError; invariant violations (self-trade, negative or non-finite
    flows) raise ValidationError.  Both carry the 1-based line number.
    Row order is preserved.
    """
    delimiter = _DELIMITERS.get(fmt)
    if delimiter is None:
        raise DomainError(f"unknown input format {fmt!r}; expected one of {sorted(_DELIMITERS)}")
    fh, owned = _as_text(source)
    try:
        reader = csv.reader(fh, delimiter=delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("missing header row", line=1) from None
        if tuple(cell.strip() for cell in header) != HEADER:
            raise ParseError(f"expected header {','.join(HEADER)!r}", line=1)
        records = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            records.append(_parse_row(row, lineno))
        return records
    finally:
        if owned:
            fh.close()


def pair_flows(records: Iterable[DyadicRecord], year: int,
               on_duplicate: str = "mean") -> list[PairedFlows]:
    """Collapse directed records for one year into canonical PairedFlows.

    Duplicate reports of the same directed flow resolve per ``on_duplicate``:
    arithmetic mean of the reported values (default), first in input order,
    or maximum.  Zero flows are dropped before resolution.  Pairs with no
    positive flow at all are not emitted.  Output is sorted by country pair.
    """
    if on_duplicate not in DUPLICATE_POLICIES:
        raise DomainError(
            f"unknown duplicate policy {on_duplicate!r}; expected one of {DUPLICATE_POLICIES}")
    buckets: dict[tuple[str, str], dict[str, list[float]]] = {}
    for rec in records:
        if rec.year != year:
            raise ValidationError(f"record for year {rec.year} passed to pairing for {year}")
        if rec.reporter < rec.partner:
            key, exp_slot, imp_slot = (rec.reporter, rec.partner), "exp_ab", "imp_ab"
        else:
            key, exp_slot, imp_slot = (rec.partner, rec.reporter), "exp_ba", "imp_ba"
        slot = buckets.setdefault(key, {"exp_ab": [], "imp_ab": [], "exp_ba": [], "imp_ba": []})
        if rec.export_value:
            slot[exp_slot].append(rec.export_value)
        if rec.import_value:
            slot[imp_slot].append(rec.import_value)
    out = []
    for (a, b) in sorted(buckets):
        flows = {name: _resolve(values, on_duplicate)
                 for name, values in buckets[(a, b)].items()}
        if all(v is None for v in flows.values()):
            continue
        out.append(PairedFlows(year, a, b, **flows))
    return out


def records_from_pairs(pairs: Iterable[PairedFlows]) -> list[DyadicRecord]:
    """Expand PairedFlows back into one record per reporting country.

    Inverse of pair_flows on duplicate-free data: re-pairing the output
    reproduces the same PairedFlows bit for bit.
    """
    records = []
    for pf in pairs:
        if pf.exp_ab is not None or pf.imp_ab is not None:
            records.append(DyadicRecord(pf.year, pf.country_a, pf.country_b,
                                        pf.exp_ab, pf.imp_ab))
        if pf.exp_ba is not None or pf.imp_ba is not None:
            records.append(DyadicRecord(pf.year, pf.country_b, pf.country_a,
                                        pf.exp_ba, pf.imp_ba))
    return records


def write_records(records: Iterable[DyadicRecord], dest, fmt: str = "csv") -> None:
    """Write records as delimited text that parse_records reads back exactly.

    Floats are serialized with their shortest round-trip representation.
    """
    delimiter = _DELIMITERS.get(fmt)
    if delimiter is None:
        raise DomainError(f"unknown input format {fmt!r}; expected one of {sorted(_DELIMITERS)}")
    fh, owned = _as_writable(dest)
    try:
        writer = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        writer.writerow(HEADER)
        for rec in records:
            writer.writerow([
                rec.year, rec.reporter, rec.partner,
                _flow_cell(rec.export_value), _flow_cell(rec.import_value),
            ])
    finally:
        if owned:
            fh.close()


def _flow_cell(value: float | None) -> str:
    return "" if value is None else repr(value)


def _resolve(values: list[float], policy: str) -> float | None:
    if not values:
        return None
    if policy == "mean":
        return sum(values) / len(values)
    if policy == "first":
        return values[0]
    return max(values)


def _parse_row(row: list[str], lineno: int) -> DyadicRecord:
    if len(row) != 5:
        raise ParseError(f"expected 5 columns, got {len(row)}", line=lineno)
    year_s, reporter, partner, export_s, import_s = (cell.strip() for cell in row)
    try:
        year = int(year_s)
    except ValueError:
        raise ParseError(f"non-integer year {year_s!r}", line=lineno) from None
    if not reporter or not partner:
        raise ParseError("empty country code", line=lineno)
    export_value = _parse_flow(export_s, "export", lineno)
    import_value = _parse_flow(import_s, "import", lineno)
    if reporter == partner:
        raise ValidationError(f"self-trade reported for {reporter!r}", line=lineno)
    return DyadicRecord(year, reporter, partner, export_value, import_value)


def _parse_flow(cell: str, name: str, lineno: int) -> float | None:
    if cell == "":
        return None
    try:
        value = float(cell)
    except ValueError:
        raise ParseError(f"non-numeric {name} value {cell!r}", line=lineno) from None
    if not math.isfinite(value) or value < 0:
        raise ValidationError(f"{name} value must be finite and >= 0, got {cell}", line=lineno)
    return value


def _as_text(source):
    """Return (text file object, whether we own closing it)."""
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return io.StringIO(data), True
    return open(source, "r", encoding="utf-8", newline=""), True


def _as_writable(dest):
    if hasattr(dest, "write"):
        return dest, False
    return open(dest, "w", encoding="utf-8", newline=""), True
