"""Analysis documents: everything the package can say about one row, as plain data."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from typing import Any, Optional

from .blocks import DegenerateRowError, UnclassifiableSequenceError, census, decompose
from .identities import LEMMA_CHECKERS, LemmaReport, exclusion_filter
from .sequence import (
    ZERO_ONE,
    SignRow,
    format_row,
    is_circulant_hadamard,
    max_orthogonal_prefix,
    order_profile,
    paf_table,
    row_sum,
)

SCHEMA_VERSION = 1


def lemma_to_dict(rep: LemmaReport) -> dict:
    d = {
        "lemma": rep.lemma_id,
        "preconditions_met": rep.preconditions_met,
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "holds": rep.holds,
        "pafs": {str(s): v for s, v in rep.pafs.items()},
        "detail": rep.detail,
    }
    if rep.breakdown is not None:
        bd = rep.breakdown
        d["breakdown"] = {
            "L": bd.L,
            "alpha1_types": list(bd.alpha1_types),
            "alpha2_types": list(bd.alpha2_types),
        }
    return d


def census_to_dict(c) -> dict:
    return {
        "total": c.total,
        "b": {str(k): v for k, v in c.b.items()},
        "b_geq": {str(k): v for k, v in c.b_geq.items()},
        "alpha1": c.alpha1,
        "alpha2": c.alpha2,
        "alpha_geq3": c.alpha_geq3,
        "alpha_geq2": c.alpha_geq2,
        "alpha_2_geq3": c.alpha_2_geq3,
        "alpha1_types": list(c.alpha1_types) if c.alpha1_types is not None else None,
        "alpha2_types": list(c.alpha2_types) if c.alpha2_types is not None else None,
        "sequence_lengths": {k: list(v) for k, v in c.sequence_lengths.items()},
    }


@dataclass
class AnalysisDocument:
    schema_version: int
    row: dict
    order_profile: dict
    paf: list
    row_sum: int
    max_orthogonal_prefix: Optional[int]
    is_circulant_hadamard: bool
    degenerate: bool
    offset: int
    blocks: list
    census: Optional[dict]
    lemmas: list
    exclusion: Optional[str]
    notes: list

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisDocument":
        names = [f.name for f in fields(cls)]
        missing = [k for k in names if k not in d]
        extra = [k for k in d if k not in names]
        if missing or extra:
            raise ValueError(f"analysis document fields: missing {missing}, unexpected {extra}")
        return cls(**{k: d[k] for k in names})

    @classmethod
    def from_json(cls, text: str) -> "AnalysisDocument":
        return cls.from_dict(json.loads(text))


def analyze(row: SignRow) -> AnalysisDocument:
    n = row.n
    prof = order_profile(n)
    d = decompose(row)
    notes: list[str] = []
    cen = None
    lemmas: list[dict] = []
    exclusion = None
    if d.degenerate:
        notes.append("degenerate decomposition: constant row has no block boundary")
    else:
        c = census(d)
        cen = census_to_dict(c)
        if n % 4 == 0:
            for lid, check in LEMMA_CHECKERS.items():
                if lid == 5 and n <= 4:
                    notes.append("lemma 5 skipped: shift 4 wraps onto the row itself for n <= 4")
                    continue
                try:
                    lemmas.append(lemma_to_dict(check(row)))
                except UnclassifiableSequenceError as exc:
                    notes.append(f"lemma 5 unclassifiable: {exc}")
            exclusion = str(exclusion_filter(c, prof))
        else:
            notes.append(f"lemmas need n divisible by 4; n = {n}")
    return AnalysisDocument(
        schema_version=SCHEMA_VERSION,
        row={"plus_minus": format_row(row), "zero_one": format_row(row, ZERO_ONE)},
        order_profile={"n": n, "m": prof.m, "h": prof.h, "conjecture_relevant": prof.conjecture_relevant},
        paf=paf_table(row),
        row_sum=row_sum(row),
        max_orthogonal_prefix=max_orthogonal_prefix(row) if n >= 2 else None,
        is_circulant_hadamard=is_circulant_hadamard(row),
        degenerate=d.degenerate,
        offset=d.offset,
        blocks=[{"sign": "+" if b.sign > 0 else "-", "length": b.length, "start": b.start} for b in d.blocks],
        census=cen,
        lemmas=lemmas,
        exclusion=exclusion,
        notes=notes,
    )


def render_text(doc: AnalysisDocument) -> str:
    lines = [
        f"row\t{doc.row['plus_minus']}",
        f"n\t{doc.order_profile['n']}",
        f"m\t{_opt(doc.order_profile['m'])}",
        f"h\t{_opt(doc.order_profile['h'])}",
        f"conjecture_relevant\t{_yn(doc.order_profile['conjecture_relevant'])}",
        f"row_sum\t{doc.row_sum}",
        "paf\t" + " ".join(str(v) for v in doc.paf),
        f"max_k\t{_opt(doc.max_orthogonal_prefix)}",
        f"circulant_hadamard\t{_yn(doc.is_circulant_hadamard)}",
    ]
    if doc.census is not None:
        c = doc.census
        lines.append("blocks\t" + " ".join(f"{b['sign']}{b['length']}" for b in doc.blocks))
        lines.append(f"offset\t{doc.offset}")
        lines.append(f"total_blocks\t{c['total']}")
        lines.append("b\t" + " ".join(f"{k}:{v}" for k, v in c["b"].items()))
        for key in ("alpha1", "alpha2", "alpha_geq3", "alpha_2_geq3"):
            lines.append(f"{key}\t{c[key]}")
        if c["alpha1_types"] is not None:
            lines.append("alpha1_types\t" + " ".join(map(str, c["alpha1_types"])))
            lines.append("alpha2_types\t" + " ".join(map(str, c["alpha2_types"])))
    for lem in doc.lemmas:
        lines.append(f"lemma{lem['lemma']}\t{lemma_status(lem)}")
    if doc.exclusion is not None:
        lines.append(f"exclusion\t{doc.exclusion}")
    for note in doc.notes:
        lines.append(f"note\t{note}")
    return "\n".join(lines)


def lemma_status(lem: dict[str, Any]) -> str:
    sides = f"{_opt(lem['lhs'])} = {_opt(lem['rhs'])}" if lem["holds"] else f"{_opt(lem['lhs'])} vs {_opt(lem['rhs'])}"
    if not lem["preconditions_met"]:
        nz = ", ".join(f"paf({s})={v}" for s, v in lem["pafs"].items() if v)
        return f"preconditions unmet ({nz})"
    return f"holds ({sides})" if lem["holds"] else f"FALSIFIED ({sides})"


def _opt(v) -> str:
    return "-" if v is None else str(v)


def _yn(v: bool) -> str:
    return "yes" if v else "no"
