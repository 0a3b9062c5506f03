"""
Output Formatting
JSON, TSV and plain-text renderings of report models
"""
from typing import Iterable, List, Union

from pydantic import BaseModel

from database.schemas import BidegreeCount, DiamondReport, StateSpaceReport

JSON = "json"
TSV = "tsv"
TEXT = "text"
EXTENSIONS = {JSON: "json", TSV: "tsv", TEXT: "txt"}

Result = Union[BaseModel, List[BaseModel]]


def _scalar_lines(model: BaseModel, sep: str) -> List[str]:
    lines = []
    for key, value in model.model_dump(mode="json").items():
        if isinstance(value, (dict, list)):
            continue
        lines.append(f"{key}{sep}{value}")
    return lines


def _table(entries: Iterable[BidegreeCount]) -> List[str]:
    return [f"{e.p}\t{e.q}\t{e.dim}" for e in entries]


def diamond_grid(rows: List[List[int]]) -> str:
    """Centered diamond, one row per total degree"""
    cells = [[str(v) for v in row] for row in rows]
    width = max((len(c) for row in cells for c in row), default=1)
    longest = max(len(row) for row in cells)
    lines = []
    for row in cells:
        pad = " " * ((longest - len(row)) * (width + 1) // 2)
        lines.append(pad + " ".join(c.rjust(width) for c in row))
    return "\n".join(lines)


def to_json(result: Result) -> str:
    if isinstance(result, list):
        # JSON lines
        return "".join(item.model_dump_json() + "\n" for item in result)
    return result.model_dump_json(indent=2) + "\n"


def to_tsv(result: Result) -> str:
    if isinstance(result, list):
        if not result:
            return ""
        keys = list(result[0].model_dump(mode="json"))
        lines = ["\t".join(keys)]
        for item in result:
            data = item.model_dump(mode="json")
            lines.append("\t".join(_flat(data[k]) for k in keys))
        return "\n".join(lines) + "\n"
    if isinstance(result, DiamondReport):
        return "\n".join("\t".join(str(v) for v in row) for row in result.rows) + "\n"
    if isinstance(result, StateSpaceReport):
        return "\n".join(["p\tq\tdim"] + _table(result.table)) + "\n"
    return "\n".join(_scalar_lines(result, "\t")) + "\n"


def to_text(result: Result) -> str:
    if isinstance(result, list):
        return "".join(to_text(item) + "\n" for item in result)
    lines = _scalar_lines(result, ": ")
    if isinstance(result, DiamondReport):
        lines += ["", diamond_grid(result.rows)]
    elif isinstance(result, StateSpaceReport):
        lines += ["", "p\tq\tdim"] + _table(result.table)
    return "\n".join(lines) + "\n"


def _flat(value) -> str:
    if isinstance(value, list):
        return ",".join(_flat(v) for v in value)
    return "" if value is None else str(value)


def render(result: Result, fmt: str = JSON) -> str:
    if fmt == TSV:
        return to_tsv(result)
    if fmt == TEXT:
        return to_text(result)
    return to_json(result)
