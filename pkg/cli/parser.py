"""
Polynomial DSL Parser
poly := term ('+' term)* ; term := factor ('*' factor)* ; factor := var ('^' natural)? ;
var := letter digits?
Also reads exponent-matrix JSON and the element / group syntax used by the commands.
"""
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from pydantic import ValidationError

from database.schemas import ExponentMatrixInput
from lg_model.errors import InvalidElement, NotSquare, PolynomialSyntaxError, RepeatedMonomial
from lg_model.polynomial import InvertiblePolynomial
from lg_model.symmetry import (
    SymmetryElement,
    Subgroup,
    aut_subgroup,
    element,
    identity,
    j_element,
    j_subgroup,
    rho,
    sl_subgroup,
    subgroup_generated_by,
    trivial_subgroup,
)

TOKENS = {
    "VAR": r"[A-Za-z]\d*",
    "NAT": r"\d+",
    "PLUS": r"\+",
    "TIMES": r"\*",
    "CARET": r"\^",
    "NEWLINE": r"\n",
    "SPACE": r"[ \t\r]+",
}
_token_re = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKENS.items()))
_var_re = re.compile(r"([A-Za-z])(\d*)$")

PRESETS = {
    "quintic": "x1^5+x2^5+x3^5+x4^5+x5^5",
    "chain-quintic": "x1^4*x2+x2^4*x3+x3^4*x4+x4^4*x5+x5^5",
    "d4": "x^3+x*y^2",
    "p8": "x^3+y^3+z^3",
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int
    line: int
    column: int


def _byte_offset(src: str, pos: int) -> int:
    return len(src[:pos].encode("utf-8"))


def tokenize(src: str) -> List[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _token_re.match(src, pos)
        if m is None:
            raise PolynomialSyntaxError(f"unexpected character {src[pos]!r}", line,
                                        pos - line_start + 1, _byte_offset(src, pos))
        kind = m.lastgroup
        if kind == "NEWLINE":
            line += 1
            line_start = m.end()
        elif kind != "SPACE":
            tokens.append(Token(kind, m.group(), _byte_offset(src, pos), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("END", "", _byte_offset(src, pos), line, pos - line_start + 1))
    return tokens


def natural_key(name: str) -> tuple:
    """x2 sorts before x10; bare letters before indexed ones"""
    letter, digits = _var_re.match(name).groups()
    return (letter, int(digits) if digits else -1)


class _DSLParser:
    def __init__(self, src: str):
        self.tokens = tokenize(src)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _fail(self, message: str, token: Optional[Token] = None):
        token = token or self.current
        raise PolynomialSyntaxError(message, token.line, token.column, token.offset)

    def _expect(self, kind: str) -> Token:
        token = self.current
        if token.kind != kind:
            found = token.text or "end of input"
            self._fail(f"expected {kind.lower()}, found {found!r}")
        self.pos += 1
        return token

    def poly(self) -> list:
        terms = [self.term()]
        while self.current.kind == "PLUS":
            self.pos += 1
            terms.append(self.term())
        if self.current.kind != "END":
            self._fail(f"unexpected {self.current.text!r}")
        return terms

    def term(self) -> tuple:
        start = self.current
        exponents = self.factor({})
        while self.current.kind == "TIMES":
            self.pos += 1
            exponents = self.factor(exponents)
        return start, exponents

    def factor(self, exponents: dict) -> dict:
        var = self._expect("VAR")
        power = 1
        if self.current.kind == "CARET":
            self.pos += 1
            nat = self._expect("NAT")
            power = int(nat.text)
            if power == 0:
                self._fail("exponent must be positive", nat)
        out = dict(exponents)
        out[var.text] = out.get(var.text, 0) + power
        return out


def parse(src: str) -> InvertiblePolynomial:
    """
    Parse DSL text into an InvertiblePolynomial, rows in source order

    Raises:
        PolynomialSyntaxError: on malformed input, with line, column and byte offset
        NotSquare: if the number of monomials differs from the number of variables
        RepeatedMonomial: if a monomial appears twice
    """
    terms = _DSLParser(src).poly()
    names = sorted({v for _, t in terms for v in t}, key=natural_key)
    rows = []
    seen = {}
    for token, t in terms:
        row = tuple(t.get(v, 0) for v in names)
        if row in seen:
            raise RepeatedMonomial({"message": "monomial appears twice", "line": token.line,
                                    "column": token.column, "offset": token.offset,
                                    "first": seen[row]})
        seen[row] = token.offset
        rows.append(row)
    if len(rows) != len(names):
        raise NotSquare({"message": "number of monomials differs from number of variables",
                         "monomials": len(rows), "variables": len(names)})
    return InvertiblePolynomial(tuple(rows), tuple(names))


def parse_matrix_json(text: str) -> InvertiblePolynomial:
    """Exponent-matrix JSON: [[...], ...] or {"exponents": [[...], ...], "names": [...]}"""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise PolynomialSyntaxError(f"invalid JSON: {e.msg}", e.lineno, e.colno, e.pos)
    if isinstance(payload, list):
        payload = {"exponents": payload}
    try:
        data = ExponentMatrixInput.model_validate(payload)
    except ValidationError as e:
        raise PolynomialSyntaxError(f"invalid exponent matrix: {e.errors()[0]['msg']}")
    return InvertiblePolynomial(tuple(tuple(r) for r in data.exponents), tuple(data.names or ()))


def parse_source(text: str) -> InvertiblePolynomial:
    """Preset name, exponent-matrix JSON or DSL text"""
    stripped = text.strip()
    if stripped.lower() in PRESETS:
        return parse(PRESETS[stripped.lower()])
    if stripped[:1] in ("[", "{"):
        return parse_matrix_json(stripped)
    return parse(text)


# ============ Elements and groups ============

def split_top_level(text: str) -> List[str]:
    """Split on commas outside parentheses"""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    parts.append("".join(current).strip())
    return [p for p in parts if p]


def parse_element(p: InvertiblePolynomial, text: str) -> SymmetryElement:
    """
    One symmetry of W: "e", "j", "j^k", "rho<i>" (1-based), "rho<i>^k" or a phase list "(1/5,0,...)"

    Raises:
        InvalidElement: if the text is not recognised or the phases do not preserve W
    """
    s = text.strip().replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        try:
            phases = [Fraction(v) for v in s[1:-1].split(",")]
        except (ValueError, ZeroDivisionError):
            raise InvalidElement({"message": "phases must be rationals", "text": text})
        return element(p, phases)
    m = re.fullmatch(r"(e|j|rho(\d+))(?:\^(-?\d+))?", s)
    if m is None:
        raise InvalidElement({"message": "unrecognised element", "text": text})
    if m.group(1) == "e":
        base = identity(p)
    elif m.group(1) == "j":
        base = j_element(p)
    else:
        index = int(m.group(2))
        if not 1 <= index <= p.n_vars:
            raise InvalidElement({"message": "rho index out of range", "text": text})
        base = rho(p, index - 1)
    return base ** int(m.group(3)) if m.group(3) else base


def parse_elements(p: InvertiblePolynomial, text: str) -> List[SymmetryElement]:
    return [parse_element(p, part) for part in split_top_level(text)]


def parse_group(p: InvertiblePolynomial, text: str) -> Subgroup:
    """"j", "sl", "aut", "trivial" or a comma-separated list of generators"""
    key = text.strip().lower()
    named = {
        "j": j_subgroup,
        "sl": sl_subgroup,
        "aut": aut_subgroup,
        "trivial": trivial_subgroup,
    }
    if key in named:
        return named[key](p)
    return subgroup_generated_by(p, parse_elements(p, text))
