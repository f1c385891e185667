# rootiso/services/polyio.py
"""
다항식 입력 파싱 / 결과 출력
- parse_expression: "x^2 - 2*(5*x - 1)^2" 같은 식 (재귀 하강)
- parse_coeffs: 낮은 차수부터의 계수 목록 "-2 1 1" = x^2 + x - 2
- parse_sparse: "지수:계수" 쌍 목록 "2:1 0:-2" = x^2 - 2
- format_results: human / json
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional

from pydantic import TypeAdapter, ValidationError

from ..schemas import RationalOut, RootIntervalOut
from .errors import ParseError
from .polycore import X, IntPoly, add, mul, negate, power, sub
from .vas import RootInterval


class SourceFormat(str, enum.Enum):
    EXPR = "expr"
    COEFFS = "coeffs"
    SPARSE = "sparse"


class OutputMode(str, enum.Enum):
    HUMAN = "human"
    JSON = "json"


@dataclass(frozen=True)
class PolySource:
    format: SourceFormat
    payload: str


# ========= 토크나이저 =========

class Token(NamedTuple):
    kind: str  # int / x / op / lparen / rparen / end
    text: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(x)|([-+*^])|(\()|(\))|(\S))")


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    length = len(text)
    while pos < length:
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        integer, var, op, lparen, rparen, other = m.groups()
        if integer is not None:
            tokens.append(Token("int", integer, start))
        elif var is not None:
            tokens.append(Token("x", var, start))
        elif op is not None:
            tokens.append(Token("op", op, start))
        elif lparen is not None:
            tokens.append(Token("lparen", "(", start))
        elif rparen is not None:
            tokens.append(Token("rparen", ")", start))
        elif other is not None:
            if other.isalpha():
                raise ParseError(f"x 이외의 변수는 허용되지 않습니다: {other!r}", start)
            raise ParseError(f"알 수 없는 문자: {other!r}", start)
        pos = m.end()
    tokens.append(Token("end", "", length))
    return tokens


# ========= 재귀 하강 파서 =========

class _ExpressionParser:
    """
    expr     := term (('+' | '-') term)*
    term     := unary ('*' unary)*
    unary    := '-' unary | power
    power    := atom ('^' exponent)?
    atom     := INT | 'x' | '(' expr ')'
    exponent := INT ('^' exponent)?      # 오른쪽 결합, 정수 리터럴만
    """

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.i]

    def _advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def _is_op(self, symbol: str) -> bool:
        tok = self.current
        return tok.kind == "op" and tok.text == symbol

    def parse(self) -> IntPoly:
        if self.current.kind == "end":
            raise ParseError("빈 식입니다", self.current.pos)
        result = self.expression()
        if self.current.kind != "end":
            tok = self.current
            raise ParseError(f"예상하지 못한 토큰: {tok.text!r}", tok.pos)
        return result

    def expression(self) -> IntPoly:
        result = self.term()
        while self._is_op("+") or self._is_op("-"):
            op = self._advance().text
            rhs = self.term()
            result = add(result, rhs) if op == "+" else sub(result, rhs)
        return result

    def term(self) -> IntPoly:
        result = self.unary()
        while self._is_op("*"):
            self._advance()
            result = mul(result, self.unary())
        return result

    def unary(self) -> IntPoly:
        if self._is_op("-"):
            self._advance()
            return negate(self.unary())
        return self.power()

    def power(self) -> IntPoly:
        base = self.atom()
        if self._is_op("^"):
            self._advance()
            base = power(base, self.exponent())
        return base

    def exponent(self) -> int:
        tok = self.current
        if tok.kind != "int":
            raise ParseError("지수는 0 이상의 정수 리터럴이어야 합니다", tok.pos)
        self._advance()
        value = int(tok.text)
        if self._is_op("^"):
            self._advance()
            value = value ** self.exponent()
        return value

    def atom(self) -> IntPoly:
        tok = self.current
        if tok.kind == "int":
            self._advance()
            return IntPoly.constant(int(tok.text))
        if tok.kind == "x":
            self._advance()
            return X
        if tok.kind == "lparen":
            self._advance()
            inner = self.expression()
            if self.current.kind != "rparen":
                raise ParseError("')' 가 필요합니다", self.current.pos)
            self._advance()
            return inner
        if tok.kind == "end":
            raise ParseError("식이 중간에 끝났습니다", tok.pos)
        raise ParseError(f"예상하지 못한 토큰: {tok.text!r}", tok.pos)


def parse_expression(text: str) -> IntPoly:
    """
    다항식 식 파싱

    Raises:
        ParseError: 문법 오류 (position 포함)
    """
    return _ExpressionParser(text).parse()


def _split(text: str) -> List[tuple]:
    out = []
    for m in re.finditer(r"[^\s,]+", text):
        out.append((m.group(), m.start()))
    return out


def parse_coeffs(text: str) -> IntPoly:
    """
    공백/콤마 구분 정수 목록 (낮은 차수부터)

    "-2 1 1" -> x^2 + x - 2
    """
    coeffs = []
    for token, pos in _split(text):
        try:
            coeffs.append(int(token))
        except ValueError:
            raise ParseError(f"정수가 아닌 계수: {token!r}", pos) from None
    return IntPoly(coeffs)


def parse_sparse(text: str) -> IntPoly:
    """
    "지수:계수" 쌍 목록. 같은 지수는 더한다.

    "2000:1 2:-50 1:20 0:-2" -> x^2000 - 50x^2 + 20x - 2
    """
    terms: Dict[int, int] = {}
    for token, pos in _split(text):
        exp_text, sep, coef_text = token.partition(":")
        if not sep:
            raise ParseError(f"'지수:계수' 형식이 아닙니다: {token!r}", pos)
        try:
            exponent, coefficient = int(exp_text), int(coef_text)
        except ValueError:
            raise ParseError(f"정수가 아닌 항: {token!r}", pos) from None
        if exponent < 0:
            raise ParseError(f"음수 지수: {token!r}", pos)
        terms[exponent] = terms.get(exponent, 0) + coefficient
    if not terms:
        return IntPoly()
    coeffs = [0] * (max(terms) + 1)
    for exponent, coefficient in terms.items():
        coeffs[exponent] = coefficient
    return IntPoly(coeffs)


def read_poly(source: PolySource) -> IntPoly:
    fmt = SourceFormat(source.format)
    if fmt is SourceFormat.EXPR:
        return parse_expression(source.payload)
    if fmt is SourceFormat.COEFFS:
        return parse_coeffs(source.payload)
    return parse_sparse(source.payload)


def format_poly(P: IntPoly) -> str:
    """parse_expression 으로 다시 읽을 수 있는 식 (높은 차수부터)"""
    if P.is_zero:
        return "0"
    parts: List[str] = []
    for e in range(P.degree, -1, -1):
        c = P.coeffs[e]
        if not c:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            var = "x" if e == 1 else f"x^{e}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts)


# ========= 결과 출력 =========

def _rational_text(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def to_wire(iv: RootInterval) -> RootIntervalOut:
    return RootIntervalOut(
        kind=iv.kind,
        lo=RationalOut(num=iv.lo.numerator, den=iv.lo.denominator),
        hi=RationalOut(num=iv.hi.numerator, den=iv.hi.denominator),
    )


def from_wire(out: RootIntervalOut) -> RootInterval:
    lo = Fraction(out.lo.num, out.lo.den)
    hi = Fraction(out.hi.num, out.hi.den)
    if out.kind == "exact":
        if lo != hi:
            raise ParseError("exact 구간은 lo == hi 여야 합니다")
        return RootInterval.exact(lo)
    return RootInterval.open(lo, hi)


_WIRE_LIST = TypeAdapter(List[RootIntervalOut])


def format_results(results: List[RootInterval], mode: str = "human") -> str:
    """
    분리 결과 출력

    - human: 한 줄에 하나, exact 는 [p/q, p/q], open 은 (p/q, p/q)
    - json: [{kind, lo: {num, den}, hi: {num, den}}, ...]
    """
    ordered = sorted(results)
    if OutputMode(mode) is OutputMode.JSON:
        return _WIRE_LIST.dump_json([to_wire(iv) for iv in ordered]).decode("utf-8")
    lines = []
    for iv in ordered:
        left, right = ("[", "]") if iv.is_exact else ("(", ")")
        lines.append(f"{left}{_rational_text(iv.lo)}, {_rational_text(iv.hi)}{right}")
    return "\n".join(lines)


def parse_results_json(text: str) -> List[RootInterval]:
    """format_results(..., "json") 출력을 다시 읽는다"""
    try:
        wire = _WIRE_LIST.validate_json(text)
    except ValidationError as e:
        raise ParseError(f"결과 JSON 형식 오류: {e.errors()[0].get('msg', e)}") from e
    return [from_wire(item) for item in wire]


def format_rational(q: Optional[Fraction]) -> str:
    return "uncertified" if q is None else _rational_text(Fraction(q))
