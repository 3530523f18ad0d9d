"""Terms and simple types of the program/test calculus.

The calculus has three sorts of terms plus applications:

  program terms   p ::= x | \\(x:A, k:B). u | \\k:A. u
  test terms      t ::= * | k | <p, t> | \\x:A. u
  jump terms      q ::= %k:A. u
  computations    u ::= t ; p | q ! t

There is a single test variable, spelled k, bound by the three k-binders.
Program variables are ordinary named variables. Every program and jump term
is t-closed by construction; a test or computation term carries exactly one
free test position on its spine, which is either the variable k or the
constant *. Alpha-equivalence renames program variables only.

Concrete syntax is whitespace-insensitive. Binder bodies parse greedily;
parentheses override. Type annotations on binders are optional in the parser
(the checker rejects their absence).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .errors import NotTClosed, ParseError, ReservedBaseType, TClosureError

RESERVED = ("k", "o")


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class Base:
    name: str


@dataclass(frozen=True)
class Arrow:
    dom: "Type"
    cod: "Type"


Type = Union[Base, Arrow]


def type_str(ty: Type) -> str:
    match ty:
        case Base(name):
            return name
        case Arrow(dom, cod):
            left = type_str(dom)
            if isinstance(dom, Arrow):
                left = f"({left})"
            return f"{left} -> {type_str(cod)}"
    raise TypeError(f"not a type: {ty!r}")


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class PVar:
    name: str


@dataclass(frozen=True)
class PairLam:
    """Program abstraction \\(x:A, k:B). u over an argument and a test."""

    x: str
    xty: Optional[Type]
    kty: Optional[Type]
    body: "ETerm"


@dataclass(frozen=True)
class KLam:
    """Program abstraction \\k:A. u over the test alone."""

    kty: Optional[Type]
    body: "ETerm"


@dataclass(frozen=True)
class Star:
    pass


@dataclass(frozen=True)
class KVar:
    pass


@dataclass(frozen=True)
class Pair:
    fst: "PTerm"
    snd: "TTerm"


@dataclass(frozen=True)
class XLam:
    """Test abstraction \\x:A. u binding a program variable."""

    x: str
    xty: Optional[Type]
    body: "ETerm"


@dataclass(frozen=True)
class QLam:
    """Jump abstraction %k:A. u; applied to a test it resumes its body."""

    kty: Optional[Type]
    body: "ETerm"


@dataclass(frozen=True)
class PApp:
    """Computation t ; p feeding the program p to the test t."""

    test: "TTerm"
    proof: "PTerm"


@dataclass(frozen=True)
class QApp:
    """Computation q ! t resuming the jump q with the test t."""

    fn: QLam
    test: "TTerm"


PTerm = Union[PVar, PairLam, KLam]
TTerm = Union[Star, KVar, Pair, XLam]
QTerm = QLam
ETerm = Union[PApp, QApp]
Term = Union[PTerm, TTerm, QTerm, ETerm]

STAR = Star()
K = KVar()

_P_SORTS = (PVar, PairLam, KLam)
_T_SORTS = (Star, KVar, Pair, XLam)
_E_SORTS = (PApp, QApp)


def sort_of(term: Term) -> str:
    """One of 'p', 't', 'q', 'e'."""
    if isinstance(term, _P_SORTS):
        return "p"
    if isinstance(term, _T_SORTS):
        return "t"
    if isinstance(term, QLam):
        return "q"
    if isinstance(term, _E_SORTS):
        return "e"
    raise TypeError(f"not a term: {term!r}")


_fresh_counter = itertools.count(1)


def fresh_name(stem: str = "x") -> str:
    stem = stem.rstrip("0123456789").rstrip("_") or "x"
    return f"{stem}_{next(_fresh_counter)}"


# ---------------------------------------------------------------------------
# free variables and the spine


def free_pvars(term: Term) -> frozenset[str]:
    match term:
        case PVar(name):
            return frozenset((name,))
        case PairLam(x, _, _, body) | XLam(x, _, body):
            return free_pvars(body) - {x}
        case KLam(_, body) | QLam(_, body):
            return free_pvars(body)
        case Star() | KVar():
            return frozenset()
        case Pair(fst, snd):
            return free_pvars(fst) | free_pvars(snd)
        case PApp(test, proof):
            return free_pvars(test) | free_pvars(proof)
        case QApp(fn, test):
            return free_pvars(fn) | free_pvars(test)
    raise TypeError(f"not a term: {term!r}")


def spine(term: Term) -> str:
    """The free test position of a test or computation term: 'k' or 'star'.

    Program and jump terms bind every test position, so they report 'none'.
    """
    match term:
        case Star():
            return "star"
        case KVar():
            return "k"
        case Pair(_, snd):
            return spine(snd)
        case XLam(_, _, body):
            return spine(body)
        case PApp(test, _):
            return spine(test)
        case QApp(_, test):
            return spine(test)
        case PVar() | PairLam() | KLam() | QLam():
            return "none"
    raise TypeError(f"not a term: {term!r}")


@dataclass(frozen=True)
class FreeInfo:
    pvars: frozenset[str]
    test: str  # 'none' | 'k' | 'star'


def free_info(term: Term) -> FreeInfo:
    return FreeInfo(free_pvars(term), spine(term))


def is_t_closed(term: Term) -> bool:
    return spine(term) != "k"


def all_names(term: Term) -> frozenset[str]:
    """Every program variable name occurring in the term, bound or free."""
    match term:
        case PVar(name):
            return frozenset((name,))
        case PairLam(x, _, _, body) | XLam(x, _, body):
            return all_names(body) | {x}
        case KLam(_, body) | QLam(_, body):
            return all_names(body)
        case Star() | KVar():
            return frozenset()
        case Pair(fst, snd):
            return all_names(fst) | all_names(snd)
        case PApp(test, proof):
            return all_names(test) | all_names(proof)
        case QApp(fn, test):
            return all_names(fn) | all_names(test)
    raise TypeError(f"not a term: {term!r}")


# ---------------------------------------------------------------------------
# substitution

# A target is ('p', name) for a program variable, ('k',) for the free test
# variable, or ('*',) for the spine constant. The k and * payloads must be
# t-closed, so k-binders never capture anything and only program binders need
# freshening.


def _avoid(x: str, body: ETerm, payload: Term) -> tuple[str, ETerm]:
    if x in free_pvars(payload):
        x2 = fresh_name(x)
        body = _subst(body, ("p", x), PVar(x2))
        return x2, body
    return x, body


def _subst(term: Term, target: tuple, payload: Term) -> Term:
    kind = target[0]
    match term:
        case PVar(name):
            if kind == "p" and name == target[1]:
                return payload
            return term
        case PairLam(x, xty, kty, body):
            if kind == "k" or (kind == "p" and x == target[1]):
                return term
            x, body = _avoid(x, body, payload)
            return PairLam(x, xty, kty, _subst(body, target, payload))
        case KLam(kty, body):
            if kind == "k":
                return term
            return KLam(kty, _subst(body, target, payload))
        case QLam(kty, body):
            if kind == "k":
                return term
            return QLam(kty, _subst(body, target, payload))
        case Star():
            return payload if kind == "*" else term
        case KVar():
            return payload if kind == "k" else term
        case Pair(fst, snd):
            return Pair(_subst(fst, target, payload), _subst(snd, target, payload))
        case XLam(x, xty, body):
            if kind == "p" and x == target[1]:
                return term
            x, body = _avoid(x, body, payload)
            return XLam(x, xty, _subst(body, target, payload))
        case PApp(test, proof):
            return PApp(_subst(test, target, payload), _subst(proof, target, payload))
        case QApp(fn, test):
            return QApp(_subst(fn, target, payload), _subst(test, target, payload))
    raise TypeError(f"not a term: {term!r}")


def subst_pvar(term: Term, name: str, payload: PTerm) -> Term:
    """Capture-avoiding term[payload/name] for a program variable."""
    if sort_of(payload) != "p":
        raise TypeError("payload must be a program term")
    return _subst(term, ("p", name), payload)


def subst_k(term: Term, payload: TTerm) -> Term:
    """term[payload/k]; the payload must be a t-closed test term."""
    if sort_of(payload) != "t":
        raise TypeError("payload must be a test term")
    if not is_t_closed(payload):
        raise NotTClosed("substitution payload for k must be t-closed")
    return _subst(term, ("k",), payload)


def subst_star(term: Term, payload: TTerm) -> Term:
    """term[payload/*]; the payload must be a t-closed test term."""
    if sort_of(payload) != "t":
        raise TypeError("payload must be a test term")
    if not is_t_closed(payload):
        raise NotTClosed("substitution payload for * must be t-closed")
    return _subst(term, ("*",), payload)


# ---------------------------------------------------------------------------
# t-closure and composition


def t_close(term: Term) -> Term:
    """Plug * into the free test position: term[*/k]."""
    if spine(term) != "k":
        raise TClosureError("term is already t-closed")
    return subst_k(term, STAR)


def t_open(term: Term) -> Term:
    """Reopen the spine: term[k/*]. Inverse of t_close."""
    if spine(term) != "star":
        raise TClosureError("term is already open")
    return _subst(term, ("*",), K)


def star_compose(outer: TTerm, inner: Term) -> Term:
    """inner[outer/*]; both arguments t-closed.

    Associative with * as neutral element, on test terms and on computations
    alike.
    """
    if sort_of(outer) != "t":
        raise TypeError("outer must be a test term")
    if sort_of(inner) not in ("t", "e"):
        raise TypeError("inner must be a test or computation term")
    if not is_t_closed(outer) or not is_t_closed(inner):
        raise NotTClosed("star_compose needs t-closed arguments")
    return subst_star(inner, outer)


# ---------------------------------------------------------------------------
# alpha equivalence


def alpha_eq(a: Term, b: Term) -> bool:
    return _aeq(a, b, {}, {}, itertools.count())


def _aeq(a: Term, b: Term, ma: dict, mb: dict, nums: Iterator[int]) -> bool:
    match (a, b):
        case (PVar(x), PVar(y)):
            return ma.get(x, ("f", x)) == mb.get(y, ("f", y))
        case (PairLam(x1, xt1, kt1, b1), PairLam(x2, xt2, kt2, b2)):
            if xt1 != xt2 or kt1 != kt2:
                return False
            n = next(nums)
            return _aeq(b1, b2, {**ma, x1: n}, {**mb, x2: n}, nums)
        case (KLam(kt1, b1), KLam(kt2, b2)) | (QLam(kt1, b1), QLam(kt2, b2)):
            return kt1 == kt2 and _aeq(b1, b2, ma, mb, nums)
        case (Star(), Star()) | (KVar(), KVar()):
            return True
        case (Pair(f1, s1), Pair(f2, s2)):
            return _aeq(f1, f2, ma, mb, nums) and _aeq(s1, s2, ma, mb, nums)
        case (XLam(x1, xt1, b1), XLam(x2, xt2, b2)):
            if xt1 != xt2:
                return False
            n = next(nums)
            return _aeq(b1, b2, {**ma, x1: n}, {**mb, x2: n}, nums)
        case (PApp(t1, p1), PApp(t2, p2)):
            return _aeq(t1, t2, ma, mb, nums) and _aeq(p1, p2, ma, mb, nums)
        case (QApp(q1, t1), QApp(q2, t2)):
            return _aeq(q1, q2, ma, mb, nums) and _aeq(t1, t2, ma, mb, nums)
    return False


# ---------------------------------------------------------------------------
# printing


def _ann(name: str, ty: Optional[Type]) -> str:
    return f"{name}:{type_str(ty)}" if ty is not None else name


def term_str(term: Term) -> str:
    return _pr(term, top=True)


def _pr(term: Term, top: bool) -> str:
    match term:
        case PVar(name):
            return name
        case PairLam(x, xty, kty, body):
            s = f"\\({_ann(x, xty)}, {_ann('k', kty)}). {_pr(body, True)}"
        case KLam(kty, body):
            s = f"\\{_ann('k', kty)}. {_pr(body, True)}"
        case Star():
            return "*"
        case KVar():
            return "k"
        case Pair(fst, snd):
            return f"<{_pr(fst, False)}, {_pr(snd, False)}>"
        case XLam(x, xty, body):
            s = f"\\{_ann(x, xty)}. {_pr(body, True)}"
        case QLam(kty, body):
            s = f"%{_ann('k', kty)}. {_pr(body, True)}"
        case PApp(test, proof):
            return f"{_pr(test, False)} ; {_pr(proof, False)}"
        case QApp(fn, test):
            return f"({_pr(fn, True)}) ! {_pr(test, False)}"
        case _:
            raise TypeError(f"not a term: {term!r}")
    # binders reach here; wrap when embedded in a larger term
    return s if top else f"({s})"


# ---------------------------------------------------------------------------
# lexer, shared with the judgment parser


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<punct>[\\()\[\]<>,;!%*:.|-]))"
)


def tokenize(text: str) -> list[str]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise ParseError(f"cannot tokenize at: {rest[:20]!r}")
        pos = m.end()
        tok = m.group("arrow") or m.group("ident") or m.group("punct")
        toks.append(tok)
    # glue |> and |- back together
    out: list[str] = []
    i = 0
    while i < len(toks):
        if toks[i] == "|" and i + 1 < len(toks) and toks[i + 1] in (">", "-"):
            out.append("|" + toks[i + 1])
            i += 2
        else:
            out.append(toks[i])
            i += 1
    return out


_IDENT_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
_TYNAME_RE = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")


class TokenStream:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead: int = 0) -> Optional[str]:
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.next()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}")

    def done(self) -> bool:
        return self.pos >= len(self.tokens)


# ---------------------------------------------------------------------------
# type parsing


def parse_type(text: str, *, allow_o: bool = False) -> Type:
    ts = TokenStream(tokenize(text))
    ty = _parse_type(ts, allow_o)
    if not ts.done():
        raise ParseError(f"trailing input after type: {ts.peek()!r}")
    return ty


def _parse_type(ts: TokenStream, allow_o: bool) -> Type:
    left = _parse_type_atom(ts, allow_o)
    if ts.peek() == "->":
        ts.next()
        return Arrow(left, _parse_type(ts, allow_o))
    return left


def _parse_type_atom(ts: TokenStream, allow_o: bool) -> Type:
    tok = ts.next()
    if tok == "(":
        ty = _parse_type(ts, allow_o)
        ts.expect(")")
        return ty
    if tok == "o":
        if not allow_o:
            raise ReservedBaseType("base type o is reserved")
        return Base("o")
    if _TYNAME_RE.match(tok):
        return Base(tok)
    raise ParseError(f"expected a base type, got {tok!r}")


# ---------------------------------------------------------------------------
# term parsing


def parse_term(text: str) -> Term:
    ts = TokenStream(tokenize(text))
    term = _parse_term(ts)
    if not ts.done():
        raise ParseError(f"trailing input after term: {ts.peek()!r}")
    return term


def _expected(term: Term, sorts: str, what: str) -> Term:
    if sort_of(term) not in sorts:
        raise ParseError(f"{what} must be a {sorts}-term, got a {sort_of(term)}-term")
    return term


def _parse_term(ts: TokenStream) -> Term:
    left = _parse_operand(ts)
    while True:
        nxt = ts.peek()
        if nxt == ";" and sort_of(left) == "t":
            ts.next()
            right = _expected(_parse_operand(ts), "p", "right of ';'")
            left = PApp(left, right)
        elif nxt == "!" and sort_of(left) == "q":
            ts.next()
            right = _expected(_parse_operand(ts), "t", "right of '!'")
            left = QApp(left, right)
        else:
            return left


def _parse_ident(ts: TokenStream, *, allow_k: bool = False) -> str:
    tok = ts.next()
    if allow_k and tok == "k":
        return tok
    if tok in RESERVED:
        raise ParseError(f"{tok!r} is reserved")
    if not _IDENT_RE.match(tok):
        raise ParseError(f"expected an identifier, got {tok!r}")
    return tok


def _parse_opt_ann(ts: TokenStream) -> Optional[Type]:
    if ts.peek() == ":":
        ts.next()
        return _parse_type(ts, allow_o=False)
    return None


def _parse_body(ts: TokenStream) -> ETerm:
    ts.expect(".")
    body = _parse_term(ts)
    if sort_of(body) != "e":
        raise ParseError("binder body must be a computation")
    return body


def _parse_operand(ts: TokenStream) -> Term:
    tok = ts.peek()
    if tok is None:
        raise ParseError("unexpected end of input")
    if tok == "(":
        ts.next()
        term = _parse_term(ts)
        ts.expect(")")
        return term
    if tok == "*":
        ts.next()
        return STAR
    if tok == "k":
        ts.next()
        return K
    if tok == "<":
        ts.next()
        fst = _expected(_parse_term(ts), "p", "first pair component")
        ts.expect(",")
        snd = _expected(_parse_term(ts), "t", "second pair component")
        ts.expect(">")
        return Pair(fst, snd)
    if tok == "%":
        ts.next()
        if ts.next() != "k":
            raise ParseError("jump binder must bind k")
        kty = _parse_opt_ann(ts)
        return QLam(kty, _parse_body(ts))
    if tok == "\\":
        ts.next()
        nxt = ts.peek()
        if nxt == "(":
            ts.next()
            x = _parse_ident(ts)
            xty = _parse_opt_ann(ts)
            ts.expect(",")
            if ts.next() != "k":
                raise ParseError("second component of a pair binder must be k")
            kty = _parse_opt_ann(ts)
            ts.expect(")")
            return PairLam(x, xty, kty, _parse_body(ts))
        if nxt == "k":
            ts.next()
            kty = _parse_opt_ann(ts)
            return KLam(kty, _parse_body(ts))
        x = _parse_ident(ts)
        xty = _parse_opt_ann(ts)
        return XLam(x, xty, _parse_body(ts))
    ts.next()
    if _IDENT_RE.match(tok) and tok not in RESERVED:
        return PVar(tok)
    raise ParseError(f"unexpected token {tok!r}")


def parse_pterm(text: str) -> PTerm:
    return _sorted_parse(text, "p")


def parse_tterm(text: str) -> TTerm:
    return _sorted_parse(text, "t")


def parse_qterm(text: str) -> QTerm:
    return _sorted_parse(text, "q")


def parse_eterm(text: str) -> ETerm:
    return _sorted_parse(text, "e")


def _sorted_parse(text: str, sort: str):
    term = parse_term(text)
    if sort_of(term) != sort:
        raise ParseError(f"expected a {sort}-term, parsed a {sort_of(term)}-term")
    return term
