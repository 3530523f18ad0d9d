"""Type inference for the calculus and for hole-extended lambda terms.

A judgment for a program or jump subject carries a plain environment; test
and computation subjects additionally carry exactly one anchor, which types
the spine test position and is either k:tA or *:tA. Inference is syntax
directed: each constructor matches exactly one rule, so checking a judgment
means inferring and comparing.

Environments bind program variables only, all at role p, and reject duplicate
names instead of shadowing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import syntax
from .errors import (
    AnchorMismatch,
    DuplicateVariable,
    HoleTypeClash,
    MissingAnnotation,
    ParseError,
    PtqError,
    RoleMismatch,
    TypeClash,
    UnboundVariable,
    UncurriedNeedsPairs,
)
from .lam import App, Hole, Lam, LamTerm, Var, lam_str
from .syntax import (
    Arrow,
    Base,
    ETerm,
    KLam,
    KVar,
    Pair,
    PairLam,
    PApp,
    PVar,
    QApp,
    QLam,
    Star,
    Term,
    TokenStream,
    Type,
    XLam,
    _parse_term,
    _parse_type,
    _TYNAME_RE,
    sort_of,
    term_str,
    tokenize,
    type_str,
)


@dataclass(frozen=True)
class PtqType:
    role: str  # 'p' | 't' | 'q'
    carrier: Type

    def __str__(self) -> str:
        c = type_str(self.carrier)
        if isinstance(self.carrier, Arrow):
            c = f"({c})"
        return f"{self.role}{c}"


@dataclass(frozen=True)
class EMark:
    """The result of checking a computation; computations carry no type."""

    def __str__(self) -> str:
        return "ok"


E_OK = EMark()


@dataclass(frozen=True)
class TypeEnv:
    gamma: tuple[tuple[str, Type], ...] = ()
    anchor: Optional[tuple[str, Type]] = None  # ('k' | 'star', carrier)

    def lookup(self, name: str) -> Type:
        for x, ty in reversed(self.gamma):
            if x == name:
                return ty
        raise UnboundVariable(name)

    def extend(self, name: str, ty: Type) -> "TypeEnv":
        """Bind name, shadowing any outer binding of the same name.

        Substitution can nest two binders with one name without capture, so
        inference must allow shadowing; declaring a name twice in a written
        judgment context is still rejected, at parse time.
        """
        return TypeEnv(self.gamma + ((name, ty),), self.anchor)

    def with_anchor(self, kind: str, ty: Type) -> "TypeEnv":
        return TypeEnv(self.gamma, (kind, ty))

    def without_anchor(self) -> "TypeEnv":
        return TypeEnv(self.gamma, None)


@dataclass(frozen=True)
class Judgment:
    env: TypeEnv
    subject: Term
    claimed: Optional[PtqType]  # None exactly for computation subjects


def _need(ty: Optional[Type], where: str) -> Type:
    if ty is None:
        raise MissingAnnotation(f"missing annotation on {where}")
    return ty


def _infer_p(env: TypeEnv, p) -> Type:
    match p:
        case PVar(name):
            return env.lookup(name)
        case PairLam(x, xty, kty, body):
            a = _need(xty, f"\\({x}, k)")
            b = _need(kty, f"\\({x}, k)")
            _infer_e(env.extend(x, a).with_anchor("k", b), body)
            return Arrow(a, b)
        case KLam(kty, body):
            a = _need(kty, "\\k")
            _infer_e(env.with_anchor("k", a), body)
            return a
    raise TypeError(f"not a program term: {p!r}")


def _infer_q(env: TypeEnv, q) -> Type:
    match q:
        case QLam(kty, body):
            a = _need(kty, "%k")
            _infer_e(env.with_anchor("k", a), body)
            return a
    raise TypeError(f"not a jump term: {q!r}")


def _infer_t(env: TypeEnv, t) -> Type:
    kind, aty = env.anchor
    match t:
        case Star():
            if kind != "star":
                raise AnchorMismatch("term uses * but the anchor is k")
            return aty
        case KVar():
            if kind != "k":
                raise AnchorMismatch("term uses k but the anchor is *")
            return aty
        case Pair(fst, snd):
            a = _infer_p(env.without_anchor(), fst)
            b = _infer_t(env, snd)
            return Arrow(a, b)
        case XLam(x, xty, body):
            a = _need(xty, f"\\{x}")
            _infer_e(env.extend(x, a), body)
            return a
    raise TypeError(f"not a test term: {t!r}")


def _infer_e(env: TypeEnv, u: ETerm) -> None:
    match u:
        case PApp(test, proof):
            a = _infer_p(env.without_anchor(), proof)
            b = _infer_t(env, test)
        case QApp(fn, test):
            a = _infer_q(env.without_anchor(), fn)
            b = _infer_t(env, test)
        case _:
            raise TypeError(f"not a computation: {u!r}")
    if a != b:
        raise TypeClash(
            f"{type_str(a)} against {type_str(b)} in {term_str(u)}"
        )


def infer_ptq(env: TypeEnv, subject: Term) -> Union[PtqType, EMark]:
    """Infer the role and type of a subject under env, or raise."""
    sort = sort_of(subject)
    if sort in ("p", "q"):
        if env.anchor is not None:
            raise AnchorMismatch(f"a {sort}-judgment carries no anchor")
        infer = _infer_p if sort == "p" else _infer_q
        return PtqType(sort, infer(env, subject))
    if env.anchor is None:
        raise AnchorMismatch(f"a {sort}-judgment needs an anchor")
    if sort == "t":
        return PtqType("t", _infer_t(env, subject))
    _infer_e(env, subject)
    return E_OK


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    inferred: Optional[Union[PtqType, EMark, Type]] = None
    error: Optional[PtqError] = None

    def __bool__(self) -> bool:
        return self.ok


def check_judgment(j: Judgment) -> CheckResult:
    try:
        got = infer_ptq(j.env, j.subject)
    except PtqError as exc:
        return CheckResult(False, None, exc)
    if isinstance(got, EMark):
        if j.claimed is not None:
            return CheckResult(
                False, got, RoleMismatch("computations carry no type")
            )
        return CheckResult(True, got)
    if j.claimed is None:
        return CheckResult(False, got, RoleMismatch("missing claimed type"))
    if got.role != j.claimed.role:
        return CheckResult(
            False, got, RoleMismatch(f"inferred {got}, claimed {j.claimed}")
        )
    if got.carrier != j.claimed.carrier:
        return CheckResult(
            False, got, TypeClash(f"inferred {got}, claimed {j.claimed}")
        )
    return CheckResult(True, got)


# ---------------------------------------------------------------------------
# hole-extended lambda terms


@dataclass(frozen=True)
class LamEnv:
    vars: tuple[tuple[str, Type], ...] = ()
    hole: Optional[Type] = None

    def lookup(self, name: str) -> Type:
        for x, ty in reversed(self.vars):
            if x == name:
                return ty
        raise UnboundVariable(name)

    def extend(self, name: str, ty: Type) -> "LamEnv":
        return LamEnv(self.vars + ((name, ty),), self.hole)


def infer_lambda_box(env: LamEnv, m: LamTerm) -> Type:
    """Simply typed inference; every hole occurrence must share one type."""
    seen: list[Optional[Type]] = [env.hole]

    def go(env: LamEnv, m: LamTerm) -> Type:
        match m:
            case Var(name):
                return env.lookup(name)
            case Lam(x, xty, body):
                a = _need(xty, f"\\{x}")
                return Arrow(a, go(env.extend(x, a), body))
            case App(fn, arg):
                fty = go(env, fn)
                aty = go(env, arg)
                if not isinstance(fty, Arrow):
                    raise TypeClash(f"{type_str(fty)} is not a function type")
                if fty.dom != aty:
                    raise TypeClash(
                        f"argument {type_str(aty)} against {type_str(fty.dom)}"
                    )
                return fty.cod
            case Hole(ty):
                want = ty if ty is not None else seen[0]
                if want is None:
                    raise MissingAnnotation("hole type undeclared")
                if seen[0] is not None and want != seen[0]:
                    raise HoleTypeClash(
                        f"{type_str(want)} against {type_str(seen[0])}"
                    )
                seen[0] = want
                return want
            case _:
                raise UncurriedNeedsPairs("pairs have no type translation here")

    return go(env, m)


@dataclass(frozen=True)
class LamJudgment:
    env: LamEnv
    subject: LamTerm
    ty: Type


def check_lambda_judgment(j: LamJudgment) -> CheckResult:
    try:
        got = infer_lambda_box(j.env, j.subject)
    except PtqError as exc:
        return CheckResult(False, None, exc)
    if got != j.ty:
        return CheckResult(
            False, got, TypeClash(f"inferred {type_str(got)}, claimed {type_str(j.ty)}")
        )
    return CheckResult(True, got)


# ---------------------------------------------------------------------------
# judgment text form


def judgment_str(j: Judgment) -> str:
    env = ", ".join(f"{x}:{PtqType('p', ty)}" for x, ty in j.env.gamma)
    parts = [env] if env else []
    if j.env.anchor is not None:
        kind, ty = j.env.anchor
        mark = "k" if kind == "k" else "*"
        parts.append(f"|> {mark}:{PtqType('t', ty)}")
    subject = term_str(j.subject)
    if j.claimed is None:
        parts.append(f"|- {subject}")
    else:
        parts.append(f"|- {subject} : {j.claimed}")
    return " ".join(parts)


def lam_judgment_str(j: LamJudgment) -> str:
    entries = [f"{x}:{type_str(ty)}" for x, ty in j.env.vars]
    if j.env.hole is not None:
        entries.append(f"[]:{type_str(j.env.hole)}")
    env = ", ".join(entries)
    lead = f"{env} " if env else ""
    return f"{lead}|- {lam_str(j.subject)} : {type_str(j.ty)}"


def _parse_ptq_type(ts: TokenStream) -> PtqType:
    tok = ts.next()
    role, rest = tok[0], tok[1:]
    if role not in ("p", "t", "q"):
        raise ParseError(f"expected a role letter p/t/q, got {tok!r}")
    if rest:
        if not _TYNAME_RE.match(rest):
            raise ParseError(f"bad base type {rest!r}")
        return PtqType(role, Base(rest))
    ts.expect("(")
    ty = _parse_type(ts, allow_o=False)
    ts.expect(")")
    return PtqType(role, ty)


def parse_judgment(text: str) -> Judgment:
    """Parse `x:pA, y:p(A->B) |> *:tB |- subject : pA`; anchor and claim optional."""
    ts = TokenStream(tokenize(text))
    gamma: list[tuple[str, Type]] = []
    while ts.peek() not in ("|>", "|-"):
        name = ts.next()
        if name in syntax.RESERVED or not syntax._IDENT_RE.match(name):
            raise ParseError(f"bad environment variable {name!r}")
        ts.expect(":")
        pty = _parse_ptq_type(ts)
        if pty.role != "p":
            raise RoleMismatch("environment bindings carry role p")
        if any(x == name for x, _ in gamma):
            raise DuplicateVariable(f"{name} is already bound")
        gamma.append((name, pty.carrier))
        if ts.peek() == ",":
            ts.next()
    anchor = None
    if ts.peek() == "|>":
        ts.next()
        mark = ts.next()
        if mark not in ("k", "*"):
            raise ParseError(f"anchor must be k or *, got {mark!r}")
        ts.expect(":")
        aty = _parse_ptq_type(ts)
        if aty.role != "t":
            raise RoleMismatch("anchors carry role t")
        anchor = ("k" if mark == "k" else "star", aty.carrier)
    ts.expect("|-")
    subject = _parse_term(ts)
    claimed = None
    if ts.peek() == ":":
        ts.next()
        claimed = _parse_ptq_type(ts)
    if not ts.done():
        raise ParseError(f"trailing input after judgment: {ts.peek()!r}")
    if claimed is None and sort_of(subject) != "e":
        raise ParseError("missing claimed type")
    if claimed is not None and sort_of(subject) == "e":
        raise RoleMismatch("computations carry no type")
    return Judgment(TypeEnv(tuple(gamma), anchor), subject, claimed)


def parse_lam_judgment(text: str) -> LamJudgment:
    """Parse `x:A, []:B |- M : C` over the hole-extended lambda language."""
    ts = TokenStream(tokenize(text))
    vars_: list[tuple[str, Type]] = []
    hole: Optional[Type] = None
    while ts.peek() != "|-":
        if ts.peek() == "[":
            ts.next()
            ts.expect("]")
            ts.expect(":")
            if hole is not None:
                raise HoleTypeClash("hole type declared twice")
            hole = _parse_type(ts, allow_o=True)
        else:
            name = ts.next()
            ts.expect(":")
            if any(x == name for x, _ in vars_):
                raise DuplicateVariable(f"{name} is already bound")
            vars_.append((name, _parse_type(ts, allow_o=True)))
        if ts.peek() == ",":
            ts.next()
    ts.expect("|-")
    # subject runs until the final ':' that precedes the claimed type
    rest = ts.tokens[ts.pos :]
    try:
        split = len(rest) - 1 - rest[::-1].index(":")
    except ValueError:
        raise ParseError("missing claimed type") from None
    sub_ts = TokenStream(rest[:split])
    subject = _parse_lam_inner(sub_ts)
    ty_ts = TokenStream(rest[split + 1 :])
    ty = _parse_type(ty_ts, allow_o=True)
    if not ty_ts.done():
        raise ParseError(f"trailing input after judgment: {ty_ts.peek()!r}")
    return LamJudgment(LamEnv(tuple(vars_), hole), subject, ty)


def _parse_lam_inner(ts: TokenStream) -> LamTerm:
    from .lam import _parse_lam

    term = _parse_lam(ts)
    if not ts.done():
        raise ParseError(f"trailing input after term: {ts.peek()!r}")
    return term
