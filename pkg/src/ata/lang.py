"""Text front-end for knowledge bases (``.atakb``) and claims (``.ataclaim``).

KB grammar, one declaration per line (indented lines continue the previous
declaration, ``#`` starts a comment)::

    name "Travel cover"
    version "2.1"
    source "TC-2024"
    sort Person "a natural person"
    cond is_sick(Person) "suffers an acute illness"
    goal is_covered(Person)
    rule r1: forall p:Person. is_sick(p) -> is_covered(p)
      from "The insured is covered when sick." at "2.1"
    structural rule sym: forall p, q:Person. is_sibling(p, q) -> is_sibling(q, p)
      from "Siblinghood is mutual."

Rule antecedents are in DNF: ``&`` binds tighter than ``|``, conjunctions may
be parenthesised, ``!`` negates, ``true`` is the empty antecedent.

Claim grammar::

    claim c001
    text "Alice is the sister of Bob"
    const ALICE, BOB: Person
    fact is_sister(ALICE, BOB)
    fact f2: !is_sick(BOB)
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from ata.logic import (
    Atom,
    Constant,
    Diagnostic,
    GoalInstance,
    Literal,
    PredicateKind,
    PredicateSymbol,
    Provenance,
    Sentence,
    Severity,
    Signature,
    Sort,
    Span,
    Term,
    check_goal_instance,
    check_ground_literal,
    error,
    has_errors,
    sort_check,
    validate_signature,
)


class DiagnosticError(Exception):
    """Raised when text fails to parse; carries every collected diagnostic."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        errors = [d for d in diagnostics if d.is_error]
        head = "; ".join(str(d) for d in errors[:3])
        more = f" (+{len(errors) - 3} more)" if len(errors) > 3 else ""
        super().__init__(head + more)


@dataclass(frozen=True)
class KnowledgeBase:
    signature: Signature
    theory: tuple[Sentence, ...] = ()
    name: str = ""
    version: str = ""
    source: str = ""

    @property
    def goals(self) -> tuple[PredicateSymbol, ...]:
        return self.signature.goals()

    def sentence(self, sid: str) -> Sentence:
        for s in self.theory:
            if s.id == sid:
                return s
        raise KeyError(sid)


@dataclass(frozen=True)
class Fact:
    id: str
    literal: Literal

    def __str__(self) -> str:
        return str(self.literal)


@dataclass(frozen=True)
class ClaimDocument:
    id: str
    constants: tuple[Constant, ...] = ()
    facts: tuple[Fact, ...] = ()
    raw_text: str | None = None

    def fact(self, fid: str) -> Fact:
        for f in self.facts:
            if f.id == fid:
                return f
        raise KeyError(fid)


@dataclass
class Analysis:
    """Outcome of analysing one source text: the value (``None`` on error) plus diagnostics."""

    value: object
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not has_errors(self.diagnostics)


# --- lexing -----------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<comment>\#.*)
  | (?P<arrow>->)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<badstring>"(?:[^"\\\n]|\\.)*)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*(?:@[A-Za-z][A-Za-z0-9_]*)?)
  | (?P<punct>[:,.()&|!])
    """,
    re.VERBOSE,
)
_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", '"': '"', "\\": "\\"}


@dataclass(frozen=True)
class Token:
    kind: str  # ident | string | punct | end
    value: str
    span: Span


def _unescape(body: str) -> str:
    return re.sub(r"\\(.)", lambda m: _ESCAPES.get(m.group(1), m.group(1)), body)


def quote(text: str) -> str:
    out = text.replace("\\", "\\\\").replace('"', '\\"')
    return '"' + out.replace("\n", "\\n").replace("\t", "\\t").replace("\r", "\\r") + '"'


def _statements(text: str, file: str, diags: list[Diagnostic]) -> list[list[Token]]:
    """Split ``text`` into logical statements of tokens; indented lines continue.

    A statement containing a lexical error is reported and dropped.
    """
    statements: list[tuple[list[Token], bool]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens: list[Token] = []
        bad = False
        pos = 0
        while pos < len(line):
            m = _TOKEN.match(line, pos)
            span = Span(lineno, pos + 1, lineno, (m.end() if m else pos + 1) + 1, file)
            if m is None or m.lastgroup == "badstring":
                what = "unterminated string" if m else f"unexpected character {line[pos]!r}"
                diags.append(error("SyntaxError", what, span=span))
                bad = True
                break
            kind = m.lastgroup
            if kind == "string":
                tokens.append(Token("string", _unescape(m.group()[1:-1]), span))
            elif kind == "arrow":
                tokens.append(Token("punct", "->", span))
            elif kind in ("ident", "punct"):
                tokens.append(Token(kind, m.group(), span))
            pos = m.end()
        if not tokens and not bad:
            continue
        if line[:1] in (" ", "\t") and statements:
            prev_tokens, prev_bad = statements[-1]
            statements[-1] = (prev_tokens + tokens, prev_bad or bad)
        else:
            statements.append((tokens, bad))
    return [toks for toks, bad in statements if toks and not bad]


class _SyntaxFailure(Exception):
    def __init__(self, diagnostic: Diagnostic):
        self.diagnostic = diagnostic


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0
        last = tokens[-1].span
        self.end = Token("end", "", Span(last.end_line, last.end_column, last.end_line, last.end_column, last.file))

    def peek(self, offset: int = 0) -> Token:
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else self.end

    def next(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def at(self, value: str) -> bool:
        tok = self.peek()
        return tok.kind in ("punct", "ident") and tok.value == value

    def accept(self, value: str) -> Token | None:
        if self.at(value):
            return self.next()
        return None

    def fail(self, message: str, tok: Token | None = None) -> _SyntaxFailure:
        tok = tok or self.peek()
        found = "end of statement" if tok.kind == "end" else repr(tok.value)
        return _SyntaxFailure(error("SyntaxError", f"{message}, found {found}", span=tok.span))

    def expect(self, value: str) -> Token:
        if not self.at(value):
            raise self.fail(f"expected {value!r}")
        return self.next()

    def ident(self, what: str) -> Token:
        tok = self.peek()
        if tok.kind != "ident":
            raise self.fail(f"expected {what}")
        return self.next()

    def string(self, what: str) -> Token:
        tok = self.peek()
        if tok.kind != "string":
            raise self.fail(f"expected {what} string")
        return self.next()

    def done(self) -> None:
        if self.peek().kind != "end":
            raise self.fail("unexpected trailing input")


def _join(a: Span, b: Span) -> Span:
    return Span(a.line, a.column, b.end_line, b.end_column, a.file)


# --- literal / rule body parsing ----------------------------------------------


def _literal(cur: _Cursor, spans: dict[str, Span], path: str) -> Literal:
    start = cur.peek()
    negated = cur.accept("!") is not None
    name = cur.ident("predicate name")
    cur.expect("(")
    args: list[Term] = []
    if not cur.at(")"):
        while True:
            tok = cur.ident("argument")
            spans[f"{path}/arg{len(args)}"] = tok.span
            args.append(Term(tok.value, True))
            if not cur.accept(","):
                break
    close = cur.expect(")")
    spans[path] = _join(start.span, close.span)
    return Literal(Atom(name.value, tuple(args)), negated)


def _conjunction(cur: _Cursor, spans: dict[str, Span], i: int, out: list[Literal]) -> None:
    while True:
        if cur.at("("):
            cur.next()
            _conjunction(cur, spans, i, out)
            if cur.at("|"):
                raise _SyntaxFailure(
                    error("NotDNF", "disjunction nested inside a conjunction", span=cur.peek().span)
                )
            cur.expect(")")
        else:
            out.append(_literal(cur, spans, f"?/antecedent[{i}][{len(out)}]"))
        if not cur.accept("&"):
            return


def _rule_body(cur: _Cursor, spans: dict[str, Span]):
    variables: list[tuple[str, str]] = []
    var_spans: dict[str, Span] = {}
    if cur.accept("forall"):
        while True:
            names = [cur.ident("variable name")]
            while cur.accept(","):
                names.append(cur.ident("variable name"))
            cur.expect(":")
            sort = cur.ident("sort name")
            for n in names:
                variables.append((n.value, sort.value))
                var_spans[f"?/vars/{n.value}"] = n.span
            if not cur.accept(","):
                break
        cur.expect(".")
    spans.update(var_spans)

    antecedent: list[tuple[Literal, ...]] = []
    if cur.accept("true"):
        cur.expect("->")
        goal = _literal(cur, spans, "?/goal")
        return variables, antecedent, goal
    while True:
        conj: list[Literal] = []
        _conjunction(cur, spans, len(antecedent), conj)
        antecedent.append(tuple(conj))
        if not cur.accept("|"):
            break
    if cur.accept("->"):
        goal = _literal(cur, spans, "?/goal")
        return variables, antecedent, goal
    if len(antecedent) == 1 and len(antecedent[0]) == 1:
        # bare literal: unconditional assertion
        only = spans.pop("?/antecedent[0][0]")
        for k in [k for k in spans if k.startswith("?/antecedent[0][0]/")]:
            spans["?/goal" + k[len("?/antecedent[0][0]") :]] = spans.pop(k)
        spans["?/goal"] = only
        return variables, [], antecedent[0][0]
    raise cur.fail("expected '->'")


def _span_lookup(spans: dict[str, Span], where: str) -> Span | None:
    key = where
    while key:
        if key in spans:
            return spans[key]
        if "/" not in key:
            return None
        key = key.rsplit("/", 1)[0]
    return None


def _sorted(diags: list[Diagnostic]) -> list[Diagnostic]:
    def key(d: Diagnostic):
        if d.span is None:
            return (1, 0, 0)
        return (0, d.span.line, d.span.column)

    return sorted(diags, key=key)


# --- knowledge bases --------------------------------------------------------


def analyze_kb(text: str, source: str = "<string>") -> Analysis:
    """Parse and check KB text, collecting every diagnostic."""
    diags: list[Diagnostic] = []
    statements = _statements(text, source, diags)
    sorts: list[Sort] = []
    preds: list[PredicateSymbol] = []
    theory: list[Sentence] = []
    meta = {"name": "", "version": "", "source": ""}
    spans: dict[str, Span] = {}

    if not statements and not diags:
        diags.append(Diagnostic(Severity.WARNING, "EmptyKB", "knowledge base declares nothing", span=None))

    for tokens in statements:
        cur = _Cursor(tokens)
        head = cur.peek()
        try:
            kw = cur.ident("declaration keyword")
            if kw.value in meta:
                meta[kw.value] = cur.string(kw.value).value
                cur.done()
            elif kw.value == "sort":
                name = cur.ident("sort name")
                desc = cur.string("description").value if cur.peek().kind == "string" else ""
                cur.done()
                sorts.append(Sort(name.value, desc))
                spans.setdefault(f"sort {name.value}", name.span)
            elif kw.value in ("cond", "goal"):
                name = cur.ident("predicate name")
                cur.expect("(")
                arity: list[Token] = []
                if not cur.at(")"):
                    arity.append(cur.ident("sort name"))
                    while cur.accept(","):
                        arity.append(cur.ident("sort name"))
                cur.expect(")")
                definition = cur.string("definition").value if cur.peek().kind == "string" else ""
                cur.done()
                kind = PredicateKind.CONDITION if kw.value == "cond" else PredicateKind.GOAL
                preds.append(PredicateSymbol(name.value, tuple(t.value for t in arity), kind, definition))
                spans.setdefault(name.value, name.span)
                for i, t in enumerate(arity):
                    spans.setdefault(f"{name.value}/arg{i}", t.span)
            elif kw.value in ("rule", "structural"):
                structural = kw.value == "structural"
                if structural:
                    cur.expect("rule")
                rid = cur.ident("rule id")
                cur.expect(":")
                local: dict[str, Span] = {}
                variables, antecedent, goal = _rule_body(cur, local)
                if cur.accept("from") is None:
                    raise _SyntaxFailure(
                        error("MissingProvenance", f"rule {rid.value} lacks 'from \"...\"'", span=cur.peek().span)
                    )
                prov_tok = cur.string("provenance")
                location = cur.string("location").value if cur.accept("at") else ""
                cur.done()
                if any(s.id == rid.value for s in theory):
                    diags.append(error("DuplicateId", f"rule id {rid.value} reused", span=rid.span))
                    continue
                for k, v in local.items():
                    spans[rid.value + k[1:]] = v
                spans.setdefault(rid.value, rid.span)
                if not prov_tok.value.strip():
                    diags.append(
                        Diagnostic(Severity.LINT, "EmptyProvenance", f"rule {rid.value} has empty provenance", rid.value, prov_tok.span)
                    )
                theory.append(
                    Sentence(
                        rid.value,
                        tuple(variables),
                        tuple(antecedent),
                        goal,
                        Provenance(prov_tok.value, location),
                        structural,
                    )
                )
            else:
                raise cur.fail("unknown declaration", head)
        except _SyntaxFailure as exc:
            diags.append(exc.diagnostic)

    sig = Signature(tuple(sorts), tuple(preds))
    for d in validate_signature(sig):
        diags.append(Diagnostic(d.severity, d.code, d.message, d.where, _span_lookup(spans, d.where)))
    for s in theory:
        for d in sort_check(sig, s):
            diags.append(Diagnostic(d.severity, d.code, d.message, d.where, _span_lookup(spans, d.where)))
        used = {t.name for _, lit in s.literals() for t in lit.atom.args if t.is_var}
        for name, _ in s.variables:
            if name not in used:
                diags.append(
                    Diagnostic(Severity.LINT, "UnusedVariable", f"variable {name} unused in rule {s.id}",
                               f"{s.id}/vars/{name}", _span_lookup(spans, f"{s.id}/vars/{name}"))
                )

    diags = _sorted(diags)
    if has_errors(diags):
        return Analysis(None, diags)
    return Analysis(KnowledgeBase(sig, tuple(theory), meta["name"], meta["version"], meta["source"]), diags)


def parse_kb(text: str, source: str = "<string>") -> KnowledgeBase:
    """Parse KB text; raises :class:`DiagnosticError` if any error is found."""
    result = analyze_kb(text, source)
    if not result.ok:
        raise DiagnosticError(result.diagnostics)
    return result.value  # type: ignore[return-value]


def _format_literal(lit: Literal) -> str:
    return str(lit)


def format_sentence_body(s: Sentence) -> str:
    parts = []
    if s.variables:
        parts.append("forall " + ", ".join(f"{n}:{t}" for n, t in s.variables) + ".")
    if not s.antecedent:
        parts.append("true")
    else:
        disj = []
        for conj in s.antecedent:
            body = " & ".join(map(_format_literal, conj))
            disj.append(f"({body})" if len(conj) > 1 and len(s.antecedent) > 1 else body)
        parts.append(" | ".join(disj))
    parts.append("->")
    parts.append(_format_literal(s.goal))
    return " ".join(parts)


def serialize_kb(kb: KnowledgeBase) -> str:
    out: list[str] = []
    for key in ("name", "version", "source"):
        value = getattr(kb, key)
        if value:
            out.append(f"{key} {quote(value)}")
    if out:
        out.append("")
    for s in kb.signature.sorts:
        out.append(f"sort {s.name}" + (f" {quote(s.description)}" if s.description else ""))
    if kb.signature.sorts:
        out.append("")
    for p in kb.signature.predicates:
        line = f"{p.kind.value} {p.name}({', '.join(p.arity)})"
        out.append(line + (f" {quote(p.definition)}" if p.definition else ""))
    if kb.signature.predicates:
        out.append("")
    for s in kb.theory:
        head = "structural rule" if s.structural else "rule"
        out.append(f"{head} {s.id}: {format_sentence_body(s)}")
        tail = f"  from {quote(s.provenance.text)}"
        if s.provenance.location:
            tail += f" at {quote(s.provenance.location)}"
        out.append(tail)
    while out and out[-1] == "":
        out.pop()
    return "\n".join(out) + "\n" if out else ""


# --- claims -----------------------------------------------------------------


def analyze_claim(text: str, kb: KnowledgeBase, source: str = "<string>", default_id: str = "") -> Analysis:
    diags: list[Diagnostic] = []
    statements = _statements(text, source, diags)
    claim_id = default_id
    raw_text: str | None = None
    constants: list[Constant] = []
    facts: list[Fact] = []
    spans: dict[str, Span] = {}
    fact_spans: dict[str, dict[str, Span]] = {}
    sig = kb.signature

    for tokens in statements:
        cur = _Cursor(tokens)
        head = cur.peek()
        try:
            kw = cur.ident("declaration keyword")
            if kw.value == "claim":
                claim_id = cur.ident("claim id").value
                cur.done()
            elif kw.value == "text":
                raw_text = cur.string("claim text").value
                cur.done()
            elif kw.value == "const":
                names = [cur.ident("constant name")]
                while cur.accept(","):
                    names.append(cur.ident("constant name"))
                cur.expect(":")
                sort = cur.ident("sort name")
                cur.done()
                for n in names:
                    if any(c.name == n.value for c in constants):
                        diags.append(error("DuplicateConstant", f"constant {n.value} declared twice", span=n.span))
                        continue
                    if sort.value not in sig.sort_names:
                        diags.append(error("UnknownSort", f"undeclared sort {sort.value}", span=sort.span))
                        continue
                    if n.value.split("@")[0] != n.value.split("@")[0].upper():
                        diags.append(Diagnostic(Severity.LINT, "ConstantCase", f"constant {n.value} is not uppercase", span=n.span))
                    constants.append(Constant(n.value, sort.value))
            elif kw.value == "fact":
                fid = f"f{len(facts) + 1}"
                if cur.peek().kind == "ident" and cur.peek(1).value == ":":
                    fid_tok = cur.next()
                    cur.next()
                    fid = fid_tok.value
                local: dict[str, Span] = {}
                start = cur.peek()
                negated = cur.accept("!") is not None
                name = cur.ident("predicate name")
                cur.expect("(")
                args: list[Term] = []
                if not cur.at(")"):
                    while True:
                        tok = cur.ident("constant")
                        local[f"arg{len(args)}"] = tok.span
                        args.append(Term.const(tok.value))
                        if not cur.accept(","):
                            break
                close = cur.expect(")")
                cur.done()
                local[""] = _join(start.span, close.span)
                if any(f.id == fid for f in facts):
                    diags.append(error("DuplicateId", f"fact id {fid} reused", span=start.span))
                    continue
                facts.append(Fact(fid, Literal(Atom(name.value, tuple(args)), negated)))
                fact_spans[fid] = local
            else:
                raise cur.fail("unknown declaration", head)
        except _SyntaxFailure as exc:
            diags.append(exc.diagnostic)

    full = sig.with_constants(constants)
    for f in facts:
        local = fact_spans[f.id]
        pred = sig.predicate(f.literal.predicate)
        if pred is not None and pred.is_goal:
            diags.append(
                error("GoalFactForbidden", f"claims may not assert goal predicate {pred.name}", f.id, local[""])
            )
            continue
        for d in check_ground_literal(full, f.literal, f.id):
            sub = d.where[len(f.id) + 1 :] if d.where.startswith(f.id + "/") else ""
            diags.append(Diagnostic(d.severity, d.code, d.message, d.where, local.get(sub, local[""])))

    diags = _sorted(diags)
    if has_errors(diags):
        return Analysis(None, diags)
    return Analysis(ClaimDocument(claim_id, tuple(constants), tuple(facts), raw_text), diags)


def parse_claim(text: str, kb: KnowledgeBase, source: str = "<string>", default_id: str = "") -> ClaimDocument:
    result = analyze_claim(text, kb, source, default_id)
    if not result.ok:
        raise DiagnosticError(result.diagnostics)
    return result.value  # type: ignore[return-value]


def validate_claim(claim: ClaimDocument, kb: KnowledgeBase) -> list[Diagnostic]:
    """Re-check an in-memory claim (e.g. one produced by extraction)."""
    return analyze_claim(serialize_claim(claim), kb).diagnostics


def serialize_claim(claim: ClaimDocument, include_text: bool = True) -> str:
    out = []
    if claim.id:
        out.append(f"claim {claim.id}")
    if include_text and claim.raw_text is not None:
        out.append(f"text {quote(claim.raw_text)}")
    for c in claim.constants:
        out.append(f"const {c.name}: {c.sort}")
    for f in claim.facts:
        out.append(f"fact {f.id}: {f.literal}")
    return "\n".join(out) + "\n" if out else ""


def check_goal(kb: KnowledgeBase, claim: ClaimDocument, goal: GoalInstance) -> list[Diagnostic]:
    return check_goal_instance(kb.signature.with_constants(claim.constants), goal)


# --- SMT-LIB export -----------------------------------------------------------


def _sym(name: str) -> str:
    return f"|{name}|"


def _smt_atom(atom: Atom) -> str:
    if not atom.args:
        return _sym(atom.predicate)
    return "(" + " ".join([_sym(atom.predicate)] + [_sym(t.name) for t in atom.args]) + ")"


def _smt_literal(lit: Literal) -> str:
    a = _smt_atom(lit.atom)
    return f"(not {a})" if lit.negated else a


def _smt_nary(op: str, items: list[str], empty: str) -> str:
    if not items:
        return empty
    if len(items) == 1:
        return items[0]
    return f"({op} {' '.join(items)})"


def export_smtlib(kb: KnowledgeBase, claim: ClaimDocument, goal: GoalInstance) -> str:
    """Render ``T & facts & !goal`` as an SMT-LIB v2 script (logic UF).

    Sorts without claim constants have an empty Herbrand domain for the
    internal engine; quantifiers over them are relativised to an
    uninterpreted ``dom:<Sort>`` guard so an external solver agrees.
    """
    from ata import __version__

    populated = {c.sort for c in claim.constants}
    empty_sorts = [s.name for s in kb.signature.sorts if s.name not in populated]

    names: list[tuple[str, str]] = []
    body: list[str] = []
    for s in kb.signature.sorts:
        body.append(f"(declare-sort {_sym(s.name)} 0)")
    for s in empty_sorts:
        body.append(f"(declare-fun {_sym('dom:' + s)} ({_sym(s)}) Bool)")
    for c in claim.constants:
        body.append(f"(declare-const {_sym(c.name)} {_sym(c.sort)})")
    for p in kb.signature.predicates:
        body.append(f"(declare-fun {_sym(p.name)} ({' '.join(_sym(a) for a in p.arity)}) Bool)")

    for s in kb.theory:
        ante = _smt_nary(
            "or",
            [_smt_nary("and", [_smt_literal(l) for l in conj], "true") for conj in s.antecedent],
            "true",
        )
        guards = [f"({_sym('dom:' + sort)} {_sym(v)})" for v, sort in s.variables if sort in empty_sorts]
        if guards:
            ante = _smt_nary("and", guards + ([ante] if ante != "true" else []), "true")
        formula = _smt_literal(s.goal) if ante == "true" else f"(=> {ante} {_smt_literal(s.goal)})"
        if s.variables:
            binders = " ".join(f"({_sym(v)} {_sym(sort)})" for v, sort in s.variables)
            formula = f"(forall ({binders}) {formula})"
        label = f"rule:{s.id}"
        names.append((label, f"rule {s.id}"))
        body.append(f"(assert (! {formula} :named {_sym(label)}))")
    for f in claim.facts:
        label = f"fact:{f.id}"
        names.append((label, f"fact {f.id} {f.literal}"))
        body.append(f"(assert (! {_smt_literal(f.literal)} :named {_sym(label)}))")
    names.append(("negated_goal", f"negated goal {goal}"))
    body.append(f"(assert (! (not {_smt_atom(goal.atom())}) :named {_sym('negated_goal')}))")
    body.append("(check-sat)")

    header = [
        f"; ata {__version__} export: sat <=> not covered, unsat <=> covered",
        f"; claim {claim.id or '<anonymous>'}, goal {goal}",
        "; assertion names:",
    ]
    header += [f";   {_sym(label)} -> {what}" for label, what in names]
    preamble = ["(set-option :produce-unsat-cores true)", "(set-logic UF)"]
    return "\n".join(header + preamble + body) + "\n"


__all__ = [
    "Analysis",
    "ClaimDocument",
    "DiagnosticError",
    "Fact",
    "KnowledgeBase",
    "analyze_claim",
    "analyze_kb",
    "check_goal",
    "export_smtlib",
    "format_sentence_body",
    "parse_claim",
    "parse_kb",
    "quote",
    "serialize_claim",
    "serialize_kb",
    "validate_claim",
]
