"""Claim axiomization: per-sort entity extraction and per-predicate relation extraction.

Every extractor, offline or remote, answers one :class:`ExtractionRequest` at a
time with a JSON-like payload. Payloads pass a schema gate generated from the
request target before anything reaches a :class:`ClaimDocument`; a payload
that fails the gate is rejected whole.

Rule tables (``.atarules``) drive the offline extractor::

    stop The A An He She They
    entity Person {X:Cap} is|was
    relation is_sister(A, B) {A} is the sister of {B}
    relation !is_insured(P) {P} is not insured

Pattern tokens: ``{slot}`` captures a word, ``{slot:Cap}`` a capitalised word,
``a|b`` matches any alternative, ``*`` skips words within the sentence, and
anything else matches literally (case-insensitive).
"""
from __future__ import annotations

import json
import re
import time
import unicodedata
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from typing import Protocol, Sequence, Union

import jsonschema

from ata.lang import ClaimDocument, DiagnosticError, Fact, KnowledgeBase, validate_claim
from ata.logic import IDENTIFIER, Atom, Constant, Literal, PredicateSymbol, Sort, Term, error, has_errors


class ExtractionError(Exception):
    code = "ExtractionError"


class ExternalExtractorUnavailable(ExtractionError):
    code = "ExternalExtractorUnavailable"


class SchemaViolation(ExtractionError):
    code = "SchemaViolation"


class AxiomizationError(ExtractionError):
    code = "AxiomizationError"

    def __init__(self, failures: list[tuple[str, ExtractionError]]):
        self.failures = failures
        super().__init__("; ".join(f"{target}: {exc.code}: {exc}" for target, exc in failures))


@dataclass(frozen=True)
class EntityTarget:
    sort: str
    description: str = ""

    def describe(self) -> str:
        return f"entity {self.sort}"

    def to_json(self) -> dict:
        return {"kind": "entity", "sort": self.sort, "description": self.description}


@dataclass(frozen=True)
class RelationTarget:
    predicate: str
    arity: tuple[str, ...]
    definition: str
    constants: tuple[tuple[str, str], ...]  # (name, sort), restricted to the arity's sorts

    def describe(self) -> str:
        return f"relation {self.predicate}"

    def to_json(self) -> dict:
        return {
            "kind": "relation",
            "predicate": self.predicate,
            "arity": list(self.arity),
            "definition": self.definition,
            "constants": [{"name": n, "sort": s} for n, s in self.constants],
        }


Target = Union[EntityTarget, RelationTarget]


def response_schema(target: Target) -> dict:
    if isinstance(target, EntityTarget):
        return {
            "type": "object",
            "properties": {
                "constants": {
                    "type": "array",
                    "items": {"type": "string", "pattern": "^[A-Za-z][A-Za-z0-9_]*$"},
                }
            },
            "required": ["constants"],
            "additionalProperties": False,
        }
    slots = []
    for sort in target.arity:
        names = [n for n, s in target.constants if s == sort]
        slots.append({"enum": names} if names else {"not": {}})
    literal = {
        "type": "object",
        "properties": {
            "predicate": {"const": target.predicate},
            "negated": {"type": "boolean"},
            "args": {
                "type": "array",
                "prefixItems": slots,
                "items": False,
                "minItems": len(slots),
                "maxItems": len(slots),
            },
        },
        "required": ["predicate", "negated", "args"],
        "additionalProperties": False,
    }
    return {
        "type": "object",
        "properties": {"literals": {"type": "array", "items": literal}},
        "required": ["literals"],
        "additionalProperties": False,
    }


@dataclass(frozen=True)
class ExtractionRequest:
    text: str
    target: Target

    def to_json(self) -> dict:
        return {
            "text": self.text,
            "target": self.target.to_json(),
            "response_schema": response_schema(self.target),
        }

    def to_bytes(self) -> bytes:
        return json.dumps(self.to_json(), ensure_ascii=False, sort_keys=True, separators=(",", ":")).encode()


def entity_request(text: str, sort: Sort) -> ExtractionRequest:
    return ExtractionRequest(text, EntityTarget(sort.name, sort.description))


def relation_request(text: str, pred: PredicateSymbol, constants: Sequence[Constant]) -> ExtractionRequest:
    wanted = set(pred.arity)
    pool = tuple((c.name, c.sort) for c in constants if c.sort in wanted)
    return ExtractionRequest(text, RelationTarget(pred.name, pred.arity, pred.definition, pool))


def gate(request: ExtractionRequest, payload: object) -> list:
    """Validate ``payload`` against the request's vocabulary; reject wholesale on any violation.

    Returns constant names for entity targets and literals for relation targets.
    """
    try:
        jsonschema.Draft202012Validator(response_schema(request.target)).validate(payload)
    except jsonschema.ValidationError as exc:
        raise SchemaViolation(f"{request.target.describe()}: {exc.message}") from None
    target = request.target
    if isinstance(target, EntityTarget):
        names: list[str] = []
        for name in payload["constants"]:  # type: ignore[index]
            if not IDENTIFIER.fullmatch(name):
                raise SchemaViolation(f"{target.describe()}: bad constant name {name!r}")
            if name not in names:
                names.append(name)
        return names
    out: list[Literal] = []
    for item in payload["literals"]:  # type: ignore[index]
        lit = Literal(Atom(target.predicate, tuple(Term.const(a) for a in item["args"])), item["negated"])
        if lit not in out:
            out.append(lit)
    return out


class Extractor(Protocol):
    def complete(self, request: ExtractionRequest) -> object: ...


# --- deterministic rule-table extractor --------------------------------------------


def constant_name(surface: str) -> str:
    """Uppercase identifier for a surface form: ``José`` -> ``JOSE``, ``Mary-Ann`` -> ``MARY_ANN``."""
    ascii_form = unicodedata.normalize("NFKD", surface).encode("ascii", "ignore").decode()
    name = re.sub(r"[^A-Z0-9]+", "_", ascii_form.upper()).strip("_")
    if not name or not name[0].isalpha():
        name = "C_" + name if name else "C"
    return name


_SLOT = re.compile(r"\{([A-Za-z][A-Za-z0-9_]*)(?::(Cap))?\}")
_SEP = r"[\s,;:]+"
_WORD = r"[^\W\d_][\w'-]*"


def compile_pattern(pattern: str) -> tuple[re.Pattern, list[str]]:
    parts: list[str] = []
    slots: list[str] = []
    pending_sep = False
    for tok in pattern.split():
        if tok == "*":
            parts.append(r"(?:[\s,;:]+[^.!?]*?)?")
            continue
        piece: list[str] = []
        pos = 0
        for m in _SLOT.finditer(tok):
            piece.append(re.escape(tok[pos : m.start()]))
            name = m.group(1)
            if name in slots:
                raise ValueError(f"slot {{{name}}} repeated in pattern {pattern!r}")
            slots.append(name)
            word = r"(?-i:[A-Z])[\w'-]*" if m.group(2) else _WORD
            piece.append(f"(?P<{name}>{word})")
            pos = m.end()
        rest = tok[pos:]
        if not piece and "|" in rest:
            piece.append("(?:" + "|".join(re.escape(a) for a in rest.split("|") if a) + ")")
        else:
            piece.append(re.escape(rest))
        if pending_sep:
            parts.append(_SEP)
        parts.append("".join(piece))
        pending_sep = True
    if not parts:
        raise ValueError("empty pattern")
    return re.compile(r"(?<!\w)" + "".join(parts) + r"(?!\w)", re.IGNORECASE), slots


@dataclass(frozen=True)
class EntityRule:
    sort: str
    pattern: re.Pattern
    slot: str


@dataclass(frozen=True)
class RelationRule:
    predicate: str
    negated: bool
    params: tuple[str, ...]
    pattern: re.Pattern


@dataclass
class RuleTable:
    entities: list[EntityRule] = field(default_factory=list)
    relations: list[RelationRule] = field(default_factory=list)
    stopwords: set[str] = field(default_factory=set)


_REL_HEAD = re.compile(r"(!?)([A-Za-z][A-Za-z0-9_]*)\(([^)]*)\)\s*(.*)$")


def parse_rules(text: str, source: str = "<string>") -> RuleTable:
    table = RuleTable()
    diags = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        kind, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if kind == "stop":
                table.stopwords.update(w.casefold() for w in rest.split())
            elif kind == "entity":
                sort, _, pat = rest.partition(" ")
                regex, slots = compile_pattern(pat)
                if len(slots) != 1:
                    raise ValueError("entity patterns need exactly one slot")
                table.entities.append(EntityRule(sort, regex, slots[0]))
            elif kind == "relation":
                m = _REL_HEAD.match(rest)
                if not m:
                    raise ValueError("expected 'relation [!]pred(P1, ...) <pattern>'")
                params = tuple(p.strip() for p in m.group(3).split(",") if p.strip())
                regex, slots = compile_pattern(m.group(4))
                if sorted(slots) != sorted(params):
                    raise ValueError(f"slots {slots} do not match parameters {list(params)}")
                table.relations.append(RelationRule(m.group(2), bool(m.group(1)), params, regex))
            else:
                raise ValueError(f"unknown rule kind {kind!r}")
        except (ValueError, re.error) as exc:
            diags.append(error("BadRule", str(exc), where))
    if diags:
        raise DiagnosticError(diags)
    return table


class RuleTableExtractor:
    """Offline, network-free extractor driven by a :class:`RuleTable`."""

    def __init__(self, table: RuleTable):
        self.table = table

    @classmethod
    def from_text(cls, text: str, source: str = "<string>") -> RuleTableExtractor:
        return cls(parse_rules(text, source))

    def complete(self, request: ExtractionRequest) -> dict:
        if isinstance(request.target, EntityTarget):
            return {"constants": self._entities(request.text, request.target.sort)}
        return {"literals": self._relations(request.text, request.target)}

    def _entities(self, text: str, sort: str) -> list[str]:
        hits: list[tuple[int, int, str]] = []
        for rank, rule in enumerate(r for r in self.table.entities if r.sort == sort):
            for m in rule.pattern.finditer(text):
                surface = m.group(rule.slot)
                if surface.casefold() not in self.table.stopwords:
                    hits.append((m.start(rule.slot), rank, surface))
        hits.sort()
        by_key: dict[str, str] = {}
        taken: set[str] = set()
        names: list[str] = []
        for _, _, surface in hits:
            key = surface.casefold()
            if key in by_key:
                continue
            base = constant_name(surface)
            name, n = base, 1
            while name in taken:
                n += 1
                name = f"{base}_{n}"
            by_key[key] = name
            taken.add(name)
            names.append(name)
        return names

    def _relations(self, text: str, target: RelationTarget) -> list[dict]:
        by_sort: dict[str, set[str]] = {}
        for name, sort in target.constants:
            by_sort.setdefault(sort, set()).add(name)
        found: list[tuple[int, int, dict]] = []
        rules = [r for r in self.table.relations if r.predicate == target.predicate]
        for rank, rule in enumerate(rules):
            if len(rule.params) != len(target.arity):
                continue
            for m in rule.pattern.finditer(text):
                args = []
                for param, sort in zip(rule.params, target.arity):
                    surface = m.group(param)
                    name = constant_name(surface)
                    if surface.casefold() in self.table.stopwords or name not in by_sort.get(sort, ()):
                        break
                    args.append(name)
                else:
                    found.append((m.start(), rank, {"predicate": target.predicate, "negated": rule.negated, "args": args}))
        found.sort(key=lambda t: (t[0], t[1]))
        out: list[dict] = []
        for _, _, lit in found:
            if lit not in out:
                out.append(lit)
        return out


class HttpExtractor:
    """POSTs each request as JSON to ``url``; fails closed on anything unexpected."""

    def __init__(self, url: str, timeout: float = 30.0, retries: int = 2, token: str | None = None):
        self.url = url
        self.timeout = timeout
        self.retries = retries
        self.token = token

    def complete(self, request: ExtractionRequest) -> object:
        headers = {"Content-Type": "application/json; charset=utf-8"}
        if self.token:
            headers["Authorization"] = f"Bearer {self.token}"
        last: Exception | None = None
        for attempt in range(self.retries + 1):
            req = urllib.request.Request(self.url, data=request.to_bytes(), headers=headers, method="POST")
            try:
                with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                    body = resp.read()
                break
            except (urllib.error.URLError, OSError) as exc:
                last = exc
                if attempt < self.retries:
                    time.sleep(min(0.1 * 2**attempt, 2.0))
        else:
            raise ExternalExtractorUnavailable(f"{self.url}: {last}")
        try:
            return json.loads(body)
        except ValueError:
            raise SchemaViolation(f"{request.target.describe()}: response is not JSON") from None


# --- axiomization -------------------------------------------------------------------


def extract_entities(text: str, sort: Sort, extractor: Extractor) -> list[Constant]:
    request = entity_request(text, sort)
    return [Constant(n, sort.name) for n in gate(request, extractor.complete(request))]


def extract_relations(
    text: str, pred: PredicateSymbol, constants: Sequence[Constant], extractor: Extractor
) -> list[Literal]:
    if pred.is_goal:
        raise SchemaViolation(f"goal predicate {pred.name} cannot be extracted")
    request = relation_request(text, pred, constants)
    if any(not any(s == sort for _, s in request.target.constants) for sort in pred.arity):
        return []
    return gate(request, extractor.complete(request))


def render_constants(per_sort: Sequence[tuple[str, list[Constant]]]) -> dict[tuple[str, str], str]:
    """Map (name, sort) to its claim-level name, qualifying names shared across sorts."""
    counts: dict[str, int] = {}
    for _, consts in per_sort:
        for c in consts:
            counts[c.name] = counts.get(c.name, 0) + 1
    return {
        (c.name, c.sort): (c.name if counts[c.name] == 1 else f"{c.name}@{c.sort}")
        for _, consts in per_sort
        for c in consts
    }


def axiomize(text: str, kb: KnowledgeBase, extractor: Extractor, claim_id: str = "") -> ClaimDocument:
    failures: list[tuple[str, ExtractionError]] = []
    per_sort: list[tuple[str, list[Constant]]] = []
    for sort in kb.signature.sorts:
        try:
            per_sort.append((sort.name, extract_entities(text, sort, extractor)))
        except ExtractionError as exc:
            failures.append((f"entity {sort.name}", exc))
            per_sort.append((sort.name, []))
    local = [c for _, consts in per_sort for c in consts]
    rendered = render_constants(per_sort)

    facts: list[Fact] = []
    seen: set[Literal] = set()
    for pred in kb.signature.conditions():
        try:
            literals = extract_relations(text, pred, local, extractor)
        except ExtractionError as exc:
            failures.append((f"relation {pred.name}", exc))
            continue
        for lit in literals:
            args = tuple(
                Term.const(rendered[(t.name, sort)]) for t, sort in zip(lit.atom.args, pred.arity)
            )
            lit = Literal(Atom(lit.predicate, args), lit.negated)
            if lit not in seen:
                seen.add(lit)
                facts.append(Fact(f"f{len(facts) + 1}", lit))
    if failures:
        raise AxiomizationError(failures)

    constants = tuple(Constant(rendered[(c.name, c.sort)], c.sort) for c in local)
    claim = ClaimDocument(claim_id, constants, tuple(facts), text)
    diags = validate_claim(claim, kb)
    if has_errors(diags):
        raise DiagnosticError(diags)
    return claim
