"""Regenerate texts/ and texts.manifest from hand-labelled scenarios.

Each scenario is rendered twice with different phrasings; both renderings
share a paraphrase group. Labels were worked out by hand from the policy
wording and are never computed by the engine.

    python3 corpus/travel/make_texts.py
"""
from __future__ import annotations

from pathlib import Path

HERE = Path(__file__).resolve().parent

PHRASES = {
    "policyholder": ("{0} is the policyholder.", "{0} took out the travel policy."),
    "insured": ("{0} is insured under the policy.", "{0} is an insured traveller."),
    "sick": ("{0} fell ill.", "{0} became seriously sick."),
    "injured": ("{0} was seriously injured in an accident.", "{0} was hospitalised after an accident."),
    "died": ("{0} died.", "{0} passed away."),
    "cancelled": ("{0} cancelled the trip.", "{0} had to cancel the journey."),
    "interrupted": ("{0} cut the trip short.", "{0} returned home early."),
    "abroad": ("{0} was abroad at the time.", "{0} was travelling abroad at the time."),
    "lostjob": ("{0} lost their job.", "{0} was laid off by the employer."),
    "preexisting": ("{0} had a known condition before booking.", "{0} was already treated for it before booking."),
    "drunk": ("{0} was drunk.", "{0} had been drinking heavily."),
    "spouse": ("{0} is married to {1}.", "{0} is the spouse of {1}."),
    "parent": ("{0} is the mother of {1}.", "{0} is a parent of {1}."),
    "sibling": ("{0} is the sister of {1}.", "{0} is a brother of {1}."),
    "cousin": ("{0} is a cousin of {1}.", "{0} is the cousin of {1}."),
}

CANCEL = "is_covered_cancellation"
MEDICAL = "is_covered_medical"

# (events, goal predicate, goal person, hand label)
SCENARIOS = [
    ([("policyholder", "Alice"), ("cancelled", "Alice"), ("sick", "Alice")], CANCEL, "Alice", "covered"),
    ([("policyholder", "Alice"), ("cancelled", "Alice"), ("spouse", "Bob", "Alice"), ("injured", "Bob")], CANCEL, "Alice", "covered"),
    ([("policyholder", "Alice"), ("cancelled", "Alice"), ("cousin", "Carol", "Alice"), ("sick", "Carol")], CANCEL, "Alice", "not_covered"),
    ([("policyholder", "Alice"), ("cancelled", "Alice"), ("lostjob", "Alice")], CANCEL, "Alice", "covered"),
    ([("insured", "Bob"), ("cancelled", "Bob"), ("sick", "Bob")], CANCEL, "Bob", "covered"),
    ([("cancelled", "Bob"), ("sick", "Bob")], CANCEL, "Bob", "not_covered"),
    ([("policyholder", "Alice"), ("abroad", "Alice"), ("injured", "Alice")], MEDICAL, "Alice", "covered"),
    ([("policyholder", "Alice"), ("injured", "Alice")], MEDICAL, "Alice", "not_covered"),
    ([("policyholder", "Alice"), ("abroad", "Alice"), ("injured", "Alice"), ("drunk", "Alice")], MEDICAL, "Alice", "inconsistent"),
    ([("policyholder", "Alice"), ("cancelled", "Alice"), ("sick", "Alice"), ("preexisting", "Alice")], CANCEL, "Alice", "inconsistent"),
    ([("policyholder", "Alice"), ("preexisting", "Alice"), ("cancelled", "Alice")], CANCEL, "Alice", "not_covered"),
    ([("policyholder", "Alice"), ("spouse", "Bob", "Alice"), ("abroad", "Bob"), ("sick", "Bob")], MEDICAL, "Bob", "covered"),
    ([("policyholder", "Alice"), ("interrupted", "Alice"), ("sick", "Alice")], CANCEL, "Alice", "covered"),
    ([("policyholder", "Alice"), ("interrupted", "Alice"), ("parent", "Dan", "Alice"), ("died", "Dan")], CANCEL, "Alice", "covered"),
    ([("policyholder", "Alice"), ("interrupted", "Alice"), ("parent", "Dan", "Alice"), ("sick", "Dan")], CANCEL, "Alice", "not_covered"),
    ([("policyholder", "Alice"), ("cancelled", "Alice"), ("sibling", "Erin", "Alice"), ("died", "Erin")], CANCEL, "Alice", "covered"),
    ([("policyholder", "Alice"), ("cancelled", "Alice"), ("parent", "Alice", "Finn"), ("sick", "Finn")], CANCEL, "Alice", "covered"),
    ([("policyholder", "Alice"), ("abroad", "Alice"), ("died", "Alice")], MEDICAL, "Alice", "covered"),
    ([("policyholder", "Alice"), ("died", "Alice")], MEDICAL, "Alice", "not_covered"),
    ([("policyholder", "Gina"), ("sibling", "Hugo", "Gina"), ("cancelled", "Hugo"), ("sick", "Hugo")], CANCEL, "Hugo", "not_covered"),
    ([("policyholder", "Alice"), ("spouse", "Bob", "Alice"), ("cancelled", "Bob"), ("lostjob", "Bob")], CANCEL, "Bob", "covered"),
    ([("policyholder", "Alice"), ("cancelled", "Alice"), ("spouse", "Bob", "Alice"), ("lostjob", "Bob")], CANCEL, "Alice", "not_covered"),
    ([("policyholder", "Alice"), ("abroad", "Alice"), ("sick", "Alice"), ("drunk", "Alice")], MEDICAL, "Alice", "covered"),
    ([("insured", "Bob"), ("abroad", "Bob"), ("injured", "Bob"), ("preexisting", "Bob")], MEDICAL, "Bob", "inconsistent"),
    ([("policyholder", "Alice"), ("cancelled", "Alice"), ("cousin", "Bob", "Alice"), ("died", "Bob")], CANCEL, "Alice", "not_covered"),
]


def render(events, variant: int) -> str:
    return " ".join(PHRASES[kind][variant].format(*people) for kind, *people in events) + "\n"


def main() -> None:
    out = HERE / "texts"
    out.mkdir(exist_ok=True)
    lines = ["# <claim-file> <goal> <expected> [paraphrase-group]"]
    for i, (events, pred, person, label) in enumerate(SCENARIOS, start=1):
        for variant in (0, 1):
            name = f"s{i:02d}{'ab'[variant]}.txt"
            (out / name).write_text(render(events, variant), encoding="utf-8")
            lines.append(f"texts/{name} {pred}({person.upper()}) {label} s{i:02d}")
    (HERE / "texts.manifest").write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
