import dataclasses

import pytest

from sdsr.errors import MalformedFile
from sdsr.fixtures import round2_config
from sdsr.guidance import build_summary
from sdsr.library import (
    Category,
    CategoryIndexEntry,
    Finding,
    KnowledgeLibrary,
    Skill,
    SummaryBlock,
    deserialize_library,
    serialize_library,
    surface_similarity,
    validate_library,
)


def _simple_library(n_categories, with_summary=True):
    cats = tuple(
        Category(
            name=f"Topic_{i}",
            description=f"Handles topic number {i} end to end.",
            skills=(Skill(name=f"Skill_{i}", description="does the thing"),),
        )
        for i in range(n_categories)
    )
    lib = KnowledgeLibrary(categories=cats)
    return build_summary(lib) if with_summary else lib


def test_fixture_library_has_no_findings(fixture_library):
    # Exhaustive field walk of the shipped 36-category fixture.
    assert len(fixture_library.categories) == 36
    assert fixture_library.total_skills == 190
    assert validate_library(fixture_library) == []


def test_count_mismatch_is_an_error(fixture_library):
    entries = list(fixture_library.summary.category_index)
    entries[0] = CategoryIndexEntry(
        name=entries[0].name,
        skill_count=entries[0].skill_count + 1,
        routing_hint=entries[0].routing_hint,
    )
    tampered = KnowledgeLibrary(
        summary=SummaryBlock(
            category_index=tuple(entries),
            llm_instructions=fixture_library.summary.llm_instructions,
            routing_roles=dict(fixture_library.summary.routing_roles),
        ),
        categories=fixture_library.categories,
    )
    findings = validate_library(tampered)
    assert any(f.severity == "ERROR" and f.code == "COUNT_MISMATCH" for f in findings)


def test_hint_density_warning_past_sixty_categories():
    lib = _simple_library(119)
    findings = validate_library(lib)
    assert findings == [f for f in findings if f.code == "HINT_DENSITY"]
    assert findings[0].severity == "WARNING"
    # below the limit: silent
    assert validate_library(_simple_library(60)) == []


def test_strict_mode_escalates_warnings():
    findings = validate_library(_simple_library(119), strict=True)
    assert [f.severity for f in findings if f.code == "HINT_DENSITY"] == ["ERROR"]


@pytest.mark.parametrize("code,mutate", [
    ("DUPLICATE_CATEGORY", lambda cats: cats + (cats[0],)),
    ("EMPTY_DESCRIPTION", lambda cats: cats[:-1] + (
        dataclasses.replace(cats[-1], description="  "),)),
    ("EMPTY_SKILLS", lambda cats: cats[:-1] + (
        dataclasses.replace(cats[-1], skills=()),)),
    ("DANGLING_COMPLEMENT", lambda cats: cats[:-1] + (
        dataclasses.replace(cats[-1], complement="No_Such_Category"),)),
    ("INVALID_LEVEL", lambda cats: cats[:-1] + (
        dataclasses.replace(cats[-1], abstraction_level="cosmic"),)),
])
def test_invariant_violations_surface(code, mutate):
    base = _simple_library(3, with_summary=False)
    lib = KnowledgeLibrary(categories=mutate(base.categories))
    assert any(f.code == code for f in validate_library(lib))


def test_skill_invariants():
    cat = Category(
        name="T", description="d",
        skills=(Skill(name="A"), Skill(name="A"), Skill(name="B\nC"), Skill(name=" ")),
    )
    codes = {f.code for f in validate_library(KnowledgeLibrary(categories=(cat,)))}
    assert {"DUPLICATE_SKILL", "SKILL_NAME_LINEBREAK", "EMPTY_SKILL_NAME"} <= codes


def test_validate_is_pure(fixture_library):
    assert validate_library(fixture_library) == validate_library(fixture_library)


def test_index_sums_match_total_skills(fixture_library):
    index_total = sum(e.skill_count for e in fixture_library.summary.category_index)
    assert index_total == fixture_library.total_skills == 190


def test_surface_similarity_identity_and_disjoint():
    a = Category(name="Alpha_Beta", description="gamma delta")
    assert surface_similarity(a, a) == 1.0
    b = Category(name="Omicron", description="sigma tau")
    assert surface_similarity(a, b) == 0.0


def test_surface_similarity_hand_computed_pair(fixture_library):
    # Oracle: token sets enumerated by hand; intersection is
    # {a, agent, agents, and, between, handoff, stage, state, working},
    # 9 shared over a 43-token union.
    spec = next(s for s in round2_config().distractors
                if s.name == "Agent_Handoff_Protocol_Design")
    distractor = Category(name=spec.name, description=spec.description)
    target = fixture_library.category("Distributed_Cognition_&_Context_Orchestration")
    value = surface_similarity(distractor, target)
    assert value == pytest.approx(9 / 43, abs=1e-12)
    assert value == surface_similarity(target, distractor)


def test_roundtrip_preserves_everything(fixture_library):
    text = serialize_library(fixture_library)
    again = deserialize_library(text)
    assert again == fixture_library
    assert [c.name for c in again.categories] == [c.name for c in fixture_library.categories]


def test_serialized_summary_is_first_key(fixture_library):
    text = serialize_library(fixture_library)
    assert text.lstrip().startswith('{\n  "_summary":')


def test_deserialize_rejects_garbage():
    with pytest.raises(MalformedFile):
        deserialize_library("not json at all")
    with pytest.raises(MalformedFile):
        deserialize_library("[1, 2]")
    with pytest.raises(MalformedFile):
        deserialize_library('{"_summary": {}}')  # no body key


def test_finding_shape():
    finding = Finding(severity="ERROR", code="X", message="m")
    assert (finding.severity, finding.code, finding.message) == ("ERROR", "X", "m")
