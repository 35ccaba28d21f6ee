"""Knowledge-library data model, validation, and JSON interchange.

A library is an ordered collection of categories, each holding skill
entries.  An optional summary block carries navigational metadata: a
category index with per-category routing hints, reader instructions,
and role assignments.  On disk the summary must be the first key of the
file so that it occupies the position a reader scans first; the rest of
this package (prefix reading, guidance conditions, benchmarking) builds
on the invariants enforced here.

All model types are frozen dataclasses and safe to share across
threads.  Validation never raises: every broken invariant becomes a
finding with a severity and a stable code, and callers decide what to
do with them.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import MalformedFile

SEVERITY_ERROR = "ERROR"
SEVERITY_WARNING = "WARNING"
SEVERITY_INFO = "INFO"

SUMMARY_KEY = "_summary"
PROVENANCE_KEY = "_provenance"
DEFAULT_BODY_KEY = "High_Impact_Skills_Library"
DEFAULT_HINT_MAX = 100

# In-file hint indexes stop paying off once the index itself grows into a
# long block; past this many categories a density warning is emitted.
HINT_DENSITY_LIMIT = 60

ABSTRACTION_LEVELS = frozenset({
    "pipeline", "governance", "framework", "system", "engine",
    "mechanism", "component", "detection", "intelligence", "other",
})
DISTRACTOR_TIERS = frozenset({"high", "low"})

_TOKEN_SPLIT = re.compile(r"[^0-9A-Za-z]+")


def tokenize(text: str) -> frozenset[str]:
    """Lowercased alphanumeric token set of *text*."""
    return frozenset(t for t in _TOKEN_SPLIT.split(text.lower()) if t)


@dataclass(frozen=True)
class Finding:
    """One validation observation: a severity, a stable code, a message."""

    severity: str
    code: str
    message: str


def has_errors(findings: list[Finding] | tuple[Finding, ...]) -> bool:
    return any(f.severity == SEVERITY_ERROR for f in findings)


@dataclass(frozen=True)
class Skill:
    name: str
    description: str = ""


@dataclass(frozen=True)
class Category:
    """A named capability domain with an ordered list of skill entries.

    ``complement`` names the category the designer intends as the
    architectural pairing for secondary selection; it is data, not a
    derived value, because that pairing is not recoverable from the
    descriptions themselves.  ``distractor_tier`` marks injected noise
    categories (``high`` = semantically adjacent to a real target,
    ``low`` = pure volume).
    """

    name: str
    description: str
    skills: tuple[Skill, ...] = ()
    abstraction_level: str | None = None
    complement: str | None = None
    distractor_tier: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "skills", tuple(self.skills))

    @property
    def skill_count(self) -> int:
        return len(self.skills)


@dataclass(frozen=True)
class CategoryIndexEntry:
    name: str
    skill_count: int
    routing_hint: str


@dataclass(frozen=True)
class SummaryBlock:
    """Navigational metadata placed at a library file's first key."""

    category_index: tuple[CategoryIndexEntry, ...] = ()
    llm_instructions: str = ""
    routing_roles: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "category_index", tuple(self.category_index))
        object.__setattr__(
            self,
            "routing_roles",
            {role: tuple(names) for role, names in self.routing_roles.items()},
        )


@dataclass(frozen=True)
class KnowledgeLibrary:
    summary: SummaryBlock | None = None
    categories: tuple[Category, ...] = ()
    provenance: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "categories", tuple(self.categories))
        object.__setattr__(self, "provenance", dict(self.provenance))

    def category(self, name: str) -> Category | None:
        """Look up a category by exact, case-sensitive, trimmed name."""
        wanted = name.strip()
        for cat in self.categories:
            if cat.name.strip() == wanted:
                return cat
        return None

    @property
    def category_names(self) -> tuple[str, ...]:
        return tuple(c.name.strip() for c in self.categories)

    @property
    def total_skills(self) -> int:
        return sum(c.skill_count for c in self.categories)


def surface_similarity(a: Category, b: Category) -> float:
    """Token-set Jaccard similarity over name + description.

    Symmetric, in [0, 1], and 1.0 for identical token sets.  Two
    categories whose names and descriptions share no alphanumeric token
    score 0.0.
    """
    tokens_a = tokenize(a.name) | tokenize(a.description)
    tokens_b = tokenize(b.name) | tokenize(b.description)
    if not tokens_a and not tokens_b:
        return 1.0
    if not tokens_a or not tokens_b:
        return 0.0
    return len(tokens_a & tokens_b) / len(tokens_a | tokens_b)


def validate_library(
    lib: KnowledgeLibrary,
    strict: bool = False,
    hint_max: int = DEFAULT_HINT_MAX,
) -> list[Finding]:
    """Check every library invariant and return the findings.

    An empty list means the library is fully consistent.  ``strict``
    escalates warnings to errors; it never changes which findings are
    produced.  The function is pure: identical inputs yield identical
    findings in identical order.
    """
    findings: list[Finding] = []
    seen: set[str] = set()

    for cat in lib.categories:
        name = cat.name.strip()
        if not name:
            findings.append(Finding(SEVERITY_ERROR, "EMPTY_NAME", "category with empty name"))
            continue
        if name in seen:
            findings.append(Finding(
                SEVERITY_ERROR, "DUPLICATE_CATEGORY", f"category name not unique: {name}"))
        seen.add(name)
        if not cat.description.strip():
            findings.append(Finding(
                SEVERITY_ERROR, "EMPTY_DESCRIPTION", f"{name}: empty description"))
        if cat.abstraction_level is not None and cat.abstraction_level not in ABSTRACTION_LEVELS:
            findings.append(Finding(
                SEVERITY_ERROR, "INVALID_LEVEL",
                f"{name}: unknown abstraction_level {cat.abstraction_level!r}"))
        if cat.distractor_tier is not None and cat.distractor_tier not in DISTRACTOR_TIERS:
            findings.append(Finding(
                SEVERITY_ERROR, "INVALID_TIER",
                f"{name}: unknown distractor_tier {cat.distractor_tier!r}"))
        if cat.distractor_tier is None and not cat.skills:
            findings.append(Finding(
                SEVERITY_ERROR, "EMPTY_SKILLS", f"{name}: real category has no skills"))
        # Low-tier counts are deliberately only advisory; see module docs.
        if cat.distractor_tier == "high" and not 2 <= len(cat.skills) <= 3:
            findings.append(Finding(
                SEVERITY_WARNING, "DISTRACTOR_SKILL_COUNT",
                f"{name}: high-tier distractor should carry 2-3 skills, has {len(cat.skills)}"))
        skill_names: set[str] = set()
        for skill in cat.skills:
            sname = skill.name.strip()
            if not sname:
                findings.append(Finding(
                    SEVERITY_ERROR, "EMPTY_SKILL_NAME", f"{name}: skill with empty name"))
                continue
            if "\n" in skill.name or "\r" in skill.name:
                findings.append(Finding(
                    SEVERITY_ERROR, "SKILL_NAME_LINEBREAK",
                    f"{name}: skill name contains a line break: {sname!r}"))
            if sname in skill_names:
                findings.append(Finding(
                    SEVERITY_ERROR, "DUPLICATE_SKILL", f"{name}: duplicate skill {sname}"))
            skill_names.add(sname)

    names = set(lib.category_names)
    for cat in lib.categories:
        if cat.complement is not None and cat.complement.strip() not in names:
            findings.append(Finding(
                SEVERITY_ERROR, "DANGLING_COMPLEMENT",
                f"{cat.name.strip()}: complement {cat.complement.strip()!r} does not exist"))

    if lib.summary is not None:
        findings.extend(_validate_summary(lib, lib.summary, hint_max))

    if strict:
        findings = [
            Finding(SEVERITY_ERROR, f.code, f.message) if f.severity == SEVERITY_WARNING else f
            for f in findings
        ]
    return findings


def _validate_summary(
    lib: KnowledgeLibrary, summary: SummaryBlock, hint_max: int
) -> list[Finding]:
    findings: list[Finding] = []
    index = summary.category_index
    if len(index) != len(lib.categories):
        findings.append(Finding(
            SEVERITY_ERROR, "INDEX_MISMATCH",
            f"category_index has {len(index)} entries for {len(lib.categories)} categories"))
    for pos, (entry, cat) in enumerate(zip(index, lib.categories)):
        if entry.name.strip() != cat.name.strip():
            findings.append(Finding(
                SEVERITY_ERROR, "INDEX_MISMATCH",
                f"index position {pos}: {entry.name.strip()!r} vs category {cat.name.strip()!r}"))
            continue
        if entry.skill_count != cat.skill_count:
            findings.append(Finding(
                SEVERITY_ERROR, "COUNT_MISMATCH",
                f"{cat.name.strip()}: index says {entry.skill_count} skills, "
                f"category has {cat.skill_count}"))
        if len(entry.routing_hint) > hint_max:
            findings.append(Finding(
                SEVERITY_ERROR, "HINT_TOO_LONG",
                f"{cat.name.strip()}: routing_hint is {len(entry.routing_hint)} "
                f"scalar values (max {hint_max})"))
    names = set(lib.category_names)
    for role, targets in summary.routing_roles.items():
        for target in targets:
            if target.strip() not in names:
                findings.append(Finding(
                    SEVERITY_ERROR, "UNKNOWN_ROLE_TARGET",
                    f"routing role {role!r} references missing category {target.strip()!r}"))
    if len(lib.categories) > HINT_DENSITY_LIMIT:
        findings.append(Finding(
            SEVERITY_WARNING, "HINT_DENSITY",
            f"{len(lib.categories)} categories exceed the ~{HINT_DENSITY_LIMIT}-entry range "
            "where an in-file hint index stays reliably readable"))
    return findings


# --- JSON interchange -------------------------------------------------
#
# Wire format: a single UTF-8 JSON object.  When a summary exists its
# key is literally "_summary" and it is emitted first; the body key
# (default "High_Impact_Skills_Library") maps category names to their
# entries in order.  Key order is significant and preserved both ways.


def skill_to_dict(skill: Skill) -> dict:
    return {"skill_name": skill.name, "description": skill.description}


def category_to_dict(cat: Category) -> dict:
    out: dict = {"category_description": cat.description}
    if cat.abstraction_level is not None:
        out["abstraction_level"] = cat.abstraction_level
    if cat.complement is not None:
        out["complement"] = cat.complement
    if cat.distractor_tier is not None:
        out["distractor_tier"] = cat.distractor_tier
    out["skills"] = [skill_to_dict(s) for s in cat.skills]
    return out


def summary_to_dict(summary: SummaryBlock) -> dict:
    return {
        "category_index": [
            {"name": e.name, "skill_count": e.skill_count, "routing_hint": e.routing_hint}
            for e in summary.category_index
        ],
        "_llm_instructions": summary.llm_instructions,
        "routing_roles": {role: list(names) for role, names in summary.routing_roles.items()},
    }


def library_to_dict(lib: KnowledgeLibrary, body_key: str = DEFAULT_BODY_KEY) -> dict:
    out: dict = {}
    if lib.summary is not None:
        out[SUMMARY_KEY] = summary_to_dict(lib.summary)
    out[body_key] = {cat.name: category_to_dict(cat) for cat in lib.categories}
    if lib.provenance:
        out[PROVENANCE_KEY] = dict(lib.provenance)
    return out


def serialize_library(
    lib: KnowledgeLibrary, body_key: str = DEFAULT_BODY_KEY, indent: int = 2
) -> str:
    """Render the library as stable JSON text, summary first."""
    return json.dumps(library_to_dict(lib, body_key), ensure_ascii=False, indent=indent) + "\n"


def skill_from_dict(obj: dict) -> Skill:
    if not isinstance(obj, dict) or "skill_name" not in obj:
        raise MalformedFile("skill entry must be an object with a skill_name")
    return Skill(name=str(obj["skill_name"]), description=str(obj.get("description", "")))


def category_from_dict(name: str, obj: dict) -> Category:
    if not isinstance(obj, dict):
        raise MalformedFile(f"category {name!r} must map to an object")
    skills_raw = obj.get("skills", [])
    if not isinstance(skills_raw, list):
        raise MalformedFile(f"category {name!r}: skills must be a list")
    level = obj.get("abstraction_level")
    complement = obj.get("complement")
    tier = obj.get("distractor_tier")
    return Category(
        name=name,
        description=str(obj.get("category_description", "")),
        skills=tuple(skill_from_dict(s) for s in skills_raw),
        abstraction_level=None if level is None else str(level),
        complement=None if complement is None else str(complement),
        distractor_tier=None if tier is None else str(tier),
    )


def summary_block_from_dict(obj: object) -> SummaryBlock:
    if not isinstance(obj, dict):
        raise MalformedFile("summary block must be a JSON object")
    index_raw = obj.get("category_index", [])
    if not isinstance(index_raw, list):
        raise MalformedFile("category_index must be a list")
    entries = []
    for item in index_raw:
        if not isinstance(item, dict) or "name" not in item:
            raise MalformedFile("category_index entries must be objects with a name")
        entries.append(CategoryIndexEntry(
            name=str(item["name"]),
            skill_count=int(item.get("skill_count", 0)),
            routing_hint=str(item.get("routing_hint", "")),
        ))
    roles_raw = obj.get("routing_roles", {})
    if not isinstance(roles_raw, dict):
        raise MalformedFile("routing_roles must be an object")
    roles = {str(role): tuple(str(n) for n in names) for role, names in roles_raw.items()}
    return SummaryBlock(
        category_index=tuple(entries),
        llm_instructions=str(obj.get("_llm_instructions", "")),
        routing_roles=roles,
    )


def library_from_dict(obj: object, body_key: str | None = None) -> KnowledgeLibrary:
    """Rebuild a library from a parsed top-level object.

    When ``body_key`` is None the first key that does not start with an
    underscore is taken as the body.  Key order of the body object
    defines category order.
    """
    if not isinstance(obj, dict):
        raise MalformedFile("library file must contain a top-level JSON object")
    if body_key is None:
        body_key = next((k for k in obj if not k.startswith("_")), None)
        if body_key is None:
            raise MalformedFile("no library body key found")
    if body_key not in obj:
        raise MalformedFile(f"missing body key {body_key!r}")
    body = obj[body_key]
    if not isinstance(body, dict):
        raise MalformedFile(f"body key {body_key!r} must map to an object")
    summary = None
    if SUMMARY_KEY in obj:
        summary = summary_block_from_dict(obj[SUMMARY_KEY])
    provenance_raw = obj.get(PROVENANCE_KEY, {})
    provenance = {str(k): str(v) for k, v in provenance_raw.items()} \
        if isinstance(provenance_raw, dict) else {}
    categories = tuple(category_from_dict(name, val) for name, val in body.items())
    return KnowledgeLibrary(summary=summary, categories=categories, provenance=provenance)


def deserialize_library(text: str | bytes, body_key: str | None = None) -> KnowledgeLibrary:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedFile(f"invalid JSON: {exc}") from exc
    return library_from_dict(obj, body_key)
