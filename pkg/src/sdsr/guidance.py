"""Summary construction and the four-way guidance condition matrix.

Four conditions pair a library variant with a system prompt:

=========  =================  ==================
condition  library file       system prompt
=========  =================  ==================
A          bare (no summary)  minimal
B          summary first      minimal
C          bare (no summary)  extended (rules)
D          summary first      extended (rules)
=========  =================  ==================

The extended prompt carries an abstraction-priority rule plus one line
per high-priority category pair; condition D adds no prompt text beyond
C's.  Everything here is a pure function of its inputs, and identical
inputs produce byte-identical artifacts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyLibrary
from .library import (
    CategoryIndexEntry,
    DEFAULT_HINT_MAX,
    KnowledgeLibrary,
    SummaryBlock,
    serialize_library,
)

CONDITIONS = ("A", "B", "C", "D")

DEFAULT_LLM_INSTRUCTIONS = (
    "Navigate in two stages: first match the task against the routing_hint of each "
    "category_index entry and shortlist one to three categories, then read only the "
    "shortlisted categories' full entries before choosing skills. "
    "Answer in the form 'Q#: category_name | skill_name'."
)

DEFAULT_PRIORITY_RULE = (
    "Priority rule: when a broad pipeline/orchestration/governance category and a "
    "narrow mechanism/component category both seem relevant, prefer the broader one."
)

DEFAULT_MINIMAL_TEMPLATE = (
    "You are a professional Prompt Engineer.\n"
    "I will provide you with a skills.json library and a numbered list of task "
    "requirements.\n"
    "For each task, select the most relevant skills from the library.\n"
    "For each skill you select, list ONLY the category_name and skill_name.\n"
    "Do NOT explain your reasoning yet; list the selections for every task first.\n"
    "Ensure that every skill you reference actually exists in the library."
)

DEFAULT_EXTENDED_TEMPLATE = DEFAULT_MINIMAL_TEMPLATE + (
    "\n\nBefore reading the library:\n"
    "- Scan the category_description fields to understand each category's scope.\n"
    "- {priority_rule}\n"
    "- Key high-priority categories:\n"
    "{high_priority}\n"
    "- When a _summary block is present, use its category_index to shortlist "
    "categories before reading full entries."
)


@dataclass(frozen=True)
class HighPriorityEntry:
    """A category that keeps getting confused with a specific neighbour."""

    target: str
    confused_with: str
    confusion_type: str

    def __post_init__(self) -> None:
        if self.target.strip() == self.confused_with.strip():
            raise ValueError(f"high-priority entry confuses {self.target!r} with itself")


@dataclass(frozen=True)
class PromptConfig:
    minimal_template: str = DEFAULT_MINIMAL_TEMPLATE
    extended_template: str = DEFAULT_EXTENDED_TEMPLATE
    high_priority: tuple[HighPriorityEntry, ...] = ()
    priority_rule: str = DEFAULT_PRIORITY_RULE

    def __post_init__(self) -> None:
        object.__setattr__(self, "high_priority", tuple(self.high_priority))
        if "{high_priority}" not in self.extended_template:
            raise ValueError("extended_template must contain the {high_priority} placeholder")


@dataclass(frozen=True)
class GuidanceCondition:
    condition: str
    library_artifact: bytes
    system_prompt: str


def prompt_config_from_dict(obj: dict) -> PromptConfig:
    entries = tuple(
        HighPriorityEntry(
            target=str(e["target"]),
            confused_with=str(e["confused_with"]),
            confusion_type=str(e.get("confusion_type", "")),
        )
        for e in obj.get("high_priority", [])
    )
    return PromptConfig(
        minimal_template=str(obj.get("minimal_template", DEFAULT_MINIMAL_TEMPLATE)),
        extended_template=str(obj.get("extended_template", DEFAULT_EXTENDED_TEMPLATE)),
        high_priority=entries,
        priority_rule=str(obj.get("priority_rule", DEFAULT_PRIORITY_RULE)),
    )


def prompt_config_to_dict(config: PromptConfig) -> dict:
    return {
        "minimal_template": config.minimal_template,
        "extended_template": config.extended_template,
        "priority_rule": config.priority_rule,
        "high_priority": [
            {"target": e.target, "confused_with": e.confused_with,
             "confusion_type": e.confusion_type}
            for e in config.high_priority
        ],
    }


def build_summary(
    lib: KnowledgeLibrary,
    hint_max: int = DEFAULT_HINT_MAX,
    llm_instructions: str | None = None,
    routing_roles: dict[str, tuple[str, ...]] | None = None,
) -> KnowledgeLibrary:
    """Return a copy of *lib* with a freshly computed summary block.

    Index entries follow library order; each routing hint is the first
    *hint_max* Unicode scalar values of the category description with
    trailing whitespace trimmed (plain prefix truncation, no sentence
    search).  Instructions and roles default to the values already on
    the library's summary when present, else to the shipped template
    and an empty role map.  Building twice equals building once.
    """
    if not lib.categories:
        raise EmptyLibrary("cannot summarize a library with no categories")
    previous = lib.summary
    if llm_instructions is None:
        llm_instructions = previous.llm_instructions if previous else DEFAULT_LLM_INSTRUCTIONS
    if routing_roles is None:
        routing_roles = dict(previous.routing_roles) if previous else {}
    index = tuple(
        CategoryIndexEntry(
            name=cat.name.strip(),
            skill_count=cat.skill_count,
            routing_hint=cat.description[:hint_max].rstrip(),
        )
        for cat in lib.categories
    )
    summary = SummaryBlock(
        category_index=index,
        llm_instructions=llm_instructions,
        routing_roles=routing_roles,
    )
    return KnowledgeLibrary(
        summary=summary, categories=lib.categories, provenance=lib.provenance)


def strip_summary(lib: KnowledgeLibrary) -> KnowledgeLibrary:
    """Return *lib* without a summary block; idempotent."""
    if lib.summary is None:
        return lib
    return KnowledgeLibrary(summary=None, categories=lib.categories, provenance=lib.provenance)


def expand_extended_prompt(prompts: PromptConfig) -> str:
    lines = "\n".join(
        f"  {e.target} (commonly confused with {e.confused_with}; {e.confusion_type})"
        for e in prompts.high_priority
    )
    return prompts.extended_template.format(
        priority_rule=prompts.priority_rule, high_priority=lines)


def build_condition(
    lib: KnowledgeLibrary,
    condition: str,
    prompts: PromptConfig | None = None,
    hint_max: int = DEFAULT_HINT_MAX,
    body_key: str | None = None,
) -> GuidanceCondition:
    """Materialize one condition as an artifact/prompt pair.

    A and C serve the stripped library; B and D serve it with the
    summary rebuilt at *hint_max*.  A and B use the minimal prompt;
    C and D use the expanded extended prompt, which quotes the priority
    rule verbatim and names every high-priority target.
    """
    condition = condition.strip().upper()
    if condition not in CONDITIONS:
        raise ValueError(f"unknown condition {condition!r}; expected one of {CONDITIONS}")
    if prompts is None:
        prompts = PromptConfig()
    if condition in ("B", "D"):
        variant = build_summary(lib, hint_max=hint_max)
    else:
        variant = strip_summary(lib)
    kwargs = {} if body_key is None else {"body_key": body_key}
    artifact = serialize_library(variant, **kwargs).encode("utf-8")
    if condition in ("C", "D"):
        prompt = expand_extended_prompt(prompts)
    else:
        prompt = prompts.minimal_template
    return GuidanceCondition(condition=condition, library_artifact=artifact, system_prompt=prompt)
