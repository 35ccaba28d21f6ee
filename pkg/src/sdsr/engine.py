"""Two-tier retrieval: summary-scan routing and full-content selection.

Tier 1 ranks files by their summary blocks alone, so its context cost
grows with the number of files, never with their sizes.  Tier 2 works
over fully loaded libraries and guards every selection against the
actual content (no hallucinated category/skill pairs survive).

Backends are pluggable.  The shipped lexical backend is a deterministic
desk-scale stand-in for an LLM router: it scores by weighted token
overlap, with name tokens counting double.  Scoring rule for a query
token set Q against an entry with name tokens N and hint/description
tokens H (weights: query 2, name 2, text-only 1):

    score = sum(min weights) / sum(max weights)
          = (2*|Q & N| + |Q & (H-N)|) / (2*|union(Q, N)| + |(H-N) - Q|)

which is 1.0 when the query tokens equal the name tokens of a
name-only entry and 0.0 on zero overlap.  Ties break lexicographically
everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, Sequence, runtime_checkable

from .errors import (
    AllSelectionsInvalid,
    DanglingComplement,
    EmptyLoadSet,
    NoFiles,
    UnknownCategory,
)
from .library import (
    Category,
    CategoryIndexEntry,
    KnowledgeLibrary,
    Skill,
    SummaryBlock,
    tokenize,
)
from .prefix import estimate_tokens, summary_token_estimate

DEFAULT_K_MAX = 3
DEFAULT_THRESHOLD = 0.05


@dataclass(frozen=True)
class RoutingRequest:
    query: str
    summaries: tuple[tuple[str, SummaryBlock], ...]
    k_max: int = DEFAULT_K_MAX
    threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self) -> None:
        object.__setattr__(self, "summaries", tuple(self.summaries))
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError("threshold must be in [0, 1]")


@dataclass(frozen=True)
class ScoredFile:
    file_id: str
    score: float


@dataclass(frozen=True)
class RoutingResult:
    selected: tuple[ScoredFile, ...]
    expanded_scope: bool
    trace: tuple[str, ...]


@dataclass(frozen=True)
class Selection:
    category: str
    skill: str


@dataclass(frozen=True)
class QuestionSelection:
    question_id: int
    primary: Selection
    secondary: Selection | None = None


@dataclass(frozen=True)
class SelectionSet:
    selections: tuple[QuestionSelection, ...] = ()
    flags: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "selections", tuple(self.selections))
        object.__setattr__(self, "flags", tuple(self.flags))

    def get(self, question_id: int) -> QuestionSelection | None:
        for sel in self.selections:
            if sel.question_id == question_id:
                return sel
        return None


@runtime_checkable
class RouterBackend(Protocol):
    """Capability contract for the routing/selection provider.

    Implementations must either be deterministic for identical inputs
    or declare themselves nondeterministic via the attribute below.
    """

    deterministic: bool

    def route(
        self, query: str, summaries: Sequence[tuple[str, SummaryBlock]]
    ) -> list[tuple[str, float]]:
        """Score every file id for the query; higher is more relevant."""

    def select(
        self,
        questions: Sequence[tuple[int, str]],
        libraries: Sequence[KnowledgeLibrary],
        system_prompt: str | None = None,
        artifact: bytes | None = None,
    ) -> SelectionSet:
        """Pick up to two (category, skill) selections per question."""


def weighted_overlap(
    query_tokens: frozenset[str],
    name_tokens: frozenset[str],
    text_tokens: frozenset[str],
) -> float:
    text_only = text_tokens - name_tokens
    numerator = 2 * len(query_tokens & name_tokens) + len(query_tokens & text_only)
    denominator = 2 * len(query_tokens | name_tokens) + len(text_only - query_tokens)
    if denominator == 0:
        return 0.0
    return numerator / denominator


def lexical_score(query: str, entry: CategoryIndexEntry | Category) -> float:
    """Weighted token overlap of *query* against an index entry or category.

    Name tokens weigh double; the routing hint (index entries) or the
    category description supplies the single-weight text tokens.
    Deterministic, symmetric in no useful sense, and bounded to [0, 1].
    """
    if isinstance(entry, CategoryIndexEntry):
        text = entry.routing_hint
    else:
        text = entry.description
    return weighted_overlap(tokenize(query), tokenize(entry.name), tokenize(text))


def skill_score(query: str, skill: Skill) -> float:
    """Same weighting applied to a skill's name and description."""
    return weighted_overlap(tokenize(query), tokenize(skill.name), tokenize(skill.description))


class LexicalBackend:
    """Deterministic token-overlap router and selector.

    route: a file's score is the best lexical score across its index
    entries.  select: every (category, skill) pair is scored as
    category score plus skill score and the best pair wins; the best
    pair from a different category becomes the secondary guess when it
    scores above zero.
    """

    deterministic = True

    def route(
        self, query: str, summaries: Sequence[tuple[str, SummaryBlock]]
    ) -> list[tuple[str, float]]:
        scores = []
        for file_id, block in summaries:
            best = 0.0
            for entry in block.category_index:
                best = max(best, lexical_score(query, entry))
            scores.append((file_id, best))
        return scores

    def select(
        self,
        questions: Sequence[tuple[int, str]],
        libraries: Sequence[KnowledgeLibrary],
        system_prompt: str | None = None,
        artifact: bytes | None = None,
    ) -> SelectionSet:
        selections = []
        for question_id, text in questions:
            ranked = self._ranked_pairs(text, libraries)
            if not ranked:
                continue
            _, best_category, best_skill, best_score = ranked[0]
            primary = Selection(category=best_category, skill=best_skill)
            secondary = None
            for _, category, skill, score in ranked[1:]:
                if category != best_category:
                    if score > 0.0:
                        secondary = Selection(category=category, skill=skill)
                    break
            selections.append(QuestionSelection(
                question_id=question_id, primary=primary, secondary=secondary))
        return SelectionSet(selections=tuple(selections))

    @staticmethod
    def _ranked_pairs(
        text: str, libraries: Sequence[KnowledgeLibrary]
    ) -> list[tuple[float, str, str, float]]:
        """All (category, skill) pairs sorted best-first with lexical ties."""
        pairs = []
        for lib in libraries:
            for cat in lib.categories:
                cat_component = lexical_score(text, cat)
                for skill in cat.skills:
                    score = cat_component + skill_score(text, skill)
                    pairs.append((-score, cat.name.strip(), skill.name.strip(), score))
        pairs.sort()
        return pairs


def route_tier1(req: RoutingRequest, backend: RouterBackend) -> RoutingResult:
    """Tier-1 summary scan: pick the 1..k_max most relevant files.

    Files at or above the threshold are ranked and the top k returned.
    If nothing reaches the threshold the scope is expanded: the top k
    are returned unconditionally (single retry, no loop) and the result
    is marked accordingly.  The trace records both passes plus the
    token accounting for the scan.
    """
    if not req.summaries:
        raise NoFiles("routing requires at least one summary")
    scores = dict(backend.route(req.query, req.summaries))
    ranked = sorted(
        (ScoredFile(file_id=fid, score=scores.get(fid, 0.0)) for fid, _ in req.summaries),
        key=lambda sf: (-sf.score, sf.file_id),
    )
    tokens = sum(summary_token_estimate(block) for _, block in req.summaries)
    tokens += estimate_tokens(req.query)
    trace = [
        f"tier1 scan: {len(req.summaries)} files, ~{tokens} tokens",
        f"pass 1: {sum(1 for sf in ranked if sf.score >= req.threshold)} file(s) "
        f"at or above threshold {req.threshold}",
    ]
    eligible = [sf for sf in ranked if sf.score >= req.threshold]
    if eligible:
        selected = tuple(eligible[:req.k_max])
        expanded = False
    else:
        selected = tuple(ranked[:req.k_max])
        expanded = True
        trace.append(f"expand scope: no file met the threshold; returning top {len(selected)}")
    trace.append("selected: " + ", ".join(f"{sf.file_id}={sf.score:.4f}" for sf in selected))
    return RoutingResult(selected=selected, expanded_scope=expanded, trace=tuple(trace))


def normalize_questions(
    questions: str | Sequence[str] | Sequence[tuple[int, str]],
) -> tuple[tuple[int, str], ...]:
    """Accept a query string, a list of texts, or (id, text) pairs."""
    if isinstance(questions, str):
        return ((1, questions),)
    out = []
    for position, item in enumerate(questions, start=1):
        if isinstance(item, str):
            out.append((position, item))
        else:
            qid, text = item
            out.append((int(qid), str(text)))
    return tuple(out)


def select_tier2(
    questions: str | Sequence[str] | Sequence[tuple[int, str]],
    loaded: Sequence[KnowledgeLibrary],
    backend: RouterBackend,
    system_prompt: str | None = None,
    artifact: bytes | None = None,
) -> SelectionSet:
    """Tier-2 full-content selection with a hallucination guard.

    Every pair the backend returns must exist in some loaded library;
    selections with an unknown primary are dropped, unknown secondaries
    are cleared, and each removal is flagged.  If the backend produced
    selections and none survived, AllSelectionsInvalid is raised.
    """
    if not loaded:
        raise EmptyLoadSet("tier-2 selection requires at least one loaded library")
    pairs = normalize_questions(questions)
    raw = backend.select(pairs, loaded, system_prompt=system_prompt, artifact=artifact)

    kept = []
    flags = list(raw.flags)
    for sel in raw.selections:
        if not _pair_exists(sel.primary, loaded):
            flags.append(
                f"Q{sel.question_id}: dropped primary "
                f"{sel.primary.category} | {sel.primary.skill} (not in any loaded library)")
            continue
        secondary = sel.secondary
        if secondary is not None and not _pair_exists(secondary, loaded):
            flags.append(
                f"Q{sel.question_id}: cleared secondary "
                f"{secondary.category} | {secondary.skill} (not in any loaded library)")
            secondary = None
        kept.append(QuestionSelection(
            question_id=sel.question_id, primary=sel.primary, secondary=secondary))
    if raw.selections and not kept:
        raise AllSelectionsInvalid("every selection failed the existence guard")
    return SelectionSet(selections=tuple(kept), flags=tuple(flags))


def _pair_exists(selection: Selection, loaded: Sequence[KnowledgeLibrary]) -> bool:
    wanted_skill = selection.skill.strip()
    for lib in loaded:
        cat = lib.category(selection.category)
        if cat is None:
            continue
        if any(s.name.strip() == wanted_skill for s in cat.skills):
            return True
    return False


def resolve_complement(lib: KnowledgeLibrary, primary_category: str) -> str | None:
    """The designer-encoded secondary pairing for a category, if any.

    Complement annotations are plain data on the category, so adding or
    removing other categories never changes the answer for an existing
    one.
    """
    cat = lib.category(primary_category)
    if cat is None:
        raise UnknownCategory(f"no category named {primary_category.strip()!r}")
    if cat.complement is None:
        return None
    target = cat.complement.strip()
    if lib.category(target) is None:
        raise DanglingComplement(
            f"{cat.name.strip()}: complement {target!r} does not resolve")
    return target


def apply_complement_pass(
    sel: SelectionSet, lib: KnowledgeLibrary
) -> SelectionSet:
    """Overwrite secondary guesses with the complement-encoded pairing.

    For every selection whose primary category carries a complement
    annotation, the secondary becomes that complement (represented by
    its first skill).  Selections without a complement keep the
    backend's own secondary guess; the input set is left untouched so
    both variants stay comparable.
    """
    updated = []
    for item in sel.selections:
        secondary = item.secondary
        cat = lib.category(item.primary.category)
        if cat is not None and cat.complement is not None:
            complement = resolve_complement(lib, item.primary.category)
            comp_cat = lib.category(complement)
            if comp_cat is not None and comp_cat.skills:
                secondary = Selection(
                    category=complement, skill=comp_cat.skills[0].name.strip())
        updated.append(QuestionSelection(
            question_id=item.question_id, primary=item.primary, secondary=secondary))
    return SelectionSet(selections=tuple(updated), flags=sel.flags)
