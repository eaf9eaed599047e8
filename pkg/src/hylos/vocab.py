"""Closed vocabulary tables for the LOM metadata subset.

Kept as plain data so the value lists can be audited and extended without
touching any logic.
"""

STRUCTURE = ("atomic", "collection", "networked", "hierarchical", "linear")

DOCUMENT_STATUS = ("draft", "final", "revised", "unavailable")

SEMANTIC_DENSITY = ("veryLow", "low", "medium", "high", "veryHigh")

# Ordered from easiest to hardest; ordering is used by difficulty filtering.
DIFFICULTY = ("veryEasy", "easy", "medium", "difficult", "veryDifficult")

CONTEXT = ("school", "higherEducation", "training", "other")

LEARNING_RESOURCE_TYPE = (
    "exercise",
    "simulation",
    "questionnaire",
    "diagram",
    "figure",
    "graph",
    "index",
    "slide",
    "table",
    "narrativeText",
    "exam",
    "experiment",
    "problemStatement",
    "selfAssessment",
    "lecture",
)

INTENDED_END_USER_ROLE = ("teacher", "author", "learner", "manager")

# field name -> allowed values, for every closed-vocabulary metadata field
VOCABULARIES = {
    "structure": STRUCTURE,
    "documentStatus": DOCUMENT_STATUS,
    "semanticDensity": SEMANTIC_DENSITY,
    "difficulty": DIFFICULTY,
    "context": CONTEXT,
    "learningResourceType": LEARNING_RESOURCE_TYPE,
    "intendedEndUserRole": INTENDED_END_USER_ROLE,
}

# The seven fields an author must fill before an object is publishable.
OBLIGATORY_FIELDS = (
    "keywords",
    "semanticDensity",
    "difficulty",
    "context",
    "learningResourceType",
    "structure",
    "documentStatus",
)


def difficulty_rank(value: str) -> int:
    return DIFFICULTY.index(value)
