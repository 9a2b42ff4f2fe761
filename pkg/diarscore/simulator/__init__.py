from .corrupt import corrupt
from .dialog import generate_dialog
from .profiles import DialogProfile, ErrorProfile, severity_grid
from .study import (
    STUDY_COLUMNS,
    StudyResult,
    StudyRow,
    build_corpus,
    correlation_study,
    pearson,
    score_system,
)

__all__ = (
    "STUDY_COLUMNS",
    "DialogProfile",
    "ErrorProfile",
    "StudyResult",
    "StudyRow",
    "build_corpus",
    "correlation_study",
    "corrupt",
    "generate_dialog",
    "pearson",
    "score_system",
    "severity_grid",
)
