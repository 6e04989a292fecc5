from .common import LearnerStats, leading_breakpoint, progress_breakpoint
from .table import ObservationTable, TableLearner
from .tree import ClassificationTree, TreeLearner

LEARNERS = {"tree": TreeLearner, "table": TableLearner}

__all__ = ["LEARNERS", "ClassificationTree", "LearnerStats", "ObservationTable",
           "TableLearner", "TreeLearner", "leading_breakpoint", "progress_breakpoint"]
