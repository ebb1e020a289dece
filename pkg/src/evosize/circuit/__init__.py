"""Op-amp sizing problems: technology cards, analytic models, bounds."""

from .area import area_fitness, circuit_area, expand_widths
from .bounds import derive_bounds, generate_candidate_pgf, repair_bounds, search_space
from .folded_cascode import evaluate_folded_cascode
from .problem import CircuitProblem, SurvivabilityResult, analytic_report, survivability_test
from .spec import (
    PRESETS,
    Constraint,
    Objective,
    PerformanceReport,
    ProblemSpec,
    TechnologyCard,
    Topology,
    load_preset,
    load_problem_file,
    parse_problem_text,
)
from .two_stage import evaluate_two_stage
