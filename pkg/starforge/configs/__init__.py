"""starforge.configs: scenario models, the scenario file loader and selftest knobs.

Every ``[kind]`` section of a scenario file validates into one member of the
``Scenario`` discriminated union; the runner in ``starforge.flows`` only ever
sees validated models. Keeping them here gives CLI users one import surface
and one place to export JSON schemas from.
"""

from starforge.configs.base import (
    MAX_HBAR_ORDER,
    MAX_X_DEGREE,
    MAX_Y_DEGREE,
    BaseScenario,
    check_profile_caps,
    coerce_profile,
    constant_poisson_matrix,
    parse_matrix,
)
from starforge.configs.loader import (
    ScenarioValidationError,
    Section,
    dump_scenarios,
    load_scenario_file,
    load_scenarios,
    split_sections,
)
from starforge.configs.scenarios import (
    SCENARIO_KINDS,
    BFieldScenario,
    DglaSuiteScenario,
    FedosovScenario,
    GaugeScenario,
    MoyalScenario,
    NormalizerScenario,
    OdeScenario,
    ProductCase,
    Scenario,
    TransitionScenario,
    leading_term,
    parse_exponent,
    parse_pair,
)
from starforge.configs.selftest import SUITE_NAMES, SelftestCfg, SuiteName

__all__ = [
    "MAX_HBAR_ORDER",
    "MAX_X_DEGREE",
    "MAX_Y_DEGREE",
    "SCENARIO_KINDS",
    "SUITE_NAMES",
    "BFieldScenario",
    "BaseScenario",
    "DglaSuiteScenario",
    "FedosovScenario",
    "GaugeScenario",
    "MoyalScenario",
    "NormalizerScenario",
    "OdeScenario",
    "ProductCase",
    "Scenario",
    "ScenarioValidationError",
    "Section",
    "SelftestCfg",
    "SuiteName",
    "TransitionScenario",
    "check_profile_caps",
    "coerce_profile",
    "constant_poisson_matrix",
    "dump_scenarios",
    "leading_term",
    "load_scenario_file",
    "load_scenarios",
    "parse_exponent",
    "parse_matrix",
    "split_sections",
]
