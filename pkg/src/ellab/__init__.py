"""ellab: exact and PAC learning of lightweight description-logic ontologies.

The package is organized around one vocabulary:

* :mod:`ellab.syntax` / :mod:`ellab.parser` — concept expressions, axioms,
  TBoxes, ABoxes, canonical text formats;
* :mod:`ellab.reasoner` — entailment by completion-rule saturation, the
  canonical-model cross-check, instance queries;
* :mod:`ellab.frameworks` — example spaces and membership for each fragment;
* :mod:`ellab.oracles` — truthful and deferred (human) teachers;
* :mod:`ellab.learners` — the learning algorithms and the PAC wrapper;
* :mod:`ellab.hardness` — the exponential family and its adversary;
* :mod:`ellab.harness` / :mod:`ellab.service` / :mod:`ellab.cli` —
  experiments, transcripts, the session HTTP API and the command line.
"""

from .syntax import (
    ABox,
    CI,
    ConceptAssertion,
    ConceptQuery,
    Conj,
    EMPTY_TBOX,
    Exists,
    Name,
    RI,
    RoleAssertion,
    RoleQuery,
    Signature,
    TBox,
    TOP,
    Top,
    concept_to_str,
    conjunction,
    depth_of,
    print_tbox,
    signature_of,
    size_of,
)
from .parser import ParseError, parse_abox, parse_concept, parse_tbox
from .interpretation import Interpretation, extension_of, satisfies
from .reasoner import (
    FuelExhaustedError,
    canonical_check,
    entails,
    entails_tbox,
    equivalent,
    iq_entails,
)
from .frameworks import (
    AxiomExample,
    DataExample,
    FragmentViolationError,
    LabeledExample,
    LearningFramework,
    enumerate_examples,
    framework,
    is_counterexample,
    is_member,
)
from .oracles import (
    Counterexample,
    DeferredTeacher,
    No,
    Sample,
    Teacher,
    TeacherConfig,
    Uniform,
    Weighted,
    Yes,
    deferred_teacher,
)
from .learners import (
    CapExhaustedError,
    LearnerCaps,
    PacParams,
    learn_dllite_eq,
    learn_dllite_mq,
    learn_elh_enumerate,
    learn_horn,
    learn_toy_atomic,
    pac_wrap,
)
from .hardness import (
    AdversarialMqTeacher,
    SigmaFamily,
    build_family,
    classify_ci,
    run_lower_bound,
)
from .harness import (
    ExperimentConfig,
    GeneratorSpec,
    Metrics,
    Transcript,
    generate_target,
    run_experiment,
)

__version__ = "0.1.0"
