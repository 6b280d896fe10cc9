"""Free-group computation: reduced words, Stallings graphs, colored
graphs for homomorphism pairs, and the equalizer counterexample family."""

from .words import (
    Alphabet,
    Homomorphism,
    Word,
    format_word,
    inclusion,
    parse_word,
    swap_generators,
)
from .graphs import (
    GraphSizeError,
    LabeledGraph,
    SubgroupHandle,
    add_path,
    canonical_form,
    core,
    fold,
    fold_with_map,
    graph_from_generators,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    is_connected,
    is_folded,
    pointed_isomorphic,
    rank,
    spanning_paths,
    trace,
    wedge_of_loops,
)
from .colored import (
    CertificationError,
    ColorConflictError,
    ColoredGraph,
    EdgeViolation,
    EqualizerCertificate,
    certify_equalizer_subgroup,
    check_edge_condition,
    color_of_path,
    colored_from_json,
    colored_to_dot,
    colored_to_json,
    colors_injective,
    fold_colored,
)
from .counterexample import (
    FamilyInstance,
    InjectivityReport,
    StabilizedPair,
    VerificationError,
    VerificationReport,
    build_delta,
    build_family,
    build_gamma,
    color_word,
    exponent_characterization_check,
    family_homomorphisms,
    infinite_rank_truncation,
    ladder_loop_word,
    nielsen_word,
    stabilize_one_noninjective,
    stabilize_two_noninjective,
    verify_free_basis,
    verify_injectivity,
    verify_main,
)
from .oracle import (
    BudgetExceededError,
    CompressionViolationError,
    EnumerationResult,
    brute_membership,
    enumerate_equalizer,
    iter_reduced_words,
    product_closure,
    rank_growth_probe,
    read_sample,
    write_sample,
)

__version__ = "0.1.0"
