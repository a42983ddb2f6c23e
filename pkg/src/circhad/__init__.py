"""Block structure and orthogonality of circulant +/-1 rows."""

from .blocks import (
    AlternatingSequence,
    Block,
    BlockCensus,
    BlockDecomposition,
    DegenerateRowError,
    Kind,
    UnclassifiableSequenceError,
    alternating_sequences,
    census,
    classify_one_alt,
    classify_two_alt,
    decompose,
    shift4_contribution,
    shift4_partition,
)
from .identities import (
    ConstructionSpec,
    LemmaReport,
    check_lemma1,
    check_lemma2,
    check_lemma3,
    check_lemma4,
    check_lemma5,
    construct_case,
    exclusion_filter,
    predicted_paf4,
)
from .sequence import (
    OrderProfile,
    SignRow,
    agreement_count,
    canonical_form,
    disagreement_count,
    format_row,
    is_circulant_hadamard,
    max_orthogonal_prefix,
    negate,
    order_profile,
    paf,
    parse_row,
    reverse,
    rotate,
    row_sum,
)

__version__ = "0.1.0"
