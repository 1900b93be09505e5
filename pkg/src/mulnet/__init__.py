"""Labelings of multi-labeled trees and networks, the multiset-partition
codec, folding/unfolding, and phylogenetic network classes."""

from mulnet.codec import (
    MultisetPartition,
    check_closed_form,
    decode,
    encode,
    is_tree_generated,
    leaf_count,
    leaf_multiset,
    n_value,
)
from mulnet.folding import fold, is_stable, is_stable_by_definition, unfold
from mulnet.labeling import child_label_multiset, compute_full_labeling, is_labelable
from mulnet.multiset import (
    Comparison,
    Multiset,
    Ordering,
    compare,
    is_gapless,
    is_labeling_consistent,
    multiset_sum,
)
from mulnet.network import (
    FullyLabeledNetwork,
    LeafLabeledNetwork,
    RootedNetwork,
    canonical_tree_code,
    is_isomorphic,
    is_tree,
    subnetwork,
    validate,
)

__version__ = "0.1.0"
