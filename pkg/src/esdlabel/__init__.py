"""Edge-sum distinguishing labelings: verification, constructions, search, game."""

from .graph import (
    Conflict,
    Graph,
    InvalidGraphError,
    InvalidLabelingError,
    Labeling,
    VerifyResult,
    WeightSet,
    canonical_feasible,
    edge_weights,
    identity_labeling,
    labelings_isomorphic,
    verify_esd,
)
from .constructions import (
    ConstructionResult,
    Family,
    NoneExists,
    UnsupportedByConstruction,
    build_graph,
    construct,
    label_complete_bipartite,
    label_complete_fibonacci,
    label_cycle,
    label_fan,
    label_grid,
    label_sunlet,
    label_tight_extremal,
    label_tree_bfs,
    parse_family,
    random_tree,
)
from .search import (
    SearchConfig,
    SearchOutcome,
    enumerate_up_to_iso,
    min_pool_size,
    solve,
)
from .game import (
    GameState,
    Move,
    alice_bound,
    alice_candidate_strategy,
    apply_move,
    legal_moves,
    make_strategy,
    play_game,
    replay_transcript,
    solve_game,
)

__all__ = [name for name in dir() if not name.startswith("_")]
