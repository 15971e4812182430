//! The three small arenas used throughout the documentation and tests.

use crate::arena::GameArena;

/// One player; `v0` branches to `v1` or `v2`, each of which loops forever.
pub fn fig1() -> GameArena {
    GameArena::build(
        &["1"],
        &["v0", "v1", "v2"],
        &[0, 0, 0],
        0,
        &[(0, 1), (0, 2), (1, 1), (2, 2)],
    )
    .expect("fixture is valid")
}

/// One player; `v0` has a self-loop, `v0 <-> v1`, `v1 -> v2 -> v0`.
pub fn fig2() -> GameArena {
    GameArena::build(
        &["1"],
        &["v0", "v1", "v2"],
        &[0, 0, 0],
        0,
        &[(0, 0), (0, 1), (1, 0), (1, 2), (2, 0)],
    )
    .expect("fixture is valid")
}

/// Three players, player `p` owns `vp`; complete digraph without self-loops.
pub fn fig3() -> GameArena {
    GameArena::build(
        &["0", "1", "2"],
        &["v0", "v1", "v2"],
        &[0, 1, 2],
        0,
        &[(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)],
    )
    .expect("fixture is valid")
}
