//! Recursive parity-game solver (max-priority semantics: player 0 wins a
//! play iff the largest priority seen infinitely often is even).

pub(super) struct ParityGame {
    pub owner: Vec<u8>,
    pub priority: Vec<u32>,
    pub succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

pub(super) struct ParitySolution {
    /// Winner of each state.
    pub winner: Vec<u8>,
    /// Positional move of the owner, meaningful where the owner wins.
    pub moves: Vec<Option<usize>>,
}

impl ParityGame {
    pub fn new(owner: Vec<u8>, priority: Vec<u32>, succ: Vec<Vec<usize>>) -> Self {
        let mut pred = vec![Vec::new(); succ.len()];
        for (u, ws) in succ.iter().enumerate() {
            for &w in ws {
                pred[w].push(u);
            }
        }
        ParityGame {
            owner,
            priority,
            succ,
            pred,
        }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn solve(&self) -> ParitySolution {
        let n = self.len();
        let mut winner = vec![0u8; n];
        let mut moves = vec![None; n];
        let game = vec![true; n];
        let [w0, w1] = self.zielonka(&game, &mut moves);
        for s in 0..n {
            debug_assert!(w0[s] != w1[s]);
            winner[s] = if w1[s] { 1 } else { 0 };
        }
        ParitySolution { winner, moves }
    }

    /// Attractor of `player` to `target` inside `game`. Records the move of
    /// each attracted state of `player`.
    fn attractor(
        &self,
        game: &[bool],
        player: u8,
        target: &[bool],
        moves: &mut [Option<usize>],
    ) -> Vec<bool> {
        let n = self.len();
        let mut attr = target.to_vec();
        let mut count: Vec<usize> = (0..n)
            .map(|s| {
                if game[s] {
                    self.succ[s].iter().filter(|&&w| game[w]).count()
                } else {
                    0
                }
            })
            .collect();
        let mut queue: Vec<usize> = (0..n).filter(|&s| attr[s]).collect();
        while let Some(u) = queue.pop() {
            for &w in &self.pred[u] {
                if !game[w] || attr[w] {
                    continue;
                }
                if self.owner[w] == player {
                    attr[w] = true;
                    moves[w] = Some(u);
                    queue.push(w);
                } else {
                    count[w] -= 1;
                    if count[w] == 0 {
                        attr[w] = true;
                        queue.push(w);
                    }
                }
            }
        }
        attr
    }

    /// Winning regions of the subgame `game`, writing positional moves for
    /// each player on its own winning states.
    fn zielonka(&self, game: &[bool], moves: &mut [Option<usize>]) -> [Vec<bool>; 2] {
        let n = self.len();
        let mut game = game.to_vec();
        let mut acc = [vec![false; n], vec![false; n]];
        loop {
            let Some(d) = (0..n).filter(|&s| game[s]).map(|s| self.priority[s]).max() else {
                return acc;
            };
            let p = (d % 2) as u8;
            let q = 1 - p;
            let top: Vec<bool> = (0..n).map(|s| game[s] && self.priority[s] == d).collect();
            let a = self.attractor(&game, p, &top, moves);
            for s in 0..n {
                if top[s] && self.owner[s] == p {
                    moves[s] = self.succ[s].iter().copied().find(|&w| game[w]);
                }
            }
            let rest: Vec<bool> = (0..n).map(|s| game[s] && !a[s]).collect();
            let sub = self.zielonka(&rest, moves);
            if !sub[q as usize].iter().any(|&b| b) {
                for s in 0..n {
                    if game[s] {
                        acc[p as usize][s] = true;
                    }
                }
                return acc;
            }
            let b = self.attractor(&game, q, &sub[q as usize], moves);
            for s in 0..n {
                if b[s] {
                    acc[q as usize][s] = true;
                    game[s] = false;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_games() {
        // 0 (p0, prio 2) <-> 1 (p1, prio 1); 1 -> 2 (p1, prio 3) -> 2
        let g = ParityGame::new(
            vec![0, 1, 1],
            vec![2, 1, 3],
            vec![vec![1], vec![0, 2], vec![2]],
        );
        let s = g.solve();
        assert_eq!(s.winner, vec![1, 1, 1]);
        assert_eq!(s.moves[1], Some(2));

        // player 0 can stay on the even self-loop
        let g = ParityGame::new(vec![0, 1], vec![4, 3], vec![vec![0, 1], vec![0]]);
        let s = g.solve();
        assert_eq!(s.winner, vec![0, 0]);
        assert_eq!(s.moves[0], Some(0));
    }
}
