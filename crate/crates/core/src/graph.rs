//! Small helpers over adjacency lists: strongly connected components,
//! shortest paths and covering closed walks.

use std::collections::VecDeque;

/// Strongly connected components of the subgraph induced by `mask`
/// (iterative Tarjan). Components come out in reverse topological order.
pub(crate) fn sccs(adj: &[Vec<usize>], mask: &[bool]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    // (vertex, next successor position)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if !mask[root] || index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if !mask[w] {
                    continue;
                }
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// A component carries a cycle iff it has two or more nodes or a self-loop.
pub(crate) fn is_cyclic(adj: &[Vec<usize>], comp: &[usize]) -> bool {
    comp.len() > 1 || adj[comp[0]].contains(&comp[0])
}

/// Shortest path from `from` to any node satisfying `goal`, through nodes
/// in `mask`. Includes both ends.
pub(crate) fn bfs_path(
    adj: &[Vec<usize>],
    from: usize,
    mask: &[bool],
    goal: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    if goal(from) {
        return Some(vec![from]);
    }
    let mut parent = vec![usize::MAX; adj.len()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !mask[w] || parent[w] != usize::MAX {
                continue;
            }
            parent[w] = u;
            if goal(w) {
                let mut path = vec![w];
                let mut x = w;
                while x != from {
                    x = parent[x];
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

/// Closed walk starting and ending at `start` (the end is not repeated)
/// that visits every node of the strongly connected, cyclic component
/// `comp`.
pub(crate) fn covering_walk(adj: &[Vec<usize>], comp: &[usize], start: usize) -> Vec<usize> {
    let mut mask = vec![false; adj.len()];
    for &c in comp {
        mask[c] = true;
    }
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut remaining = comp.len() - 1;
    let mut walk = vec![start];
    let mut cur = start;
    while remaining > 0 {
        let hop = bfs_path(adj, cur, &mask, |w| mask[w] && !seen[w])
            .expect("component is strongly connected");
        for &w in &hop[1..] {
            if !seen[w] {
                seen[w] = true;
                remaining -= 1;
            }
            walk.push(w);
        }
        cur = *hop.last().unwrap();
    }
    // close the walk with at least one edge
    if adj[cur].contains(&start) {
        return walk;
    }
    let back = adj[cur]
        .iter()
        .filter(|&&w| mask[w])
        .filter_map(|&w| bfs_path(adj, w, &mask, |x| x == start))
        .min_by_key(|p| p.len())
        .expect("component is strongly connected");
    walk.extend_from_slice(&back[..back.len() - 1]);
    walk
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tarjan_finds_components() {
        // 0 -> 1 -> 2 -> 0, 2 -> 3, 3 -> 3, 4 alone
        let adj = vec![vec![1], vec![2], vec![0, 3], vec![3], vec![]];
        let mask = vec![true; 5];
        let mut comps = sccs(&adj, &mask);
        comps.sort();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3], vec![4]]);
        assert!(is_cyclic(&adj, &[3]));
        assert!(!is_cyclic(&adj, &[4]));
    }

    #[test]
    fn masked_components() {
        let adj = vec![vec![1], vec![2], vec![0]];
        let comps = sccs(&adj, &[true, true, false]);
        assert_eq!(comps.len(), 2);
    }

    #[test]
    fn walk_covers_component() {
        let adj = vec![vec![1], vec![0, 2], vec![1]];
        let w = covering_walk(&adj, &[0, 1, 2], 0);
        assert_eq!(w.first(), Some(&0));
        for pair in w.windows(2) {
            assert!(adj[pair[0]].contains(&pair[1]));
        }
        assert!(adj[*w.last().unwrap()].contains(&0));
        let mut s = w.clone();
        s.sort();
        s.dedup();
        assert_eq!(s, vec![0, 1, 2]);
    }
}
