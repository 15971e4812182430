//! Graphviz export.

use std::fmt::Write as _;

use indist::{GameArena, Lasso};

const SHAPES: [&str; 6] = ["circle", "box", "diamond", "hexagon", "triangle", "octagon"];

/// Owner by node shape, initial vertex doubled, cycle edges of `witness`
/// drawn bold.
pub fn render(arena: &GameArena, witness: Option<&Lasso>) -> String {
    let mut bold = Vec::new();
    if let Some(l) = witness {
        let c = l.cycle();
        for i in 0..c.len() {
            bold.push((c[i], c[(i + 1) % c.len()]));
        }
    }
    let mut out = String::from("digraph arena {\n  rankdir=LR;\n");
    for v in 0..arena.num_vertices() {
        let p = arena.owner(v);
        let mut shape = SHAPES[p % SHAPES.len()];
        if v == arena.initial() && shape == "circle" {
            shape = "doublecircle";
        }
        let peripheries = if v == arena.initial() { 2 } else { 1 };
        let _ = writeln!(
            out,
            "  \"{}\" [shape={shape}, peripheries={peripheries}, xlabel=\"{}\"];",
            arena.vertex_name(v),
            arena.player_name(p)
        );
    }
    for (a, b) in arena.edges() {
        let style = if bold.contains(&(a, b)) {
            " [style=bold, penwidth=2]"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\"{style};",
            arena.vertex_name(a),
            arena.vertex_name(b)
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use indist::fixtures;

    #[test]
    fn witness_edges_are_bold() {
        let a = fixtures::fig3();
        let l = Lasso::new(vec![], vec![0, 1]).unwrap();
        let d = render(&a, Some(&l));
        assert!(d.contains("\"v0\" -> \"v1\" [style=bold"));
        assert!(d.contains("\"v1\" -> \"v0\" [style=bold"));
        assert!(d.contains("\"v0\" -> \"v2\";"));
        assert!(d.contains("\"v0\" [shape=doublecircle"));
        assert!(d.contains("\"v1\" [shape=box"));
    }
}
