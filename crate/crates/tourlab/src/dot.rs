//! Graphviz export. With an ordering the vertices are laid out left to right
//! in position order and backward edges are drawn as marked arcs above the
//! line, the usual way these orderings are pictured.

use crate::tournament::{Ordering, Tournament};

/// Renders a tournament as a DOT digraph. When `ordering` is given, nodes
/// carry their 1-based position in a `pos` attribute and backward edges get
/// `backward=true` plus a red arc; forward edges constrain the left-to-right
/// rank order, backward edges do not.
pub fn export_dot(t: &Tournament, ordering: Option<&Ordering>) -> String {
    let mut out = String::new();
    out.push_str("digraph tournament {\n");
    match ordering {
        None => {
            for v in t.vertices() {
                out.push_str(&format!("  v{};\n", v + 1));
            }
            for i in t.vertices() {
                for j in (i + 1)..t.n() {
                    let (a, b) = if t.has_edge(i, j) { (i, j) } else { (j, i) };
                    out.push_str(&format!("  v{} -> v{};\n", a + 1, b + 1));
                }
            }
        }
        Some(ordering) => {
            out.push_str("  rankdir=LR;\n");
            for pos in 0..ordering.len() {
                let v = ordering.vertex_at(pos);
                out.push_str(&format!("  v{} [pos={}];\n", v + 1, pos + 1));
            }
            for pi in 0..ordering.len() {
                for pj in (pi + 1)..ordering.len() {
                    let earlier = ordering.vertex_at(pi);
                    let later = ordering.vertex_at(pj);
                    if t.has_edge(earlier, later) {
                        out.push_str(&format!("  v{} -> v{};\n", earlier + 1, later + 1));
                    } else {
                        out.push_str(&format!(
                            "  v{} -> v{} [backward=true, color=red, constraint=false];\n",
                            later + 1,
                            earlier + 1
                        ));
                    }
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{named, PatternName};

    #[test]
    fn k6_canonical_layout_marks_exactly_four_backward_arcs() {
        let k6 = named(PatternName::K6);
        let dot = export_dot(&k6, Some(&Ordering::identity(6)));
        assert_eq!(dot.matches("backward=true").count(), 4);
        assert!(dot.contains("v4 -> v1 [backward=true"));
        assert!(dot.contains("v6 -> v1 [backward=true"));
        assert!(dot.contains("v6 -> v3 [backward=true"));
        assert!(dot.contains("v5 -> v2 [backward=true"));
    }

    #[test]
    fn transitive_layout_has_no_marked_arcs() {
        let t3 = Tournament::transitive(3).unwrap();
        let dot = export_dot(&t3, Some(&Ordering::identity(3)));
        assert_eq!(dot.matches("backward=true").count(), 0);
    }

    #[test]
    fn plain_export_lists_all_nodes_and_edges() {
        let c5 = named(PatternName::C5);
        let dot = export_dot(&c5, None);
        assert_eq!(dot.matches(" -> ").count(), 10);
        for v in 1..=5 {
            assert!(dot.contains(&format!("v{v}")));
        }
    }
}
