//! Tutte decomposition by the constructive induction: split on components,
//! then on the smallest cut vertex, then on the lexicographically smallest
//! separation pair, until every piece is triconnected.

use super::biconnected::articulation_mask;
use super::{TreeDec, TutteDec};
use crate::graph::{Graph, Vertex};

enum Case {
    Triconnected,
    Disconnected(Vec<Vec<Vertex>>),
    CutVertex(Vertex),
    SeparationPair(Vertex, Vertex),
}

/// `h` must be compact (all ids present).
fn classify(h: &Graph) -> Case {
    let n = h.order();
    if n <= 1 {
        return Case::Triconnected;
    }
    let comps = h.components();
    if comps.len() > 1 {
        return Case::Disconnected(comps);
    }
    if let Some(v) = articulation_mask(h, None).iter().position(|&a| a) {
        return Case::CutVertex(v);
    }
    if n <= 3 {
        return Case::Triconnected;
    }
    // Scanning u upwards and taking the smallest cut vertex v > u of G - u
    // yields the lexicographically smallest pair: a pair with v < u would
    // already have been found while scanning v.
    for u in 0..n {
        let art = articulation_mask(h, Some(u));
        if let Some(v) = (u + 1..n).find(|&v| art[v]) {
            return Case::SeparationPair(u, v);
        }
    }
    Case::Triconnected
}

/// Whether removing fewer than three vertices never disconnects `g`.
pub fn is_triconnected(g: &Graph) -> bool {
    let (h, _) = g.compact();
    matches!(classify(&h), Case::Triconnected)
}

struct Builder {
    bags: Vec<Vec<Vertex>>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    /// Decomposes `h` (compact, vertex `i` standing for `labels[i]`) and
    /// returns the range of node ids created.
    fn build(&mut self, h: &Graph, labels: &[Vertex]) -> std::ops::Range<usize> {
        let start = self.bags.len();
        match classify(h) {
            Case::Triconnected => {
                self.bags.push(labels.to_vec());
            }
            Case::Disconnected(comps) => {
                for comp in comps {
                    let (sub, map) = h.induced_compact(&comp);
                    let sub_labels: Vec<Vertex> = map.iter().map(|&v| labels[v]).collect();
                    let range = self.build(&sub, &sub_labels);
                    if range.start != start {
                        self.edges.push((start, range.start));
                    }
                }
            }
            Case::CutVertex(v) => {
                let parts: Vec<Vec<Vertex>> = h
                    .components_avoiding(&[v])
                    .into_iter()
                    .map(|mut c| {
                        c.push(v);
                        c
                    })
                    .collect();
                self.glue(h, labels, parts, &[v], false);
            }
            Case::SeparationPair(u, v) => {
                let parts: Vec<Vec<Vertex>> = h
                    .components_avoiding(&[u, v])
                    .into_iter()
                    .map(|mut c| {
                        c.extend([u, v]);
                        c
                    })
                    .collect();
                self.glue(h, labels, parts, &[u, v], true);
            }
        }
        start..self.bags.len()
    }

    /// Decomposes each part and links the first node of part `i` whose bag
    /// contains `sep` to the corresponding node of the first part.
    fn glue(&mut self, h: &Graph, labels: &[Vertex], parts: Vec<Vec<Vertex>>, sep: &[Vertex], virtual_edge: bool) {
        let sep_labels: Vec<Vertex> = sep.iter().map(|&v| labels[v]).collect();
        let mut first_anchor = None;
        for part in parts {
            let (mut sub, map) = h.induced_compact(&part);
            if virtual_edge {
                let a = map.binary_search(&sep[0]).unwrap();
                let b = map.binary_search(&sep[1]).unwrap();
                sub.insert_edge(a, b);
            }
            let sub_labels: Vec<Vertex> = map.iter().map(|&v| labels[v]).collect();
            let range = self.build(&sub, &sub_labels);
            let anchor = range
                .clone()
                .find(|&i| sep_labels.iter().all(|s| self.bags[i].binary_search(s).is_ok()))
                .expect("separator vertices appear in a common bag");
            match first_anchor {
                None => first_anchor = Some(anchor),
                Some(a) => self.edges.push((a, anchor)),
            }
        }
    }
}

/// Tutte decomposition of `g`: adhesion at most two, nonempty adhesions are
/// minimal separators and every torso is a triconnected topological minor.
/// Node 0 is the root.
pub fn tutte_decompose(g: &Graph) -> TutteDec {
    let (h, labels) = g.compact();
    let mut b = Builder {
        bags: Vec::new(),
        edges: Vec::new(),
    };
    b.build(&h, &labels);
    // labels are increasing, so bags stay sorted
    TutteDec::new(TreeDec::new(b.bags, b.edges, Some(0)), g.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(is_triconnected(&Graph::new(1)));
        assert!(is_triconnected(&Graph::from_edges(2, &[(0, 1)]).unwrap()));
        assert!(!is_triconnected(&Graph::new(2)));
        assert!(!is_triconnected(&Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()));
        let k4: Vec<_> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        assert!(is_triconnected(&Graph::from_edges(4, &k4).unwrap()));
    }

    #[test]
    fn cycle_splits_into_triangles() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let td = tutte_decompose(&g);
        td.tree().validate(&g).unwrap();
        assert_eq!(td.tree().num_nodes(), 3);
        assert!(td.tree().bags().iter().all(|b| b.len() == 3));
        for i in 0..3 {
            assert_eq!(td.torso(i).size(), 3);
        }
    }

    #[test]
    fn path_bags_are_edges() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let td = tutte_decompose(&g);
        assert_eq!(td.tree().bags(), &[vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert_eq!(td.tree().adhesion_width(), 1);
    }
}
