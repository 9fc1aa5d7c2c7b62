//! Direct (tensor) product `G × H`, fiber addressing, induced cuts and the
//! fiber quotient.
//!
//! Product vertex `(x, u)` has id `x·|H| + u`, so the H-fiber above `x` is the
//! contiguous id block `x·|H| .. (x+1)·|H|`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeCut, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProductVertex {
    pub x: usize,
    pub u: usize,
}

impl fmt::Display for ProductVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.u)
    }
}

/// Id arithmetic for a product of a `g_order`-vertex and an `h_order`-vertex
/// graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductLayout {
    pub g_order: usize,
    pub h_order: usize,
}

impl ProductLayout {
    pub fn of(g: &Graph, h: &Graph) -> Self {
        ProductLayout {
            g_order: g.order(),
            h_order: h.order(),
        }
    }

    pub fn order(&self) -> usize {
        self.g_order * self.h_order
    }

    pub fn id(&self, v: ProductVertex) -> usize {
        debug_assert!(v.x < self.g_order && v.u < self.h_order);
        v.x * self.h_order + v.u
    }

    pub fn vertex(&self, id: usize) -> ProductVertex {
        ProductVertex {
            x: id / self.h_order,
            u: id % self.h_order,
        }
    }

    /// Ids of the H-fiber above `x`.
    pub fn fiber(&self, x: usize) -> Range<usize> {
        x * self.h_order..(x + 1) * self.h_order
    }

    pub fn edge(&self, a: ProductVertex, b: ProductVertex) -> Edge {
        Edge::new(self.id(a), self.id(b))
    }

    fn check(&self, v: ProductVertex) -> Result<()> {
        if v.x >= self.g_order {
            return Err(Error::VertexOutOfRange { vertex: v.x, order: self.g_order });
        }
        if v.u >= self.h_order {
            return Err(Error::VertexOutOfRange { vertex: v.u, order: self.h_order });
        }
        Ok(())
    }

    /// Product cut as text, one edge per line: `x,u y,v`.
    pub fn format_cut(&self, cut: &EdgeCut) -> String {
        let mut out = String::new();
        for e in cut.iter() {
            out.push_str(&format!("{} {}\n", self.vertex(e.lo()), self.vertex(e.hi())));
        }
        out
    }

    pub fn parse_cut(&self, text: &str) -> Result<EdgeCut> {
        let mut cut = EdgeCut::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let mut parts = line.split_whitespace();
            let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::CutFormat(format!("expected \"x,u y,v\", got {line:?}")));
            };
            let a = parse_coords(a)?;
            let b = parse_coords(b)?;
            self.check(a)?;
            self.check(b)?;
            if a == b {
                return Err(Error::SelfLoop(self.id(a)));
            }
            let e = self.edge(a, b);
            if !cut.insert(e) {
                return Err(Error::DuplicateEdge(e.lo(), e.hi()));
            }
        }
        Ok(cut)
    }
}

fn parse_coords(tok: &str) -> Result<ProductVertex> {
    let bad = || Error::CutFormat(format!("expected x,u coordinates, got {tok:?}"));
    let (x, u) = tok.split_once(',').ok_or_else(bad)?;
    Ok(ProductVertex {
        x: x.parse().map_err(|_| bad())?,
        u: u.parse().map_err(|_| bad())?,
    })
}

/// `G × H`: `(x,u) ~ (y,v)` iff `xy ∈ E(G)` and `uv ∈ E(H)`.
pub fn direct_product(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.order() == 0 || h.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    let layout = ProductLayout::of(g, h);
    Ok(Graph::from_edge_set(
        layout.order(),
        lifted_edges(g.edges().iter().copied(), h, layout).collect(),
    ))
}

/// Both product edges above every pair of a G-edge and an H-edge.
fn lifted_edges<'a, I>(g_edges: I, h: &'a Graph, layout: ProductLayout) -> impl Iterator<Item = Edge> + 'a
where
    I: Iterator<Item = Edge> + 'a,
{
    g_edges.flat_map(move |gx| {
        h.edges().iter().flat_map(move |hu| {
            let (x, y) = (gx.lo(), gx.hi());
            let (u, v) = (hu.lo(), hu.hi());
            [
                layout.edge(ProductVertex { x, u }, ProductVertex { x: y, u: v }),
                layout.edge(ProductVertex { x, u: v }, ProductVertex { x: y, u }),
            ]
        })
    })
}

/// Connectivity of `G × H` from the factors alone: both connected and not
/// both bipartite.
pub fn product_connected(g: &Graph, h: &Graph) -> Result<bool> {
    for f in [g, h] {
        if f.order() < 2 {
            return Err(Error::TooFewVertices { required: 2, order: f.order() });
        }
    }
    Ok(g.is_connected()? && h.is_connected()? && !(g.is_bipartite() && h.is_bipartite()))
}

/// The cut of `G × H` induced by `s0 ⊆ E(G)`; its size is `2·|s0|·e(H)`.
pub fn induced_cut(s0: &EdgeCut, g: &Graph, h: &Graph) -> Result<EdgeCut> {
    g.check_cut(s0)?;
    let layout = ProductLayout::of(g, h);
    Ok(lifted_edges(s0.iter(), h, layout).collect())
}

fn check_product_cut(g: &Graph, h: &Graph, s: &EdgeCut) -> Result<()> {
    let layout = ProductLayout::of(g, h);
    for e in s.iter() {
        if e.hi() >= layout.order() {
            return Err(Error::VertexOutOfRange { vertex: e.hi(), order: layout.order() });
        }
        let (a, b) = (layout.vertex(e.lo()), layout.vertex(e.hi()));
        if !(g.has_edge(a.x, b.x) && h.has_edge(a.u, b.u)) {
            return Err(Error::NotAnEdge(e.lo(), e.hi()));
        }
    }
    Ok(())
}

/// The fiber quotient of `G × H − S`: vertex `x` per H-fiber, `xy` an edge
/// when some surviving product edge joins the two fibers.
pub fn quotient_graph(g: &Graph, h: &Graph, s: &EdgeCut) -> Result<Graph> {
    check_product_cut(g, h, s)?;
    let layout = ProductLayout::of(g, h);
    let edges: BTreeSet<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|&xy| lifted_edges(std::iter::once(xy), h, layout).any(|e| !s.contains(&e)))
        .collect();
    Ok(Graph::from_edge_set(g.order(), edges))
}

/// Whether every H-fiber lies inside a single component of `G × H − S`.
/// Edges of `s` that are not product edges have no effect.
pub fn fibers_contained(g: &Graph, h: &Graph, s: &EdgeCut) -> Result<bool> {
    let product = direct_product(g, h)?;
    let layout = ProductLayout::of(g, h);
    let labels = product.component_labels_without(s);
    Ok((0..g.order()).all(|x| {
        let block = &labels[layout.fiber(x)];
        block.iter().all(|&c| c == block[0])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;

    fn bridged_triangles() -> Graph {
        Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap()
    }

    #[test]
    fn layout_bijection() {
        let layout = ProductLayout { g_order: 4, h_order: 3 };
        for id in 0..12 {
            assert_eq!(layout.id(layout.vertex(id)), id);
        }
        assert_eq!(layout.fiber(2), 6..9);
    }

    #[test]
    fn product_examples() {
        let k2 = Graph::complete(2);
        let p = direct_product(&k2, &k2).unwrap();
        assert_eq!((p.order(), p.edge_count()), (4, 2));
        assert_eq!(p.is_connected(), Ok(false));

        let c6 = direct_product(&k2, &Graph::complete(3)).unwrap();
        assert!(is_isomorphic(&c6, &Graph::cycle(6).unwrap()));

        let p = direct_product(&Graph::cycle(4).unwrap(), &Graph::complete(3)).unwrap();
        assert_eq!((p.order(), p.edge_count()), (12, 24));

        assert_eq!(direct_product(&Graph::empty(0), &k2), Err(Error::EmptyGraph));
    }

    #[test]
    fn connectivity_criterion_examples() {
        let k2 = Graph::complete(2);
        assert_eq!(product_connected(&k2, &k2), Ok(false));
        assert_eq!(product_connected(&k2, &Graph::complete(3)), Ok(true));
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(product_connected(&c5, &c5), Ok(true));
        assert_eq!(direct_product(&c5, &c5).unwrap().is_connected(), Ok(true));
        assert!(product_connected(&Graph::complete(1), &k2).is_err());
    }

    #[test]
    fn induced_cut_examples() {
        let k2 = Graph::complete(2);
        let k3 = Graph::complete(3);
        let s0: EdgeCut = [Edge::new(0, 1)].into_iter().collect();
        let s = induced_cut(&s0, &k2, &k3).unwrap();
        assert_eq!(s.size(), 6);
        let p = direct_product(&k2, &k3).unwrap();
        let labels = p.component_labels_without(&s);
        assert_eq!(&labels[0..3], &[0, 1, 2]);
        assert!(labels[3..6].iter().all(|&c| c > 2));

        assert!(induced_cut(&EdgeCut::new(), &k2, &k3).unwrap().is_empty());

        let g = bridged_triangles();
        let k4 = Graph::complete(4);
        let bridge: EdgeCut = [Edge::new(2, 3)].into_iter().collect();
        let s = induced_cut(&bridge, &g, &k4).unwrap();
        assert_eq!(s.size(), 12);
        assert!(direct_product(&g, &k4).unwrap().disconnects(&s));

        let non_edge: EdgeCut = [Edge::new(0, 5)].into_iter().collect();
        assert_eq!(induced_cut(&non_edge, &g, &k4), Err(Error::NotAnEdge(0, 5)));
    }

    #[test]
    fn induced_removal_is_product_of_remainder() {
        let g = bridged_triangles();
        let h = Graph::complete(3);
        let s0: EdgeCut = [Edge::new(2, 3), Edge::new(0, 1)].into_iter().collect();
        let s = induced_cut(&s0, &g, &h).unwrap();
        let lhs = direct_product(&g, &h).unwrap().remove_edges(&s);
        let rhs = direct_product(&g.remove_edges(&s0), &h).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_examples() {
        let g = bridged_triangles();
        let h = Graph::complete(3);
        assert_eq!(quotient_graph(&g, &h, &EdgeCut::new()).unwrap(), g);

        let bridge: EdgeCut = [Edge::new(2, 3)].into_iter().collect();
        let s = induced_cut(&bridge, &g, &h).unwrap();
        let q = quotient_graph(&g, &h, &s).unwrap();
        assert_eq!(q, g.remove_edges(&bridge));
        assert_eq!(q.is_connected(), Ok(false));

        let k3 = Graph::complete(3);
        let k4 = Graph::complete(4);
        let p = direct_product(&k3, &k4).unwrap();
        let star = p.star(0).unwrap();
        assert_eq!(quotient_graph(&k3, &k4, &star).unwrap(), k3);

        let bogus: EdgeCut = [Edge::new(0, 1)].into_iter().collect();
        assert!(quotient_graph(&k3, &k4, &bogus).is_err());
    }

    #[test]
    fn fiber_containment_examples() {
        let k3 = Graph::complete(3);
        let k4 = Graph::complete(4);
        assert_eq!(fibers_contained(&k3, &k4, &EdgeCut::new()), Ok(true));

        // C_6 = K_2 × K_3 minus the two lifts of H-edge {1,2}
        let k2 = Graph::complete(2);
        let layout = ProductLayout::of(&k2, &k3);
        let s: EdgeCut = [
            layout.edge(ProductVertex { x: 0, u: 1 }, ProductVertex { x: 1, u: 2 }),
            layout.edge(ProductVertex { x: 0, u: 2 }, ProductVertex { x: 1, u: 1 }),
        ]
        .into_iter()
        .collect();
        assert_eq!(fibers_contained(&k2, &k3, &s), Ok(false));
    }

    #[test]
    fn product_cut_text_format() {
        let layout = ProductLayout { g_order: 2, h_order: 3 };
        let cut = layout.parse_cut("0,1 1,2\n1,1 0,2\n").unwrap();
        assert_eq!(cut.size(), 2);
        assert_eq!(layout.format_cut(&cut), "0,1 1,2\n0,2 1,1\n");
        assert!(layout.parse_cut("0,1").is_err());
        assert!(layout.parse_cut("0,3 1,1").is_err());
        assert!(layout.parse_cut("0,1 0,1").is_err());
    }
}
