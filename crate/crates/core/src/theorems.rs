//! Closed-form edge connectivity of `G × H` for dense `H`, the minimum cut
//! classifier, the super edge connectivity criterion for `G × K_n`, and the
//! exceptional family `K̄_{2l−1} ∨ lK_2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeCut, Graph};
use crate::graph6::emit_graph6;
use crate::iso::find_isomorphism;
use crate::mincut::{edge_connectivity, is_super_edge_connected_bruteforce, is_vertex_star, DEFAULT_BUDGET};
use crate::product::{direct_product, induced_cut, ProductLayout, ProductVertex};

/// `2·δ(h) > |h|`, evaluated in integers.
pub fn dense_precondition(h: &Graph) -> bool {
    let Ok(delta) = h.min_degree() else {
        return false;
    };
    let dense = 2 * delta > h.order();
    if dense {
        debug_assert!(h.is_connected().unwrap_or(false), "dense graphs are connected");
        debug_assert!(!h.is_bipartite(), "dense graphs contain a triangle");
    }
    dense
}

/// Which term of `min{2κ'(G)e(H), δ(G)δ(H)}` is smaller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    FactorCut,
    DegreeBound,
    Tie,
}

impl Branch {
    fn of(factor_cut: usize, degree: usize) -> Self {
        match factor_cut.cmp(&degree) {
            std::cmp::Ordering::Less => Branch::FactorCut,
            std::cmp::Ordering::Greater => Branch::DegreeBound,
            std::cmp::Ordering::Equal => Branch::Tie,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaResult {
    pub value: usize,
    /// `2κ'(G)e(H)`, or `n(n−1)κ'(G)` for the `K_n` form.
    pub factor_cut_term: usize,
    /// `δ(G)δ(H)`, or `(n−1)δ(G)` for the `K_n` form.
    pub degree_term: usize,
    pub branch: Branch,
    pub precondition_met: bool,
    pub kappa_g: usize,
}

impl FormulaResult {
    fn new(factor_cut_term: usize, degree_term: usize, kappa_g: usize) -> Self {
        FormulaResult {
            value: factor_cut_term.min(degree_term),
            factor_cut_term,
            degree_term,
            branch: Branch::of(factor_cut_term, degree_term),
            precondition_met: true,
            kappa_g,
        }
    }
}

/// `κ'` with the convention that trivial or disconnected graphs give 0.
pub fn kappa_or_zero(g: &Graph) -> Result<usize> {
    if g.order() < 2 {
        return Ok(0);
    }
    Ok(edge_connectivity(g)?.value)
}

/// `κ'(G × H) = min{2κ'(G)e(H), δ(G)δ(H)}` for `H` with `2δ(H) > |H|`.
pub fn kappa_formula(g: &Graph, h: &Graph) -> Result<FormulaResult> {
    require_dense(h)?;
    let kappa_g = kappa_or_zero(g)?;
    let delta_g = g.min_degree()?;
    let delta_h = h.min_degree()?;
    Ok(FormulaResult::new(
        2 * kappa_g * h.edge_count(),
        delta_g * delta_h,
        kappa_g,
    ))
}

/// `κ'(G × K_n) = min{n(n−1)κ'(G), (n−1)δ(G)}` for `n ≥ 3`.
pub fn kappa_formula_kn(g: &Graph, n: usize) -> Result<FormulaResult> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("K_n form needs n >= 3, got {n}")));
    }
    let kappa_g = kappa_or_zero(g)?;
    let delta_g = g.min_degree()?;
    Ok(FormulaResult::new(n * (n - 1) * kappa_g, (n - 1) * delta_g, kappa_g))
}

fn require_dense(h: &Graph) -> Result<()> {
    let delta = h.min_degree()?;
    if 2 * delta > h.order() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated { min_degree: delta, order: h.order() })
    }
}

/// Structural class of a minimum edge cut of `G × H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CutClass {
    InducedByFactorCut { factor_cut: EdgeCut },
    VertexStar { center: ProductVertex },
    /// Neither of the above; only legal for `G = K_2` and `H = H_l`.
    Exceptional { l: usize },
}

impl CutClass {
    pub fn kind(&self) -> &'static str {
        match self {
            CutClass::InducedByFactorCut { .. } => "induced",
            CutClass::VertexStar { .. } => "star",
            CutClass::Exceptional { .. } => "exceptional",
        }
    }
}

/// Classifier state shared by every cut of one `(G, H)` pair.
pub struct Classifier<'a> {
    g: &'a Graph,
    h: &'a Graph,
    product: Graph,
    layout: ProductLayout,
    formula: FormulaResult,
    exceptional: Option<usize>,
}

impl<'a> Classifier<'a> {
    pub fn new(g: &'a Graph, h: &'a Graph) -> Result<Self> {
        let formula = kappa_formula(g, h)?;
        let product = direct_product(g, h)?;
        let exceptional = if g.is_k2() { is_exceptional_member(h) } else { None };
        Ok(Classifier {
            g,
            h,
            product,
            layout: ProductLayout::of(g, h),
            formula,
            exceptional,
        })
    }

    pub fn product(&self) -> &Graph {
        &self.product
    }

    pub fn formula(&self) -> &FormulaResult {
        &self.formula
    }

    /// Star first, then factor-cut recovery, then the exception.
    pub fn classify(&self, cut: &EdgeCut) -> Result<CutClass> {
        self.product.check_cut(cut)?;
        if cut.size() != self.formula.value {
            return Err(Error::NotMinimumCut(format!(
                "size {} but kappa' = {}",
                cut.size(),
                self.formula.value
            )));
        }
        if !self.product.disconnects(cut) {
            return Err(Error::NotMinimumCut("removal leaves the product connected".into()));
        }

        if let Some(v) = is_vertex_star(&self.product, cut) {
            return Ok(CutClass::VertexStar { center: self.layout.vertex(v) });
        }

        let s0: EdgeCut = self
            .g
            .edges()
            .iter()
            .copied()
            .filter(|&xy| {
                let single: EdgeCut = [xy].into_iter().collect();
                induced_cut(&single, self.g, self.h)
                    .map(|lift| lift.iter().all(|e| cut.contains(&e)))
                    .unwrap_or(false)
            })
            .collect();
        if s0.size() == self.formula.kappa_g
            && self.g.disconnects(&s0)
            && induced_cut(&s0, self.g, self.h)? == *cut
        {
            return Ok(CutClass::InducedByFactorCut { factor_cut: s0 });
        }

        if let Some(l) = self.exceptional {
            return Ok(CutClass::Exceptional { l });
        }
        Err(Error::UnclassifiableCut(format!(
            "G = {}, H = {}, cut = [{}]",
            emit_graph6(self.g),
            emit_graph6(self.h),
            self.layout.format_cut(cut).trim_end().replace('\n', "; ")
        )))
    }
}

/// Classifies one minimum cut of `G × H`.
pub fn classify_min_cut(g: &Graph, h: &Graph, cut: &EdgeCut) -> Result<CutClass> {
    Classifier::new(g, h)?.classify(cut)
}

/// `G × K_n` is super edge connected iff `n·κ'(G) > δ(G)`, for `n ≥ 3` and
/// connected `G`, except `G = K_2, n = 3`.
pub fn is_super_edge_connected_kn(g: &Graph, n: usize) -> Result<bool> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("needs n >= 3, got {n}")));
    }
    if g.order() < 2 {
        return Err(Error::TooFewVertices { required: 2, order: g.order() });
    }
    if !g.is_connected()? {
        return Err(Error::Disconnected);
    }
    if g.is_k2() && n == 3 {
        let c6 = direct_product(g, &Graph::complete(3))?;
        let brute_force = is_super_edge_connected_bruteforce(&c6, DEFAULT_BUDGET)?;
        return Err(Error::ExcludedPair { brute_force });
    }
    Ok(n * edge_connectivity(g)?.value > g.min_degree()?)
}

/// `H_l = K̄_{2l−1} ∨ lK_2`. Vertices `0..2l−1` form the independent side;
/// the matching edges are `{2l−1+2i, 2l+2i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalMember {
    pub l: usize,
    pub graph: Graph,
}

impl ExceptionalMember {
    pub fn matching(&self) -> EdgeCut {
        let base = 2 * self.l - 1;
        (0..self.l)
            .map(|i| Edge::new(base + 2 * i, base + 2 * i + 1))
            .collect()
    }
}

pub fn exceptional_member(l: usize) -> Result<ExceptionalMember> {
    if l == 0 {
        return Err(Error::InvalidParameters("family index l must be >= 1".into()));
    }
    let graph = Graph::join(&Graph::empty(2 * l - 1), &Graph::matching(l)?);
    let member = ExceptionalMember { l, graph };

    assert_eq!(member.graph.order(), 4 * l - 1);
    assert_eq!(member.graph.regular_degree(), Some(2 * l));
    assert_eq!(
        member.graph.remove_edges(&member.matching()),
        Graph::complete_bipartite(2 * l - 1, 2 * l)?
    );
    Ok(member)
}

/// `Some(l)` when `h ≅ H_l`.
pub fn is_exceptional_member(h: &Graph) -> Option<usize> {
    let n = h.order();
    if n < 3 || !(n + 1).is_multiple_of(4) {
        return None;
    }
    let l = (n + 1) / 4;
    if h.regular_degree() != Some(2 * l) {
        return None;
    }
    let member = exceptional_member(l).ok()?;
    find_isomorphism(h, &member.graph).map(|_| l)
}

/// `K_2 × H_l` with the cut lifted from the matching of `H_l`: for
/// `uv` in the matching, both `(0,u)(1,v)` and `(0,v)(1,u)`.
#[derive(Debug, Clone)]
pub struct RemarkCut {
    pub member: ExceptionalMember,
    pub product: Graph,
    pub cut: EdgeCut,
}

pub fn remark_cut(l: usize) -> Result<RemarkCut> {
    let member = exceptional_member(l)?;
    let k2 = Graph::complete(2);
    let product = direct_product(&k2, &member.graph)?;
    let layout = ProductLayout::of(&k2, &member.graph);
    let cut = member
        .matching()
        .iter()
        .flat_map(|uv| {
            let (u, v) = (uv.lo(), uv.hi());
            [
                layout.edge(ProductVertex { x: 0, u }, ProductVertex { x: 1, u: v }),
                layout.edge(ProductVertex { x: 0, u: v }, ProductVertex { x: 1, u }),
            ]
        })
        .collect();
    Ok(RemarkCut { member, product, cut })
}
