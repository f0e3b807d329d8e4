//! The constructive core: conditional expected characteristic polynomials of
//! partially fixed random coverings, the greedy walk that fixes one rank-1
//! factor at a time without increasing the largest root, spectral-radius
//! brackets for the universal covering tree, and certificate assembly and
//! verification.
//!
//! The greedy invariants are enforced at every step on exact polynomials:
//! each conditional expectation must be real-rooted, the weighted sum of the
//! branch polynomials must reproduce the parent polynomial exactly, and the
//! chosen branch's largest-root bracket may never exceed the parent's by more
//! than twice the bracket tolerance.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

use crate::config::Config;
use crate::cover::{self, CoverError, GroupLabeling};
use crate::graph::{classify, subdivide, GraphError, OrientedMultigraph};
use crate::matching::{self, MatchingError};
use crate::perm::{self, EdgeFactorization, FactorDistribution, PermError, Permutation};
use crate::poly::{self, PolyError, RatPoly, RootBracket};
use crate::ratio;
use crate::repgroup::{
    build_cyclic, build_g_m1d, build_std, FiniteGroup, GroupElem, RepError, RepKind, Representation,
};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("expected-polynomial enumeration needs {needed} assignments, cap is {cap}; use a smaller graph or r")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("graph has loops; only the subdivision route (regular graphs) or 1-dimensional representations accept loops")]
    LoopsPresent,
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("interlacing violation at step {step}: {detail}")]
    InterlacingViolation { step: usize, detail: String },
    #[error("conditional expected polynomial is not real-rooted at {at} (rank-1 hypothesis violated?)")]
    NotRealRooted { at: String },
    #[error("exact identity failed: {what}")]
    IdentityMismatch { what: String },
    #[error("group Z/{m} has no exact characteristic-polynomial mode (m must be one of 2, 3, 4, 6)")]
    NotExactMode { m: u16 },
    #[error("unsupported group descriptor {0:?} (supported: std:<r>, cyclic:<m>, gm1d:<m>,<d>)")]
    BadDescriptor(String),
    #[error("factorization count {got} does not match edge count {expected}")]
    FactorizationCount { got: usize, expected: usize },
    #[error("labeling entry {0} is not a member of the group")]
    BadLabel(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

// ---------------------------------------------------------------------------
// Search state
// ---------------------------------------------------------------------------

#[derive(Clone)]
struct EdgeState {
    factors: Vec<FactorDistribution>,
    fixed: usize,
    prefix: u32,
}

/// A partially fixed product of independent rank-1 edge factors: for each
/// edge, an ordered factor list, a count of already-fixed factors, and the
/// group element their chosen values multiply to.
#[derive(Clone)]
pub struct SearchState {
    pub graph: OrientedMultigraph,
    pub rep: Arc<Representation>,
    edges: Vec<EdgeState>,
    cfg: Config,
}

impl SearchState {
    /// Validated constructor: every factor must be rank-1 under the
    /// representation, and loops are only admitted for 1-dim representations.
    pub fn new(
        graph: OrientedMultigraph,
        rep: Arc<Representation>,
        factorizations: Vec<EdgeFactorization>,
        cfg: Config,
    ) -> Result<Self, SearchError> {
        if graph.has_loops() && rep.dim > 1 {
            return Err(SearchError::LoopsPresent);
        }
        for fz in &factorizations {
            for f in &fz.factors {
                f.validate_rank1(&rep)?;
            }
        }
        Self::new_unchecked(graph, rep, factorizations, cfg)
    }

    /// Constructor without the rank-1 validation, for exhibiting what goes
    /// wrong outside the hypothesis (the expected polynomial need not be
    /// real-rooted then).
    pub fn new_unchecked(
        graph: OrientedMultigraph,
        rep: Arc<Representation>,
        factorizations: Vec<EdgeFactorization>,
        cfg: Config,
    ) -> Result<Self, SearchError> {
        if factorizations.len() != graph.edge_count() {
            return Err(SearchError::FactorizationCount {
                got: factorizations.len(),
                expected: graph.edge_count(),
            });
        }
        let id = rep.group.identity_id();
        let edges = factorizations
            .into_iter()
            .map(|fz| EdgeState { factors: fz.factors, fixed: 0, prefix: id })
            .collect();
        Ok(SearchState { graph, rep, edges, cfg })
    }

    /// (edge, factor index) of the next unfixed factor in edge-major order.
    pub fn next_unfixed(&self) -> Option<(usize, usize)> {
        self.edges
            .iter()
            .enumerate()
            .find(|(_, e)| e.fixed < e.factors.len())
            .map(|(i, e)| (i, e.fixed))
    }

    pub fn is_fully_fixed(&self) -> bool {
        self.next_unfixed().is_none()
    }

    fn with_fixed(&self, edge: usize, value: u32) -> SearchState {
        let mut next = self.clone();
        let es = &mut next.edges[edge];
        es.prefix = self.rep.group.mul_ids(es.prefix, value);
        es.fixed += 1;
        next
    }

    /// The distribution of the final label of an edge given the fixed prefix.
    fn residual(&self, edge: usize) -> FactorDistribution {
        let es = &self.edges[edge];
        let mut acc = FactorDistribution::point(self.rep.group.clone(), es.prefix);
        for f in &es.factors[es.fixed..] {
            acc = acc.convolve(f);
        }
        acc
    }

    /// The fully determined labeling (only valid once everything is fixed).
    pub fn labeling(&self) -> GroupLabeling {
        debug_assert!(self.is_fully_fixed());
        GroupLabeling {
            group: self.rep.group.clone(),
            values: self.edges.iter().map(|e| e.prefix).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Expected characteristic polynomials
// ---------------------------------------------------------------------------

/// Per-labeling exact characteristic polynomials with memoization. For the
/// standard representation the polynomial is chi_perm / chi(A_G) (the exact
/// route); other exact kinds go through the twisted adjacency directly.
struct PhiEvaluator {
    graph: OrientedMultigraph,
    rep: Arc<Representation>,
    perm_rep: Option<Representation>,
    phi_g: Option<RatPoly>,
    memo: HashMap<Vec<u32>, Vec<BigInt>>,
}

impl PhiEvaluator {
    fn new(graph: &OrientedMultigraph, rep: &Arc<Representation>) -> Self {
        let (perm_rep, phi_g) = if matches!(rep.kind, RepKind::Std) {
            let pr = Representation {
                group: rep.group.clone(),
                dim: rep.group.degree,
                name: format!("perm(S{})", rep.group.degree),
                kind: RepKind::PermAction,
            };
            (Some(pr), Some(cover::adjacency_char_poly(graph)))
        } else {
            (None, None)
        };
        PhiEvaluator {
            graph: graph.clone(),
            rep: rep.clone(),
            perm_rep,
            phi_g,
            memo: HashMap::new(),
        }
    }

    fn nd(&self) -> usize {
        self.graph.n() * self.rep.dim
    }

    fn phi_coeffs(&mut self, labels: &[u32]) -> Result<&[BigInt], SearchError> {
        if !self.memo.contains_key(labels) {
            let lab = GroupLabeling { group: self.rep.group.clone(), values: labels.to_vec() };
            let p = match self.rep.kind {
                RepKind::Std => cover::std_char_poly(
                    &self.graph,
                    &lab,
                    self.perm_rep.as_ref().unwrap(),
                    self.phi_g.as_ref().unwrap(),
                )?,
                _ => cover::char_poly(&cover::twisted_adjacency(&self.graph, &lab, &self.rep)?)?,
            };
            let nd = self.nd();
            let mut coeffs = vec![BigInt::zero(); nd + 1];
            for (i, c) in p.coeffs().iter().enumerate() {
                debug_assert!(c.denom().is_one(), "exact char polys have integer coefficients");
                coeffs[i] = c.numer().clone();
            }
            self.memo.insert(labels.to_vec(), coeffs);
        }
        Ok(self.memo.get(labels).unwrap().as_slice())
    }
}

fn expected_with(state: &SearchState, eval: &mut PhiEvaluator) -> Result<RatPoly, SearchError> {
    let ecount = state.graph.edge_count();
    let nd = eval.nd();
    // residual support per edge, weights over a per-edge common denominator
    let mut supports: Vec<Vec<u32>> = Vec::with_capacity(ecount);
    let mut weight_nums: Vec<Vec<BigInt>> = Vec::with_capacity(ecount);
    let mut total_den = BigInt::one();
    let mut needed: u128 = 1;
    for e in 0..ecount {
        let dist = state.residual(e);
        let mut den = BigInt::one();
        for (_, w) in &dist.support {
            den = num::Integer::lcm(&den, w.denom());
        }
        let nums = dist
            .support
            .iter()
            .map(|(_, w)| w.numer() * (&den / w.denom()))
            .collect();
        supports.push(dist.support.iter().map(|(id, _)| *id).collect());
        weight_nums.push(nums);
        total_den *= den;
        needed = needed.saturating_mul(dist.support.len() as u128);
    }
    if needed > state.cfg.enum_cap as u128 {
        return Err(SearchError::CapExceeded { needed, cap: state.cfg.enum_cap });
    }
    let mut acc = vec![BigInt::zero(); nd + 1];
    let mut choice = vec![0usize; ecount];
    let mut labels = vec![0u32; ecount];
    'outer: loop {
        let mut w = BigInt::one();
        for e in 0..ecount {
            labels[e] = supports[e][choice[e]];
            w *= &weight_nums[e][choice[e]];
        }
        let coeffs = eval.phi_coeffs(&labels)?;
        for (a, c) in acc.iter_mut().zip(coeffs) {
            if !c.is_zero() {
                *a += &w * c;
            }
        }
        // odometer over the joint residual support
        let mut j = 0;
        loop {
            if j == ecount {
                break 'outer;
            }
            choice[j] += 1;
            if choice[j] < supports[j].len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
    let den = BigRational::from_integer(total_den);
    Ok(RatPoly::from_coeffs(
        acc.into_iter().map(|n| BigRational::from_integer(n) / &den).collect(),
    ))
}

/// The exact conditional expected characteristic polynomial of a state:
/// the weighted sum of phi over the joint residual assignments.
pub fn expected_char_poly(state: &SearchState) -> Result<RatPoly, SearchError> {
    let mut eval = PhiEvaluator::new(&state.graph, &state.rep);
    expected_with(state, &mut eval)
}

// ---------------------------------------------------------------------------
// Greedy walk
// ---------------------------------------------------------------------------

pub struct GreedyStep {
    pub edge: usize,
    pub factor: usize,
    pub chosen_value: u32,
    pub bracket: RootBracket,
}

pub struct GreedyOutcome {
    pub labeling: GroupLabeling,
    /// Expected polynomial of the fully uniform starting state.
    pub initial_expected: RatPoly,
    pub initial_bracket: RootBracket,
    /// chi of the final labeling (the fully fixed expected polynomial).
    pub final_poly: RatPoly,
    pub final_bracket: RootBracket,
    pub steps: Vec<GreedyStep>,
}

fn ensure_real_rooted(p: &RatPoly, at: &str) -> Result<(), SearchError> {
    if !poly::is_real_rooted(p) {
        return Err(SearchError::NotRealRooted { at: at.to_string() });
    }
    Ok(())
}

fn argmin_by_upper(brackets: &[RootBracket]) -> usize {
    let mut best = 0;
    for (i, b) in brackets.iter().enumerate().skip(1) {
        if b.upper < brackets[best].upper {
            best = i;
        }
    }
    best
}

/// Pick the branch with the smallest largest root, refining overlapping
/// brackets a bounded number of times; remaining ties break toward the first
/// support element.
fn pick_branch(polys: &[RatPoly], tol: &BigRational) -> Result<(usize, RootBracket), SearchError> {
    let mut t = tol.clone();
    let mut brackets: Vec<RootBracket> = polys
        .iter()
        .map(|p| poly::largest_root(p, &t))
        .collect::<Result<_, _>>()?;
    for _ in 0..3 {
        let imin = argmin_by_upper(&brackets);
        let ambiguous = brackets
            .iter()
            .enumerate()
            .any(|(j, b)| j != imin && b.lower < brackets[imin].upper && *b != brackets[imin]);
        if !ambiguous {
            break;
        }
        t = &t / ratio::rat_int(16);
        brackets = polys
            .iter()
            .map(|p| poly::largest_root(p, &t))
            .collect::<Result<_, _>>()?;
    }
    let imin = argmin_by_upper(&brackets);
    Ok((imin, brackets[imin].clone()))
}

fn greedy_step_with(
    state: &SearchState,
    eval: &mut PhiEvaluator,
    parent: Option<(&RatPoly, &RootBracket)>,
    step_index: usize,
) -> Result<(u32, SearchState, RootBracket, RatPoly), SearchError> {
    let (edge, fidx) = state.next_unfixed().expect("greedy_step needs an unfixed factor");
    let factor = state.edges[edge].factors[fidx].clone();
    let mut branch_states = Vec::with_capacity(factor.support.len());
    let mut branch_polys = Vec::with_capacity(factor.support.len());
    for (value, _) in &factor.support {
        let bs = state.with_fixed(edge, *value);
        let bp = expected_with(&bs, eval)?;
        ensure_real_rooted(&bp, &format!("edge {edge} factor {fidx} value {value}"))?;
        branch_states.push(bs);
        branch_polys.push(bp);
    }
    if let Some((parent_poly, _)) = parent {
        // exact mixture identity: the weighted branches reproduce the parent
        let mut mix = RatPoly::zero();
        for ((_, w), bp) in factor.support.iter().zip(&branch_polys) {
            mix = mix.add(&bp.scale(w));
        }
        if &mix != parent_poly {
            return Err(SearchError::IdentityMismatch {
                what: format!(
                    "branch mixture at step {step_index} does not reproduce the parent polynomial"
                ),
            });
        }
    }
    let (choice, bracket) = pick_branch(&branch_polys, &state.cfg.bracket_tol)?;
    if let Some((_, parent_bracket)) = parent {
        let two_tol = &state.cfg.bracket_tol * ratio::rat_int(2);
        if bracket.upper > &parent_bracket.upper + &two_tol {
            return Err(SearchError::InterlacingViolation {
                step: step_index,
                detail: format!(
                    "min branch upper {} exceeds parent upper {} by more than 2 tol",
                    ratio::to_f64(&bracket.upper),
                    ratio::to_f64(&parent_bracket.upper)
                ),
            });
        }
    }
    let value = factor.support[choice].0;
    let st = branch_states.swap_remove(choice);
    let chosen_poly = branch_polys.swap_remove(choice);
    Ok((value, st, bracket, chosen_poly))
}

/// One greedy step on its own (fresh evaluation context).
pub fn greedy_step(state: &SearchState) -> Result<(u32, SearchState, RootBracket), SearchError> {
    let mut eval = PhiEvaluator::new(&state.graph, &state.rep);
    greedy_step_with(state, &mut eval, None, 0).map(|(v, s, b, _)| (v, s, b))
}

/// Run the greedy to completion from the given (usually fully uniform) state.
pub fn greedy_run(mut state: SearchState) -> Result<GreedyOutcome, SearchError> {
    let mut eval = PhiEvaluator::new(&state.graph, &state.rep);
    let initial_expected = expected_with(&state, &mut eval)?;
    ensure_real_rooted(&initial_expected, "initial state")?;
    let initial_bracket = poly::largest_root(&initial_expected, &state.cfg.bracket_tol)?;
    let mut steps = vec![];
    let mut parent_poly = initial_expected.clone();
    let mut parent_bracket = initial_bracket.clone();
    let mut step_index = 0;
    while let Some((edge, factor)) = state.next_unfixed() {
        let (value, next, bracket, chosen_poly) =
            greedy_step_with(&state, &mut eval, Some((&parent_poly, &parent_bracket)), step_index)?;
        steps.push(GreedyStep { edge, factor, chosen_value: value, bracket: bracket.clone() });
        state = next;
        parent_poly = chosen_poly;
        parent_bracket = bracket;
        step_index += 1;
    }
    Ok(GreedyOutcome {
        labeling: state.labeling(),
        initial_expected,
        initial_bracket,
        final_poly: parent_poly,
        final_bracket: parent_bracket,
        steps,
    })
}

// ---------------------------------------------------------------------------
// Spectral radius of the universal covering tree
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RhoMethod {
    ClosedForm,
    BallIteration,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhoBracket {
    #[serde(with = "crate::ratio::serde_rational")]
    pub lower: BigRational,
    #[serde(with = "crate::ratio::serde_rational")]
    pub upper: BigRational,
    pub method: RhoMethod,
}

fn sqrt_bracket_scaled(q: i64, scale: i64, tol: &BigRational) -> (BigRational, BigRational) {
    let (lo, hi) = ratio::sqrt_bracket(&ratio::rat_int(q), tol).expect("nonnegative");
    (lo * ratio::rat_int(scale), hi * ratio::rat_int(scale))
}

/// rho(G): exact closed forms for regular (2 sqrt(k-1), k >= 2) and biregular
/// (sqrt(k-1) + sqrt(l-1), both sides >= 2) graphs; K2 and K1 are their own
/// universal covers; otherwise a certified lower bound from Rayleigh
/// quotients on growing balls of the universal cover plus the
/// 2 sqrt(Delta-1) upper bound.
pub fn rho(g: &OrientedMultigraph, cfg: &Config) -> Result<RhoBracket, SearchError> {
    if !g.is_connected() {
        return Err(SearchError::Disconnected);
    }
    let report = classify(g);
    let half_tol = &cfg.bracket_tol / ratio::rat_int(2);
    if let Some(k) = report.regular_degree {
        match k {
            0 => {
                return Ok(RhoBracket {
                    lower: BigRational::zero(),
                    upper: BigRational::zero(),
                    method: RhoMethod::ClosedForm,
                })
            }
            1 => {
                // the only connected 1-regular graph is K2, its own universal cover
                return Ok(RhoBracket {
                    lower: BigRational::one(),
                    upper: BigRational::one(),
                    method: RhoMethod::ClosedForm,
                });
            }
            _ => {
                let (lo, hi) = sqrt_bracket_scaled(k as i64 - 1, 2, &half_tol);
                return Ok(RhoBracket { lower: lo, upper: hi, method: RhoMethod::ClosedForm });
            }
        }
    }
    if let Some((k, l)) = report.biregular_degrees {
        if k >= 2 && l >= 2 {
            let (alo, ahi) = sqrt_bracket_scaled(k as i64 - 1, 1, &half_tol);
            let (blo, bhi) = sqrt_bracket_scaled(l as i64 - 1, 1, &half_tol);
            return Ok(RhoBracket {
                lower: alo + blo,
                upper: ahi + bhi,
                method: RhoMethod::ClosedForm,
            });
        }
    }
    // ball iteration from a max-degree root
    let delta = report.max_degree;
    debug_assert!(delta >= 2, "irregular connected graphs have max degree >= 2");
    let (_, upper) = sqrt_bracket_scaled(delta as i64 - 1, 2, &half_tol);
    let lower_est = universal_cover_ball_perron(g, cfg);
    let mut lower = ratio::f64_lower_bound(lower_est, 1e-9);
    if lower.is_negative() {
        lower = BigRational::zero();
    }
    if lower > upper {
        lower = upper.clone();
    }
    Ok(RhoBracket { lower, upper, method: RhoMethod::BallIteration })
}

struct BallNode {
    vertex: usize,
    arrived: Option<crate::graph::OrientedEdge>,
    parent: Option<usize>,
}

/// Rayleigh-quotient lower bound on the Perron value of the radius-R ball of
/// the universal cover, R grown until the increment drops below 1e-6 (or the
/// radius/node caps bite). The ball values increase monotonically to rho(G),
/// and a Rayleigh quotient never exceeds the top eigenvalue, so the estimate
/// is a certified lower bound up to float rounding.
fn universal_cover_ball_perron(g: &OrientedMultigraph, cfg: &Config) -> f64 {
    let degrees = g.degrees();
    let root = (0..g.n()).max_by_key(|&v| degrees[v]).unwrap_or(0);
    let mut nodes = vec![BallNode { vertex: root, arrived: None, parent: None }];
    let mut frontier = vec![0usize];
    let mut best = 0.0f64;
    for _radius in 0..cfg.rho_radius_cap {
        let mut next_frontier = vec![];
        for &ni in &frontier {
            let v = nodes[ni].vertex;
            for oe in g.oriented_out(v) {
                if let Some(arr) = nodes[ni].arrived {
                    // non-backtracking: never take the reverse of the arrival edge
                    if arr.index == oe.index && arr.forward != oe.forward {
                        continue;
                    }
                }
                let u = g.oriented_head(oe);
                nodes.push(BallNode { vertex: u, arrived: Some(oe), parent: Some(ni) });
                next_frontier.push(nodes.len() - 1);
            }
        }
        if next_frontier.is_empty() {
            break; // the universal cover is this finite tree
        }
        frontier = next_frontier;
        let val = tree_perron_rayleigh(&nodes);
        if best > 0.0 && (val - best).abs() < 1e-6 {
            best = best.max(val);
            break;
        }
        best = best.max(val);
        if nodes.len() > cfg.rho_node_cap {
            break;
        }
    }
    best
}

fn tree_perron_rayleigh(nodes: &[BallNode]) -> f64 {
    let n = nodes.len();
    let mut x = vec![1.0f64; n];
    let mut val = 0.0;
    for _ in 0..200 {
        let mut ax = vec![0.0f64; n];
        for (i, node) in nodes.iter().enumerate() {
            if let Some(p) = node.parent {
                ax[p] += x[i];
                ax[i] += x[p];
            }
        }
        let num: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let den: f64 = x.iter().map(|a| a * a).sum();
        let rayleigh = num / den;
        // iterate on A + I: trees are bipartite, so plain power iteration
        // oscillates between the +rho and -rho eigenvectors; the shift gives
        // a spectral gap while the Rayleigh quotient of A stays a lower bound
        let mut y: Vec<f64> = ax.iter().zip(&x).map(|(a, b)| a + b).collect();
        let norm = y.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        for a in &mut y {
            *a /= norm;
        }
        x = y;
        if (rayleigh - val).abs() < 1e-10 {
            return rayleigh;
        }
        val = rayleigh;
    }
    val
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    OneSidedRamanujan,
    OneSidedVsDmatching,
    Fail,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WireLabel {
    pub perm: Vec<u8>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub phases: Vec<u8>,
}

/// A found covering plus exact polynomial and root-bracket evidence of the
/// one-sided Ramanujan property.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LiftCertificate {
    pub base_n: usize,
    pub base_edges: Vec<[usize; 2]>,
    /// Group descriptor: "std:<r>", "cyclic:<m>" or "gm1d:<m>,<d>".
    pub group: String,
    pub dim: usize,
    pub labeling: Vec<WireLabel>,
    pub new_spectrum_poly: RatPoly,
    pub largest_new_root: RootBracket,
    pub d_matching_root: RootBracket,
    pub rho: RhoBracket,
    pub verdict: Verdict,
    /// For bipartite bases: spectrum parity held and the full (two-sided)
    /// containment in [-rho_upper, rho_upper] was certified.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bipartite_full: Option<bool>,
    /// Total-variation slack of an approximate (lazy-walk) factorization.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    pub tol: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupDescriptor {
    StdSr(usize),
    Cyclic(u16),
    GM1D(u16, usize),
}

impl GroupDescriptor {
    pub fn parse(s: &str) -> Result<GroupDescriptor, SearchError> {
        let bad = || SearchError::BadDescriptor(s.to_string());
        if let Some(r) = s.strip_prefix("std:") {
            return r.trim().parse().map(GroupDescriptor::StdSr).map_err(|_| bad());
        }
        if let Some(m) = s.strip_prefix("cyclic:") {
            return m.trim().parse().map(GroupDescriptor::Cyclic).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("gm1d:") {
            let (m, d) = rest.split_once(',').ok_or_else(bad)?;
            let m: u16 = m.trim().parse().map_err(|_| bad())?;
            let d: usize = d.trim().parse().map_err(|_| bad())?;
            return Ok(GroupDescriptor::GM1D(m, d));
        }
        Err(bad())
    }
}

impl std::fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupDescriptor::StdSr(r) => write!(f, "std:{r}"),
            GroupDescriptor::Cyclic(m) => write!(f, "cyclic:{m}"),
            GroupDescriptor::GM1D(m, d) => write!(f, "gm1d:{m},{d}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorizationChoice {
    /// Exact rank-1 factorization of the uniform distribution.
    Exact,
    /// Lazy-walk factors; the certificate carries the TV-distance slack.
    LazyWalk { steps: usize },
}

const EXACT_MODULI: [u16; 4] = [2, 3, 4, 6];

fn wire_labels(lab: &GroupLabeling) -> Vec<WireLabel> {
    lab.values
        .iter()
        .map(|&id| {
            let e = lab.group.elem(id);
            WireLabel {
                perm: e.perm.clone(),
                phases: if e.phases.iter().all(|&p| p == 0) { vec![] } else { e.phases.clone() },
            }
        })
        .collect()
}

fn assemble_certificate(
    g: &OrientedMultigraph,
    desc: GroupDescriptor,
    dim: usize,
    labeling: &GroupLabeling,
    phi_new: RatPoly,
    d_matching: &RatPoly,
    epsilon: Option<BigRational>,
    cfg: &Config,
) -> Result<LiftCertificate, SearchError> {
    let rho_bracket = rho(g, cfg)?;
    let m_bracket = poly::largest_root(d_matching, &cfg.bracket_tol)?;
    let slackened = &m_bracket.upper + &cfg.verdict_slack;
    let one_sided_rho = poly::count_roots_above(&phi_new, &rho_bracket.upper) == 0;
    let one_sided_m = poly::count_roots_above(&phi_new, &slackened) == 0;
    let verdict = if one_sided_rho {
        Verdict::OneSidedRamanujan
    } else if one_sided_m {
        Verdict::OneSidedVsDmatching
    } else {
        Verdict::Fail
    };
    let mut new_bracket = poly::largest_root(&phi_new, &cfg.bracket_tol)?;
    // clamp to the certified bound so the stated bracket invariants hold
    match verdict {
        Verdict::OneSidedRamanujan => {
            if new_bracket.upper > rho_bracket.upper {
                new_bracket.upper = rho_bracket.upper.clone();
            }
        }
        Verdict::OneSidedVsDmatching => {
            if new_bracket.upper > slackened {
                new_bracket.upper = slackened.clone();
            }
        }
        Verdict::Fail => {}
    }
    let bipartite_full = if classify(g).bipartite {
        let parity = phi_new.has_pure_parity();
        let below = poly::count_roots_below(&phi_new, &(-rho_bracket.upper.clone()));
        Some(parity && below == 0 && one_sided_rho)
    } else {
        None
    };
    Ok(LiftCertificate {
        base_n: g.n(),
        base_edges: g.edges().iter().map(|e| [e.head, e.tail]).collect(),
        group: desc.to_string(),
        dim,
        labeling: wire_labels(labeling),
        new_spectrum_poly: phi_new,
        largest_new_root: new_bracket,
        d_matching_root: m_bracket,
        rho: rho_bracket,
        verdict,
        bipartite_full,
        epsilon: epsilon.map(|e| ratio::format_rational(&e)),
        tol: ratio::format_rational(&cfg.bracket_tol),
    })
}

// ---------------------------------------------------------------------------
// Lift construction entry points
// ---------------------------------------------------------------------------

/// One-sided Ramanujan r-covering search for a connected loopless graph:
/// swap factorizations per edge, greedy walk, exact certificate against
/// M_{r-1,G} and the rho bracket.
pub fn find_lift(
    g: &OrientedMultigraph,
    r: usize,
    cfg: &Config,
) -> Result<LiftCertificate, SearchError> {
    if g.has_loops() {
        return Err(SearchError::LoopsPresent);
    }
    find_lift_group(g, GroupDescriptor::StdSr(r), FactorizationChoice::Exact, cfg)
}

fn default_generators(group: &Arc<FiniteGroup>) -> Vec<GroupElem> {
    let d = group.degree;
    let m = group.modulus;
    let mut gens = vec![];
    for i in 0..d.saturating_sub(1) {
        let mut e = GroupElem::identity(d, m);
        e.perm.swap(i, i + 1);
        gens.push(e);
    }
    if m > 1 {
        let mut e = GroupElem::identity(d, m);
        e.phases[0] = 1;
        gens.push(e);
    }
    gens
}

/// Representation, exact per-edge factorization, and dim(pi) for a descriptor.
fn descriptor_setup(
    desc: GroupDescriptor,
    cfg: &Config,
) -> Result<(Representation, EdgeFactorization, usize), SearchError> {
    match desc {
        GroupDescriptor::StdSr(r) => {
            if r < 2 {
                return Err(SearchError::BadDescriptor(format!("std:{r} (need r >= 2)")));
            }
            let rep = build_std(r, cfg.group_order_cap)?;
            let fz = perm::swap_factorization(r, cfg.group_order_cap)?;
            Ok((rep, fz, r - 1))
        }
        GroupDescriptor::Cyclic(m) => {
            if !EXACT_MODULI.contains(&m) {
                return Err(SearchError::NotExactMode { m });
            }
            let rep = build_cyclic(m, cfg.group_order_cap)?;
            let fz = perm::cyclic_uniform(m, cfg.group_order_cap)?;
            Ok((rep, fz, 1))
        }
        GroupDescriptor::GM1D(m, dd) => {
            if !EXACT_MODULI.contains(&m) {
                return Err(SearchError::NotExactMode { m });
            }
            if dd < 2 {
                return Err(SearchError::BadDescriptor("gm1d needs d >= 2".into()));
            }
            let rep = build_g_m1d(m, dd, cfg.group_order_cap)?;
            let fz = perm::gm1d_factorization(m, dd, cfg.group_order_cap)?;
            Ok((rep, fz, dd))
        }
    }
}

/// Expected characteristic polynomial of the fully uniform state for a group
/// descriptor; equals M_{d,G} for every implemented (P1) pair.
pub fn uniform_expected_char_poly(
    g: &OrientedMultigraph,
    desc: GroupDescriptor,
    cfg: &Config,
) -> Result<RatPoly, SearchError> {
    let (rep, fz, _) = descriptor_setup(desc, cfg)?;
    let state =
        SearchState::new(g.clone(), Arc::new(rep), vec![fz; g.edge_count()], cfg.clone())?;
    expected_char_poly(&state)
}

/// Group-covering search. Exact factorizations: swap factors for std:r, a
/// single uniform factor per edge for cyclic:m, swap-then-phase factors for
/// gm1d:m,d. Lazy-walk factorizations record their TV slack in the
/// certificate. Loops are admitted only for 1-dimensional representations.
pub fn find_lift_group(
    g: &OrientedMultigraph,
    desc: GroupDescriptor,
    choice: FactorizationChoice,
    cfg: &Config,
) -> Result<LiftCertificate, SearchError> {
    if !g.is_connected() {
        return Err(SearchError::Disconnected);
    }
    let (rep, factorization, d) = descriptor_setup(desc, cfg)?;
    let factorization = match choice {
        FactorizationChoice::Exact => factorization,
        FactorizationChoice::LazyWalk { steps } => {
            let gens = default_generators(&rep.group);
            perm::lazy_walk_factorization(rep.group.clone(), &gens, steps)?
        }
    };
    let epsilon = factorization.epsilon.clone();
    let rep = Arc::new(rep);
    let per_edge = vec![factorization; g.edge_count()];
    let state = SearchState::new(g.clone(), rep.clone(), per_edge, cfg.clone())?;
    let outcome = greedy_run(state)?;

    let d_matching = matching::d_matching_poly(g, d as u32)?;
    if epsilon.is_none() && outcome.initial_expected != d_matching {
        return Err(SearchError::IdentityMismatch {
            what: format!(
                "fully uniform expected polynomial differs from the {d}-matching polynomial under {}",
                rep.name
            ),
        });
    }

    // the new-spectrum polynomial of the final labeling, via the exact route
    let phi_new = match desc {
        GroupDescriptor::StdSr(_) => {
            let phi = cover::new_char_poly(g, &outcome.labeling)?;
            if phi != outcome.final_poly {
                return Err(SearchError::IdentityMismatch {
                    what: "final expected polynomial differs from the covering's new-spectrum polynomial"
                        .into(),
                });
            }
            phi
        }
        _ => outcome.final_poly.clone(),
    };
    assemble_certificate(g, desc, d, &outcome.labeling, phi_new, &d_matching, epsilon, cfg)
}

/// Regular graphs, possibly with loops: subdivide (bipartite, loopless), lift
/// the subdivision, transport the labeling back through the one-to-one
/// correspondence of coverings, and certify against 2 sqrt(k-1).
pub fn lift_regular_with_loops(
    g: &OrientedMultigraph,
    r: usize,
    cfg: &Config,
) -> Result<LiftCertificate, SearchError> {
    if !g.is_connected() {
        return Err(SearchError::Disconnected);
    }
    let report = classify(g);
    let Some(k) = report.regular_degree else {
        return Err(SearchError::NotRegular);
    };
    let h = subdivide(g);
    let h_cert = find_lift(&h, r, cfg)?;
    // transport: sigma_j = tau_{2j+1}^{-1} o tau_{2j}
    let tau = labeling_from_wire(&h, &h_cert.group, &h_cert.labeling, cfg)?;
    let group = tau.group.clone();
    let values = (0..g.edge_count())
        .map(|j| {
            let a = tau.values[2 * j];
            let b = tau.values[2 * j + 1];
            group.mul_ids(group.inv_id(b), a)
        })
        .collect();
    let sigma = GroupLabeling { group, values };

    let phi_new_g = cover::new_char_poly(g, &sigma)?;
    // cross-check the correspondence: the lifted subdivision's spectrum is
    // x^{r(m-n)} chi_{A_Gcov}(x^2 - k)
    let h_cov_poly = cover::covering_char_poly(&h, &tau)?;
    let g_cov = cover::build_covering(g, &sigma)?;
    let g_cov_poly = cover::adjacency_char_poly(&g_cov);
    let mut expect = substitute_x2_minus_c(&g_cov_poly, k as i64);
    for _ in 0..r * (g.edge_count() - g.n()) {
        expect = expect.mul(&RatPoly::x());
    }
    if expect != h_cov_poly {
        return Err(SearchError::IdentityMismatch {
            what: "subdivided covering spectrum does not match the sqrt(mu + k) correspondence"
                .into(),
        });
    }
    let d_matching = matching::d_matching_poly(g, (r - 1) as u32)?;
    assemble_certificate(
        g,
        GroupDescriptor::StdSr(r),
        r - 1,
        &sigma,
        phi_new_g,
        &d_matching,
        None,
        cfg,
    )
}

/// p(x^2 - c).
fn substitute_x2_minus_c(p: &RatPoly, c: i64) -> RatPoly {
    let arg = RatPoly::from_int_coeffs(&[-c, 0, 1]);
    let mut acc = RatPoly::zero();
    for coeff in p.coeffs().iter().rev() {
        acc = acc.mul(&arg).add(&RatPoly::constant(coeff.clone()));
    }
    acc
}

// ---------------------------------------------------------------------------
// Certificate verification
// ---------------------------------------------------------------------------

fn labeling_from_wire(
    g: &OrientedMultigraph,
    desc: &str,
    wire: &[WireLabel],
    cfg: &Config,
) -> Result<GroupLabeling, SearchError> {
    let desc = GroupDescriptor::parse(desc)?;
    let group = match desc {
        GroupDescriptor::StdSr(r) => FiniteGroup::symmetric(r, cfg.group_order_cap)?,
        GroupDescriptor::Cyclic(m) => FiniteGroup::cyclic(m, cfg.group_order_cap)?,
        GroupDescriptor::GM1D(m, d) => FiniteGroup::gm1d(m, d, cfg.group_order_cap)?,
    };
    if wire.len() != g.edge_count() {
        return Err(SearchError::FactorizationCount { got: wire.len(), expected: g.edge_count() });
    }
    let mut values = Vec::with_capacity(wire.len());
    for (i, w) in wire.iter().enumerate() {
        let degree = group.degree;
        let elem = GroupElem {
            perm: w.perm.clone(),
            phases: if w.phases.is_empty() { vec![0; degree] } else { w.phases.clone() },
            modulus: group.modulus,
        };
        let perm_ok = elem.perm.len() == degree
            && Permutation { images: elem.perm.clone() }.is_valid();
        if !perm_ok {
            return Err(SearchError::BadLabel(i));
        }
        let id = group.id_of(&elem).ok_or(SearchError::BadLabel(i))?;
        values.push(id);
    }
    Ok(GroupLabeling { group, values })
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub matches: bool,
    pub recomputed_verdict: Verdict,
    pub mismatches: Vec<String>,
}

/// Recomputes every polynomial claim of a certificate from the labeling
/// alone and re-issues the verdict. Field mismatches are listed by name.
pub fn verify_certificate(
    cert: &LiftCertificate,
    cfg: &Config,
) -> Result<VerifyReport, SearchError> {
    let g = OrientedMultigraph::new(
        cert.base_n,
        cert.base_edges.iter().map(|e| (e[0], e[1])).collect(),
    )?;
    let desc = GroupDescriptor::parse(&cert.group)?;
    let lab = labeling_from_wire(&g, &cert.group, &cert.labeling, cfg)?;
    let phi_new = match desc {
        GroupDescriptor::StdSr(_) => cover::new_char_poly(&g, &lab)?,
        GroupDescriptor::Cyclic(m) => {
            let rep = build_cyclic(m, cfg.group_order_cap)?;
            cover::char_poly(&cover::twisted_adjacency(&g, &lab, &rep)?)?
        }
        GroupDescriptor::GM1D(m, d) => {
            let rep = build_g_m1d(m, d, cfg.group_order_cap)?;
            cover::char_poly(&cover::twisted_adjacency(&g, &lab, &rep)?)?
        }
    };
    let d_matching = matching::d_matching_poly(&g, cert.dim as u32)?;
    let epsilon = match &cert.epsilon {
        Some(e) => {
            Some(ratio::parse_rational(e).map_err(|_| SearchError::BadDescriptor(e.clone()))?)
        }
        None => None,
    };
    let recomputed =
        assemble_certificate(&g, desc, cert.dim, &lab, phi_new, &d_matching, epsilon, cfg)?;
    let mut mismatches = vec![];
    let pairs: [(&str, String, String); 5] = [
        (
            "new_spectrum_poly",
            serde_json::to_string(&cert.new_spectrum_poly).unwrap(),
            serde_json::to_string(&recomputed.new_spectrum_poly).unwrap(),
        ),
        (
            "largest_new_root",
            serde_json::to_string(&cert.largest_new_root).unwrap(),
            serde_json::to_string(&recomputed.largest_new_root).unwrap(),
        ),
        (
            "d_matching_root",
            serde_json::to_string(&cert.d_matching_root).unwrap(),
            serde_json::to_string(&recomputed.d_matching_root).unwrap(),
        ),
        (
            "rho",
            serde_json::to_string(&cert.rho).unwrap(),
            serde_json::to_string(&recomputed.rho).unwrap(),
        ),
        (
            "verdict",
            serde_json::to_string(&cert.verdict).unwrap(),
            serde_json::to_string(&recomputed.verdict).unwrap(),
        ),
    ];
    for (name, got, want) in pairs {
        if got != want {
            mismatches.push(format!("{name}: certificate has {got}, recomputation gives {want}"));
        }
    }
    Ok(VerifyReport {
        matches: mismatches.is_empty(),
        recomputed_verdict: recomputed.verdict,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::ratio::{rat, rat_int};

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn rho_closed_forms() {
        // 3-regular: 2 sqrt 2
        let b = rho(&corpus::theta(3), &cfg()).unwrap();
        assert_eq!(b.method, RhoMethod::ClosedForm);
        let eight = rat_int(8);
        assert!(&b.lower * &b.lower <= eight && eight <= &b.upper * &b.upper);
        // C3 is 2-regular: exactly 2
        let b = rho(&corpus::cycle(3), &cfg()).unwrap();
        assert_eq!(b.lower, rat_int(2));
        assert_eq!(b.upper, rat_int(2));
        // K2: its own universal cover, rho = 1
        let b = rho(&corpus::k2(), &cfg()).unwrap();
        assert_eq!((b.lower, b.upper), (rat_int(1), rat_int(1)));
        // subdivided cubic graph: (3,2)-biregular, sqrt 2 + 1
        let s = crate::graph::subdivide(&corpus::cube_q3());
        let b = rho(&s, &cfg()).unwrap();
        assert_eq!(b.method, RhoMethod::ClosedForm);
        let target = ratio::to_f64(&b.lower);
        assert!((target - (2f64.sqrt() + 1.0)).abs() < 1e-9);
        // 2-loop bouquet is 4-regular: 2 sqrt 3
        let b = rho(&corpus::bouquet(2), &cfg()).unwrap();
        let twelve = rat_int(12);
        assert!(&b.lower * &b.lower <= twelve && twelve <= &b.upper * &b.upper);
    }

    #[test]
    fn rho_ball_iteration_on_trees() {
        // P3 is its own universal cover: rho = sqrt 2; upper bound 2 (Delta 2)
        let b = rho(&corpus::path(3), &cfg()).unwrap();
        assert_eq!(b.method, RhoMethod::BallIteration);
        let lo = ratio::to_f64(&b.lower);
        assert!((lo - 2f64.sqrt()).abs() < 1e-4, "lower {lo}");
        assert_eq!(b.upper, rat_int(2));
        assert!(&b.lower * &b.lower <= rat_int(2));
        // star K_{1,3}: own universal cover, rho = sqrt 3, Delta = 3
        let star = OrientedMultigraph::new(4, vec![(1, 0), (2, 0), (3, 0)]).unwrap();
        let b = rho(&star, &cfg()).unwrap();
        let lo = ratio::to_f64(&b.lower);
        assert!((lo - 3f64.sqrt()).abs() < 1e-4, "lower {lo}");
        // disconnected input errors
        let g = OrientedMultigraph::new(2, vec![]).unwrap();
        assert!(matches!(rho(&g, &cfg()), Err(SearchError::Disconnected)));
    }

    #[test]
    fn expected_char_poly_uniform_matches_dmatching() {
        // fully uniform S2 state on K2: ((x^2-1) + (x^2-1))/2 = x^2 - 1 = M_{1,K2}
        let k2 = corpus::k2();
        let rep = Arc::new(build_std(2, 5040).unwrap());
        let fz = perm::swap_factorization(2, 5040).unwrap();
        let state = SearchState::new(k2.clone(), rep, vec![fz], cfg()).unwrap();
        let e = expected_char_poly(&state).unwrap();
        assert_eq!(e, RatPoly::from_int_coeffs(&[-1, 0, 1]));
        // fully uniform S3/std on C3 equals M_{2,C3} (216 labelings)
        let c3 = corpus::cycle(3);
        let rep = Arc::new(build_std(3, 5040).unwrap());
        let fz = perm::swap_factorization(3, 5040).unwrap();
        let state =
            SearchState::new(c3.clone(), rep, vec![fz.clone(), fz.clone(), fz], cfg()).unwrap();
        let e = expected_char_poly(&state).unwrap();
        assert_eq!(e, matching::d_matching_poly(&c3, 2).unwrap());
    }

    #[test]
    fn expected_char_poly_fully_fixed_is_phi() {
        let k2 = corpus::k2();
        let rep = Arc::new(build_std(2, 5040).unwrap());
        let fz = perm::swap_factorization(2, 5040).unwrap();
        let state = SearchState::new(k2.clone(), rep, vec![fz], cfg()).unwrap();
        let (_, st, _) = greedy_step(&state).unwrap();
        assert!(st.is_fully_fixed());
        let phi = expected_char_poly(&st).unwrap();
        assert_eq!(phi, cover::new_char_poly(&k2, &st.labeling()).unwrap());
    }

    #[test]
    fn cap_exceeded_reported() {
        let mut small = cfg();
        small.enum_cap = 10;
        let c3 = corpus::cycle(3);
        let rep = Arc::new(build_std(3, 5040).unwrap());
        let fz = perm::swap_factorization(3, 5040).unwrap();
        let state = SearchState::new(c3, rep, vec![fz.clone(), fz.clone(), fz], small).unwrap();
        assert!(matches!(expected_char_poly(&state), Err(SearchError::CapExceeded { .. })));
    }

    #[test]
    fn footnote_counterexample_state() {
        // 2-cycle graph, edge 0 fixed to id, edge 1 = {id 1/2, 3-cycle 1/2}
        let two_cycle = corpus::theta(2);
        let rep = Arc::new(build_std(3, 5040).unwrap());
        let group = rep.group.clone();
        let id = group.identity_id();
        let three_cycle =
            group.id_of(&Permutation { images: vec![1, 2, 0] }.to_elem()).unwrap();
        let fz0 = EdgeFactorization {
            group: group.clone(),
            factors: vec![FactorDistribution::point(group.clone(), id)],
            epsilon: None,
        };
        let fz1 = EdgeFactorization {
            group: group.clone(),
            factors: vec![FactorDistribution::new(
                group.clone(),
                vec![(id, rat(1, 2)), (three_cycle, rat(1, 2))],
            )
            .unwrap()],
            epsilon: None,
        };
        // the checked constructor rejects the non-rank-1 factor
        let err =
            SearchState::new(two_cycle.clone(), rep.clone(), vec![fz0.clone(), fz1.clone()], cfg());
        assert!(matches!(err, Err(SearchError::Perm(PermError::NotRankOne { .. }))));
        // unchecked: the expected polynomial is ((x^2-4)^2 + (x^2-1)^2)/2,
        // not real-rooted
        let state = SearchState::new_unchecked(two_cycle, rep, vec![fz0, fz1], cfg()).unwrap();
        let e = expected_char_poly(&state).unwrap();
        let a = RatPoly::from_int_coeffs(&[-4, 0, 1]);
        let b = RatPoly::from_int_coeffs(&[-1, 0, 1]);
        let expected = a.mul(&a).add(&b.mul(&b)).scale(&rat(1, 2));
        assert_eq!(e, expected);
        assert!(!poly::is_real_rooted(&e));
    }

    #[test]
    fn find_lift_k2_and_theta() {
        // K2, r = 2: both coverings have new poly x^2 - 1
        let cert = find_lift(&corpus::k2(), 2, &cfg()).unwrap();
        assert_eq!(cert.new_spectrum_poly, RatPoly::from_int_coeffs(&[-1, 0, 1]));
        assert_eq!(cert.verdict, Verdict::OneSidedRamanujan);
        assert_eq!(cert.bipartite_full, Some(true));
        // theta graph (3-regular bipartite), r = 2: full Ramanujan covering
        let cert = find_lift(&corpus::theta(3), 2, &cfg()).unwrap();
        assert_eq!(cert.verdict, Verdict::OneSidedRamanujan);
        assert_eq!(cert.bipartite_full, Some(true));
        // loops rejected
        assert!(matches!(find_lift(&corpus::bouquet(1), 2, &cfg()), Err(SearchError::LoopsPresent)));
    }

    #[test]
    fn find_lift_exhaustive_check_theta_r2() {
        // compare the greedy output against the exhaustive list of signings
        let theta = corpus::theta(3);
        let cert = find_lift(&theta, 2, &cfg()).unwrap();
        let rho_b = rho(&theta, &cfg()).unwrap();
        let group = FiniteGroup::symmetric(2, 5040).unwrap();
        let mut ramanujan_signings = 0;
        for a in 0..2u32 {
            for b in 0..2u32 {
                for c in 0..2u32 {
                    let lab = GroupLabeling { group: group.clone(), values: vec![a, b, c] };
                    let phi = cover::new_char_poly(&theta, &lab).unwrap();
                    if poly::count_roots_above(&phi, &rho_b.upper) == 0 {
                        ramanujan_signings += 1;
                    }
                }
            }
        }
        assert!(ramanujan_signings >= 1);
        assert_eq!(poly::count_roots_above(&cert.new_spectrum_poly, &rho_b.upper), 0);
    }

    #[test]
    fn find_lift_c3_r3() {
        let cert = find_lift(&corpus::cycle(3), 3, &cfg()).unwrap();
        assert_ne!(cert.verdict, Verdict::Fail);
        assert_eq!(cert.dim, 2);
        assert_eq!(cert.new_spectrum_poly.degree(), Some(6));
    }

    #[test]
    fn cyclic_lift_c3() {
        let cert = find_lift_group(
            &corpus::cycle(3),
            GroupDescriptor::Cyclic(3),
            FactorizationChoice::Exact,
            &cfg(),
        )
        .unwrap();
        assert_eq!(cert.dim, 1);
        assert_eq!(cert.verdict, Verdict::OneSidedRamanujan);
        // m = 5 has no exact mode
        assert!(matches!(
            find_lift_group(
                &corpus::cycle(3),
                GroupDescriptor::Cyclic(5),
                FactorizationChoice::Exact,
                &cfg()
            ),
            Err(SearchError::NotExactMode { m: 5 })
        ));
    }

    #[test]
    fn cyclic_lift_accepts_loops() {
        let cert = find_lift_group(
            &corpus::bouquet(2),
            GroupDescriptor::Cyclic(4),
            FactorizationChoice::Exact,
            &cfg(),
        )
        .unwrap();
        assert_ne!(cert.verdict, Verdict::Fail);
    }

    #[test]
    fn gm1d_lift() {
        let cert = find_lift_group(
            &corpus::theta(2),
            GroupDescriptor::GM1D(2, 2),
            FactorizationChoice::Exact,
            &cfg(),
        )
        .unwrap();
        assert_eq!(cert.dim, 2);
        assert_ne!(cert.verdict, Verdict::Fail);
    }

    #[test]
    fn lazy_walk_lift_records_epsilon() {
        let cert = find_lift_group(
            &corpus::k2(),
            GroupDescriptor::Cyclic(3),
            FactorizationChoice::LazyWalk { steps: 12 },
            &cfg(),
        )
        .unwrap();
        assert!(cert.epsilon.is_some());
    }

    #[test]
    fn lift_regular_with_loops_bouquet() {
        // 2-loop bouquet is 4-regular; new spectrum certified <= 2 sqrt 3
        let cert = lift_regular_with_loops(&corpus::bouquet(2), 2, &cfg()).unwrap();
        assert_eq!(cert.verdict, Verdict::OneSidedRamanujan);
        let twelve = rat_int(12);
        assert!(&cert.rho.upper * &cert.rho.upper >= twelve);
        // single loop vertex, r = 3: 2-regular, new spectrum <= 2
        let cert = lift_regular_with_loops(&corpus::bouquet(1), 3, &cfg()).unwrap();
        assert_eq!(cert.verdict, Verdict::OneSidedRamanujan);
        assert_eq!(cert.rho.upper, rat_int(2));
        // non-regular input rejected
        assert!(matches!(
            lift_regular_with_loops(&corpus::path(3), 2, &cfg()),
            Err(SearchError::NotRegular)
        ));
    }

    #[test]
    fn loopless_regular_subdivision_route_consistent() {
        let c4 = corpus::cycle(4);
        let direct = find_lift(&c4, 2, &cfg()).unwrap();
        let via_subdivision = lift_regular_with_loops(&c4, 2, &cfg()).unwrap();
        assert_eq!(direct.verdict, via_subdivision.verdict);
        assert_eq!(direct.rho, via_subdivision.rho);
    }

    #[test]
    fn certificate_roundtrip_and_tamper() {
        let cert = find_lift(&corpus::theta(3), 2, &cfg()).unwrap();
        let report = verify_certificate(&cert, &cfg()).unwrap();
        assert!(report.matches, "mismatches: {:?}", report.mismatches);
        // JSON round-trip is byte-stable
        let json = serde_json::to_string_pretty(&cert).unwrap();
        let back: LiftCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
        // tamper: the all-identity labeling is two disjoint copies, whose new
        // poly x^2 - 9 has root 3 > 2 sqrt 2, so it cannot match a certified
        // one-sided Ramanujan covering
        let mut tampered = cert.clone();
        for l in &mut tampered.labeling {
            l.perm = vec![0, 1];
        }
        let report = verify_certificate(&tampered, &cfg()).unwrap();
        assert!(!report.matches);
        assert!(report.mismatches.iter().any(|m| m.contains("new_spectrum_poly")));
    }

    #[test]
    fn monotone_objective_along_run() {
        let theta = corpus::theta(3);
        let rep = Arc::new(build_std(3, 5040).unwrap());
        let fz = perm::swap_factorization(3, 5040).unwrap();
        let state =
            SearchState::new(theta, rep, vec![fz.clone(), fz.clone(), fz], cfg()).unwrap();
        let outcome = greedy_run(state).unwrap();
        let two_tol = &cfg().bracket_tol * rat_int(2);
        let mut prev = outcome.initial_bracket.upper.clone();
        for step in &outcome.steps {
            assert!(step.bracket.upper <= &prev + &two_tol);
            prev = step.bracket.upper.clone();
        }
        assert_eq!(outcome.steps.len(), 9);
    }

    #[test]
    fn descriptor_parse() {
        assert_eq!(GroupDescriptor::parse("std:3").unwrap(), GroupDescriptor::StdSr(3));
        assert_eq!(GroupDescriptor::parse("cyclic:4").unwrap(), GroupDescriptor::Cyclic(4));
        assert_eq!(GroupDescriptor::parse("gm1d:2,3").unwrap(), GroupDescriptor::GM1D(2, 3));
        assert!(GroupDescriptor::parse("gm2d:2,3").is_err());
        assert_eq!(GroupDescriptor::GM1D(2, 3).to_string(), "gm1d:2,3");
    }
}
