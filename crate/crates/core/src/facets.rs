//! Facet enumeration: virtual units, the coplanarity graph, candidate sets,
//! hyperplane construction, the support test and weak/strong labelling.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dataset::{negative_ideal, Axis, Dataset, Dmu, NegativeIdeal, Origin};
use crate::error::{Error, Result};
use crate::linalg::{cofactor_normal, dot_int, dot_mixed, primitive, primitive_integer, rank};
use crate::models::{
    classify, radial_input_value, radial_score, AxisOutcome, Classification, Orientation,
};
use crate::Rational;

/// Perturbation sizes for virtual units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Added to one input of an extreme unit.
    pub alpha: Rational,
    /// Subtracted from one output of an extreme unit (clamped at the output value).
    pub gamma: Rational,
}

impl SearchConfig {
    pub fn new(alpha: Rational, gamma: Rational) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::NonPositiveParameter("alpha"));
        }
        if !gamma.is_positive() {
            return Err(Error::NonPositiveParameter("gamma"));
        }
        Ok(SearchConfig { alpha, gamma })
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            alpha: Rational::one(),
            gamma: Rational::one(),
        }
    }
}

/// Strong efficient units followed by the virtual units derived from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidatePool {
    pub members: Vec<Dmu>,
    /// The first `efficient_count` members are the observed strong efficient units.
    pub efficient_count: usize,
    /// Each member as a primitive integer vector; same ray, same hyperplanes.
    scaled: Vec<Vec<BigInt>>,
}

impl CandidatePool {
    pub fn new(members: Vec<Dmu>, efficient_count: usize) -> Self {
        let scaled = members
            .iter()
            .map(|d| {
                primitive_integer(&d.point())
                    .unwrap_or_else(|| vec![BigInt::zero(); d.point().len()])
            })
            .collect();
        CandidatePool {
            members,
            efficient_count,
            scaled,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn efficient(&self) -> &[Dmu] {
        &self.members[..self.efficient_count]
    }

    pub fn virtuals(&self) -> &[Dmu] {
        &self.members[self.efficient_count..]
    }

    pub fn is_virtual(&self, j: usize) -> bool {
        j >= self.efficient_count
    }

    pub fn dimension(&self) -> usize {
        self.members
            .first()
            .map_or(0, |d| d.inputs.len() + d.outputs.len())
    }

    /// Checks that every virtual unit lies on the frontier spanned by the
    /// efficient units: an input-perturbed one has output score 1, an
    /// output-perturbed one has input score 1.
    pub fn check_boundary(&self) -> Result<()> {
        let reference: Vec<&Dmu> = self.efficient().iter().collect();
        for v in self.virtuals() {
            let Origin::Virtual { axis, .. } = &v.origin else {
                continue;
            };
            let orientation = match axis {
                Axis::Input(_) => Orientation::Output,
                Axis::Output(_) => Orientation::Input,
            };
            let score = radial_score(&reference, v, orientation)?;
            if !score.value.is_one() {
                return Err(Error::Inconsistent(format!(
                    "virtual DMU `{}` is off the frontier (radial score {})",
                    v.id, score.value
                )));
            }
        }
        Ok(())
    }
}

/// Builds the candidate pool: the strong efficient units, then for every
/// extreme unit one virtual unit per axis whose super-efficiency model is
/// infeasible. Input axes are skipped for single-input data and output axes
/// for single-output data, where such perturbations are interior points.
pub fn generate_virtuals(
    d: &Dataset,
    classification: &Classification,
    cfg: &SearchConfig,
) -> CandidatePool {
    let mut members: Vec<Dmu> = classification
        .efficient
        .iter()
        .map(|&k| d.dmus()[k].clone())
        .collect();
    let efficient_count = members.len();
    for &k in &classification.efficient {
        let parent = &d.dmus()[k];
        let Some(axis) = &classification.entries[k].axis else {
            continue;
        };
        if d.m() > 1 {
            for (l, outcome) in axis.inputs.iter().enumerate() {
                if *outcome != AxisOutcome::Infeasible {
                    continue;
                }
                let mut inputs = parent.inputs.clone();
                inputs[l] += &cfg.alpha;
                members.push(Dmu {
                    id: format!("{}+{}", parent.id, d.input_names()[l]),
                    inputs,
                    outputs: parent.outputs.clone(),
                    origin: Origin::Virtual {
                        parent: parent.id.clone(),
                        axis: Axis::Input(l),
                    },
                });
            }
        }
        if d.s() > 1 {
            for (q, outcome) in axis.outputs.iter().enumerate() {
                if *outcome != AxisOutcome::Infeasible {
                    continue;
                }
                let mut outputs = parent.outputs.clone();
                let step = core::cmp::min(&cfg.gamma, &outputs[q]).clone();
                outputs[q] -= step;
                members.push(Dmu {
                    id: format!("{}-{}", parent.id, d.output_names()[q]),
                    inputs: parent.inputs.clone(),
                    outputs,
                    origin: Origin::Virtual {
                        parent: parent.id.clone(),
                        axis: Axis::Output(q),
                    },
                });
            }
        }
    }
    CandidatePool::new(members, efficient_count)
}

/// Whether the midpoint of members `p` and `q` lies on the frontier spanned
/// by the pool's efficient units (input radial score exactly 1).
pub fn midpoint_coplanar(pool: &CandidatePool, p: usize, q: usize) -> Result<bool> {
    if p == q {
        return Ok(true);
    }
    let (a, b) = (&pool.members[p], &pool.members[q]);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mid = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
        u.iter().zip(v).map(|(x, y)| (x + y) * &half).collect()
    };
    let midpoint = Dmu {
        id: format!("mid({},{})", a.id, b.id),
        inputs: mid(&a.inputs, &b.inputs),
        outputs: mid(&a.outputs, &b.outputs),
        origin: Origin::Observed,
    };
    let reference: Vec<&Dmu> = pool.efficient().iter().collect();
    Ok(radial_input_value(&reference, &midpoint)?.is_one())
}

/// Symmetric, reflexive coplanarity relation over pool indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoplanarityGraph {
    adjacency: Vec<Vec<bool>>,
}

impl CoplanarityGraph {
    /// Graph on `n` vertices with the given undirected edges (0-based).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![vec![false; n]; n];
        for (i, row) in adjacency.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in edges {
            adjacency[a][b] = true;
            adjacency[b][a] = true;
        }
        CoplanarityGraph { adjacency }
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn contains(&self, p: usize, q: usize) -> bool {
        self.adjacency[p][q]
    }

    /// `G_j`: every index coplanar with `j`, including `j`.
    pub fn neighborhood(&self, j: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.adjacency[j][i]).collect()
    }
}

pub fn coplanarity_sets(pool: &CandidatePool) -> Result<CoplanarityGraph> {
    let n = pool.len();
    let mut edges = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            if midpoint_coplanar(pool, p, q)? {
                edges.push((p, q));
            }
        }
    }
    Ok(CoplanarityGraph::from_edges(n, &edges))
}

/// Calls `f` on every mutually coplanar index set of the given size, in
/// lexicographic order.
pub fn for_each_candidate_set(graph: &CoplanarityGraph, size: usize, mut f: impl FnMut(&[usize])) {
    fn extend(
        graph: &CoplanarityGraph,
        size: usize,
        chosen: &mut Vec<usize>,
        candidates: &[usize],
        f: &mut dyn FnMut(&[usize]),
    ) {
        if chosen.len() == size {
            f(chosen);
            return;
        }
        let needed = size - chosen.len();
        for (pos, &v) in candidates.iter().enumerate() {
            if candidates.len() - pos < needed {
                break;
            }
            let next: Vec<usize> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|&u| graph.contains(v, u))
                .collect();
            chosen.push(v);
            extend(graph, size, chosen, &next, f);
            chosen.pop();
        }
    }
    if size == 0 {
        return;
    }
    let all: Vec<usize> = (0..graph.len()).collect();
    extend(graph, size, &mut Vec::with_capacity(size), &all, &mut f);
}

pub fn enumerate_candidate_sets(graph: &CoplanarityGraph, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_candidate_set(graph, size, |set| out.push(set.to_vec()));
    out
}

/// Normal of the hyperplane through the origin and the given pool members,
/// by cofactor expansion along the symbolic first row. `None` when the
/// members do not determine a unique hyperplane.
pub fn hyperplane_through(pool: &CandidatePool, set: &[usize]) -> Option<Vec<BigInt>> {
    let rows: Vec<Vec<BigInt>> = set.iter().map(|&j| pool.scaled[j].clone()).collect();
    nonzero(cofactor_normal(&rows))
}

/// As [`hyperplane_through`], for explicit points.
pub fn hyperplane_through_points(points: &[Vec<Rational>]) -> Option<Vec<BigInt>> {
    let rows: Option<Vec<Vec<BigInt>>> = points.iter().map(|p| primitive_integer(p)).collect();
    nonzero(cofactor_normal(&rows?))
}

fn nonzero(p: Vec<BigInt>) -> Option<Vec<BigInt>> {
    if p.iter().all(Zero::is_zero) {
        None
    } else {
        Some(p)
    }
}

/// Supporting-hyperplane test against the negative ideal `w`. The normal is
/// first oriented so that `P·w < 0` (rejected when `P·w = 0`); it then
/// passes iff the input block is `<= 0`, the output block is `>= 0` and no
/// pool member lies strictly above the hyperplane. Returns the oriented
/// normal on success.
pub fn support_test(
    normal: &[BigInt],
    pool: &CandidatePool,
    w: &NegativeIdeal,
) -> Option<Vec<BigInt>> {
    let at_w = dot_mixed(normal, &w.point);
    let oriented: Vec<BigInt> = if at_w.is_negative() {
        normal.to_vec()
    } else if at_w.is_positive() {
        normal.iter().map(|v| -v).collect()
    } else {
        return None;
    };
    let m = w.point.len() - pool.members.first().map_or(0, |d| d.outputs.len());
    let signs_ok = oriented[..m].iter().all(|v| !v.is_positive())
        && oriented[m..].iter().all(|v| !v.is_negative());
    if !signs_ok {
        return None;
    }
    if pool
        .scaled
        .iter()
        .any(|z| dot_int(&oriented, z).is_positive())
    {
        return None;
    }
    Some(oriented)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FacetKind {
    Weak,
    Strong,
}

/// Weak iff the incidence set holds a virtual unit; cross-checked against
/// the presence of a zero coefficient.
pub fn label_facet(
    normal: &[BigInt],
    incidence: &[usize],
    pool: &CandidatePool,
) -> Result<FacetKind> {
    let has_virtual = incidence.iter().any(|&j| pool.is_virtual(j));
    let has_zero = normal.iter().any(Zero::is_zero);
    if has_virtual != has_zero {
        return Err(Error::Inconsistent(format!(
            "facet {normal:?}: virtual DMU on facet = {has_virtual}, zero coefficient = {has_zero}"
        )));
    }
    Ok(if has_virtual {
        FacetKind::Weak
    } else {
        FacetKind::Strong
    })
}

/// Integer multiple with gcd 1 of a rational normal. Positive scaling only,
/// so the sign pattern is preserved.
pub fn canonicalize(normal: &[Rational]) -> Result<Vec<BigInt>> {
    primitive_integer(normal).ok_or(Error::ZeroNormal)
}

/// A defining hyperplane `P·z = 0`, `z = (x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    /// Canonical normal: input block `<= 0`, output block `>= 0`, gcd 1.
    pub coefficients: Vec<BigInt>,
    /// Pool indices of members lying on the hyperplane.
    pub incidence: Vec<usize>,
    pub kind: FacetKind,
    /// Candidate sets (pool indices) that produced this hyperplane.
    pub witnesses: Vec<Vec<usize>>,
    input_len: usize,
}

impl Hyperplane {
    pub fn inputs(&self) -> &[BigInt] {
        &self.coefficients[..self.input_len]
    }

    pub fn outputs(&self) -> &[BigInt] {
        &self.coefficients[self.input_len..]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DatasetSummary {
    pub n: usize,
    pub m: usize,
    pub s: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetReport {
    pub summary: DatasetSummary,
    pub classification: Classification,
    pub negative_ideal: NegativeIdeal,
    pub pool: CandidatePool,
    /// Sorted by canonical coefficients.
    pub facets: Vec<Hyperplane>,
    /// Per pool member: number of weak and strong facets it lies on.
    pub membership: Vec<(usize, usize)>,
}

impl FacetReport {
    pub fn weak_count(&self) -> usize {
        self.facets
            .iter()
            .filter(|f| f.kind == FacetKind::Weak)
            .count()
    }

    pub fn strong_count(&self) -> usize {
        self.facets
            .iter()
            .filter(|f| f.kind == FacetKind::Strong)
            .count()
    }
}

/// Runs the full search: classification, virtual units, coplanarity graph,
/// candidate cliques, hyperplane construction, support test, labelling and
/// deduplication.
pub fn find_facets(d: &Dataset, cfg: &SearchConfig) -> Result<FacetReport> {
    let classification = classify(d)?;
    let pool = generate_virtuals(d, &classification, cfg);
    pool.check_boundary()?;
    let graph = coplanarity_sets(&pool)?;
    let size = d.m() + d.s() - 1;
    let mut search = Search::new(d, pool)?;
    for_each_candidate_set(&graph, size, |set| search.visit(set));
    search.finish(classification)
}

/// Shared tail of the pipeline: every candidate set is pushed through
/// construction, the support test and canonicalization.
pub(crate) struct Search<'a> {
    dataset: &'a Dataset,
    pool: CandidatePool,
    w: NegativeIdeal,
    found: BTreeMap<Vec<BigInt>, Vec<Vec<usize>>>,
}

impl<'a> Search<'a> {
    pub(crate) fn new(dataset: &'a Dataset, pool: CandidatePool) -> Result<Self> {
        Ok(Search {
            dataset,
            pool,
            w: negative_ideal(dataset)?,
            found: BTreeMap::new(),
        })
    }

    pub(crate) fn visit(&mut self, set: &[usize]) {
        let Some(normal) = hyperplane_through(&self.pool, set) else {
            return;
        };
        let Some(oriented) = support_test(&normal, &self.pool, &self.w) else {
            return;
        };
        let canonical = primitive(oriented).expect("normal is nonzero");
        self.found.entry(canonical).or_default().push(set.to_vec());
    }

    pub(crate) fn finish(self, classification: Classification) -> Result<FacetReport> {
        let d = self.dataset;
        let pool = self.pool;
        let dim = d.m() + d.s();
        let mut facets = Vec::with_capacity(self.found.len());
        for (coefficients, witnesses) in self.found {
            let incidence: Vec<usize> = (0..pool.len())
                .filter(|&j| dot_int(&coefficients, &pool.scaled[j]).is_zero())
                .collect();
            let points: Vec<Vec<Rational>> =
                incidence.iter().map(|&j| pool.members[j].point()).collect();
            if rank(&points) != dim - 1 {
                continue;
            }
            let kind = label_facet(&coefficients, &incidence, &pool)?;
            facets.push(Hyperplane {
                coefficients,
                incidence,
                kind,
                witnesses,
                input_len: d.m(),
            });
        }
        let mut membership = vec![(0, 0); pool.len()];
        for f in &facets {
            for &j in &f.incidence {
                match f.kind {
                    FacetKind::Weak => membership[j].0 += 1,
                    FacetKind::Strong => membership[j].1 += 1,
                }
            }
        }
        Ok(FacetReport {
            summary: DatasetSummary {
                n: d.n(),
                m: d.m(),
                s: d.s(),
            },
            classification,
            negative_ideal: self.w,
            pool,
            facets,
            membership,
        })
    }
}

/// Renders a normal as `-3*x1 + 1*y = 0` using the dataset's axis names.
pub fn equation(coefficients: &[BigInt], d: &Dataset) -> String {
    let mut out = String::new();
    for (i, c) in coefficients.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let name = d.axis_name(i);
        if out.is_empty() {
            out.push_str(&format!("{c}*{name}"));
        } else if c.is_negative() {
            out.push_str(&format!(" - {}*{name}", -c));
        } else {
            out.push_str(&format!(" + {c}*{name}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out.push_str(" = 0");
    out
}
