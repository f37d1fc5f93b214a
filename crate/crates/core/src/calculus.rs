//! Component calculus: generic extensions between components, canonical
//! decompositions, direct sums of components, the pigeonhole witness for
//! Ext-orthogonal families and clique search over bounded labels.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::components::{
    component_is_indecomposable, mu_g, rng_stream, sample_component_point, sample_many, GenericSample,
};
use crate::error::{Error, Result};
use crate::ext::ext1_dim_direct;
use crate::linalg::{integer_nullvector, Field, Matrix};
use crate::rep::{dim_hom, is_isomorphic, krs_decompose, Representation, ISO_TRIALS};
use crate::roots::{ComponentLabel, RootSystem};

/// Seed for an indexed sub-computation of a run with master `seed`.
pub fn derived_seed(seed: u64, index: u64) -> u64 {
    rng_stream(seed, index).gen()
}

/// `min dim Ext^1(X, Y)` over independent pairs `X in C_a`, `Y in C_b`.
pub fn generic_ext(
    rs: &RootSystem,
    a: &ComponentLabel,
    b: &ComponentLabel,
    field: Field,
    samples: usize,
    seed: u64,
) -> Result<usize> {
    if samples == 0 {
        return Err(Error::InvalidParameter("at least one sample".into()));
    }
    let mut best = usize::MAX;
    for k in 0..samples as u64 {
        let x = sample_component_point(rs, a, field, seed, 2 * k)?;
        let y = sample_component_point(rs, b, field, seed, 2 * k + 1)?;
        best = best.min(ext1_dim_direct(&x.module, &y.module)?);
        if best == 0 {
            break;
        }
    }
    Ok(best)
}

/// Labels of the indecomposable summands of a module, sorted.
pub fn summand_labels<R: Rng + ?Sized>(rs: &RootSystem, m: &Representation, rng: &mut R) -> Result<Vec<ComponentLabel>> {
    let mut out = Vec::new();
    for part in krs_decompose(m, rng)? {
        out.push(rs.gabriel_label(&part, rng)?);
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleEvidence {
    pub stream: u64,
    pub end_dim: usize,
    pub parts: Vec<ComponentLabel>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CanonicalDecomposition {
    pub input: ComponentLabel,
    /// `None` when the samples disagree even after escalation.
    pub parts: Option<Vec<ComponentLabel>>,
    pub escalated: bool,
    pub evidence: Vec<SampleEvidence>,
    pub seed: u64,
}

impl CanonicalDecomposition {
    pub fn is_determined(&self) -> bool {
        self.parts.is_some()
    }
}

/// Decomposes generic points of `C_alpha` and relabels the summands. All
/// samples must agree; otherwise the sample count is doubled once and only
/// the samples of minimal endomorphism dimension are compared.
pub fn canonical_decomposition(
    rs: &RootSystem,
    alpha: &ComponentLabel,
    samples: usize,
    seed: u64,
) -> Result<CanonicalDecomposition> {
    if alpha.is_zero() {
        return Err(Error::ZeroModule);
    }
    let mut rng = rng_stream(seed, u64::MAX);
    let mut evidence = Vec::new();
    for s in sample_many(rs, alpha, Field::Rationals, seed, 0, samples.max(1))? {
        evidence.push(evidence_of(rs, &s, &mut rng)?);
    }
    if agree(&evidence) {
        let parts = Some(evidence[0].parts.clone());
        return Ok(CanonicalDecomposition {
            input: alpha.clone(),
            parts,
            escalated: false,
            evidence,
            seed,
        });
    }
    let n = evidence.len() as u64;
    for s in sample_many(rs, alpha, Field::Rationals, seed, n, n as usize)? {
        evidence.push(evidence_of(rs, &s, &mut rng)?);
    }
    let min_end = evidence.iter().map(|e| e.end_dim).min().unwrap();
    let generic: Vec<SampleEvidence> = evidence.iter().filter(|e| e.end_dim == min_end).cloned().collect();
    let parts = agree(&generic).then(|| generic[0].parts.clone());
    Ok(CanonicalDecomposition {
        input: alpha.clone(),
        parts,
        escalated: true,
        evidence,
        seed,
    })
}

fn evidence_of<R: Rng + ?Sized>(rs: &RootSystem, s: &GenericSample, rng: &mut R) -> Result<SampleEvidence> {
    Ok(SampleEvidence {
        stream: s.stream,
        end_dim: dim_hom(&s.module, &s.module)?,
        parts: summand_labels(rs, &s.module, rng)?,
    })
}

fn agree(ev: &[SampleEvidence]) -> bool {
    ev.windows(2).all(|w| w[0].parts == w[1].parts)
}

/// `a + b` when generic extensions vanish in both directions.
pub fn direct_sum_is_component(
    rs: &RootSystem,
    a: &ComponentLabel,
    b: &ComponentLabel,
    samples: usize,
    seed: u64,
) -> Result<Option<ComponentLabel>> {
    let ab = generic_ext(rs, a, b, Field::Rationals, samples, derived_seed(seed, 0))?;
    let ba = generic_ext(rs, b, a, Field::Rationals, samples, derived_seed(seed, 1))?;
    Ok((ab == 0 && ba == 0).then(|| a.add(b)))
}

#[derive(Clone, Debug, Serialize)]
pub struct MuAdditivity {
    pub parts: Vec<ComponentLabel>,
    pub sum: ComponentLabel,
    pub part_mu: Vec<u64>,
    pub sum_mu: Option<u64>,
    /// `None` when the orthogonality precondition failed.
    pub holds: Option<bool>,
    pub note: Option<String>,
}

/// Checks `mu_g(sum) = sum mu_g(part)` for a generically Ext-orthogonal
/// family (self pairs included).
pub fn mu_additivity_check(rs: &RootSystem, parts: &[ComponentLabel], samples: usize, seed: u64) -> Result<MuAdditivity> {
    if parts.is_empty() {
        return Err(Error::InvalidParameter("empty family".into()));
    }
    let sum = parts[1..].iter().fold(parts[0].clone(), |acc, p| acc.add(p));
    let mut part_mu = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        part_mu.push(mu_g(rs, p, Field::Rationals, samples, derived_seed(seed, i as u64))?);
    }
    let mut idx = parts.len() as u64;
    for i in 0..parts.len() {
        for j in i..parts.len() {
            for (x, y) in [(i, j), (j, i)] {
                idx += 1;
                if generic_ext(rs, &parts[x], &parts[y], Field::Rationals, samples, derived_seed(seed, idx))? != 0 {
                    return Ok(MuAdditivity {
                        parts: parts.to_vec(),
                        sum,
                        part_mu,
                        sum_mu: None,
                        holds: None,
                        note: Some(format!("skipped: generic ext between parts {x} and {y} does not vanish")),
                    });
                }
            }
        }
    }
    let sum_mu = mu_g(rs, &sum, Field::Rationals, samples, derived_seed(seed, idx + 1))?;
    Ok(MuAdditivity {
        holds: Some(sum_mu == part_mu.iter().sum::<u64>()),
        parts: parts.to_vec(),
        sum,
        part_mu,
        sum_mu: Some(sum_mu),
        note: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessBranch {
    /// `z` has no negative entry: `m = 1`, `l = 1 + z`.
    Nonnegative,
    /// `lambda = -min z`, `m = lambda 1`, `l = m + z`.
    Mixed,
}

/// Two different multiplicity vectors `m != l` with `Delta m = Delta l`,
/// where the columns of `Delta` are `N + 1` labels over `N` roots.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremOneWitness {
    pub delta: Vec<Vec<u64>>,
    #[serde(serialize_with = "big_ints")]
    pub z: Vec<BigInt>,
    #[serde(serialize_with = "big_ints")]
    pub m: Vec<BigInt>,
    #[serde(serialize_with = "big_ints")]
    pub l: Vec<BigInt>,
    #[serde(serialize_with = "big_ints")]
    pub d: Vec<BigInt>,
    pub branch: WitnessBranch,
}

/// Null vectors of wide label matrices outgrow 64 bits; such entries are
/// written as decimal strings.
fn big_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(i) => seq.serialize_element(&i)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

fn apply_delta(delta: &[Vec<u64>], v: &[BigInt]) -> Vec<BigInt> {
    delta
        .iter()
        .map(|row| row.iter().zip(v).map(|(&a, b)| BigInt::from(a) * b).sum())
        .collect()
}

impl TheoremOneWitness {
    /// `Delta m = Delta l = d`, `m != l`, both nonnegative.
    pub fn verify(&self) -> bool {
        self.m != self.l
            && self.m.iter().chain(&self.l).all(|x| !x.is_negative())
            && apply_delta(&self.delta, &self.m) == self.d
            && apply_delta(&self.delta, &self.l) == self.d
    }
}

pub fn theorem1_witness(labels: &[ComponentLabel]) -> Result<TheoremOneWitness> {
    let n = labels.first().map_or(0, |l| l.len());
    if labels.len() != n + 1 || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "need N + 1 labels of length N, got {} labels of length {n}",
            labels.len()
        )));
    }
    if labels.iter().any(|l| l.len() != n) {
        return Err(Error::DimensionMismatch("labels of different lengths".into()));
    }
    if labels.iter().any(ComponentLabel::is_zero) {
        return Err(Error::InvalidParameter("zero label".into()));
    }
    if labels.iter().collect::<BTreeSet<_>>().len() != labels.len() {
        return Err(Error::InvalidParameter("labels are not pairwise distinct".into()));
    }
    let delta: Vec<Vec<u64>> = (0..n).map(|i| labels.iter().map(|l| l.0[i]).collect()).collect();
    let f = Field::Rationals;
    let mat = Matrix::from_rows(
        f,
        n + 1,
        delta
            .iter()
            .map(|row| row.iter().map(|&x| f.from_bigint(&BigInt::from(x))).collect())
            .collect(),
    );
    let z = integer_nullvector(&mat)?;
    let (branch, m, l) = if z.iter().all(|x| !x.is_negative()) {
        let m = vec![BigInt::from(1); n + 1];
        let l = z.iter().map(|x| x + 1).collect();
        (WitnessBranch::Nonnegative, m, l)
    } else {
        let lambda = z.iter().min().unwrap().abs();
        debug_assert!(!lambda.is_zero());
        let m = vec![lambda.clone(); n + 1];
        let l = z.iter().map(|x| &lambda + x).collect();
        (WitnessBranch::Mixed, m, l)
    };
    let d = apply_delta(&delta, &m);
    Ok(TheoremOneWitness {
        delta,
        z,
        m,
        l,
        d,
        branch,
    })
}

/// Indecomposable, self-orthogonal component labels with generic
/// Ext-vanishing edges.
#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityGraph {
    pub nodes: Vec<ComponentLabel>,
    pub edges: Vec<(usize, usize)>,
    pub mu: Vec<u64>,
}

impl OrthogonalityGraph {
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges.binary_search(&(a, b)).is_ok()
    }

    /// All maximal cliques, each sorted, in lexicographic order.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut adj = vec![BTreeSet::new(); n];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let mut out = Vec::new();
        bron_kerbosch(&adj, Vec::new(), (0..n).collect(), BTreeSet::new(), &mut out);
        for c in &mut out {
            c.sort();
        }
        out.sort();
        out
    }
}

fn bron_kerbosch(
    adj: &[BTreeSet<usize>],
    r: Vec<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    let pivot = p
        .union(&x)
        .max_by_key(|&&u| p.intersection(&adj[u]).count())
        .copied()
        .unwrap();
    let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.intersection(&adj[v]).copied().collect();
        let x2 = x.intersection(&adj[v]).copied().collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.remove(&v);
        x.insert(v);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub max_sum: u64,
    pub max_dim: Option<u64>,
    pub examined: usize,
    /// Set when the label enumeration hit `label_limit`.
    pub truncated: bool,
    pub graph: OrthogonalityGraph,
    pub cliques: Vec<Vec<usize>>,
    pub max_clique: usize,
    pub root_count: usize,
    pub bound_holds: bool,
    pub seed: u64,
    pub samples: usize,
}

/// Labels of coordinate sum `1..=max_sum` in lexicographic order, with
/// dimension vectors bounded entrywise by `max_dim`.
pub fn enumerate_labels(rs: &RootSystem, max_sum: u64, max_dim: Option<u64>, limit: usize) -> (Vec<ComponentLabel>, bool) {
    let n = rs.len();
    let mut out = Vec::new();
    let mut cur = vec![0u64; n];
    let mut truncated = false;
    fn rec(
        rs: &RootSystem,
        i: usize,
        left: u64,
        cur: &mut Vec<u64>,
        max_dim: Option<u64>,
        out: &mut Vec<ComponentLabel>,
        limit: usize,
        truncated: &mut bool,
    ) {
        if *truncated {
            return;
        }
        if i == cur.len() {
            let l = ComponentLabel(cur.clone());
            if l.is_zero() {
                return;
            }
            if let Some(b) = max_dim {
                if l.dim_vector(rs).iter().any(|&x| x > b) {
                    return;
                }
            }
            if out.len() >= limit {
                *truncated = true;
                return;
            }
            out.push(l);
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(rs, i + 1, left - k, cur, max_dim, out, limit, truncated);
        }
        cur[i] = 0;
    }
    rec(rs, 0, max_sum, &mut cur, max_dim, &mut out, limit, &mut truncated);
    out.sort();
    (out, truncated)
}

/// Default cap on the number of labels examined by a search.
pub const LABEL_LIMIT: usize = 2000;

pub fn orthogonal_set_search(
    rs: &RootSystem,
    max_sum: u64,
    max_dim: Option<u64>,
    samples: usize,
    seed: u64,
) -> Result<SearchReport> {
    let (labels, truncated) = enumerate_labels(rs, max_sum, max_dim, LABEL_LIMIT);
    let mut nodes = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        let s = derived_seed(seed, i as u64);
        if component_is_indecomposable(rs, l, samples, s)?
            && generic_ext(rs, l, l, Field::Rationals, samples, s)? == 0
        {
            nodes.push(l.clone());
        }
    }
    let mut mu = Vec::new();
    for (i, l) in nodes.iter().enumerate() {
        mu.push(mu_g(rs, l, Field::Rationals, samples, derived_seed(seed ^ 0x6d75, i as u64))?);
    }
    let mut edges = Vec::new();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            let s = derived_seed(seed ^ 0x6564, (i * nodes.len() + j) as u64);
            if generic_ext(rs, &nodes[i], &nodes[j], Field::Rationals, samples, s)? == 0
                && generic_ext(rs, &nodes[j], &nodes[i], Field::Rationals, samples, s ^ 1)? == 0
            {
                edges.push((i, j));
            }
        }
    }
    let graph = OrthogonalityGraph { nodes, edges, mu };
    let cliques = graph.maximal_cliques();
    let max_clique = cliques.iter().map(Vec::len).max().unwrap_or(0);
    Ok(SearchReport {
        max_sum,
        max_dim,
        examined: labels.len(),
        truncated,
        cliques,
        max_clique,
        root_count: rs.len(),
        bound_holds: max_clique <= rs.len(),
        graph,
        seed,
        samples,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Conjecture7Report {
    pub clique: Vec<ComponentLabel>,
    pub size: usize,
    pub mu_sum: u64,
    pub root_count: usize,
    pub equality: bool,
    pub note: &'static str,
}

/// Compares `|I|` with `|R+| - sum mu_g` on a clique of the graph.
pub fn conjecture7_check(rs: &RootSystem, graph: &OrthogonalityGraph, clique: &[usize]) -> Conjecture7Report {
    let mu_sum: u64 = clique.iter().map(|&i| graph.mu[i]).sum();
    Conjecture7Report {
        clique: clique.iter().map(|&i| graph.nodes[i].clone()).collect(),
        size: clique.len(),
        mu_sum,
        root_count: rs.len(),
        equality: clique.len() as u64 + mu_sum == rs.len() as u64,
        note: "maximality only relative to search bounds",
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidBound {
    pub rigid: bool,
    pub summands: usize,
    pub distinct: usize,
    pub bound: usize,
    pub holds: bool,
}

/// Number of pairwise non-isomorphic summands of a rigid module against
/// `bound` (the number of positive roots).
pub fn rigid_summand_bound<R: Rng + ?Sized>(m: &Representation, bound: usize, rng: &mut R) -> Result<RigidBound> {
    if ext1_dim_direct(m, m)? != 0 {
        return Ok(RigidBound {
            rigid: false,
            summands: 0,
            distinct: 0,
            bound,
            holds: true,
        });
    }
    let parts = krs_decompose(m, rng)?;
    let mut reps: Vec<&Representation> = Vec::new();
    for p in &parts {
        let mut seen = false;
        for r in &reps {
            if is_isomorphic(p, r, rng, ISO_TRIALS)?.is_isomorphic() {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push(p);
        }
    }
    Ok(RigidBound {
        rigid: true,
        summands: parts.len(),
        distinct: reps.len(),
        bound,
        holds: reps.len() <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::DEFAULT_SAMPLES;
    use crate::quiver::DynkinType;

    fn a2() -> RootSystem {
        RootSystem::of_type(DynkinType::A(2)).unwrap()
    }

    #[test]
    fn simple_components_extend_both_ways() {
        let rs = a2();
        let s1 = rs.interval_label(&[(1, 1)]).unwrap();
        let s2 = rs.interval_label(&[(2, 2)]).unwrap();
        assert_eq!(generic_ext(&rs, &s1, &s2, Field::Rationals, 3, 1).unwrap(), 1);
        assert_eq!(generic_ext(&rs, &s2, &s1, Field::Rationals, 3, 1).unwrap(), 1);
        assert_eq!(direct_sum_is_component(&rs, &s1, &s2, 3, 1).unwrap(), None);
    }

    #[test]
    fn a2_semisimple_label_does_not_split() {
        let rs = a2();
        let alpha = rs.interval_label(&[(1, 1), (2, 2)]).unwrap();
        let cd = canonical_decomposition(&rs, &alpha, DEFAULT_SAMPLES, 4).unwrap();
        assert_eq!(cd.parts, Some(vec![alpha]));
        assert!(!cd.escalated);
    }

    #[test]
    fn toy_witness() {
        let labels = [ComponentLabel(vec![1]), ComponentLabel(vec![2])];
        let w = theorem1_witness(&labels).unwrap();
        assert!(w.verify());
        assert_eq!(w.branch, WitnessBranch::Mixed);
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(w.z, big(&[2, -1]));
        assert_eq!((w.m.clone(), w.l.clone(), w.d.clone()), (big(&[1, 1]), big(&[3, 0]), big(&[3])));
    }

    #[test]
    fn a2_witness() {
        let l = |v: &[u64]| ComponentLabel(v.to_vec());
        let w = theorem1_witness(&[l(&[1, 0, 0]), l(&[0, 1, 0]), l(&[0, 0, 1]), l(&[1, 1, 0])]).unwrap();
        assert!(w.verify());
        assert!(w.z.iter().any(Signed::is_negative) && w.z.iter().any(Signed::is_positive));
    }

    #[test]
    fn witness_rejects_bad_input() {
        let l = |v: &[u64]| ComponentLabel(v.to_vec());
        assert!(theorem1_witness(&[l(&[1]), l(&[1])]).is_err());
        assert!(theorem1_witness(&[l(&[1]), l(&[0])]).is_err());
        assert!(theorem1_witness(&[l(&[1, 0]), l(&[0, 1])]).is_err());
    }

    #[test]
    fn bron_kerbosch_on_a_square_with_diagonal() {
        let g = OrthogonalityGraph {
            nodes: (0..4).map(|i| ComponentLabel(vec![i])).collect(),
            edges: vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)],
            mu: vec![0; 4],
        };
        assert_eq!(g.maximal_cliques(), vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert!(g.adjacent(3, 1) && !g.adjacent(0, 3));
    }

    #[test]
    fn a2_search_reaches_the_root_count() {
        let rs = a2();
        let report = orthogonal_set_search(&rs, 2, None, 3, 7).unwrap();
        assert_eq!(report.max_clique, 3);
        assert!(report.bound_holds);
        for c in report.cliques.iter().filter(|c| c.len() == 3) {
            let r = conjecture7_check(&rs, &report.graph, c);
            assert!(r.equality);
        }
    }

    #[test]
    fn semisimple_a2_module_is_not_rigid() {
        let rs = a2();
        let alpha = rs.interval_label(&[(1, 1), (2, 2)]).unwrap();
        let m = rs.build_m_alpha(&alpha, Field::Rationals).unwrap();
        let pre = crate::components::fiber_basis(&m, rs.preprojective_algebra()).unwrap();
        let s = pre.point(&[Field::Rationals.zero()]);
        let mut rng = rng_stream(0, 0);
        assert!(!rigid_summand_bound(&s, rs.len(), &mut rng).unwrap().rigid);
    }
}
