//! Positive roots of Dynkin quivers, the indecomposable path-algebra module
//! of each root, and component labels (multiplicity vectors over the roots).

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::quiver::{AlgebraKind, AlgebraPresentation, DimVector, DynkinType, Quiver};
use crate::rep::{krs_decompose, Representation};

/// Ordered positive roots of a Dynkin quiver together with the path and
/// preprojective algebras built on it.
#[derive(Debug)]
pub struct RootSystem {
    ty: DynkinType,
    quiver: Quiver,
    roots: Vec<DimVector>,
    index: HashMap<DimVector, usize>,
    path: Arc<AlgebraPresentation>,
    preprojective: Arc<AlgebraPresentation>,
    modules: Vec<Representation>,
}

impl RootSystem {
    /// Reflection closure of the simple roots. Type `A` roots (intervals)
    /// are ordered by `(first, last)` vertex; other types by height and then
    /// with larger leading coordinates first.
    pub fn new(quiver: &Quiver) -> Result<RootSystem> {
        let ty = quiver
            .dynkin_type()
            .ok_or_else(|| Error::NotDynkin("underlying graph is not a Dynkin diagram".into()))?;
        let roots = positive_roots(quiver);
        let index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let path = Arc::new(AlgebraPresentation::path_algebra(quiver.clone()));
        let preprojective = Arc::new(AlgebraPresentation::preprojective(quiver.clone())?);
        let modules = roots
            .iter()
            .map(|r| indecomposable_for_root(quiver, ty, r).map(|m| m.rebind(path.clone())))
            .collect::<Result<_>>()?;
        Ok(RootSystem {
            ty,
            quiver: quiver.clone(),
            roots,
            index,
            path,
            preprojective,
            modules,
        })
    }

    /// Root system of the preset orientation of a Dynkin type.
    pub fn of_type(ty: DynkinType) -> Result<RootSystem> {
        RootSystem::new(&Quiver::dynkin(ty)?)
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.ty
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[DimVector] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &DimVector {
        &self.roots[i]
    }

    pub fn index_of(&self, d: &DimVector) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn path_algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.path
    }

    pub fn preprojective_algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.preprojective
    }

    /// `[i,j]` notation for type `A`, the dimension vector otherwise.
    pub fn root_name(&self, i: usize) -> String {
        let r = &self.roots[i];
        match self.ty {
            DynkinType::A(_) => {
                let first = r.iter().position(|&x| x > 0).unwrap() + 1;
                let last = r.0.len() - r.iter().rev().position(|&x| x > 0).unwrap();
                format!("[{first},{last}]")
            }
            _ => r.to_string(),
        }
    }

    /// The indecomposable path-algebra module `M(a_i)`.
    pub fn root_module(&self, i: usize, field: Field) -> Result<Representation> {
        self.modules[i].to_field(field)
    }

    /// `M_alpha`: direct sum of root modules with multiplicities `alpha`.
    pub fn build_m_alpha(&self, alpha: &ComponentLabel, field: Field) -> Result<Representation> {
        self.check_label(alpha)?;
        let mut acc = Representation::zero(self.path.clone(), field);
        for (i, &k) in alpha.0.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let m = self.root_module(i, field)?;
            for _ in 0..k {
                acc = acc.direct_sum(&m)?;
            }
        }
        Ok(acc)
    }

    pub fn check_label(&self, alpha: &ComponentLabel) -> Result<()> {
        if alpha.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "label of length {} over {} roots",
                alpha.len(),
                self.len()
            )));
        }
        Ok(())
    }

    /// Multiplicity vector of the indecomposable summands of a path-algebra
    /// module over this quiver (a preprojective module is first projected
    /// to its forward part).
    pub fn gabriel_label<R: Rng + ?Sized>(&self, m: &Representation, rng: &mut R) -> Result<ComponentLabel> {
        let fwd = m.forward_part();
        if fwd.algebra().kind != AlgebraKind::Path || fwd.algebra().quiver != self.quiver {
            return Err(Error::AlgebraMismatch("module is not over this quiver".into()));
        }
        let fwd = fwd.rebind(self.path.clone());
        let mut alpha = vec![0u64; self.len()];
        for part in krs_decompose(&fwd, rng)? {
            let i = self
                .index_of(part.dims())
                .ok_or_else(|| Error::NotARoot(part.dims().0.clone()))?;
            alpha[i] += 1;
        }
        Ok(ComponentLabel(alpha))
    }

    /// Indicator label of a single root.
    pub fn unit_label(&self, i: usize) -> ComponentLabel {
        let mut v = vec![0; self.len()];
        v[i] = 1;
        ComponentLabel(v)
    }

    /// `[1,2] + [2,4]`-style rendering of a raw multiplicity vector.
    pub fn describe_vec(&self, alpha: &[u64]) -> String {
        ComponentLabel(alpha.to_vec()).describe(self)
    }

    /// Label from a sum of roots given by index.
    pub fn label_of(&self, indices: &[usize]) -> ComponentLabel {
        let mut v = vec![0; self.len()];
        for &i in indices {
            v[i] += 1;
        }
        ComponentLabel(v)
    }

    /// Label from type-`A` interval names such as `[(1,2), (2,4)]`.
    pub fn interval_label(&self, intervals: &[(usize, usize)]) -> Result<ComponentLabel> {
        let n = self.quiver.vertex_count();
        let mut idx = Vec::new();
        for &(i, j) in intervals {
            if i == 0 || i > j || j > n {
                return Err(Error::InvalidParameter(format!("[{i},{j}] is not an interval of 1..{n}")));
            }
            let d = DimVector((1..=n).map(|k| u64::from(i <= k && k <= j)).collect());
            idx.push(
                self.index_of(&d)
                    .ok_or_else(|| Error::NotARoot(d.0.clone()))?,
            );
        }
        Ok(self.label_of(&idx))
    }
}

fn cartan_pairing(c: &[Vec<i64>], r: &[i64], i: usize) -> i64 {
    c[i].iter().zip(r).map(|(a, b)| a * b).sum()
}

fn positive_roots(q: &Quiver) -> Vec<DimVector> {
    let n = q.vertex_count();
    let c = q.cartan_matrix();
    let mut seen: Vec<Vec<i64>> = Vec::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.push(e.clone());
        queue.push_back(e);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            let p = cartan_pairing(&c, &r, i);
            if p == 0 {
                continue;
            }
            let mut s = r.clone();
            s[i] -= p;
            if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) && !seen.contains(&s) {
                seen.push(s.clone());
                queue.push_back(s);
            }
        }
    }
    let mut roots: Vec<DimVector> = seen
        .into_iter()
        .map(|v| DimVector(v.into_iter().map(|x| x as u64).collect()))
        .collect();
    match q.dynkin_type() {
        Some(DynkinType::A(_)) => roots.sort_by_key(|r| {
            let first = r.iter().position(|&x| x > 0).unwrap();
            let last = r.0.len() - 1 - r.iter().rev().position(|&x| x > 0).unwrap();
            (first, last)
        }),
        _ => roots.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| b.cmp(a))),
    }
    roots
}

fn indecomposable_for_root(q: &Quiver, ty: DynkinType, root: &DimVector) -> Result<Representation> {
    let path = Arc::new(AlgebraPresentation::path_algebra(q.clone()));
    match ty {
        DynkinType::A(_) => Ok(interval_module(path, root)),
        _ => reflection_module(q, root),
    }
}

/// Identity maps along every arrow inside the support.
fn interval_module(path: Arc<AlgebraPresentation>, root: &DimVector) -> Representation {
    let f = Field::Rationals;
    let mats = path
        .arrows()
        .iter()
        .map(|a| {
            let (ds, de) = (root[a.source] as usize, root[a.target] as usize);
            if ds == 1 && de == 1 {
                Matrix::identity(f, 1)
            } else {
                Matrix::zeros(f, ds, de)
            }
        })
        .collect();
    Representation::new(path, f, root.clone(), mats).expect("interval module shapes")
}

/// One step of the reduction `(Q, a) -> (sigma_k Q, s_k a)` at a sink or
/// source `k`.
#[derive(Clone, Copy)]
struct Step {
    vertex: usize,
    was_sink: bool,
}

/// Breadth-first search over (orientation, root) pairs for a sequence of
/// admissible reflections taking `root` to a simple root, then the simple
/// module is transported back with BGP reflection functors.
fn reflection_module(q: &Quiver, root: &DimVector) -> Result<Representation> {
    let n = q.vertex_count();
    let c = q.cartan_matrix();
    let start = (q.clone(), root.0.iter().map(|&x| x as i64).collect::<Vec<i64>>());
    let mut parent: HashMap<(Vec<(usize, usize)>, Vec<i64>), (usize, Step)> = HashMap::new();
    let key = |q: &Quiver, r: &Vec<i64>| {
        (
            q.arrows().iter().map(|a| (a.source, a.target)).collect::<Vec<_>>(),
            r.clone(),
        )
    };
    let mut states = vec![start.clone()];
    let mut queue = VecDeque::from([0usize]);
    parent.insert(key(&start.0, &start.1), (usize::MAX, Step { vertex: 0, was_sink: false }));
    let mut goal = None;
    while let Some(si) = queue.pop_front() {
        let (sq, sr) = states[si].clone();
        if sr.iter().sum::<i64>() == 1 {
            goal = Some(si);
            break;
        }
        for k in 0..n {
            let sink = sq.is_sink(k);
            if !sink && !sq.is_source(k) {
                continue;
            }
            let p = cartan_pairing(&c, &sr, k);
            let mut nr = sr.clone();
            nr[k] -= p;
            if nr.iter().any(|&x| x < 0) {
                continue;
            }
            let nq = sq.reflect_at(k);
            let nk = key(&nq, &nr);
            if parent.contains_key(&nk) {
                continue;
            }
            parent.insert(nk, (si, Step { vertex: k, was_sink: sink }));
            states.push((nq, nr));
            queue.push_back(states.len() - 1);
        }
    }
    let goal = goal.ok_or_else(|| Error::NotARoot(root.0.clone()))?;

    // walk back from the simple root to the start
    let (gq, gr) = &states[goal];
    let j = gr.iter().position(|&x| x == 1).unwrap();
    let mut module = Representation::simple(
        Arc::new(AlgebraPresentation::path_algebra(gq.clone())),
        Field::Rationals,
        j,
    );
    let mut cur = goal;
    loop {
        let (sq, sr) = &states[cur];
        let (prev, step) = parent[&key(sq, sr)];
        if prev == usize::MAX {
            break;
        }
        // step was taken from states[prev]; undo it on `module`
        module = if step.was_sink {
            // k was a sink before, hence a source now
            source_reflection(&module, step.vertex)
        } else {
            sink_reflection(&module, step.vertex)
        };
        cur = prev;
    }
    debug_assert_eq!(module.dims(), root);
    Ok(module)
}

/// BGP functor at a sink `k`: the new space at `k` is the kernel of the
/// summed incoming map, with the projections as the reversed arrows.
fn sink_reflection(m: &Representation, k: usize) -> Representation {
    let q = &m.algebra().quiver;
    let f = m.field();
    let incident: Vec<usize> = (0..q.arrows().len())
        .filter(|&b| q.arrows()[b].target == k)
        .collect();
    let stacked = incident
        .iter()
        .fold(Matrix::zeros(f, 0, m.dim(k)), |acc, &b| acc.vstack(m.mat(b)));
    let kernel = stacked.left_kernel_basis();
    let w = kernel.len();
    let kmat = Matrix::from_rows(f, stacked.rows(), kernel);
    reflected(m, k, w, |b, offset| {
        let d = m.dim(q.arrows()[b].source);
        kmat.column_range(offset, offset + d)
    }, &incident)
}

/// BGP functor at a source `k`: the new space at `k` is the cokernel of the
/// combined outgoing map, with the induced maps as the reversed arrows.
fn source_reflection(m: &Representation, k: usize) -> Representation {
    let q = &m.algebra().quiver;
    let f = m.field();
    let incident: Vec<usize> = (0..q.arrows().len())
        .filter(|&b| q.arrows()[b].source == k)
        .collect();
    let joined = incident
        .iter()
        .fold(Matrix::zeros(f, m.dim(k), 0), |acc, &b| acc.hstack(m.mat(b)));
    let kernel = joined.kernel_basis();
    let w = kernel.len();
    let cmat = Matrix::from_rows(f, joined.cols(), kernel).transpose();
    reflected(m, k, w, |b, offset| {
        let d = m.dim(q.arrows()[b].target);
        cmat.row_range(offset, offset + d)
    }, &incident)
}

fn reflected(
    m: &Representation,
    k: usize,
    new_dim: usize,
    block: impl Fn(usize, usize) -> Matrix,
    incident: &[usize],
) -> Representation {
    let q = m.algebra().quiver.reflect_at(k);
    let mut dims = m.dims().clone();
    dims.0[k] = new_dim as u64;
    let mut mats = m.mats().to_vec();
    let mut offset = 0;
    for &b in incident {
        let blk = block(b, offset);
        offset += if m.algebra().quiver.arrows()[b].target == k {
            blk.cols()
        } else {
            blk.rows()
        };
        mats[b] = blk;
    }
    let alg = Arc::new(AlgebraPresentation::path_algebra(q));
    Representation::new(alg, m.field(), dims, mats).expect("reflected module shapes")
}

/// Multiplicity vector over the ordered positive roots; names the
/// irreducible component `C_alpha`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComponentLabel(pub Vec<u64>);

impl ComponentLabel {
    pub fn zero(n: usize) -> ComponentLabel {
        ComponentLabel(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Number of root summands counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &ComponentLabel) -> ComponentLabel {
        assert_eq!(self.len(), other.len(), "label length mismatch");
        ComponentLabel(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, k: u64) -> ComponentLabel {
        ComponentLabel(self.0.iter().map(|x| x * k).collect())
    }

    /// `sum alpha_i a_i`.
    pub fn dim_vector(&self, rs: &RootSystem) -> DimVector {
        let n = rs.quiver().vertex_count();
        let mut d = vec![0u64; n];
        for (i, &k) in self.0.iter().enumerate() {
            for (x, r) in d.iter_mut().zip(rs.root(i).iter()) {
                *x += k * r;
            }
        }
        DimVector(d)
    }

    /// `[1,2] + [2,4] + ...` style rendering.
    pub fn describe(&self, rs: &RootSystem) -> String {
        let mut parts = Vec::new();
        for (i, &k) in self.0.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(rs.root_name(i)),
                _ => parts.push(format!("{k}{}", rs.root_name(i))),
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}
