//! The one-parameter family `M_lambda` over the preprojective algebra of
//! `A5`, the projectives `P2`, `P4`, and a verifier for their numerical
//! invariants.
//!
//! All three modules live on dimension vector `(1,2,2,2,1)` with basis
//! elements `1..8` placed as `v1:{1} v2:{2,3} v3:{4,5} v4:{6,7} v5:{8}`.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::calculus::{
    canonical_decomposition, derived_seed, direct_sum_is_component, rigid_summand_bound, summand_labels,
};
use crate::components::{component_dim, mu_g, rng_stream};
use crate::error::{Error, Result};
use crate::ext::{ext1_dim_cb, ext1_dim_direct, ext_cocycles, is_projective, self_extension_census, CensusReport};
use crate::linalg::{Field, Matrix};
use crate::quiver::{gl_dim, AlgebraPresentation, DimVector, DynkinType};
use crate::rep::{dim_hom, is_indecomposable, is_isomorphic, orbit_dim, Representation, ISO_TRIALS};
use crate::roots::{ComponentLabel, RootSystem};

/// Vertex (0-based) and local index of basis element `1..=8`.
const PLACEMENT: [(usize, usize); 8] = [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (3, 1), (4, 0)];

/// `(element, arrow, [(coefficient, element)])`; the coefficient `None`
/// stands for `lambda`.
type Action = (usize, &'static str, &'static [(Option<i64>, usize)]);

const M_LAMBDA: &[Action] = &[
    (2, "a1", &[(Some(1), 1)]),
    (1, "abar1", &[(Some(1), 3)]),
    (2, "abar2", &[(Some(1), 4), (None, 5)]),
    (4, "a2", &[(Some(1), 3)]),
    (6, "a3", &[(Some(1), 4), (Some(1), 5)]),
    (5, "abar3", &[(Some(1), 7)]),
    (6, "abar4", &[(Some(1), 8)]),
    (8, "a4", &[(Some(1), 7)]),
];

const P2: &[Action] = &[
    (2, "a1", &[(Some(1), 1)]),
    (2, "abar2", &[(Some(1), 4)]),
    (1, "abar1", &[(Some(1), 3)]),
    (4, "a2", &[(Some(1), 3)]),
    (4, "abar3", &[(Some(1), 6)]),
    (3, "abar2", &[(Some(1), 5)]),
    (6, "a3", &[(Some(1), 5)]),
    (6, "abar4", &[(Some(1), 8)]),
    (5, "abar3", &[(Some(1), 7)]),
    (8, "a4", &[(Some(1), 7)]),
];

const P4: &[Action] = &[
    (1, "abar1", &[(Some(1), 3)]),
    (2, "a1", &[(Some(1), 1)]),
    (2, "abar2", &[(Some(1), 5)]),
    (4, "a2", &[(Some(1), 2)]),
    (4, "abar3", &[(Some(1), 7)]),
    (6, "a3", &[(Some(1), 4)]),
    (6, "abar4", &[(Some(1), 8)]),
    (5, "a2", &[(Some(1), 3)]),
    (7, "a3", &[(Some(1), 5)]),
    (8, "a4", &[(Some(1), 7)]),
];

/// Label coordinates over the 15 interval roots.
pub const ALPHA: [u64; 15] = [0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0];
pub const BETA: [u64; 15] = [0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0];

fn build(alg: &Arc<AlgebraPresentation>, lambda: &BigRational, actions: &[Action]) -> Result<Representation> {
    let f = Field::Rationals;
    let dims = DimVector(vec![1, 2, 2, 2, 1]);
    let mut mats: Vec<Matrix> = alg
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(f, dims[a.source] as usize, dims[a.target] as usize))
        .collect();
    for &(from, arrow, image) in actions {
        let b = alg
            .quiver
            .arrow_index(arrow)
            .ok_or_else(|| Error::Input(format!("unknown arrow {arrow}")))?;
        let a = &alg.arrows()[b];
        let (v, row) = PLACEMENT[from - 1];
        if v != a.source {
            return Err(Error::Input(format!("element {from} is not at the source of {arrow}")));
        }
        for &(c, to) in image {
            let (w, col) = PLACEMENT[to - 1];
            if w != a.target {
                return Err(Error::Input(format!("element {to} is not at the target of {arrow}")));
            }
            let c = match c {
                Some(k) => f.from_i64(k),
                None => f.from_rational(lambda),
            };
            mats[b].set(row, col, c);
        }
    }
    Representation::checked(alg.clone(), f, dims, mats)
}

#[derive(Clone, Debug)]
pub struct LeclercFixture {
    pub roots: Arc<RootSystem>,
    pub lambda: BigRational,
    pub m_lambda: Representation,
    pub p2: Representation,
    pub p4: Representation,
    pub alpha: ComponentLabel,
    pub beta: ComponentLabel,
    pub beta1: ComponentLabel,
    pub beta2: ComponentLabel,
}

/// Root system of the preset `A5` quiver shared by all fixtures.
pub fn a5_roots() -> Result<Arc<RootSystem>> {
    Ok(Arc::new(RootSystem::of_type(DynkinType::A(5))?))
}

pub fn build_fixture(lambda: &BigRational) -> Result<LeclercFixture> {
    build_fixture_in(a5_roots()?, lambda)
}

/// Fixture over an existing `A5` root system (so modules for different
/// parameters share one algebra).
pub fn build_fixture_in(roots: Arc<RootSystem>, lambda: &BigRational) -> Result<LeclercFixture> {
    if lambda.is_zero() || lambda.is_one() {
        return Err(Error::InvalidParameter(format!("lambda = {lambda} is excluded")));
    }
    if roots.dynkin_type() != DynkinType::A(5) || roots.quiver().preset() != Some(DynkinType::A(5)) {
        return Err(Error::InvalidParameter("fixture needs the preset A5 quiver".into()));
    }
    let alg = roots.preprojective_algebra().clone();
    let beta1 = roots.interval_label(&[(1, 2), (2, 3), (3, 4), (4, 5)])?;
    let beta2 = roots.interval_label(&[(1, 4), (2, 5)])?;
    Ok(LeclercFixture {
        lambda: lambda.clone(),
        m_lambda: build(&alg, lambda, M_LAMBDA)?,
        p2: build(&alg, lambda, P2)?,
        p4: build(&alg, lambda, P4)?,
        alpha: ComponentLabel(ALPHA.to_vec()),
        beta: ComponentLabel(BETA.to_vec()),
        beta1,
        beta2,
        roots,
    })
}

impl LeclercFixture {
    /// Derivative of `M_lambda` in `lambda`: a self-extension cocycle
    /// supported on `abar2`, sending element 2 to element 5.
    pub fn deformation_class(&self) -> Vec<Matrix> {
        let f = Field::Rationals;
        let alg = self.m_lambda.algebra();
        let b = alg.quiver.arrow_index("abar2").unwrap();
        alg.arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let mut m = Matrix::zeros(f, self.m_lambda.dim(a.source), self.m_lambda.dim(a.target));
                if k == b {
                    m.set(0, 1, f.one());
                }
                m
            })
            .collect()
    }

    pub fn p2_plus_p4(&self) -> Representation {
        self.p2.direct_sum(&self.p4).expect("same algebra")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub check: String,
    pub expect: Value,
    pub got: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LeclercReport {
    pub format: u32,
    pub lambdas: Vec<String>,
    pub seed: u64,
    pub samples: usize,
    pub field: String,
    pub checks: Vec<CheckResult>,
    pub unverified: Vec<String>,
    pub pass: bool,
}

impl LeclercReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

struct Checks(Vec<CheckResult>);

impl Checks {
    fn push(&mut self, id: &str, check: String, expect: Value, got: Value) {
        let pass = expect == got;
        self.0.push(CheckResult {
            id: id.into(),
            check,
            expect,
            got,
            pass,
        });
    }
}

fn labels_json(v: &[ComponentLabel]) -> Value {
    json!(v.iter().map(|l| l.0.clone()).collect::<Vec<_>>())
}

/// Runs checks (a)-(k) for every parameter in `lambdas` (at least two,
/// pairwise distinct, none equal to 0 or 1).
pub fn verify_proposition(lambdas: &[BigRational], seed: u64, samples: usize) -> Result<LeclercReport> {
    if lambdas.len() < 2 {
        return Err(Error::InvalidParameter("need at least two parameters".into()));
    }
    let roots = a5_roots()?;
    let fixtures: Vec<LeclercFixture> = lambdas
        .iter()
        .map(|l| build_fixture_in(roots.clone(), l))
        .collect::<Result<_>>()?;
    let rs = &*roots;
    let mut rng = rng_stream(seed, 1 << 32);
    let mut c = Checks(Vec::new());
    let first = &fixtures[0];

    for fx in &fixtures {
        let l = fx.lambda.to_string();
        let m = &fx.m_lambda;
        c.push("a", format!("dim End(M_{l})"), json!(3), json!(dim_hom(m, m)?));
        c.push("a", format!("M_{l} indecomposable"), json!(true), json!(is_indecomposable(m)?));
        c.push("b", format!("orbit dim M_{l}"), json!(11), json!(orbit_dim(m)?));
        c.push(
            "d",
            format!("Ext1(M_{l},M_{l}) direct / Hom-form"),
            json!([2, 2]),
            json!([ext1_dim_direct(m, m)?, ext1_dim_cb(m, m)?]),
        );
        c.push("f", format!("label of forward part of M_{l}"), json!(ALPHA), json!(rs.gabriel_label(m, &mut rng)?.0));
    }
    c.push("c", "dim C_alpha".into(), json!(12), json!(component_dim(rs, &first.alpha)));
    c.push("c", "dim GL(1,2,2,2,1)".into(), json!(14), json!(gl_dim(first.m_lambda.dims())));

    for (i, x) in fixtures.iter().enumerate() {
        for y in &fixtures[i + 1..] {
            let (lx, ly) = (x.lambda.to_string(), y.lambda.to_string());
            c.push(
                "e",
                format!("Ext1(M_{lx},M_{ly}), Ext1(M_{ly},M_{lx})"),
                json!([0, 0]),
                json!([ext1_dim_direct(&x.m_lambda, &y.m_lambda)?, ext1_dim_direct(&y.m_lambda, &x.m_lambda)?]),
            );
            c.push(
                "e",
                format!("M_{lx} and M_{ly} isomorphic"),
                json!(false),
                json!(is_isomorphic(&x.m_lambda, &y.m_lambda, &mut rng, ISO_TRIALS)?.is_isomorphic()),
            );
        }
    }

    c.push("f", "label of forward part of P2".into(), json!(first.beta1.0), json!(rs.gabriel_label(&first.p2, &mut rng)?.0));
    c.push("f", "label of forward part of P4".into(), json!(first.beta2.0), json!(rs.gabriel_label(&first.p4, &mut rng)?.0));

    let (p2, p4) = (&first.p2, &first.p4);
    c.push("g", "P2 projective".into(), json!(true), json!(is_projective(p2)?));
    c.push("g", "P4 projective".into(), json!(true), json!(is_projective(p4)?));
    let mut pairs = Vec::new();
    for x in [p2, p4] {
        for y in [p2, p4] {
            pairs.push(ext1_dim_direct(x, y)?);
        }
    }
    c.push("g", "Ext1(Pi,Pj) for i,j in {2,4}".into(), json!([0, 0, 0, 0]), json!(pairs));

    let f = Field::Rationals;
    c.push("h", "mu_g(C_alpha)".into(), json!(1), json!(mu_g(rs, &first.alpha, f, samples, derived_seed(seed, 1))?));
    c.push("h", "mu_g(C_beta1)".into(), json!(0), json!(mu_g(rs, &first.beta1, f, samples, derived_seed(seed, 2))?));
    c.push("h", "mu_g(C_beta2)".into(), json!(0), json!(mu_g(rs, &first.beta2, f, samples, derived_seed(seed, 3))?));

    let cd = canonical_decomposition(rs, &first.beta, samples, derived_seed(seed, 4))?;
    let mut want = vec![first.beta1.clone(), first.beta2.clone()];
    want.sort();
    c.push(
        "i",
        "canonical decomposition of C_beta".into(),
        labels_json(&want),
        cd.parts.as_deref().map_or(Value::Null, labels_json),
    );
    let cd_alpha = canonical_decomposition(rs, &first.alpha, samples, derived_seed(seed, 5))?;
    c.push(
        "i",
        "canonical decomposition of C_alpha".into(),
        labels_json(&[first.alpha.clone()]),
        cd_alpha.parts.as_deref().map_or(Value::Null, labels_json),
    );

    let sum = direct_sum_is_component(rs, &first.alpha, &first.alpha, samples, derived_seed(seed, 6))?;
    c.push(
        "j",
        "direct sum C_alpha + C_alpha is a component".into(),
        json!(first.alpha.scaled(2).0),
        sum.map_or(Value::Null, |l| json!(l.0)),
    );
    let sum_b = direct_sum_is_component(rs, &first.beta1, &first.beta2, samples, derived_seed(seed, 7))?;
    c.push(
        "j",
        "direct sum C_beta1 + C_beta2 is a component".into(),
        json!(first.beta.0),
        sum_b.map_or(Value::Null, |l| json!(l.0)),
    );

    for fx in &fixtures {
        let l = fx.lambda.to_string();
        let census = census_of(fx, &mut rng)?;
        let target = fx.p2_plus_p4();
        let mut has_projective = false;
        for e in &census.entries {
            if e.summands.len() == 2 && is_isomorphic(&e.middle, &target, &mut rng, ISO_TRIALS)?.is_isomorphic() {
                has_projective = true;
                break;
            }
        }
        let has_indec = census
            .entries
            .iter()
            .any(|e| e.indecomposable && e.dims == [2, 4, 4, 4, 2]);
        c.push("k", format!("census of M_{l} has middle term P2+P4"), json!(true), json!(has_projective));
        c.push(
            "k",
            format!("census of M_{l} has an indecomposable middle term of dims (2,4,4,4,2)"),
            json!(true),
            json!(has_indec),
        );
    }

    let bound = rigid_summand_bound(&first.p2_plus_p4(), rs.len(), &mut rng)?;
    c.push("rigid", "distinct summands of P2+P4".into(), json!(2), json!(bound.distinct));

    let pass = c.0.iter().all(|x| x.pass);
    Ok(LeclercReport {
        format: 1,
        lambdas: lambdas.iter().map(ToString::to_string).collect(),
        seed,
        samples,
        field: "Q".into(),
        checks: c.0,
        unverified: vec!["the self-extension census exhibits the components C_{2alpha} and C_beta \
            among generic extensions of C_alpha by itself but does not show there are no others"
            .into()],
        pass,
    })
}

/// Census of `Ext^1(M_lambda, M_lambda)` over the default grid and the
/// deformation class.
pub fn census_of<R: rand::Rng + ?Sized>(fx: &LeclercFixture, rng: &mut R) -> Result<CensusReport> {
    self_extension_census(&fx.m_lambda, &fx.roots, &[fx.deformation_class()], rng)
}

/// Dimension of the self-extension space together with a check that the
/// deformation class is not a coboundary.
pub fn deformation_is_nontrivial(fx: &LeclercFixture) -> Result<bool> {
    let space = ext_cocycles(&fx.m_lambda, &fx.m_lambda)?;
    let c = space
        .coordinates(&fx.deformation_class())
        .ok_or_else(|| Error::NotACocycle("deformation class".into()))?;
    Ok(c.iter().any(|x| !x.is_zero()))
}

/// Inert record of the multiplicative identity relating the dual canonical
/// basis elements of `C_alpha`, `C_{2 alpha}` and `C_beta`.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct LeclercMetadata {
    pub identity: String,
    pub labels: Vec<(String, Vec<u64>)>,
    pub counterexample_to: String,
}

pub fn leclerc_metadata() -> LeclercMetadata {
    let alpha = ALPHA.to_vec();
    LeclercMetadata {
        identity: "b*(C_alpha)^2 = v^-2 (b*(C_{alpha+alpha}) + b*(C_beta))".into(),
        labels: vec![
            ("alpha".into(), alpha.clone()),
            ("2alpha".into(), alpha.iter().map(|x| 2 * x).collect()),
            ("beta".into(), BETA.to_vec()),
        ],
        counterexample_to: "squares of dual canonical basis elements are again dual canonical basis elements up to a power of v".into(),
    }
}

/// Parameters used when none are given.
pub fn default_lambdas() -> Vec<BigRational> {
    [2, 3, 5].iter().map(|&k| BigRational::from_integer(k.into())).collect()
}

/// Labels of the summands of the forward part of `P2 + P4`.
pub fn projective_sum_labels<R: rand::Rng + ?Sized>(fx: &LeclercFixture, rng: &mut R) -> Result<Vec<ComponentLabel>> {
    summand_labels(&fx.roots, &fx.p2_plus_p4(), rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> BigRational {
        BigRational::from_integer(k.into())
    }

    #[test]
    fn fixtures_satisfy_relations() {
        for k in [2, 3, -4, 7] {
            let fx = build_fixture(&q(k)).unwrap();
            for m in [&fx.m_lambda, &fx.p2, &fx.p4] {
                assert!(m.check_relations());
                assert_eq!(m.dims(), &DimVector(vec![1, 2, 2, 2, 1]));
            }
        }
        let half = BigRational::new(1.into(), 2.into());
        assert!(build_fixture(&half).is_ok());
    }

    #[test]
    fn excluded_parameters() {
        assert!(build_fixture(&q(0)).is_err());
        assert!(build_fixture(&q(1)).is_err());
    }

    #[test]
    fn m2_invariants() {
        let fx = build_fixture(&q(2)).unwrap();
        let m = &fx.m_lambda;
        assert_eq!(dim_hom(m, m).unwrap(), 3);
        assert_eq!(orbit_dim(m).unwrap(), 11);
        assert!(is_indecomposable(m).unwrap());
        assert_eq!(ext1_dim_direct(m, m).unwrap(), 2);
        assert_eq!(ext1_dim_cb(m, m).unwrap(), 2);
        assert!(deformation_is_nontrivial(&fx).unwrap());
        let sum = fx.p2_plus_p4();
        assert_eq!(sum.dims(), &DimVector(vec![2, 4, 4, 4, 2]));
        // dense orbit: 56 - 8 fills the 48-dimensional component
        assert_eq!(dim_hom(&sum, &sum).unwrap(), 8);
        assert_eq!(orbit_dim(&sum).unwrap(), 48);
        assert!(!is_indecomposable(&sum).unwrap());
    }

    #[test]
    fn forward_labels() {
        let fx = build_fixture(&q(3)).unwrap();
        let mut rng = rng_stream(0, 0);
        assert_eq!(fx.roots.gabriel_label(&fx.m_lambda, &mut rng).unwrap(), fx.alpha);
        assert_eq!(fx.roots.gabriel_label(&fx.p2, &mut rng).unwrap(), fx.beta1);
        assert_eq!(fx.roots.gabriel_label(&fx.p4, &mut rng).unwrap(), fx.beta2);
        assert_eq!(fx.beta1.add(&fx.beta2), fx.beta);
    }

    #[test]
    fn metadata_round_trips() {
        let m = leclerc_metadata();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<LeclercMetadata>(&s).unwrap(), m);
        let names: Vec<&str> = m.labels.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["alpha", "2alpha", "beta"]);
    }
}
