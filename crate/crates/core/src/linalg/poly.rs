//! Dense univariate polynomials, characteristic polynomials and the
//! coprime splitting used by Fitting decompositions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::scalar::{Field, Scalar};

/// Coefficients are stored lowest degree first with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Polynomial {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> Polynomial {
        Polynomial::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Polynomial {
        Polynomial::new(field, Vec::new())
    }

    pub fn one(field: Field) -> Polynomial {
        Polynomial::new(field, vec![field.one()])
    }

    pub fn x(field: Field) -> Polynomial {
        Polynomial::new(field, vec![field.zero(), field.one()])
    }

    /// The monic linear factor `x - r`.
    pub fn linear(r: &Scalar) -> Polynomial {
        let f = r.field();
        Polynomial::new(f, vec![-r, f.one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv();
                Polynomial::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        Polynomial::new(
            self.field,
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        Polynomial::new(
            self.field,
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z)
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        Polynomial::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(self.field, out)
    }

    pub fn pow(&self, e: usize) -> Polynomial {
        (0..e).fold(Polynomial::one(self.field), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().unwrap().inv();
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree().filter(|&n| n >= dd) else {
            return (Polynomial::zero(self.field), self.clone());
        };
        let mut quot = vec![self.field.zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dj);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (
            Polynomial::new(self.field, quot),
            Polynomial::new(self.field, rem),
        )
    }

    pub fn rem(&self, d: &Polynomial) -> Polynomial {
        self.div_rem(d).1
    }

    /// Exact quotient; debug-asserts a zero remainder.
    pub fn div_exact(&self, d: &Polynomial) -> Polynomial {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let id = Matrix::identity(self.field, n);
        self.coeffs
            .iter()
            .rev()
            .fold(Matrix::zeros(self.field, n, n), |acc, c| {
                acc.mul(m).add_scaled(c, &id)
            })
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Polynomial {
        if self.degree().unwrap_or(0) == 0 {
            return Polynomial::one(self.field);
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }

    /// Yun's algorithm: pairs `(f_i, i)` with `self = c * prod f_i^i`, the
    /// `f_i` squarefree, monic, pairwise coprime and nonconstant.
    pub fn squarefree_decomposition(&self) -> Vec<(Polynomial, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0);
        let mut c = fp.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            b = b.div_exact(&a);
            c = d.div_exact(&a);
            d = c.sub(&b.derivative());
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Distinct roots lying in the base field, sorted for determinism.
    pub fn rational_roots(&self) -> Vec<Scalar> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let sf = self.squarefree_part();
        let mut roots = match self.field {
            Field::Rationals => rational_roots_q(&sf),
            Field::Prime(p) => roots_mod_p(&sf, p),
        };
        roots.sort_by_key(sort_key);
        roots
    }

    /// Pairwise coprime monic factors whose product is `self` made monic.
    /// Built from the squarefree decomposition with every base-field root
    /// split off as its own linear power; no further factorization.
    pub fn coprime_split(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for (f, mult) in self.squarefree_decomposition() {
            let mut rest = f.clone();
            for r in f.rational_roots() {
                let lin = Polynomial::linear(&r);
                rest = rest.div_exact(&lin);
                out.push(lin.pow(mult));
            }
            if rest.degree().unwrap_or(0) > 0 {
                out.push(rest.pow(mult));
            }
        }
        out
    }
}

fn sort_key(s: &Scalar) -> (i8, BigRational) {
    match s {
        Scalar::Rational(q) => (0, q.clone()),
        Scalar::Residue { value, .. } => (1, BigRational::from_integer(BigInt::from(*value))),
    }
}

/// Characteristic polynomial `det(x I - m)`, monic of degree `rows`.
/// Similarity reduction to upper Hessenberg form, then the standard
/// three-term expansion along the subdiagonal.
pub fn charpoly(m: &Matrix) -> Polynomial {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let field = m.field();
    let n = m.rows();
    let mut h = m.to_rows();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| !h[i][j].is_zero()) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = h[j + 1][j].inv();
        for k in j + 2..n {
            if h[k][j].is_zero() {
                continue;
            }
            let u = &h[k][j] * &inv;
            let src = h[j + 1].clone();
            for (x, y) in h[k].iter_mut().zip(&src) {
                *x = &*x - &(&u * y);
            }
            for row in h.iter_mut() {
                let add = &u * &row[k];
                row[j + 1] = &row[j + 1] + &add;
            }
        }
    }
    let x = Polynomial::x(field);
    let mut ps: Vec<Polynomial> = vec![Polynomial::one(field)];
    for k in 1..=n {
        let lin = x.sub(&Polynomial::new(field, vec![h[k - 1][k - 1].clone()]));
        let mut pk = lin.mul(&ps[k - 1]);
        let mut prod = field.one();
        for i in 1..k {
            prod = &prod * &h[k - i][k - i - 1];
            if prod.is_zero() {
                break;
            }
            let c = &h[k - 1 - i][k - 1] * &prod;
            pk = pk.sub(&ps[k - 1 - i].scale(&c));
        }
        ps.push(pk);
    }
    ps.pop().unwrap()
}

/// Rational roots of a squarefree polynomial via Hensel lifting from a
/// good small prime and rational reconstruction, each candidate verified.
fn rational_roots_q(sf: &Polynomial) -> Vec<Scalar> {
    let q = Field::Rationals;
    let mut ints = primitive_integer_coeffs(sf);
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(q.zero());
        ints.remove(0);
    }
    if ints.len() <= 1 {
        return roots;
    }
    if ints.len() == 2 {
        let r = BigRational::new(-ints[0].clone(), ints[1].clone());
        roots.push(Scalar::Rational(r));
        return roots;
    }
    let lead = ints.last().unwrap().abs();
    let konst = ints[0].abs();
    let bound = lead.clone().max(konst);
    let target = BigInt::from(2) * &bound * &bound;

    let ell = good_prime(&ints);
    let ell_big = BigInt::from(ell);
    let deriv: Vec<BigInt> = ints
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();

    for r0 in 0..ell {
        if !eval_int(&ints, &BigInt::from(r0)).mod_floor(&ell_big).is_zero() {
            continue;
        }
        let mut r = BigInt::from(r0);
        let mut modulus = ell_big.clone();
        while modulus <= target {
            modulus = &modulus * &modulus;
            let fr = eval_int(&ints, &r);
            let dfr = eval_int(&deriv, &r).mod_floor(&modulus);
            let Some(inv) = mod_inverse(&dfr, &modulus) else {
                break;
            };
            r = (&r - fr * inv).mod_floor(&modulus);
        }
        if let Some((num, den)) = reconstruct(&r, &modulus, &bound) {
            let cand = BigRational::new(num, den);
            let s = Scalar::Rational(cand);
            if sf.eval(&s).is_zero() && !roots.contains(&s) {
                roots.push(s);
            }
        }
    }
    roots
}

fn primitive_integer_coeffs(p: &Polynomial) -> Vec<BigInt> {
    let rats: Vec<BigRational> = p
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational coefficients").clone())
        .collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Smallest odd prime not dividing the leading coefficient and modulo
/// which the polynomial stays squarefree.
fn good_prime(ints: &[BigInt]) -> u64 {
    let lead = ints.last().unwrap();
    let mut ell = 3u64;
    loop {
        if super::scalar::is_prime(ell) && !(lead % BigInt::from(ell)).is_zero() {
            let f = Field::Prime(ell);
            let p = Polynomial::new(f, ints.iter().map(|c| f.from_bigint(c)).collect());
            if p.gcd(&p.derivative()).degree() == Some(0) {
                return ell;
            }
        }
        ell += 2;
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Finds `num/den` congruent to `r` modulo `m` with `|num|, den <= bound`.
fn reconstruct(r: &BigInt, m: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let (qt, rem) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, rem);
        let t2 = &t0 - &qt * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Roots in F_p of a squarefree polynomial (Cantor-Zassenhaus with a
/// deterministic sequence of shifts).
fn roots_mod_p(sf: &Polynomial, p: u64) -> Vec<Scalar> {
    let f = Field::Prime(p);
    let x = Polynomial::x(f);
    let xp = powmod_poly(&x, p as u128, sf);
    let g = sf.gcd(&xp.sub(&x));
    let mut out = Vec::new();
    split_linear(&g, p, &mut out, 1);
    out
}

fn split_linear(g: &Polynomial, p: u64, out: &mut Vec<Scalar>, mut shift: i64) {
    let f = g.field();
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let m = g.monic();
            out.push(-&m.coeffs()[0]);
        }
        Some(_) => loop {
            let base = Polynomial::new(f, vec![f.from_i64(shift), f.one()]);
            let h = powmod_poly(&base, ((p - 1) / 2) as u128, g).sub(&Polynomial::one(f));
            let d = g.gcd(&h);
            shift += 1;
            let dd = d.degree().unwrap_or(0);
            if dd > 0 && dd < g.degree().unwrap() {
                let rest = g.div_exact(&d);
                split_linear(&d, p, out, shift);
                split_linear(&rest, p, out, shift);
                return;
            }
        },
    }
}

fn powmod_poly(base: &Polynomial, mut e: u128, m: &Polynomial) -> Polynomial {
    let mut acc = Polynomial::one(base.field()).rem(m);
    let mut b = base.rem(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b).rem(m);
        }
        b = b.mul(&b).rem(m);
        e >>= 1;
    }
    acc
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(Q, c)
    }

    fn det(m: &Matrix) -> Scalar {
        // cofactor-free oracle: elimination with row swaps
        let n = m.rows();
        let mut a = m.to_rows();
        let mut d = Q.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Q.zero();
            };
            if p != c {
                a.swap(p, c);
                d = -d;
            }
            d = &d * &a[c][c];
            let inv = a[c][c].inv();
            for i in c + 1..n {
                let f = &a[i][c] * &inv;
                let src = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(&src) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        d
    }

    #[test]
    fn charpoly_of_diagonal() {
        let m = Matrix::from_i64(Q, &[&[2, 0], &[0, 3]]);
        let p = charpoly(&m);
        assert_eq!(p, poly(&[-2, 1]).mul(&poly(&[-3, 1])));
        let split = p.coprime_split();
        assert_eq!(split, vec![poly(&[-2, 1]), poly(&[-3, 1])]);
    }

    #[test]
    fn nilpotent_block_splits_to_itself() {
        let m = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        let p = charpoly(&m);
        assert_eq!(p, poly(&[0, 0, 1]));
        assert_eq!(p.coprime_split(), vec![poly(&[0, 0, 1])]);
    }

    #[test]
    fn squarefree_and_roots() {
        let m = Matrix::from_i64(Q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 5]]);
        let p = charpoly(&m);
        assert_eq!(p.squarefree_part(), poly(&[-1, 1]).mul(&poly(&[-5, 1])));
        assert_eq!(p.rational_roots(), vec![Q.from_i64(1), Q.from_i64(5)]);
    }

    #[test]
    fn charpoly_matches_determinant_oracle() {
        let m = Matrix::from_i64(
            Q,
            &[&[1, 2, 0, -1], &[3, -1, 4, 2], &[0, 5, 2, 1], &[7, 0, -3, 1]],
        );
        let p = charpoly(&m);
        assert_eq!(p.degree(), Some(4));
        for t in -3..=3 {
            let t = Q.from_i64(t);
            let shifted = Matrix::identity(Q, 4).scale(&t).sub(&m);
            assert_eq!(p.eval(&t), det(&shifted));
        }
    }

    #[test]
    fn fractional_and_irrational_roots() {
        // (2x - 1)(3x + 4)(x^2 - 2)
        let p = poly(&[-1, 2]).mul(&poly(&[4, 3])).mul(&poly(&[-2, 0, 1]));
        assert_eq!(p.rational_roots(), vec![Q.from_ratio(-4, 3), Q.from_ratio(1, 2)]);
        let split = p.coprime_split();
        assert_eq!(split.len(), 3);
        assert!(split.contains(&poly(&[-2, 0, 1])));
    }

    #[test]
    fn large_integer_roots() {
        let p = poly(&[-1_000_003, 1]).mul(&poly(&[999_983, 1])).mul(&poly(&[0, 1]));
        assert_eq!(
            p.rational_roots(),
            vec![Q.from_i64(-999_983), Q.zero(), Q.from_i64(1_000_003)]
        );
    }

    #[test]
    fn yun_decomposition() {
        // x^3 (x-1)^2 (x+2)
        let p = poly(&[0, 1]).pow(3).mul(&poly(&[-1, 1]).pow(2)).mul(&poly(&[2, 1]));
        let d = p.squarefree_decomposition();
        assert_eq!(
            d,
            vec![(poly(&[2, 1]), 1), (poly(&[-1, 1]), 2), (poly(&[0, 1]), 3)]
        );
    }

    #[test]
    fn prime_field_roots() {
        let f = Field::Prime(2147483647);
        let p = Polynomial::from_i64(f, &[6, -5, 1]).mul(&Polynomial::from_i64(f, &[1, 0, 1]));
        assert_eq!(p.rational_roots(), vec![f.from_i64(2), f.from_i64(3)]);
    }
}
