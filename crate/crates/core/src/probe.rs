//! Searching for zeros of polynomials in the product of upper half-planes.
//!
//! Every trial draws exact rational data from a small grid and tries one of
//! three restrictions: a single free variable with the rest fixed to reals, a
//! positive-direction line `t -> p(a + t b)`, or a linear solve for one
//! variable of degree one with the remaining free variables placed at
//! Gaussian-rational points of the upper half-plane. Any zero found is
//! returned as an exact [`ZeroCertificate`]; a restriction that fails to be
//! real-rooted without an exact root is kept as a weaker witness.

use crate::error::{Error, Result};
use crate::poly::{is_real_rooted, GaussianRational, Polynomial, UniPoly};
use crate::rational::{int, ratio, Rational};
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Serde adapter writing variable indices as `x1`, `x2`, ...
mod var_keys {
    use serde::de::{DeserializeOwned, Error};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn name(v: usize) -> String {
        format!("x{}", v + 1)
    }

    pub fn parse(name: &str) -> Option<usize> {
        let idx: usize = name.strip_prefix('x')?.parse().ok()?;
        idx.checked_sub(1)
    }

    pub fn serialize_with<V, W: Serialize, S: Serializer>(
        m: &BTreeMap<usize, V>,
        f: impl Fn(&V) -> W,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        // Sort by index, not by name, so that x10 follows x9.
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            map.serialize_entry(&name(*k), &f(v))?;
        }
        map.end()
    }

    pub fn deserialize_with<'de, V, W: DeserializeOwned, D: Deserializer<'de>>(
        d: D,
        f: impl Fn(W) -> Result<V, String>,
    ) -> Result<BTreeMap<usize, V>, D::Error> {
        let raw = serde_json_like::<W, D>(d)?;
        raw.into_iter()
            .map(|(k, w)| {
                let idx = parse(&k).ok_or_else(|| D::Error::custom(format!("bad variable name {k:?}")))?;
                f(w).map(|v| (idx, v)).map_err(D::Error::custom)
            })
            .collect()
    }

    fn serde_json_like<'de, W: DeserializeOwned, D: Deserializer<'de>>(d: D) -> Result<Vec<(String, W)>, D::Error> {
        Ok(BTreeMap::<String, W>::deserialize(d)?.into_iter().collect())
    }
}

mod real_map {
    use super::var_keys;
    use crate::rational::{format_rational, parse_rational, Rational};
    use serde::{Deserializer, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<usize, Rational>, s: S) -> Result<S::Ok, S::Error> {
        var_keys::serialize_with(m, format_rational, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, Rational>, D::Error> {
        var_keys::deserialize_with(d, |s: String| parse_rational(&s))
    }
}

mod complex_map {
    use super::var_keys;
    use crate::poly::GaussianRational;
    use serde::{Deserializer, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<usize, GaussianRational>, s: S) -> Result<S::Ok, S::Error> {
        var_keys::serialize_with(m, Clone::clone, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, GaussianRational>, D::Error> {
        var_keys::deserialize_with(d, |z: GaussianRational| Ok(z))
    }
}

/// Real values for some variables and upper-half-plane values for the rest
/// at which the polynomial vanishes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroCertificate {
    #[serde(rename = "substitutions", with = "real_map")]
    pub real_substitutions: BTreeMap<usize, Rational>,
    #[serde(with = "complex_map")]
    pub hpoint: BTreeMap<usize, GaussianRational>,
}

/// `t -> p(base + t * direction)` with every direction entry nonnegative and
/// not all zero, which is not real-rooted. Variables missing from
/// `direction` have direction 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootednessWitness {
    #[serde(with = "real_map")]
    pub base: BTreeMap<usize, Rational>,
    #[serde(with = "real_map")]
    pub direction: BTreeMap<usize, Rational>,
    /// Coefficients of the restriction, constant term first.
    pub restriction: Vec<String>,
    pub degree: usize,
    pub real_roots: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FalsifyOutcome {
    Certificate { trial: u64, certificate: ZeroCertificate },
    RealRootednessViolation { trial: u64, witness: RootednessWitness },
    NotFound { trials: u64 },
}

impl FalsifyOutcome {
    pub fn is_falsified(&self) -> bool {
        !matches!(self, FalsifyOutcome::NotFound { .. })
    }
}

/// Grid `k/d`, `1 <= d <= 4`, in `[-3, 3]`.
fn grid_real(rng: &mut impl Rng) -> Rational {
    let d: i64 = rng.gen_range(1..=4);
    ratio(rng.gen_range(-3 * d..=3 * d), d)
}

/// Grid `k/d`, `1 <= d <= 4`, in `(0, 3]`.
fn grid_positive(rng: &mut impl Rng) -> Rational {
    let d: i64 = rng.gen_range(1..=4);
    ratio(rng.gen_range(1..=3 * d), d)
}

fn grid_upper(rng: &mut impl Rng) -> GaussianRational {
    GaussianRational::new(grid_real(rng), grid_positive(rng))
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// The root in the upper half-plane of a real quadratic with negative
/// discriminant, when the square root is rational.
fn upper_quadratic_root(q: &UniPoly) -> Option<GaussianRational> {
    if q.degree() != Some(2) {
        return None;
    }
    let (c, b, a) = (q.coefficient(0), q.coefficient(1), q.coefficient(2));
    let disc = &b * &b - int(4) * &a * &c;
    if !disc.is_negative() {
        return None;
    }
    let s = rational_sqrt(&-disc)?;
    let two_a = int(2) * &a;
    let root = GaussianRational::new(-&b / &two_a, &s / &two_a);
    Some(if root.in_upper_half_plane() { root } else { root.conj() })
}

fn witness(base: BTreeMap<usize, Rational>, direction: BTreeMap<usize, Rational>, q: &UniPoly) -> RootednessWitness {
    RootednessWitness {
        base,
        direction,
        restriction: q.coeffs().iter().map(crate::rational::format_rational).collect(),
        degree: q.degree().unwrap_or(0),
        real_roots: q.count_real_roots(),
    }
}

enum Trial {
    Zero(ZeroCertificate),
    Violation(RootednessWitness),
    Nothing,
}

struct Prober<'a> {
    p: &'a Polynomial,
    vars: Vec<usize>,
    affine_vars: Vec<usize>,
}

impl Prober<'_> {
    /// One free variable, the rest real.
    fn axis(&self, rng: &mut impl Rng) -> Trial {
        let free = self.vars[rng.gen_range(0..self.vars.len())];
        let subs: BTreeMap<usize, Rational> =
            self.vars.iter().filter(|&&v| v != free).map(|&v| (v, grid_real(rng))).collect();
        let q = self.p.restrict_univariate(&subs, free);
        if q.is_zero() || is_real_rooted(&q) {
            return Trial::Nothing;
        }
        match upper_quadratic_root(&q) {
            Some(z) => Trial::Zero(ZeroCertificate { real_substitutions: subs, hpoint: BTreeMap::from([(free, z)]) }),
            None => Trial::Violation(witness(subs, BTreeMap::from([(free, int(1))]), &q)),
        }
    }

    /// `t -> p(a + t b)` with `b > 0` on every variable.
    fn line(&self, rng: &mut impl Rng) -> Trial {
        let n = self.p.nvars();
        let mut base = vec![Rational::zero(); n];
        let mut dir = vec![Rational::zero(); n];
        for &v in &self.vars {
            base[v] = grid_real(rng);
            dir[v] = grid_positive(rng);
        }
        let q = self.p.restrict_line(&base, &dir);
        if q.is_zero() || is_real_rooted(&q) {
            return Trial::Nothing;
        }
        let pick = |xs: &[Rational]| -> BTreeMap<usize, Rational> {
            self.vars.iter().map(|&v| (v, xs[v].clone())).collect()
        };
        match upper_quadratic_root(&q) {
            Some(t) => {
                let hpoint = self
                    .vars
                    .iter()
                    .map(|&v| (v, &GaussianRational::real(base[v].clone()) + &t.scale(&dir[v])))
                    .collect();
                Trial::Zero(ZeroCertificate { real_substitutions: BTreeMap::new(), hpoint })
            }
            None => Trial::Violation(witness(pick(&base), pick(&dir), &q)),
        }
    }

    /// Solves `A y + B = 0` for a variable `y` of degree one, with some other
    /// variables real and the rest in the upper half-plane.
    fn affine(&self, rng: &mut impl Rng) -> Trial {
        if self.affine_vars.is_empty() {
            return Trial::Nothing;
        }
        let y = self.affine_vars[rng.gen_range(0..self.affine_vars.len())];
        let mut subs = BTreeMap::new();
        let mut hpoint = BTreeMap::new();
        for &v in self.vars.iter().filter(|&&v| v != y) {
            if rng.gen_bool(0.5) {
                subs.insert(v, grid_real(rng));
            } else {
                hpoint.insert(v, grid_upper(rng));
            }
        }
        let restricted = self.p.substitute_values(&subs);
        if restricted.degree_in(y) != 1 {
            return Trial::Nothing;
        }
        let mut point = vec![GaussianRational::zero(); self.p.nvars()];
        for (&v, z) in &hpoint {
            point[v] = z.clone();
        }
        let (mut a, mut b) = (GaussianRational::zero(), GaussianRational::zero());
        for (m, c) in restricted.terms() {
            let mut term = GaussianRational::real(c.clone());
            for &(v, e) in m.pairs() {
                if v != y {
                    term = &term * &point[v].pow(e);
                }
            }
            if m.exponent(y) == 1 {
                a = &a + &term;
            } else {
                b = &b + &term;
            }
        }
        if a.is_zero() {
            return Trial::Nothing;
        }
        let root = -&(&b / &a);
        if !root.in_upper_half_plane() {
            return Trial::Nothing;
        }
        hpoint.insert(y, root);
        Trial::Zero(ZeroCertificate { real_substitutions: subs, hpoint })
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Randomized search for a zero of `p` in the upper half-plane. Every trial
/// has its own stream derived from `(seed, trial)`, so the result depends
/// only on the inputs. Variables that do not occur in `p` are reported as
/// real substitutions by 0. Returns the first certificate; failing that, the
/// first rootedness violation; failing that, `NotFound`.
pub fn falsify(p: &Polynomial, trials: u64, seed: u64) -> Result<FalsifyOutcome> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let vars = p.support();
    if vars.is_empty() {
        return Ok(FalsifyOutcome::NotFound { trials });
    }
    let affine_vars = vars.iter().copied().filter(|&v| p.degree_in(v) == 1).collect();
    let prober = Prober { p, vars, affine_vars };
    let mut violation = None;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let outcome = match trial % 3 {
            0 => prober.affine(&mut rng),
            1 => prober.axis(&mut rng),
            _ => prober.line(&mut rng),
        };
        match outcome {
            Trial::Zero(mut certificate) => {
                for v in 0..p.nvars() {
                    if !certificate.hpoint.contains_key(&v) {
                        certificate.real_substitutions.entry(v).or_insert_with(Rational::zero);
                    }
                }
                debug_assert_eq!(verify_certificate(p, &certificate), Ok(true));
                return Ok(FalsifyOutcome::Certificate { trial, certificate });
            }
            Trial::Violation(w) if violation.is_none() => violation = Some((trial, w)),
            _ => {}
        }
    }
    Ok(match violation {
        Some((trial, witness)) => FalsifyOutcome::RealRootednessViolation { trial, witness },
        None => FalsifyOutcome::NotFound { trials },
    })
}

/// Exact check: the two variable sets partition `0..nvars`, every H-point
/// coordinate has positive imaginary part, the substituted polynomial is not
/// identically zero, and it vanishes at the H-point.
pub fn verify_certificate(p: &Polynomial, cert: &ZeroCertificate) -> Result<bool> {
    let n = p.nvars();
    for v in 0..n {
        let count = usize::from(cert.real_substitutions.contains_key(&v)) + usize::from(cert.hpoint.contains_key(&v));
        if count != 1 {
            return Err(Error::VariableMismatch(format!("variable x{} is assigned {count} times", v + 1)));
        }
    }
    if let Some(&v) = cert.real_substitutions.keys().chain(cert.hpoint.keys()).find(|&&v| v >= n) {
        return Err(Error::VariableMismatch(format!("x{} is not a variable of the polynomial", v + 1)));
    }
    if !cert.hpoint.values().all(GaussianRational::in_upper_half_plane) {
        return Ok(false);
    }
    let restricted = p.substitute_values(&cert.real_substitutions);
    if restricted.is_zero() {
        return Ok(false);
    }
    let mut point = vec![GaussianRational::zero(); n];
    for (&v, z) in &cert.hpoint {
        point[v] = z.clone();
    }
    Ok(restricted.eval_complex(&point).is_zero())
}

/// Exact check of a rootedness witness: the direction is nonnegative and
/// nonzero and the recomputed restriction is nonzero and not real-rooted.
pub fn verify_witness(p: &Polynomial, w: &RootednessWitness) -> bool {
    let n = p.nvars();
    if w.base.keys().chain(w.direction.keys()).any(|&v| v >= n)
        || w.direction.values().any(Signed::is_negative)
        || w.direction.values().all(Zero::is_zero)
    {
        return false;
    }
    let base: Vec<Rational> = (0..n).map(|v| w.base.get(&v).cloned().unwrap_or_else(Rational::zero)).collect();
    let dir: Vec<Rational> = (0..n).map(|v| w.direction.get(&v).cloned().unwrap_or_else(Rational::zero)).collect();
    let q = p.restrict_line(&base, &dir);
    !q.is_zero() && !is_real_rooted(&q)
}

/// Discriminant, as a quadratic form in `x1, x2, x3`, of the weighted `K4`
/// polynomial viewed as a quadratic in the apex variable, where the apex
/// edges have weight 1 and `e_i` is the weight of the edge opposite vertex
/// `i`.
pub fn k4_discriminant(e1: &Rational, e2: &Rational, e3: &Rational) -> Result<Polynomial> {
    if let Some(bad) = [e1, e2, e3].into_iter().find(|e| !e.is_positive()) {
        return Err(Error::NonpositiveWeight(crate::rational::format_rational(bad)));
    }
    let x = |i: usize| Polynomial::var(3, i);
    let c = |r: &Rational| Polynomial::constant(3, r.clone());
    let linear = &(&(&x(0) * &c(&(e2 + e3))) + &(&x(1) * &c(&(e1 + e3)))) + &(&x(2) * &c(&(e1 + e2)));
    let sum = &(&x(0) + &x(1)) + &x(2);
    let weighted = &(&(&x(0) * &c(&(e2 * e3))) + &(&x(1) * &c(&(e1 * e3)))) + &(&x(2) * &c(&(e1 * e2)));
    Ok(&linear.pow(2) - &(&(&sum * &weighted) * &c(&int(4))))
}

/// The point `x_i = 1 / (e_{i+1} - e_{i+2})` at which the discriminant is
/// `-3` for pairwise distinct weights.
pub fn k4_witness_point(e: [&Rational; 3]) -> Option<[Rational; 3]> {
    let d = |i: usize| e[(i + 1) % 3] - e[(i + 2) % 3];
    if (0..3).any(|i| d(i).is_zero()) {
        return None;
    }
    Some([d(0).recip(), d(1).recip(), d(2).recip()])
}

/// Upper-half-plane zero of the star form at a mixed-sign centre, as a
/// certificate for `sum_t w(center, t) x_t` over `n` variables.
pub fn mixed_sign_certificate(cert: &crate::graph::MixedSignCertificate, n: usize) -> ZeroCertificate {
    let point = cert.zero_point(n);
    let (u1, u2) = (cert.pos_edge.vertex, cert.neg_edge.vertex);
    let hpoint = [u1, u2].into_iter().map(|v| (v, point[v].clone())).collect();
    let real_substitutions = (0..n).filter(|&v| v != u1 && v != u2).map(|v| (v, Rational::zero())).collect();
    ZeroCertificate { real_substitutions, hpoint }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixtures;
    use crate::poly::parse_polynomial;
    use crate::span::vertex_span_poly;

    fn q(n: i64, d: i64) -> Rational {
        ratio(n, d)
    }

    fn house_certificate() -> ZeroCertificate {
        ZeroCertificate {
            real_substitutions: BTreeMap::from([(2, int(1)), (3, int(1))]),
            hpoint: BTreeMap::from([
                (0, GaussianRational::i()),
                (1, GaussianRational::new(q(-3, 5), q(1, 5))),
            ]),
        }
    }

    #[test]
    fn house_case_certificate() {
        let p = parse_polynomial("x2*(2*x1+1)+x1+1").unwrap().with_nvars(4);
        assert_eq!(verify_certificate(&p, &house_certificate()), Ok(true));
        let mut bad = house_certificate();
        bad.hpoint.get_mut(&1).unwrap().im = q(-1, 5);
        assert_eq!(verify_certificate(&p, &bad), Ok(false));
        bad.hpoint.remove(&1);
        assert!(matches!(verify_certificate(&p, &bad), Err(Error::VariableMismatch(_))));
    }

    #[test]
    fn normalized_c4_certificate_needs_relabelling() {
        // 2 x2 x3 + x1 x2 + x3 x4 + x1 x4 with x1 = x4 = 1 and x3 in the role
        // that x1 plays above.
        let p = parse_polynomial("2*x2*x3 + x1*x2 + x3*x4 + x1*x4").unwrap();
        let cert = ZeroCertificate {
            real_substitutions: BTreeMap::from([(0, int(1)), (3, int(1))]),
            hpoint: BTreeMap::from([
                (2, GaussianRational::i()),
                (1, GaussianRational::new(q(-3, 5), q(1, 5))),
            ]),
        };
        assert_eq!(verify_certificate(&p, &cert), Ok(true));
        assert_eq!(verify_certificate(&p, &house_certificate()), Ok(false));
    }

    #[test]
    fn identically_zero_restriction_is_not_a_certificate() {
        let p = parse_polynomial("x1*x2").unwrap();
        let cert = ZeroCertificate {
            real_substitutions: BTreeMap::from([(0, int(0))]),
            hpoint: BTreeMap::from([(1, GaussianRational::i())]),
        };
        assert_eq!(verify_certificate(&p, &cert), Ok(false));
    }

    #[test]
    fn cycle_of_five_is_falsified() {
        let p = vertex_span_poly(&fixtures::cycle(5)).unwrap();
        let FalsifyOutcome::Certificate { certificate, .. } = falsify(&p, 10_000, 0).unwrap() else { panic!() };
        assert_eq!(verify_certificate(&p, &certificate), Ok(true));
    }

    #[test]
    fn stable_products_survive() {
        let p = parse_polynomial("(x1+x3)*(x2+x4)").unwrap();
        assert_eq!(falsify(&p, 600, 0).unwrap(), FalsifyOutcome::NotFound { trials: 600 });
        assert_eq!(falsify(&Polynomial::zero(2), 5, 0), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn univariate_quadratic_root() {
        // t^2 + 1 at t = i.
        let p = parse_polynomial("x1^2 + 1").unwrap();
        let FalsifyOutcome::Certificate { certificate, .. } = falsify(&p, 10, 0).unwrap() else { panic!() };
        assert_eq!(certificate.hpoint[&0], GaussianRational::i());
    }

    #[test]
    fn cubic_without_real_roots_gives_witness() {
        // t^3 - 2 t^2 + 3 t: roots 0 and 1 +- i sqrt 2, not rational.
        let p = parse_polynomial("x1^3 - 2*x1^2 + 3*x1").unwrap();
        let FalsifyOutcome::RealRootednessViolation { witness, .. } = falsify(&p, 9, 0).unwrap() else { panic!() };
        assert!(verify_witness(&p, &witness));
        assert_eq!(witness.real_roots, 1);
    }

    #[test]
    fn falsify_is_deterministic() {
        let p = vertex_span_poly(&fixtures::house()).unwrap();
        assert_eq!(falsify(&p, 3000, 4).unwrap(), falsify(&p, 3000, 4).unwrap());
    }

    #[test]
    fn discriminant_values() {
        let d = k4_discriminant(&int(1), &int(2), &int(3)).unwrap();
        assert_eq!(d.eval_rational(&[int(-1), q(1, 2), int(-1)]), int(-3));
        let pt = k4_witness_point([&int(1), &int(2), &int(3)]).unwrap();
        assert_eq!(pt, [int(-1), q(1, 2), int(-1)]);
        assert!(k4_discriminant(&int(1), &int(1), &int(1)).unwrap().is_zero());
        assert_eq!(k4_discriminant(&int(1), &int(0), &int(1)), Err(Error::NonpositiveWeight("0".into())));
        let d = k4_discriminant(&int(1), &int(1), &int(2)).unwrap();
        for a in -3..=3 {
            for b in -3..=3 {
                for c in -3..=3 {
                    assert!(!d.eval_rational(&[int(a), int(b), int(c)]).is_negative());
                }
            }
        }
    }

    #[test]
    fn discriminant_matches_apex_quadratic() {
        // Expand the weighted K4 polynomial in the apex variable x4 and take
        // B^2 - 4AC of its coefficients.
        let e = [q(1, 2), int(2), int(3)];
        let p = vertex_span_poly(&fixtures::k4_apex(e.clone())).unwrap();
        let mut coeff = [Polynomial::zero(3), Polynomial::zero(3), Polynomial::zero(3)];
        for (m, c) in p.terms() {
            let k = m.exponent(3) as usize;
            let rest = crate::poly::Monomial::from_pairs(m.pairs().iter().copied().filter(|&(v, _)| v != 3));
            coeff[k].add_term(rest, c.clone());
        }
        let disc = &coeff[1].pow(2) - &(&(&coeff[2] * &coeff[0]) * &Polynomial::constant(3, int(4)));
        assert_eq!(disc, k4_discriminant(&e[0], &e[1], &e[2]).unwrap());
    }

    #[test]
    fn certificate_json_roundtrip() {
        let json = serde_json::to_value(house_certificate()).unwrap();
        assert_eq!(json["substitutions"]["x3"], "1");
        assert_eq!(json["hpoint"]["x2"]["re"], "-3/5");
        let back: ZeroCertificate = serde_json::from_value(json).unwrap();
        assert_eq!(back, house_certificate());
    }
}
