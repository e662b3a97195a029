//! Exact sparse multivariate polynomials over the rationals.
//!
//! Variables are indexed from 0; the text form names variable `i` as
//! `x{i+1}` so that vertex `1` of a graph file maps to `x1`.

mod gaussian;
mod linear;
mod text;
mod univariate;

pub use gaussian::GaussianRational;
pub use linear::LinearForm;
pub use text::parse_polynomial;
pub use univariate::{is_real_rooted, sturm_sequence, UniPoly};

use crate::rational::{one, Rational};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A monomial stored as sorted `(variable, exponent)` pairs with positive
/// exponents only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: usize) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary pairs; zero exponents are dropped and
    /// repeated variables are merged.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *acc.entry(v).or_insert(0) += e;
            }
        }
        Monomial(acc.into_iter().collect())
    }

    pub fn pairs(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0
            .binary_search_by_key(&var, |&(v, _)| v)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let d = other.0[j].1;
                j += 1;
                match e.cmp(&d) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - d)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// The monomial with `var` removed, and the exponent it had.
    fn split_var(&self, var: usize) -> (Monomial, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|&&(v, x)| {
                if v == var {
                    e = x;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (Monomial(rest), e)
    }
}

/// Pure lexicographic order with `x1 > x2 > ...`; a monomial order, so exact
/// division by leading terms is sound.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let mut i = 0;
        loop {
            match (a.get(i), b.get(i)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        return if va < vb { Ordering::Greater } else { Ordering::Less };
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
            }
            i += 1;
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars, self)
    }
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, one())
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut p = Self::zero(nvars.max(v + 1));
        p.add_term(Monomial::var(v), one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Accumulates `c * m`, keeping the no-zero-coefficient invariant.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        if let Some(v) = m.max_var() {
            self.nvars = self.nvars.max(v + 1);
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Same polynomial viewed in a ring with at least `nvars` variables.
    pub fn with_nvars(mut self, nvars: usize) -> Self {
        self.nvars = self.nvars.max(nvars);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    /// Variables that occur with positive exponent in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut vars: Vec<usize> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(v, _)| v))
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (k, v) in &self.terms {
            out.add_term(k.mul(m), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when `divisor` does not
    /// divide `self` in the polynomial ring.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lead_m, lead_c) = divisor.leading_term()?;
        let nvars = self.nvars.max(divisor.nvars);
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lead_m)?;
            let qc = c / lead_c;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot.with_nvars(nvars))
    }

    /// Replaces `var` by a linear form.
    pub fn substitute_linear(&self, var: usize, form: &LinearForm) -> Polynomial {
        let image = form.to_polynomial(self.nvars);
        self.substitute(var, &image)
    }

    /// Replaces `var` by an arbitrary polynomial.
    pub fn substitute(&self, var: usize, image: &Polynomial) -> Polynomial {
        let nvars = self.nvars.max(image.nvars);
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(nvars)];
        let mut out = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let (rest, e) = m.split_var(var);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * image;
                powers.push(next);
            }
            out = &out + &powers[e as usize].mul_monomial(&rest, c);
        }
        out.with_nvars(nvars)
    }

    /// Renames variable `v` to `map[v]` in a ring with `nvars` variables.
    pub fn rename_vars(&self, map: &[usize], nvars: usize) -> Polynomial {
        Polynomial::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| (Monomial::from_pairs(m.pairs().iter().map(|&(v, e)| (map[v], e))), c.clone())),
        )
    }

    /// Substitutes rational values for the given variables.
    pub fn substitute_values(&self, values: &BTreeMap<usize, Rational>) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Vec::new();
            for &(v, e) in m.pairs() {
                match values.get(&v) {
                    Some(val) => coef *= num_traits::pow(val.clone(), e as usize),
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial(rest), coef);
        }
        out
    }

    /// Exact evaluation at a point of Gaussian rationals.
    pub fn eval_complex(&self, point: &[GaussianRational]) -> GaussianRational {
        assert!(point.len() >= self.nvars, "point has {} coordinates, need {}", point.len(), self.nvars);
        let mut total = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut term = GaussianRational::real(c.clone());
            for &(v, e) in m.pairs() {
                term = &term * &point[v].pow(e);
            }
            total = &total + &term;
        }
        total
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Rational {
        assert!(point.len() >= self.nvars);
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m.pairs() {
                term *= num_traits::pow(point[v].clone(), e as usize);
            }
            total += term;
        }
        total
    }

    /// Fixes every variable except `free` to the value in `assignment` and
    /// returns the univariate polynomial in `free`.
    pub fn restrict_univariate(&self, assignment: &BTreeMap<usize, Rational>, free: usize) -> UniPoly {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut deg = 0usize;
            for &(v, e) in m.pairs() {
                if v == free {
                    deg = e as usize;
                } else {
                    let val = assignment
                        .get(&v)
                        .unwrap_or_else(|| panic!("no value for variable x{}", v + 1));
                    coef *= num_traits::pow(val.clone(), e as usize);
                }
            }
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, Rational::zero());
            }
            coeffs[deg] += coef;
        }
        UniPoly::new(coeffs)
    }

    /// Univariate polynomial in `t` obtained by `x_v = base_v + t * dir_v`.
    pub fn restrict_line(&self, base: &[Rational], direction: &[Rational]) -> UniPoly {
        let mut total = UniPoly::zero();
        for (m, c) in &self.terms {
            let mut term = UniPoly::constant(c.clone());
            for &(v, e) in m.pairs() {
                let lin = UniPoly::new(vec![base[v].clone(), direction[v].clone()]);
                for _ in 0..e {
                    term = &term * &lin;
                }
            }
            total = &total + &term;
        }
        total
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn content(&self) -> Rational {
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            Rational::zero()
        } else {
            Rational::new(num, den)
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone().with_nvars(rhs.nvars);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone().with_nvars(rhs.nvars);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars.max(rhs.nvars));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub fn poly_add(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p + q
}

pub fn poly_mul(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p * q
}

pub fn poly_scale(p: &Polynomial, c: &Rational) -> Polynomial {
    p.scale(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn x(v: usize) -> Polynomial {
        Polynomial::var(4, v)
    }

    #[test]
    fn product_of_two_sums_expands() {
        // (x1+x3)(x2+x4)
        let p = &(&x(0) + &x(2)) * &(&x(1) + &x(3));
        assert_eq!(p.to_string(), "x1*x2 + x1*x4 + x2*x3 + x3*x4");
        assert!(p.is_homogeneous());
        assert_eq!(p.total_degree(), Some(2));
    }

    #[test]
    fn identities() {
        let p = parse_polynomial("3/2*x1^2*x3 + x2 - 7").unwrap();
        assert_eq!(&p + &Polynomial::zero(3), p);
        assert_eq!(p.scale(&int(1)), p);
        assert!(p.scale(&int(0)).is_zero());
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn lex_order_leading_term() {
        let p = parse_polynomial("x2^5 + x1*x3 + 4").unwrap();
        let (m, _) = p.leading_term().unwrap();
        assert_eq!(*m, Monomial::from_pairs([(0, 1), (2, 1)]));
    }

    #[test]
    fn substitution_examples() {
        let p = parse_polynomial("x1*x2").unwrap().with_nvars(3);
        let shifted = p.substitute_linear(0, &LinearForm::from_pairs([(0, int(1)), (2, int(1))]));
        assert_eq!(shifted, parse_polynomial("x1*x2 + x2*x3").unwrap());

        let sq = parse_polynomial("x1^2").unwrap();
        let scaled = sq.substitute_linear(0, &LinearForm::from_pairs([(0, int(2))]));
        assert_eq!(scaled, parse_polynomial("4*x1^2").unwrap());

        let c4 = parse_polynomial("(x1+x3)*(x2+x4)").unwrap();
        let cut = c4.substitute_linear(3, &LinearForm::constant_form(int(0)));
        assert_eq!(cut, parse_polynomial("x1*x2 + x2*x3").unwrap().with_nvars(4));
    }

    #[test]
    fn restriction_example() {
        let c4 = parse_polynomial("(x1+x3)*(x2+x4)").unwrap();
        let fixed: BTreeMap<usize, Rational> = [(1, int(1)), (2, int(2)), (3, int(3))].into();
        let q = c4.restrict_univariate(&fixed, 0);
        assert_eq!(q, UniPoly::new(vec![int(8), int(4)]));
    }

    #[test]
    fn house_case_root_is_exact() {
        let p = parse_polynomial("x2*(2*x1+1) + x1 + 1").unwrap();
        let point = [GaussianRational::new(int(0), int(1)), GaussianRational::new(ratio(-3, 5), ratio(1, 5))];
        assert!(p.eval_complex(&point).is_zero());
    }

    #[test]
    fn eval_at_origin_is_constant_term() {
        let p = parse_polynomial("x1*x2 - 5/3 + x3^4").unwrap();
        let origin = vec![GaussianRational::zero(); 3];
        assert_eq!(p.eval_complex(&origin), GaussianRational::real(ratio(-5, 3)));
        let lin = parse_polynomial("x1 + x2").unwrap();
        let i = GaussianRational::i();
        assert_eq!(lin.eval_complex(&[i.clone(), i]), GaussianRational::new(int(0), int(2)));
    }

    #[test]
    fn exact_division() {
        let a = parse_polynomial("x1 + x2").unwrap();
        let b = parse_polynomial("x1 - 2*x3 + 1/2").unwrap();
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b.clone().with_nvars(3));
        assert_eq!(prod.div_exact(&b).unwrap(), a.with_nvars(3));
        let not_divisible = parse_polynomial("x1^2 + 1").unwrap();
        assert!(not_divisible.div_exact(&parse_polynomial("x1 + 1").unwrap()).is_none());
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -4i64..=4, 1i64..4), 0..5).prop_map(|ts| {
            Polynomial::from_terms(
                3,
                ts.into_iter()
                    .map(|(a, b, c, n, d)| (Monomial::from_pairs([(0, a), (1, b), (2, c)]), ratio(n, d))),
            )
        })
    }

    fn gauss() -> impl Strategy<Value = GaussianRational> {
        (-5i64..=5, 1i64..4, -5i64..=5, 1i64..4).prop_map(|(a, b, c, d)| GaussianRational::new(ratio(a, b), ratio(c, d)))
    }

    proptest! {
        #[test]
        fn ring_axioms(p in small_poly(), q in small_poly(), r in small_poly()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p + &q, &q + &p);
        }

        #[test]
        fn identity_substitution(p in small_poly(), v in 0usize..3) {
            prop_assert_eq!(p.substitute_linear(v, &LinearForm::from_pairs([(v, int(1))])), p);
        }

        #[test]
        fn evaluation_is_a_ring_map(p in small_poly(), q in small_poly(), z in prop::collection::vec(gauss(), 3)) {
            let (pv, qv) = (p.eval_complex(&z), q.eval_complex(&z));
            prop_assert_eq!((&p * &q).eval_complex(&z), &pv * &qv);
            prop_assert_eq!((&p + &q).eval_complex(&z), &pv + &qv);
        }

        #[test]
        fn division_inverts_multiplication(p in small_poly(), q in small_poly()) {
            prop_assume!(!q.is_zero());
            let prod = &p * &q;
            prop_assert_eq!(prod.div_exact(&q).unwrap(), p.with_nvars(3));
        }
    }
}
