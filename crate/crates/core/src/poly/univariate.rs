//! Dense univariate polynomials over Q and exact real-rootedness.

use crate::rational::{format_rational, int, Rational};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients in increasing degree order, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|k| k * c).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => UniPoly::zero(),
        }
    }

    /// Euclidean division; panics when dividing by zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1;
            let q = &rem[k] / lead;
            if !q.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    rem[k - d + j] -= &q * c;
                }
            }
            quot[k - d] = q;
            rem.pop();
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn square_free_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    fn sign_at_infinity(&self, positive: bool) -> i32 {
        match (self.leading(), self.degree()) {
            (Some(l), Some(d)) => {
                let s = if l.is_positive() { 1 } else { -1 };
                if positive || d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            _ => 0,
        }
    }

    fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.eval(x);
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let seq = sturm_sequence(self);
        let at_neg: Vec<i32> = seq.iter().map(|p| p.sign_at_infinity(false)).collect();
        let at_pos: Vec<i32> = seq.iter().map(|p| p.sign_at_infinity(true)).collect();
        sign_changes(&at_neg) - sign_changes(&at_pos)
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots_in(&self, lo: &Rational, hi: &Rational) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let seq = sturm_sequence(self);
        let a: Vec<i32> = seq.iter().map(|p| p.sign_at(lo)).collect();
        let b: Vec<i32> = seq.iter().map(|p| p.sign_at(hi)).collect();
        sign_changes(&a).saturating_sub(sign_changes(&b))
    }
}

fn sign_changes(signs: &[i32]) -> usize {
    let nonzero: Vec<i32> = signs.iter().copied().filter(|&s| s != 0).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Sturm chain `p, p', -rem(p, p'), ...`. Every remainder is rescaled by a
/// positive rational (its content) so signs are preserved while the
/// coefficients stay small.
pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![normalize_positive(p), normalize_positive(&p.derivative())];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(normalize_positive(&-&r));
    }
    seq
}

fn normalize_positive(p: &UniPoly) -> UniPoly {
    use num_integer::Integer;
    let mut num = num_bigint::BigInt::zero();
    let mut den = num_bigint::BigInt::one();
    for c in &p.coeffs {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return p.clone();
    }
    p.scale(&Rational::new(den, num))
}

/// True iff every complex root of `p` is real. Zero and constant polynomials
/// count as real-rooted.
pub fn is_real_rooted(p: &UniPoly) -> bool {
    let sf = p.square_free_part();
    match sf.degree() {
        None | Some(0) => true,
        Some(d) => sf.count_real_roots() == d,
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let coef = format_rational(&mag);
            match k {
                0 => f.write_str(&coef)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{coef}*")?;
                    }
                    if k == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coefficient(k) + rhs.coefficient(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coefficient(k) - rhs.coefficient(k)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn from_roots(roots: &[Rational]) -> UniPoly {
        roots.iter().fold(UniPoly::from_ints(&[1]), |acc, r| {
            &acc * &UniPoly::new(vec![-r.clone(), int(1)])
        })
    }

    #[test]
    fn real_rootedness_examples() {
        assert!(is_real_rooted(&UniPoly::from_ints(&[-1, 0, 1])));
        assert!(!is_real_rooted(&UniPoly::from_ints(&[1, 0, 1])));
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let p = UniPoly::from_ints(&[2, -3, 0, 1]);
        assert_eq!(p, from_roots(&[int(1), int(1), int(-2)]));
        assert!(is_real_rooted(&p));
        assert!(is_real_rooted(&UniPoly::zero()));
        assert!(is_real_rooted(&UniPoly::from_ints(&[7])));
    }

    #[test]
    fn sturm_counts() {
        let p = from_roots(&[int(-3), ratio(1, 2), int(4)]);
        assert_eq!(p.count_real_roots(), 3);
        assert_eq!(p.count_roots_in(&int(0), &int(1)), 1);
        assert_eq!(p.count_roots_in(&int(-10), &int(10)), 3);
        let q = &p * &UniPoly::from_ints(&[1, 1, 1]);
        assert_eq!(q.count_real_roots(), 3);
        assert!(!is_real_rooted(&q));
    }

    #[test]
    fn square_free_part_drops_multiplicity() {
        let p = from_roots(&[int(1), int(1), int(1), int(2)]);
        assert_eq!(p.square_free_part().monic(), from_roots(&[int(1), int(2)]));
    }

    fn small() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(-4i64..=4, 1..5).prop_map(|c| UniPoly::from_ints(&c))
    }

    proptest! {
        #[test]
        fn product_rule(p in small(), q in small()) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            prop_assert_eq!(is_real_rooted(&(&p * &q)), is_real_rooted(&p) && is_real_rooted(&q));
        }

        #[test]
        fn polynomials_from_real_roots(roots in prop::collection::vec((-6i64..=6, 1i64..4), 1..6)) {
            let roots: Vec<Rational> = roots.into_iter().map(|(a, b)| ratio(a, b)).collect();
            let p = from_roots(&roots);
            prop_assert!(is_real_rooted(&p));
            let mut distinct = roots.clone();
            distinct.sort();
            distinct.dedup();
            prop_assert_eq!(p.count_real_roots(), distinct.len());
        }

        #[test]
        fn euclidean_division(p in small(), q in small()) {
            prop_assume!(!q.is_zero());
            let (d, r) = p.div_rem(&q);
            prop_assert_eq!(&(&d * &q) + &r, p);
            prop_assert!(r.degree().is_none_or(|rd| rd < q.degree().unwrap() || q.degree() == Some(0) && r.is_zero()));
        }
    }
}
