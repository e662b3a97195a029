use super::{Monomial, Polynomial};
use crate::rational::Rational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// `constant + sum_i coefficients[i] * x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LinearForm {
    #[serde(with = "crate::rational::serde_map")]
    pub coefficients: BTreeMap<usize, Rational>,
    #[serde(with = "crate::rational::serde_str")]
    pub constant: Rational,
}

impl LinearForm {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut form = LinearForm::default();
        for (v, c) in pairs {
            form.add(v, &c);
        }
        form
    }

    pub fn constant_form(c: Rational) -> Self {
        LinearForm { coefficients: BTreeMap::new(), constant: c }
    }

    pub fn add(&mut self, var: usize, c: &Rational) {
        let entry = self.coefficients.entry(var).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coefficients.remove(&var);
        }
    }

    pub fn coefficient(&self, var: usize) -> Rational {
        self.coefficients.get(&var).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.constant.is_negative() && self.coefficients.values().all(|c| !c.is_negative())
    }

    pub fn has_positive_coefficient(&self) -> bool {
        self.coefficients.values().any(|c| c.is_positive())
    }

    /// Replaces `x_var` by `image` inside this form.
    pub fn substitute(&self, var: usize, image: &LinearForm) -> LinearForm {
        let Some(c) = self.coefficients.get(&var).cloned() else {
            return self.clone();
        };
        let mut out = self.clone();
        out.coefficients.remove(&var);
        for (v, k) in &image.coefficients {
            out.add(*v, &(k * &c));
        }
        out.constant += &image.constant * &c;
        out
    }

    pub fn to_polynomial(&self, nvars: usize) -> Polynomial {
        let mut p = Polynomial::constant(nvars, self.constant.clone());
        for (v, c) in &self.coefficients {
            p.add_term(Monomial::var(*v), c.clone());
        }
        p
    }
}
