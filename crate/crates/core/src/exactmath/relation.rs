use num_traits::One;

use super::{AlgebraError, MPoly, Monomial, Var};

/// A set of curve equations used as rewriting rules.
///
/// Each relation is monic of degree 2 in its own leading variable, the leading
/// variables are pairwise distinct, and the lower-order part has degree < 2 in
/// every leading variable. Under these conditions rewriting `v² → −lower` is
/// terminating and confluent.
#[derive(Clone, Debug, PartialEq)]
pub struct RingRelation {
    rules: Vec<(Var, MPoly, MPoly)>,
}

impl RingRelation {
    /// Build from `(leading variable, relation polynomial)` pairs.
    pub fn new(relations: Vec<(Var, MPoly)>) -> Result<Self, AlgebraError> {
        let leads: Vec<Var> = relations.iter().map(|(v, _)| *v).collect();
        for (i, v) in leads.iter().enumerate() {
            if leads[..i].contains(v) {
                return Err(AlgebraError::UnsupportedRelation(format!(
                    "leading variable {v} used twice"
                )));
            }
        }
        let mut rules = Vec::new();
        for (v, rel) in relations {
            let coeffs = rel.coefficients_in(v);
            if coeffs.len() != 3 || coeffs[2] != MPoly::one() {
                return Err(AlgebraError::UnsupportedRelation(format!(
                    "{rel} is not monic quadratic in {v}"
                )));
            }
            let lower = &rel - &MPoly::term(One::one(), Monomial::var(v, 2));
            for w in &leads {
                if lower.degree_in(*w).unwrap_or(0) >= 2 {
                    return Err(AlgebraError::UnsupportedRelation(format!(
                        "lower part of {rel} has degree ≥ 2 in {w}"
                    )));
                }
            }
            rules.push((v, rel, -&lower));
        }
        Ok(RingRelation { rules })
    }

    /// The elliptic relation `yt² = xt³ + 1` of the parameter curve.
    pub fn parameter_curve() -> Self {
        let (xt, yt) = (MPoly::var(Var::Xt), MPoly::var(Var::Yt));
        Self::new(vec![(Var::Yt, &yt.pow(2) - &(&xt.pow(3) + &MPoly::one()))])
            .expect("well-formed")
    }

    pub fn relations(&self) -> impl Iterator<Item = (Var, &MPoly)> {
        self.rules.iter().map(|(v, r, _)| (*v, r))
    }

    pub fn leading_vars(&self) -> Vec<Var> {
        self.rules.iter().map(|(v, _, _)| *v).collect()
    }

    /// Normal form: degree < 2 in every leading variable, congruent to `p`
    /// modulo the ideal generated by the relations.
    pub fn reduce(&self, p: &MPoly) -> MPoly {
        let mut cur = p.clone();
        loop {
            let mut changed = false;
            for (v, _, replacement) in &self.rules {
                if cur.degree_in(*v).unwrap_or(0) < 2 {
                    continue;
                }
                changed = true;
                // Horner-style rewrite on the coefficient list in v.
                let mut coeffs = cur.coefficients_in(*v);
                while coeffs.len() > 2 {
                    let top = coeffs.pop().unwrap();
                    let k = coeffs.len() - 1; // top was v^(k+1), becomes v^(k-1)·replacement
                    let shifted = &top * replacement;
                    // replacement has degree ≤ 1 in v
                    let parts = shifted.coefficients_in(*v);
                    for (j, part) in parts.into_iter().enumerate() {
                        let idx = k - 1 + j;
                        coeffs[idx] = &coeffs[idx] + &part;
                    }
                    while coeffs.last().is_some_and(MPoly::is_zero) {
                        coeffs.pop();
                    }
                }
                cur = MPoly::from_coefficients_in(*v, &coeffs);
            }
            if !changed {
                return cur;
            }
        }
    }

    /// Whether `p` vanishes modulo the relations.
    pub fn is_zero_mod(&self, p: &MPoly) -> bool {
        self.reduce(p).is_zero()
    }
}
