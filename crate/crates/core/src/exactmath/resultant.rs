use super::{AlgebraError, Field, MPoly, UPoly, Var};

/// Determinant by fraction-free Bareiss elimination over `ℚ[vars]`.
pub fn bareiss_determinant(mut m: Vec<Vec<MPoly>>) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::one();
    }
    let mut sign = false;
    let mut prev = MPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return MPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
            m[i][k] = MPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

fn sylvester<T: Clone>(p: &[T], q: &[T], zero: T) -> Vec<Vec<T>> {
    // p, q given highest coefficient first
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        row[i..i + m + 1].clone_from_slice(p);
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        row[i..i + n + 1].clone_from_slice(q);
        rows.push(row);
    }
    rows
}

/// Sylvester resultant of `p` and `q` with respect to `var`.
///
/// Convention: rows of `p` come first and coefficients run from the highest
/// power down, so `Res(X−1, X+1) = 2`.
pub fn resultant(p: &MPoly, q: &MPoly, var: Var) -> Result<MPoly, AlgebraError> {
    if p.is_zero() || q.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if !p.contains(var) && !q.contains(var) {
        return Err(AlgebraError::MissingVariable(var));
    }
    let mut pc = p.coefficients_in(var);
    let mut qc = q.coefficients_in(var);
    let (m, n) = (pc.len() - 1, qc.len() - 1);
    if m == 0 {
        return Ok(p.pow(n as u32));
    }
    if n == 0 {
        return Ok(q.pow(m as u32));
    }
    pc.reverse();
    qc.reverse();
    Ok(bareiss_determinant(sylvester(&pc, &qc, MPoly::zero())))
}

/// Sylvester resultant of univariate polynomials over a field, by Gaussian
/// elimination.
pub fn upoly_resultant<F: Field>(p: &UPoly<F>, q: &UPoly<F>) -> F {
    let (m, n) = match (p.degree(), q.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return F::zero(),
    };
    if m == 0 {
        return pow(&p.coeff(0), n);
    }
    if n == 0 {
        return pow(&q.coeff(0), m);
    }
    let pc: Vec<F> = p.coeffs().iter().rev().cloned().collect();
    let qc: Vec<F> = q.coeffs().iter().rev().cloned().collect();
    let mut a = sylvester(&pc, &qc, F::zero());
    let size = a.len();
    let mut det = F::one();
    for k in 0..size {
        let piv = match (k..size).find(|&r| !a[r][k].is_zero()) {
            Some(r) => r,
            None => return F::zero(),
        };
        if piv != k {
            a.swap(piv, k);
            det = det.neg();
        }
        det = det.mul(&a[k][k]);
        let inv = a[k][k].inv().unwrap();
        for i in k + 1..size {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].mul(&inv);
            for j in k..size {
                a[i][j] = a[i][j].sub(&f.mul(&a[k][j]));
            }
        }
    }
    det
}

fn pow<F: Field>(x: &F, n: usize) -> F {
    (0..n).fold(F::one(), |acc, _| acc.mul(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, Rat};

    fn x() -> MPoly {
        MPoly::var(Var::X)
    }

    #[test]
    fn resultant_examples() {
        let one = MPoly::one();
        assert_eq!(resultant(&(&x() - &one), &(&x() + &one), Var::X).unwrap(), MPoly::int(2));
        assert_eq!(
            resultant(&(&x().pow(2) - &one), &(&x() - &one), Var::X).unwrap(),
            MPoly::zero()
        );
        // Res_Y(Y² − (x³+1), Y − y0) = y0² − x³ − 1 with x ↦ x1, y0 ↦ yt
        let y = MPoly::var(Var::Y);
        let cubic = &MPoly::var(Var::X1).pow(3) + &one;
        let y0 = MPoly::var(Var::Yt);
        let r = resultant(&(&y.pow(2) - &cubic), &(&y - &y0), Var::Y).unwrap();
        assert_eq!(r, &y0.pow(2) - &cubic);
    }

    #[test]
    fn missing_variable() {
        assert_eq!(
            resultant(&MPoly::var(Var::Z), &MPoly::int(3), Var::X),
            Err(AlgebraError::MissingVariable(Var::X))
        );
    }

    #[test]
    fn univariate_matches_multivariate() {
        let p: UPoly<Rat> = UPoly::new(vec![int(3), int(0), int(1), int(2)]);
        let q: UPoly<Rat> = UPoly::new(vec![int(-1), int(5), int(1)]);
        let r1 = upoly_resultant(&p, &q);
        let r2 = resultant(&MPoly::from_upoly(&p, Var::X), &MPoly::from_upoly(&q, Var::X), Var::X)
            .unwrap();
        assert_eq!(MPoly::constant(r1), r2);
    }
}
