//! Minimal polynomials of roots of unity from cyclotomic cosets.

use super::Poly;
use crate::error::{Error, Result};
use crate::gf::{make_field, Embedding, FieldSpec};
use crate::nt;

/// `prod_{j in coset} (x - alpha^j)` over `field`, where `alpha` is the fixed
/// primitive `n`-th root of unity of F_{q^t}, `t = ord_n(q)`.
///
/// The caller supplies the coset; a set that is not closed under
/// multiplication by `q` yields [`Error::SubfieldProjectionFailure`].
pub fn minimal_polynomial<C: AsRef<[u64]> + ?Sized>(
    field: &FieldSpec,
    n: u64,
    coset: &C,
) -> Result<Poly> {
    let q = field.order_u64().ok_or_else(|| {
        Error::CapabilityExceeded(format!("field order {} exceeds 2^64", field.order()))
    })?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let t = nt::mult_order(q, n).ok_or(Error::NotCoprime { a: q, b: n })? as usize;
    let p = field.characteristic();
    let big = make_field(p, field.degree() * t)?;
    let alpha = big.nth_root_of_unity(n)?;
    let emb = Embedding::between(field, &big)?;

    // coefficients of the running product in the extension, ascending
    let mut acc: Vec<Vec<u64>> = vec![big.one()];
    let mut tmp = big.zero();
    for &j in coset.as_ref() {
        let root = big.pow_u64(alpha.coeffs(), j % n);
        let neg_root = big.neg(&root);
        acc.push(big.zero());
        for k in (0..acc.len()).rev() {
            // new[k] = old[k-1] - root * old[k]
            big.mul_into(&acc[k], &neg_root, &mut tmp);
            if k > 0 {
                let prev = acc[k - 1].clone();
                acc[k] = big.add(&tmp, &prev);
            } else {
                acc[k].copy_from_slice(&tmp);
            }
        }
    }
    let coeffs = acc
        .iter()
        .map(|c| emb.project(c).ok_or(Error::SubfieldProjectionFailure))
        .collect::<Result<Vec<_>>>()?;
    Poly::from_coeffs(field, &coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_factors_of_x2_plus_1_over_f5() {
        let f5 = make_field(5, 1).unwrap();
        let a = minimal_polynomial(&f5, 4, &[1]).unwrap();
        let b = minimal_polynomial(&f5, 4, &[3]).unwrap();
        assert_eq!(&a * &b, Poly::x_pow_plus_one(&f5, 2));
        assert!(a.degree() == Some(1) && b.degree() == Some(1));
    }

    #[test]
    fn quadratic_factors_of_x4_plus_1_over_f3() {
        let f3 = make_field(3, 1).unwrap();
        let a = minimal_polynomial(&f3, 8, &[1, 3]).unwrap();
        let b = minimal_polynomial(&f3, 8, &[5, 7]).unwrap();
        assert!(a.is_irreducible() && b.is_irreducible());
        assert_eq!(&a * &b, Poly::x_pow_plus_one(&f3, 4));
    }

    #[test]
    fn extension_base_field() {
        // over F_9, ord_16(9) = 2 and x^8 + 1 splits into four quadratics
        let f9 = make_field(3, 2).unwrap();
        let cosets = [[1u64, 9], [3, 11], [5, 13], [7, 15]];
        let mut prod = Poly::one(&f9);
        for c in &cosets {
            let g = minimal_polynomial(&f9, 16, c).unwrap();
            assert!(g.is_irreducible());
            prod = &prod * &g;
        }
        assert_eq!(prod, Poly::x_pow_plus_one(&f9, 8));
    }

    #[test]
    fn non_coset_is_rejected() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(
            minimal_polynomial(&f3, 8, &[1]).unwrap_err(),
            Error::SubfieldProjectionFailure
        );
        assert!(matches!(
            minimal_polynomial(&f3, 6, &[1]),
            Err(Error::NotCoprime { .. })
        ));
    }
}
