use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::structure::{factor_xn_minus_1, Factor, ProblemInstance};
use crate::{BasePoly, CyclicElement};

use super::{IdempotentKind, IdempotentRecord, Method, Params};

/// The primitive idempotent attached to the irreducible factor `f` of
/// `x^n - 1`: `e = P h mod (x^n - 1)` with `P = (x^n - 1)/f` and `h` the
/// inverse of `P` modulo `f`. Then `e = 1 (mod f)` and `e = 0` modulo every
/// other irreducible factor.
pub fn euclid_idempotent(f: &BasePoly, n: usize) -> Result<CyclicElement> {
    let field = *f.field();
    if f.degree().is_none_or(|d| d == 0) {
        return Err(Error::precondition(
            "euclid_idempotent",
            "factor must have positive degree",
        ));
    }
    let (cofactor, rem) = Poly::x_pow_minus_one(field, n).divrem(f)?;
    if !rem.is_zero() {
        return Err(Error::precondition(
            "euclid_idempotent",
            format!("{f} does not divide x^{n} - 1"),
        ));
    }
    let (g, u, _) = cofactor.extended_gcd(f)?;
    if g.degree() != Some(0) {
        return Err(Error::InvariantViolation(format!(
            "(x^{n} - 1)/f is not coprime to f = {f}; x^n - 1 is not squarefree"
        )));
    }
    let h = u.divrem(f)?.1;
    debug_assert!(h.degree() < f.degree());
    Ok(CyclicElement::reduce(&(&cofactor * &h), n))
}

/// One idempotent per factor, labelled by the factor's divisor and coset
/// representative, in factor order.
pub fn idempotents_from_factors(factors: &[Factor], n: usize) -> Result<Vec<IdempotentRecord>> {
    factors
        .iter()
        .map(|f| {
            Ok(IdempotentRecord {
                value: euclid_idempotent(&f.poly, n)?,
                label: format!("euclid:{},{}", f.divisor, f.rep),
                kind: IdempotentKind::Generic,
                params: Some(Params::Factor {
                    d: f.divisor,
                    rep: f.rep,
                }),
                method: Method::Euclid,
            })
        })
        .collect()
}

/// The oracle set: [`euclid_idempotent`] over the full factorization of
/// `x^n - 1`.
pub fn all_idempotents_euclid(instance: &ProblemInstance) -> Result<Vec<IdempotentRecord>> {
    let factors = factor_xn_minus_1(instance)?;
    idempotents_from_factors(&factors, instance.n() as usize)
}
