use crate::cyclic::CyclicRingElement;
use crate::error::{Error, Result};
use crate::field::{primitive_element_nth, root_of_unity_from, ExtensionField, Field, PrimeField};
use crate::ntheory;
use crate::structure::ProblemInstance;
use crate::CyclicElement;

use super::{canonical_order, Choices, IdempotentKind, IdempotentRecord, Method, Params};

/// Which residues [`orbit_representatives`] partitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitDomain {
    /// Residues coprime to the modulus.
    Units,
    /// Every nonzero residue.
    AllNonzero,
}

/// Minimal elements of the orbits of `x -> q x` on the chosen residues mod
/// `modulus`, ascending.
pub fn orbit_representatives(modulus: u64, q: u64, domain: OrbitDomain) -> Vec<u64> {
    let mut seen = vec![false; modulus as usize];
    let mut reps = Vec::new();
    for x in 1..modulus {
        if seen[x as usize] || (domain == OrbitDomain::Units && ntheory::gcd(x, modulus) != 1) {
            continue;
        }
        reps.push(x);
        let mut y = x;
        while !seen[y as usize] {
            seen[y as usize] = true;
            y = ntheory::mul_mod(y, q, modulus);
        }
    }
    reps
}

fn record(
    value: CyclicElement,
    kind: IdempotentKind,
    params: Option<Params>,
    method: Method,
) -> IdempotentRecord {
    let label = match params {
        None => "e_0".to_string(),
        Some(Params::J { j }) => format!("e_j:{j}"),
        Some(Params::SL { s, l }) => format!("e_{{s,l}}:{s},{l}"),
        Some(Params::Factor { d, rep }) => format!("euclid:{d},{rep}"),
    };
    IdempotentRecord {
        value,
        label,
        kind,
        params,
        method,
    }
}

fn unit_sum(field: PrimeField, n: u64) -> Result<CyclicElement> {
    let inv = field.inv(&field.from_u64(n))?;
    CyclicRingElement::from_coeffs(field, vec![inv; n as usize])
}

/// `sum_j c_j x^(stride j)` over `j < count`, in a ring of length `n`.
fn strided<F: Field>(
    field: &F,
    n: u64,
    stride: u64,
    coeffs: impl Iterator<Item = F::Elem>,
) -> Result<CyclicRingElement<F>> {
    let mut out = vec![field.zero(); n as usize];
    for (j, c) in coeffs.enumerate() {
        out[(stride * j as u64) as usize] = c;
    }
    CyclicRingElement::from_coeffs(field.clone(), out)
}

/// `zeta^(-a)` for `a` in `0..order`.
fn inverse_powers<F: Field>(field: &F, zeta: &F::Elem, order: u64) -> Result<Vec<F::Elem>> {
    let zinv = field.inv(zeta)?;
    let mut out = Vec::with_capacity(order as usize);
    let mut acc = field.one();
    for _ in 0..order {
        out.push(acc.clone());
        acc = field.mul(&acc, &zinv);
    }
    Ok(out)
}

/// The fully split ring: for `q = 1 (mod n)`,
/// `e_j = (1/n) sum_l zeta_n^(-jl) x^l` for `0 <= j < n`.
pub fn tap1_idempotents(q: u64, n: u64, choices: &Choices) -> Result<Vec<IdempotentRecord>> {
    let field = PrimeField::new(q)?;
    if n == 0 || q % n != 1 % n {
        return Err(Error::precondition(
            "tap1_idempotents",
            format!("q = {q} is not 1 mod n = {n}"),
        ));
    }
    let g = primitive_element_nth(&field, choices.generator_rank)?;
    let zeta = root_of_unity_from(&field, &g, n)?;
    let table = inverse_powers(&field, &zeta, n)?;
    let inv_n = field.inv(&field.from_u64(n))?;
    let mut out = Vec::with_capacity(n as usize);
    for j in 0..n {
        let coeffs = (0..n)
            .map(|l| field.mul(&inv_n, &table[(j * l % n) as usize]))
            .collect();
        let value = CyclicRingElement::from_coeffs(field, coeffs)?;
        out.push(if j == 0 {
            record(value, IdempotentKind::UnitSum, None, Method::Tap1)
        } else {
            record(
                value,
                IdempotentKind::SecondType,
                Some(Params::J { j }),
                Method::Tap1,
            )
        });
    }
    Ok(out)
}

/// `q` a primitive root mod `p^k`: `e_0 = (1/p^k) sum x^l` and, for
/// `1 <= j <= k`, `e_j = A_(k-j) - A_(k-j+1)` where
/// `A_a = (1/p^a) sum_{l < p^a} x^(p^(k-a) l)` averages over the subgroup of
/// order `p^a`. `e_j` is the idempotent of `Phi_(p^j)`.
pub fn tap2_idempotents(q: u64, p: u64, k: u32) -> Result<Vec<IdempotentRecord>> {
    let field = PrimeField::new(q)?;
    let n = p
        .checked_pow(k)
        .ok_or_else(|| Error::precondition("tap2_idempotents", "p^k overflows"))?;
    let phi = ntheory::totient(n);
    if ntheory::multiplicative_order(q, n)? != phi {
        return Err(Error::precondition(
            "tap2_idempotents",
            format!("q = {q} is not a primitive root mod {n}"),
        ));
    }
    let average = |a: u32| -> Result<CyclicElement> {
        let size = p.pow(a);
        let inv = field.inv(&field.from_u64(size))?;
        strided(
            &field,
            n,
            p.pow(k - a),
            std::iter::repeat_n(inv, size as usize),
        )
    };
    let mut out = vec![record(
        average(k)?,
        IdempotentKind::UnitSum,
        None,
        Method::Tap2,
    )];
    for j in 1..=k {
        let value = average(k - j)?.sub(&average(k - j + 1)?)?;
        out.push(record(
            value,
            IdempotentKind::SecondType,
            Some(Params::J { j: j as u64 }),
            Method::Tap2,
        ));
    }
    Ok(out)
}

fn check_split_supported(instance: &ProblemInstance) -> Result<()> {
    if instance.p() == 2 && instance.q() % 4 == 3 && instance.k() > instance.m() {
        return Err(Error::Unsupported(format!(
            "p = 2 with q = {} = 3 (mod 4) and k = {} > m = {}: Phi_(2^j) does not factor as \
             Phi_(2^m)(x^(2^(j-m))); no closed form covers this case (use --method euclid)",
            instance.q(),
            instance.k(),
            instance.m()
        )));
    }
    Ok(())
}

/// `p | q - 1`, with `p^m || q - 1`:
///
/// * `e_j = (1/p^k) sum_l zeta^(-jl) x^l` for `0 <= j < p^m'`, `m' = min(m, k)`;
/// * for `m < s <= k` and units `l` mod `p^m`,
///   `e_{s,l} = (1/p^(k+m-s)) sum_{j < p^(k-s+m)} zeta^(-lj) x^(p^(s-m) j)`,
///
/// with `zeta` a primitive `p^m'`-th root of unity in `F_q`.
pub fn split_case_idempotents(
    instance: &ProblemInstance,
    choices: &Choices,
) -> Result<Vec<IdempotentRecord>> {
    if instance.t() != 1 {
        return Err(Error::precondition(
            "split_case_idempotents",
            format!("needs p | q - 1, but ord_p q = {}", instance.t()),
        ));
    }
    check_split_supported(instance)?;
    let field = instance.field();
    let (p, k, n) = (instance.p(), instance.k(), instance.n());
    let m = instance.effective_m();
    let pm = p.pow(m);

    let g = primitive_element_nth(&field, choices.generator_rank)?;
    let zeta = root_of_unity_from(&field, &g, pm)?;
    let table = inverse_powers(&field, &zeta, pm)?;

    let mut out = Vec::new();
    let inv_n = field.inv(&field.from_u64(n))?;
    for j in 0..pm {
        let coeffs = (0..n)
            .map(|l| field.mul(&inv_n, &table[(j * l % pm) as usize]))
            .collect();
        let value = CyclicRingElement::from_coeffs(field, coeffs)?;
        out.push(if j == 0 {
            record(value, IdempotentKind::UnitSum, None, Method::SplitCase)
        } else {
            record(
                value,
                IdempotentKind::SecondType,
                Some(Params::J { j }),
                Method::SplitCase,
            )
        });
    }
    for s in m + 1..=k {
        let len = p.pow(k - s + m);
        let scale = field.inv(&field.from_u64(len))?;
        for l in (1..pm).filter(|l| l % p != 0) {
            let coeffs = (0..len).map(|j| field.mul(&scale, &table[(l * j % pm) as usize]));
            let value = strided(&field, n, p.pow(s - m), coeffs)?;
            out.push(record(
                value,
                IdempotentKind::ThirdType,
                Some(Params::SL { s, l }),
                Method::SplitCase,
            ));
        }
    }
    canonical_order(&mut out);
    Ok(out)
}

/// `ord_p q = t > 1` and `p^m || q^t - 1`. Works in `F_{q^t}`, which holds a
/// primitive `p^m'`-th root of unity `zeta` (`m' = min(m, k)`), and pulls the
/// split-case idempotents down with the trace `sigma_1`:
///
/// * `e_0 = (1/p^k) sum x^l`;
/// * `e_j = (1/p^k) sum_l sigma_1(zeta^(-jl)) x^l`, one per orbit of `j -> qj`
///   on the nonzero residues mod `p^m'`;
/// * `e_{s,l} = (1/p^(k+m-s)) sum_j sigma_1(zeta^(-lj)) x^(p^(s-m) j)` for
///   `m < s <= k`, one per orbit of `l -> ql` on the units mod `p^m`.
pub fn general_case_idempotents(
    instance: &ProblemInstance,
    choices: &Choices,
) -> Result<Vec<IdempotentRecord>> {
    let t = instance.t();
    if t < 2 || instance.p() == 2 {
        return Err(Error::precondition(
            "general_case_idempotents",
            format!(
                "needs odd p with ord_p q > 1 (got p = {}, t = {t})",
                instance.p()
            ),
        ));
    }
    let base = instance.field();
    let (p, q, k, n) = (instance.p(), instance.q(), instance.k(), instance.n());
    let m = instance.effective_m();
    let pm = p.pow(m);

    let ext = ExtensionField::with_modulus_rank(q, t as usize, choices.modulus_rank)?;
    let g = primitive_element_nth(&ext, choices.generator_rank)?;
    let zeta = root_of_unity_from(&ext, &g, pm)?;
    let table = inverse_powers(&ext, &zeta, pm)?;
    let descend = |e: CyclicRingElement<ExtensionField>| e.try_map_coeffs(&base, |c| ext.trace(c));

    let mut out = vec![record(
        unit_sum(base, n)?,
        IdempotentKind::UnitSum,
        None,
        Method::GeneralCase,
    )];

    let inv_n = ext.embed(base.inv(&base.from_u64(n))?);
    for j in orbit_representatives(pm, q, OrbitDomain::AllNonzero) {
        let coeffs = (0..n)
            .map(|l| ext.mul(&inv_n, &table[(j * l % pm) as usize]))
            .collect();
        let value = descend(CyclicRingElement::from_coeffs(ext.clone(), coeffs)?)?;
        out.push(record(
            value,
            IdempotentKind::SecondType,
            Some(Params::J { j }),
            Method::GeneralCase,
        ));
    }

    let units = orbit_representatives(pm, q, OrbitDomain::Units);
    for s in m + 1..=k {
        let len = p.pow(k - s + m);
        let scale = ext.embed(base.inv(&base.from_u64(len))?);
        for &l in &units {
            let coeffs = (0..len).map(|j| ext.mul(&scale, &table[(l * j % pm) as usize]));
            let value = descend(strided(&ext, n, p.pow(s - m), coeffs)?)?;
            out.push(record(
                value,
                IdempotentKind::ThirdType,
                Some(Params::SL { s, l }),
                Method::GeneralCase,
            ));
        }
    }
    canonical_order(&mut out);
    Ok(out)
}
