use idemforge::codes::{code_summary, DEFAULT_CODEWORD_BUDGET};
use idemforge::structure::factor_xn_minus_1;
use idemforge::{dispatch, BasePoly, ProblemInstance};

#[test]
fn dimensions_partition_the_ring() {
    for (q, p, k) in [(7, 3, 2), (2, 7, 1), (17, 13, 2), (3, 5, 2)] {
        let inst = ProblemInstance::new(q, p, k).unwrap();
        let recs = dispatch(&inst, &Default::default()).unwrap();
        let total: u64 = recs
            .iter()
            .map(|r| code_summary(r, None).unwrap().dimension)
            .sum();
        assert_eq!(total, inst.n());
    }
}

#[test]
fn generator_divides_and_contains_the_idempotent() {
    let inst = ProblemInstance::new(17, 13, 2).unwrap();
    let recs = dispatch(&inst, &Default::default()).unwrap();
    let field = inst.field();
    let xn = BasePoly::x_pow_minus_one(field, 169);
    let mut dims = Vec::new();
    for r in &recs {
        let s = code_summary(r, None).unwrap();
        let g = BasePoly::new(field, s.generator.clone());
        assert!(xn.divrem(&g).unwrap().1.is_zero());
        assert!(r.value.lift().divrem(&g).unwrap().1.is_zero());
        dims.push(s.dimension);
    }
    dims.sort();
    assert_eq!(dims, vec![1, 6, 6, 78, 78]);
    // the dimension is the degree of the factor the idempotent belongs to
    let mut degrees: Vec<u64> = factor_xn_minus_1(&inst)
        .unwrap()
        .iter()
        .map(|f| f.poly.degree().unwrap() as u64)
        .collect();
    degrees.sort();
    assert_eq!(dims, degrees);
}

#[test]
fn ternary_distances() {
    // ord_13 3 = 3: x - 1 and four cubics
    let inst = ProblemInstance::new(3, 13, 1).unwrap();
    let recs = dispatch(&inst, &Default::default()).unwrap();
    assert_eq!(recs.len(), 5);
    for r in &recs {
        let s = code_summary(r, Some(DEFAULT_CODEWORD_BUDGET)).unwrap();
        let d = s.min_distance.unwrap();
        // Singleton bound
        assert!(d >= 1 && d <= s.n - s.dimension + 1, "{}", s.parameters());
    }
}
