use stokern::{
    density_from_kernel, shape_distance, simulate, KernelRepresentation,
    LaurentMatrix, LaurentPolynomial, LtiProcessModel, Rational, SimConfig,
};

#[test]
fn readme_snippet() -> Result<(), Box<dyn std::error::Error>> {
    let r = LaurentPolynomial::from_coefficients(
        0,
        vec![Rational::new((-1).into(), 2.into()), Rational::from_integer(1.into())],
    );
    let k = KernelRepresentation::new(LaurentMatrix::from_rows(vec![vec![r]])?)?;
    let p = LtiProcessModel::from_kernel(k);
    let w = simulate(&p, &SimConfig::new(4096, 7))?;
    let d = density_from_kernel(p.kernel())?;
    let gap = shape_distance(&d, &d, 1024)?;
    assert_eq!(gap, 0.0);
    assert_eq!(w.len(), 4096);
    Ok(())
}
