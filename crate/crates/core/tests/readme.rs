//! The README's library example, kept compiling.

use kummerlab::{parse_ratfunc, verify_relative_kummer, FieldSpec, GaloisContext};

#[test]
fn readme_example() -> kummerlab::Result<()> {
    let k = FieldSpec::new(5, 1)?;
    let ctx = GaloisContext::new(2, 2, k)?; // p = 2, l = 2, so q = 4 divides 5 - 1
    let gens = [parse_ratfunc(ctx.field(), "t")?];
    let report = verify_relative_kummer(&ctx, &gens)?;
    assert!(report.verdict);
    assert_eq!(report.jordan_type_module.parts(), &[2]);
    Ok(())
}
