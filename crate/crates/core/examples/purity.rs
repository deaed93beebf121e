//! Purity checks: a pure special representation and a mixed sum.
//!
//! cargo run --example purity

use wdrep::{FieldCtx, WDRep};

fn main() -> wdrep::Result<()> {
    let e = FieldCtx::new(3, 2)?;
    let triv = WDRep::trivial(&e, 3);
    let sp2 = WDRep::sp(2, &triv)?;

    let report = sp2.purity()?;
    println!("Sp_2(1): pure = {}, weight = {:?}", report.is_pure, report.weight);
    println!("psi^5 twist: weight = {:?}", sp2.twist_psi(5).purity()?.weight);

    let mixed = sp2.direct_sum(&triv)?;
    let report = mixed.purity()?;
    println!("Sp_2(1) + 1: pure = {}", report.is_pure);
    for v in &report.violations {
        println!("  gr_{} carries eigenvalue {} of weight {}", v.grading, v.eigenvalue, v.observed_weight);
    }
    Ok(())
}
