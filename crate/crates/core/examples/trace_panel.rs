//! Trace panels tr(sigma^a phi^b) and their twist-invariant normalisation.
//!
//! cargo run --example trace_panel

use wdrep::{FieldCtx, WDRep};

fn main() -> wdrep::Result<()> {
    let e = FieldCtx::new(1, 2)?;
    let rep = WDRep::sp(2, &WDRep::trivial(&e, 1))?;
    for entry in rep.trace_panel(3)? {
        println!("tr(sigma^{} phi^{}) = {}", entry.a, entry.b, entry.value);
    }
    let a = rep.normalized_trace_panel(3)?;
    let b = rep.twist_psi(7).normalized_trace_panel(3)?;
    println!("normalised panel unchanged by psi^7: {}", a == b);
    Ok(())
}
