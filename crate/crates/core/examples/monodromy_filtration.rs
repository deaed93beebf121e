//! The monodromy filtration of Sp_3 of a character and its graded pieces.
//!
//! cargo run --example monodromy_filtration

use wdrep::{FieldCtx, WDRep};

fn main() -> wdrep::Result<()> {
    let e = FieldCtx::new(1, 2)?;
    let rep = WDRep::sp(3, &WDRep::character(&e, 1, e.int(-1)))?;
    println!("F =\n{}N =\n{}", rep.frobenius(), rep.monodromy());

    let fil = rep.monodromy_filtration()?;
    for k in fil.range() {
        println!("dim M_{k} = {}", fil.step(k).dim());
    }
    for g in &fil.gradings {
        println!("gr_{}: dim {}, F = {}", g.k, g.dim(), g.frobenius.get(0, 0));
    }
    // N induces gr_2 -> gr_0 -> gr_-2
    if let Some(m) = fil.induced_map(2, 0, rep.monodromy()) {
        print!("N: gr_2 -> gr_0 =\n{m}");
    }
    Ok(())
}
