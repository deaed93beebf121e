//! Frobenius semisimplification of a representation with a unipotent
//! Frobenius part.
//!
//! cargo run --example frobenius_semisimplification

use wdrep::cli::{gen_pure, GenParams};

fn main() -> wdrep::Result<()> {
    let p = GenParams { seed: 5, duplicate_block: true, max_dim: 8, ..GenParams::default() };
    let rep = gen_pure(&p)?.rep;
    println!("F =\n{}", rep.frobenius());
    println!("semisimple: {}", rep.is_frobenius_semisimple()?);

    let ss = rep.frss()?;
    println!("F_ss =\n{}", ss.frobenius());
    println!("semisimple after: {}", ss.is_frobenius_semisimple()?);
    println!("same traces: {}", ss.trace_panel(4)? == rep.trace_panel(4)?);
    Ok(())
}
