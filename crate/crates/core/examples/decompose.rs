//! Decomposition of a scrambled representation into special blocks, with the
//! change of basis that realises it.
//!
//! cargo run --example decompose

use wdrep::cli::{gen_pure, GenParams};
use wdrep::structure::decompose;

fn main() -> wdrep::Result<()> {
    let p = GenParams { seed: 42, q: 3, order: 4, n: 4, w: 1, conjugate: true, ..GenParams::default() };
    let g = gen_pure(&p)?;
    println!("dimension {}", g.rep.dim());

    let dec = decompose(&g.rep, false)?;
    for b in &dec.blocks {
        println!("Sp_{}(orbit {:?}, alpha = {})", b.t, b.base.orbit(), b.base.alpha());
    }
    println!("matches generator: {}", dec.blocks == g.blocks);
    let back = g.rep.conjugate(&dec.basis_inv, &dec.basis);
    println!("P^-1 rep P is the block model: {}", back == dec.model());
    Ok(())
}
