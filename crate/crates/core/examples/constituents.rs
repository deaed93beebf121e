//! Irreducible constituents of the restriction to the Weil group, including
//! induced irreducibles of dimension above one.
//!
//! cargo run --example constituents

use wdrep::irred::orbit_reps;
use wdrep::{FieldCtx, InducedIrrep, WDRep};

fn main() -> wdrep::Result<()> {
    let e = FieldCtx::new(5, 2)?;
    println!("orbits of multiplication by 2 on Z/5: {:?}", orbit_reps(5, 2));

    let big = InducedIrrep::new(&e, 5, 3, e.s())?;
    println!("orbit {:?}, dim {}, weight {:?}", big.orbit(), big.dim(), big.weight());

    let rep = WDRep::sp(2, &WDRep::trivial(&e, 5))?.direct_sum(&big.to_rep())?;
    let cs = rep.constituents()?;
    for (ir, mult) in cs.iter() {
        println!("  orbit {:?} alpha = {} multiplicity {mult}", ir.orbit(), ir.alpha());
    }
    println!("total dimension {}", cs.dim());
    Ok(())
}
