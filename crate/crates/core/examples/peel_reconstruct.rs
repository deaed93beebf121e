//! Recovering the blocks of a pure representation from its constituents alone.
//!
//! cargo run --example peel_reconstruct

use wdrep::structure::{isomorphic, peel, peel_all, reconstruct, SpecialBlock};
use wdrep::{FieldCtx, InducedIrrep};

fn main() -> wdrep::Result<()> {
    let e = FieldCtx::new(1, 3)?;
    let sp3 = SpecialBlock::new(3, InducedIrrep::new(&e, 1, 0, e.s_pow(2))?)?;
    let sp1 = SpecialBlock::new(1, InducedIrrep::new(&e, 1, 0, e.int(-1))?)?;
    let rep = wdrep::structure::assemble(&[sp3, sp1])?;
    let cs = rep.constituents()?;
    println!("{} constituents, pure of weight {:?}", cs.len(), rep.purity()?.weight);

    let (first, rest) = peel(&cs)?;
    println!("first peel: Sp_{} alpha = {}, {} left", first.t, first.base.alpha(), rest.len());
    for b in peel_all(&cs)? {
        println!("block Sp_{} alpha = {}", b.t, b.base.alpha());
    }

    let rebuilt = reconstruct(&cs)?;
    println!("rebuilt is isomorphic: {}", isomorphic(&rebuilt, &rep)?.is_some());
    Ok(())
}
