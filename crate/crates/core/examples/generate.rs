//! Seeded generation of pure representations, written in the JSON wire format.
//!
//! cargo run --example generate -- 17

use wdrep::cli::{gen_pure, GenParams};
use wdrep::wire;

fn main() -> wdrep::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(17);
    let p = GenParams { seed, q: 2, order: 5, n: 5, w: 0, conjugate: true, ..GenParams::default() };
    let g = gen_pure(&p)?;
    eprintln!("blocks:");
    for b in &g.blocks {
        eprintln!("  Sp_{}(orbit {:?}, alpha = {})", b.t, b.base.orbit(), b.base.alpha());
    }
    let doc = wire::envelope(wire::rep_to_json(&g.rep));
    print!("{}", wire::to_text(&doc));

    // the document reads back to the same representation
    let back = wire::rep_from_json(&wire::parse_document(&wire::to_text(&doc))?)?;
    assert_eq!(back, g.rep);
    Ok(())
}
