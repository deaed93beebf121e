//! Deciding whether two pure representations differ by an unramified twist,
//! with a checkable certificate.
//!
//! cargo run --example twist_equivalence

use wdrep::cli::gen::scramble_conjugate;
use wdrep::cli::{gen_pure, GenParams, SplitMix64};
use wdrep::structure::twist_equivalence;
use wdrep::TwistOutcome;

fn main() -> wdrep::Result<()> {
    let p = GenParams { seed: 8, q: 5, order: 3, n: 3, w: -2, ..GenParams::default() };
    let rho1 = gen_pure(&p)?.rep;
    let rho2 = scramble_conjugate(&rho1.twist_psi(3), &mut SplitMix64::new(1));

    match twist_equivalence(&rho1, &rho2)? {
        TwistOutcome::Equivalent(cert) => {
            println!("equivalent with w = {}", cert.w);
            println!("certificate checks: {}", cert.verify(&rho1, &rho2)?);
        }
        TwistOutcome::NotEquivalent(reason) => println!("not equivalent: {reason}"),
    }

    let other = gen_pure(&GenParams { seed: 9, ..p })?.rep;
    match twist_equivalence(&rho1, &other)? {
        TwistOutcome::Equivalent(cert) => println!("seed 9 also equivalent, w = {}", cert.w),
        TwistOutcome::NotEquivalent(reason) => println!("seed 9: {reason}"),
    }
    Ok(())
}
