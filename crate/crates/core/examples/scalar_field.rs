//! Exact arithmetic in Q(zeta_N)(sqrt q) and Weil weights.
//!
//! cargo run --example scalar_field

use wdrep::FieldCtx;

fn main() -> wdrep::Result<()> {
    let e = FieldCtx::new(4, 3)?;
    println!("field Q(zeta_4)(sqrt 3), degree {} over Q(sqrt 3)", e.degree());

    let s = e.s();
    let i = e.zeta(1);
    let x = &(&i + &e.one()) * &s;
    println!("x = (1 + i) s = {x}");
    println!("x^2 = {}", x.pow(2)?);
    println!("1/x = {}", x.inv()?);
    println!("complex conjugate = {}", x.conj());

    // (1 + i) has absolute value sqrt 2, which is not a power of sqrt 3
    println!("weight of x: {:?}", x.weil_weight());
    for k in -2..=2 {
        let y = &i * &e.s_pow(k);
        println!("weight of i s^{k}: {:?}", y.weil_weight());
    }

    // sqrt 2 lies in Q(zeta_8), so that pairing is refused
    match FieldCtx::new(8, 2) {
        Ok(_) => println!("unexpected"),
        Err(err) => println!("N = 8, q = 2: {err}"),
    }
    Ok(())
}
