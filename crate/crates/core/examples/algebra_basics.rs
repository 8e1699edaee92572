//! Clifford arithmetic in R_{0,3} (m = 1) with exact rationals.
//!
//! Run with `cargo run --example algebra_basics`.

use cliffordian::{Blade, Multivector, Paravector, Rational, Result, Scalar};

pub fn run_example() -> Result<()> {
    let m = 1;
    let e1 = Multivector::<Rational>::generator(m, 1);
    let e2 = Multivector::<Rational>::generator(m, 2);

    // generators square to -1 and anticommute
    println!("e1 e1 = {}", &e1 * &e1);
    println!("e1 e2 = {}, e2 e1 = {}", &e1 * &e2, &e2 * &e1);
    println!("e1 e2 e3 = {}", &(&e1 * &e2) * &Multivector::generator(m, 3));

    let x = Paravector::new(vec![
        Rational::ratio(1, 2),
        Rational::from_int(2),
        Rational::ratio(-1, 3),
        Rational::from_int(0),
    ])?;
    let inv = x.inverse()?;
    println!("x = {}", x.to_multivector());
    println!("x^-1 = {}", inv.to_multivector());
    println!("x x^-1 = {}", &x.to_multivector() * &inv.to_multivector());

    // |x a|^2 = |x|^2 |a|^2 for a paravector x and any multivector a
    let mut a = Multivector::zero(m);
    a.set(Blade::parse("e12", m)?, Rational::ratio(3, 4));
    a.set(Blade::parse("e3", m)?, Rational::from_int(-1));
    a.set(Blade::SCALAR, Rational::from_int(2));
    let xa = &x.to_multivector() * &a;
    println!("|x a|^2 = {}  |x|^2 |a|^2 = {}", xa.norm_sqr(), x.norm_sqr() * a.norm_sqr());

    let json = serde_json::to_string(&a).expect("serializable");
    println!("document: {json}");
    let back: Multivector<Rational> = serde_json::from_str(&json).expect("round trip");
    assert_eq!(back, a);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
