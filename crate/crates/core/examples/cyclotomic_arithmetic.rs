//! Exact arithmetic in cyclotomic fields and p-adic valuations.

use blockscope::{Cyclotomic, LocalContext};

fn main() -> blockscope::Result<()> {
    // x = z5 + z5^4 = (sqrt 5 - 1)/2 satisfies x^2 + x - 1 = 0.
    let z5 = Cyclotomic::root_of_unity(5, 1);
    let x = z5.add(&z5.galois(4)?);
    let check = x.mul(&x).add(&x).sub(&Cyclotomic::one());
    println!("x = {x}");
    println!("x^2 + x - 1 = {check}");
    println!("x is fixed by complex conjugation: {}", x.conj() == x);

    // Conductors are kept minimal: z6 = -z3^2 lives in Q(z3).
    let z6 = Cyclotomic::root_of_unity(6, 1);
    println!("z6 = {z6}, conductor {}", z6.conductor());

    let sum: Cyclotomic = (0..5).map(|e| Cyclotomic::root_of_unity(5, e)).sum();
    println!("sum of the fifth roots of unity = {sum}");

    let ctx = LocalContext::new(3, 1)?;
    let y = Cyclotomic::one().sub(&Cyclotomic::root_of_unity(3, 1));
    println!("v_3(1 - z3) = {}", ctx.normalized_valuation(&y)?);
    println!("(1 - z3)^-1 = {}", y.inv()?);
    Ok(())
}
