//! The first-order deformation algebra B = E ⊕ m with m² = 0, its
//! logarithmic derivative and its logarithm and exponential.

use linv::deformation::{b_exp, b_log, dlog, kahler_d, DeformationContext, DeformationElement};
use linv::padic::Field;
use linv::Result;

fn main() -> Result<()> {
    let field = Field::rationals(7, 20)?;
    let ctx = DeformationContext::new(field.clone(), 2)?;
    let (e1, e2) = (ctx.basis(0), ctx.basis(1));

    let a = DeformationElement::new(field.from_int(3), e1.scale(&field.from_int(2))?)?;
    let b = DeformationElement::new(field.from_int(5), e2.clone())?;
    println!("a = {a}");
    println!("b = {b}");
    println!("a * b = {}", a.try_mul(&b)?);
    println!("a / b = {}", a.try_div(&b)?);
    println!("a^3 = {}", a.pow(3)?);
    println!("d(a) = {}", kahler_d(&a));
    println!("dlog(a * b) = {}", dlog(&a.try_mul(&b)?)?);

    let eps = DeformationElement::new(field.zero(), e1)?;
    println!("eps^2 = {}", eps.try_mul(&eps)?);

    let u = DeformationElement::new(field.from_int(8), e2)?;
    let log_u = b_log(&u)?;
    println!("log(u) = {log_u}");
    println!("exp(log(u)) = {}", b_exp(&log_u)?);
    Ok(())
}
