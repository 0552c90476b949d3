//! Characters of Q_p^×: built-ins, products, evaluation, weights,
//! decomposition over B, and the classification of pairs.

use linv::characters::{classify_pair, DeformedCharacter, FieldCharacter};
use linv::deformation::{DeformationContext, DeformationElement};
use linv::literal::parse_field_character;
use linv::padic::Field;
use linv::Result;

fn main() -> Result<()> {
    let field = Field::rationals(5, 20)?;
    let x = FieldCharacter::identity(&field);
    let abs = FieldCharacter::abs(&field);
    let triv = FieldCharacter::trivial(&field);
    let cyclo = x.mul(&abs)?;
    println!("x|x| = {cyclo}");
    println!("wt(x|x|) = {}", cyclo.weight()?);
    println!("wt(x^3) = {}", x.pow(3)?.weight()?);
    println!("x(-75) = {}", x.eval(&field.qp().from_int(-75))?);
    println!("(x|x|)(-75) = {}", cyclo.eval(&field.qp().from_int(-75))?);

    let unramified = parse_field_character(&field, "{at_p:2,teich:0,at_gamma:1}")?;
    for (name, eta) in [("x*abs", cyclo.clone()), ("x*abs*x^2", cyclo.mul(&x.pow(2)?)?), ("x^-1", x.inv()?), ("unramified", unramified)] {
        println!("classify(triv, {name}) = {}", classify_pair(&triv, &eta, 100)?);
    }

    let ctx = DeformationContext::new(field.clone(), 1)?;
    let at_p = DeformationElement::new(field.from_int(2), ctx.basis(0))?;
    let delta = DeformedCharacter::new(at_p, 1, ctx.one())?;
    let (body, tangent) = delta.decompose()?;
    println!("delta = {delta}");
    println!("delta0 = {body}");
    println!("delta1 = {tangent}");
    println!("wt(delta) = {}", delta.weight()?);
    Ok(())
}
