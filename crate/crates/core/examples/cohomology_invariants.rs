//! Kummer classes, homomorphisms, the pairing between them, L-invariants,
//! dual L-invariants and pure tensors.

use linv::cohomology::{
    dual_l_inv, hom_coeffs, l_inv, orthogonal, pure_tensor_analyze, tate_pair, Homomorphism, KummerClass,
};
use linv::deformation::DeformationContext;
use linv::padic::Field;
use linv::Result;

fn main() -> Result<()> {
    let field = Field::rationals(5, 20)?;
    let log_gamma0 = field.from_scalar(field.log_gamma0().clone());
    let q = KummerClass::new(field.from_int(2), field.from_int(1))?;
    println!("q = {q}");
    println!("L(q) = {}", l_inv(&q)?);

    let h = Homomorphism::from_coeffs(field.from_int(2), -&log_gamma0)?;
    println!("h = {h}, (log, ord) coefficients = {:?}", hom_coeffs(&h)?);
    println!("L*(h) = {}", dual_l_inv(&h)?);
    println!("<q, h> = {}", tate_pair(&q, &h)?);
    println!("orthogonal: {}", orthogonal(&q, &h)?);

    let ord = Homomorphism::ord_p(&field);
    println!("L*(ord_p) = {}, orthogonal to q: {}", dual_l_inv(&ord)?, orthogonal(&q, &ord)?);

    let ctx = DeformationContext::new(field.clone(), 2)?;
    let mu = ctx.basis(0).try_add(&ctx.basis(1).scale(&field.from_int(3))?)?;
    let c = h.tensor(&mu)?;
    let report = pure_tensor_analyze(&c)?;
    println!("c = h (x) mu is pure: {}, L*(c) = {:?}", report.is_pure, report.lstar);

    let mixed = Homomorphism::log_p(&field).tensor(&ctx.basis(0))?.try_add(&ord.tensor(&ctx.basis(1))?)?;
    println!("log_p (x) e1 + ord_p (x) e2 is pure: {}", pure_tensor_analyze(&mixed)?.is_pure);
    Ok(())
}
