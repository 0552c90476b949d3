//! L-invariants of Tate curves from their Tate parameter q_E.

use linv::cohomology::{l_inv, KummerClass};
use linv::family::{tate_l_invariant, tate_l_invariant_class};
use linv::padic::Field;
use linv::Result;

fn main() -> Result<()> {
    let f11 = Field::rationals(11, 30)?;
    let q = f11.qp().from_int(11 * 11 * 12);
    println!("p = 11, q_E = 1452: L(E) = {}", tate_l_invariant(&f11, &q)?);
    let class = KummerClass::from_rational(&f11, &q)?;
    println!("  Kummer coordinates {class}, L = {}", tate_l_invariant_class(&class)?);
    println!("  as a point of P^1: {}", l_inv(&class)?);

    let f5 = Field::rationals(5, 30)?;
    for q in [25i64, 5 * 6, 125 * 7] {
        println!("p = 5, q_E = {q}: L(E) = {}", tate_l_invariant(&f5, &f5.qp().from_int(q))?);
    }
    match tate_l_invariant(&f5, &f5.qp().from_int(3)) {
        Err(e) => println!("p = 5, q_E = 3: {e}"),
        Ok(l) => println!("unexpected L = {l}"),
    }
    Ok(())
}
