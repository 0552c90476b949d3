//! Arithmetic in Q_5 and in the unramified quadratic extension Q_25, with
//! the Iwasawa logarithm, the exponential and Teichmüller lifts.

use linv::padic::{iwasawa_log, p_exp, teichmuller, Field};
use linv::Result;

fn main() -> Result<()> {
    let q5 = Field::rationals(5, 20)?;
    let a = q5.from_int(50);
    let b = q5.from_int(3).inv()?;
    println!("50 = {a}");
    println!("1/3 = {b}");
    println!("50 * 1/3 = {}", a.try_mul(&b)?);
    println!("v(50) = {:?}, slack s = {}", a.valuation(), q5.slack());

    println!("omega(2) = {}", teichmuller(&q5.from_int(2))?);
    println!("log(5) = {}", iwasawa_log(&q5.from_int(5))?);
    println!("log(6) = {}", iwasawa_log(&q5.from_int(6))?);
    let x = q5.from_int(10);
    println!("log(exp(10)) = {}", iwasawa_log(&p_exp(&x)?)?);

    let e = Field::new(5, 2, None, 20)?;
    println!("E = Q_5[x]/({:?})", e.modulus());
    let g = e.generator();
    let u = e.from_ints(&[1, 1])?;
    println!("x^2 = {}", g.pow(2)?);
    println!("(1 + x)^-1 = {}", u.inv()?);
    let w = teichmuller(&u)?;
    println!("omega(1 + x) = {w}, order divides {}", e.residue_size() - 1);
    println!("log(1 + x) = {}", iwasawa_log(&u)?);
    Ok(())
}
