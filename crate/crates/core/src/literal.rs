//! Text and JSON literals for scalars, field elements, deformation elements,
//! characters, Kummer classes, homomorphisms and scenarios.
//!
//! The command line accepts a relaxed JSON dialect: object keys and scalar
//! tokens need no quotes, so `{at_p:1/5,teich:0,at_gamma:1}` and
//! `[1,2]@3` are valid. Scenario files are plain JSON.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::characters::{CharRing, Character, FieldCharacter};
use crate::cohomology::{Homomorphism, KummerClass};
use crate::deformation::{DeformationContext, DeformationElement, MVector};
use crate::error::{Error, Result};
use crate::family::Scenario;
use crate::padic::{Field, FieldElement, PadicScalar, Qp};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parse relaxed JSON into a [`Value`]. Unquoted tokens become integers when
/// they fit in `i64` and strings otherwise.
pub fn parse_relaxed(text: &str) -> Result<Value> {
    let mut parser = Relaxed { chars: text.chars().collect(), pos: 0 };
    let v = parser.value()?;
    parser.skip_ws();
    if parser.pos != parser.chars.len() {
        return Err(perr(format!("trailing input at offset {}", parser.pos)));
    }
    Ok(v)
}

struct Relaxed {
    chars: Vec<char>,
    pos: usize,
}

impl Relaxed {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(perr(format!("expected '{c}' at offset {}", self.pos)))
        }
    }

    fn value(&mut self) -> Result<Value> {
        self.skip_ws();
        match self.peek() {
            Some('{') => self.object(),
            Some('[') => {
                let start = self.pos;
                let arr = self.array()?;
                if self.peek() == Some('@') {
                    self.pos += 1;
                    let exp = self.bare_token();
                    let text: String = self.chars[start..self.pos - exp.len() - 1].iter().collect();
                    return Ok(Value::String(format!("{}@{exp}", text.split_whitespace().collect::<String>())));
                }
                Ok(arr)
            }
            Some('"') => self.quoted().map(Value::String),
            Some(_) => {
                let tok = self.bare_token();
                if tok.is_empty() {
                    return Err(perr(format!("unexpected character at offset {}", self.pos)));
                }
                Ok(match tok.parse::<i64>() {
                    Ok(n) => Value::from(n),
                    Err(_) => Value::String(tok),
                })
            }
            None => Err(perr("unexpected end of input")),
        }
    }

    fn object(&mut self) -> Result<Value> {
        self.expect('{')?;
        let mut map = Map::new();
        self.skip_ws();
        if self.peek() == Some('}') {
            self.pos += 1;
            return Ok(Value::Object(map));
        }
        loop {
            self.skip_ws();
            let key = if self.peek() == Some('"') { self.quoted()? } else { self.bare_token() };
            if key.is_empty() {
                return Err(perr(format!("expected a key at offset {}", self.pos)));
            }
            self.expect(':')?;
            let v = self.value()?;
            map.insert(key, v);
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some('}') => {
                    self.pos += 1;
                    return Ok(Value::Object(map));
                }
                _ => return Err(perr(format!("expected ',' or '}}' at offset {}", self.pos))),
            }
        }
    }

    fn array(&mut self) -> Result<Value> {
        self.expect('[')?;
        let mut items = Vec::new();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(Value::Array(items));
        }
        loop {
            items.push(self.value()?);
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(Value::Array(items));
                }
                _ => return Err(perr(format!("expected ',' or ']' at offset {}", self.pos))),
            }
        }
    }

    fn quoted(&mut self) -> Result<String> {
        self.expect('"')?;
        let mut out = String::new();
        loop {
            match self.peek() {
                None => return Err(perr("unterminated string")),
                Some('"') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some('\\') => {
                    self.pos += 1;
                    let c = self.peek().ok_or_else(|| perr("unterminated escape"))?;
                    out.push(c);
                    self.pos += 1;
                }
                Some(c) => {
                    out.push(c);
                    self.pos += 1;
                }
            }
        }
    }

    fn bare_token(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| !c.is_whitespace() && !"{}[],:\"".contains(c)) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    s.trim().parse::<BigInt>().map_err(|_| perr(format!("not an integer: {s:?}")))
}

fn parse_rational(qp: &Qp, s: &str) -> Result<PadicScalar> {
    match s.split_once('/') {
        Some((n, d)) => qp.from_rational(&parse_bigint(n)?, &parse_bigint(d)?),
        None => Ok(qp.from_bigint(&parse_bigint(s)?)),
    }
}

/// `a`, `a/b`, `p^v`, `p^v*u` (the base may be written `p` or as the
/// prime), or `[d0,d1,...]@v` meaning `p^v Σ d_i p^i`.
pub fn parse_scalar_str(qp: &Qp, s: &str) -> Result<PadicScalar> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('[') {
        let (digits, v) = rest.split_once("]@").ok_or_else(|| perr(format!("bad digit literal {s:?}")))?;
        let v: i64 = v.trim().parse().map_err(|_| perr(format!("bad exponent in {s:?}")))?;
        let mut value = BigInt::from(0);
        let p = BigInt::from(qp.prime());
        for d in digits.split(',').map(str::trim).filter(|d| !d.is_empty()).rev() {
            let d: u64 = d.parse().map_err(|_| perr(format!("bad digit {d:?}")))?;
            if d >= qp.prime() {
                return Err(perr(format!("digit {d} out of range for p = {}", qp.prime())));
            }
            value = value * &p + d;
        }
        return Ok(qp.from_bigint(&value).shift(v));
    }
    if let Some((base, rest)) = s.split_once('^') {
        let base = base.trim();
        if base != "p" && base.parse::<u64>().ok() != Some(qp.prime()) {
            return Err(perr(format!("power base must be p = {}", qp.prime())));
        }
        let (v, u) = match rest.split_once('*') {
            Some((v, u)) => (v, Some(u)),
            None => (rest, None),
        };
        let v: i64 = v.trim().parse().map_err(|_| perr(format!("bad exponent in {s:?}")))?;
        let unit = match u {
            Some(u) => parse_rational(qp, u)?,
            None => qp.one(),
        };
        if unit.valuation() != Some(0) {
            return Err(perr(format!("{s:?}: the factor after p^v must be a unit")));
        }
        return Ok(unit.shift(v));
    }
    parse_rational(qp, s)
}

pub fn scalar_from_value(qp: &Qp, v: &Value) -> Result<PadicScalar> {
    match v {
        Value::Number(n) => n.as_i64().map(|n| qp.from_int(n)).ok_or_else(|| perr(format!("not an integer: {n}"))),
        Value::String(s) => parse_scalar_str(qp, s),
        other => Err(perr(format!("expected a scalar literal, got {other}"))),
    }
}

/// A scalar literal, or a list of at most `d` scalar literals in power-basis
/// order.
pub fn field_from_value(field: &Field, v: &Value) -> Result<FieldElement> {
    match v {
        Value::Array(items) => {
            if items.len() > field.degree() {
                return Err(perr(format!("{} coordinates for a degree-{} field", items.len(), field.degree())));
            }
            let mut coeffs = items.iter().map(|x| scalar_from_value(field.qp(), x)).collect::<Result<Vec<_>>>()?;
            coeffs.resize(field.degree(), field.qp().zero());
            field.element(coeffs)
        }
        _ => Ok(field.from_scalar(scalar_from_value(field.qp(), v)?)),
    }
}

/// A list of `r` field literals.
pub fn mvector_from_value(ctx: &DeformationContext, v: &Value) -> Result<MVector> {
    let items = v.as_array().ok_or_else(|| perr("an m-vector literal is a list"))?;
    if items.len() != ctx.dim() {
        return Err(perr(format!("expected {} tangent coordinates, got {}", ctx.dim(), items.len())));
    }
    MVector::new(items.iter().map(|x| field_from_value(ctx.field(), x)).collect::<Result<_>>()?)
}

/// `{body, tangent}`; a bare field literal has zero tangent.
pub fn deformation_from_value(ctx: &DeformationContext, v: &Value) -> Result<DeformationElement> {
    match v {
        Value::Object(map) => {
            let body = field_from_value(ctx.field(), map.get("body").ok_or_else(|| perr("missing body"))?)?;
            let tangent = match map.get("tangent") {
                Some(t) => mvector_from_value(ctx, t)?,
                None => ctx.zero_vector(),
            };
            DeformationElement::new(body, tangent)
        }
        _ => Ok(ctx.embed(field_from_value(ctx.field(), v)?)),
    }
}

/// Rings with a literal syntax.
pub trait RingLiteral: CharRing {
    fn from_value(ctx: &Self::Context, v: &Value) -> Result<Self>;
}

impl RingLiteral for FieldElement {
    fn from_value(ctx: &Field, v: &Value) -> Result<Self> {
        field_from_value(ctx, v)
    }
}

impl RingLiteral for DeformationElement {
    fn from_value(ctx: &DeformationContext, v: &Value) -> Result<Self> {
        deformation_from_value(ctx, v)
    }
}

/// `{at_p, teich, at_gamma}`, or a product of `x`, `abs` and `triv` with
/// optional integer powers, e.g. `x*abs*x^2` or `x^-1`.
pub fn character_from_value<R: RingLiteral>(ctx: &R::Context, v: &Value) -> Result<Character<R>> {
    match v {
        Value::Object(map) => {
            let get = |k: &str| map.get(k).ok_or_else(|| perr(format!("character literal is missing {k}")));
            let teich = get("teich")?.as_i64().ok_or_else(|| perr("teich must be an integer"))?;
            Character::new(R::from_value(ctx, get("at_p")?)?, teich, R::from_value(ctx, get("at_gamma")?)?)
        }
        Value::String(s) => builtin_product(ctx, s),
        other => Err(perr(format!("expected a character literal, got {other}"))),
    }
}

fn builtin_product<R: CharRing>(ctx: &R::Context, s: &str) -> Result<Character<R>> {
    let mut acc = Character::<R>::trivial(ctx);
    for factor in s.split('*') {
        let factor = factor.trim();
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (n.trim(), e.trim().parse::<i64>().map_err(|_| perr(format!("bad exponent in {factor:?}")))?),
            None => (factor, 1),
        };
        let base = match name {
            "x" => Character::identity(ctx),
            "abs" => Character::abs(ctx),
            "triv" => Character::trivial(ctx),
            _ => return Err(perr(format!("unknown character {name:?}"))),
        };
        acc = acc.mul(&base.pow(exp)?)?;
    }
    Ok(acc)
}

pub fn kummer_from_value(field: &Field, v: &Value) -> Result<KummerClass> {
    let map = v.as_object().ok_or_else(|| perr("a Kummer class literal is {a, b}"))?;
    let get = |k: &str| map.get(k).ok_or_else(|| perr(format!("Kummer class literal is missing {k}")));
    KummerClass::new(field_from_value(field, get("a")?)?, field_from_value(field, get("b")?)?)
}

pub fn homomorphism_from_value(field: &Field, v: &Value) -> Result<Homomorphism<FieldElement>> {
    let map = v.as_object().ok_or_else(|| perr("a homomorphism literal is {at_p, at_gamma}"))?;
    let get = |k: &str| map.get(k).ok_or_else(|| perr(format!("homomorphism literal is missing {k}")));
    Homomorphism::new(field_from_value(field, get("at_p")?)?, field_from_value(field, get("at_gamma")?)?)
}

pub fn m_homomorphism_from_value(ctx: &DeformationContext, v: &Value) -> Result<Homomorphism<MVector>> {
    let map = v.as_object().ok_or_else(|| perr("a homomorphism literal is {at_p, at_gamma}"))?;
    let get = |k: &str| map.get(k).ok_or_else(|| perr(format!("homomorphism literal is missing {k}")));
    Homomorphism::new(mvector_from_value(ctx, get("at_p")?)?, mvector_from_value(ctx, get("at_gamma")?)?)
}

/// Exact literal for a scalar: `0`, or `[d0,...]@v` listing every known
/// digit.
pub fn scalar_to_value(s: &PadicScalar) -> Value {
    match s.valuation() {
        None => Value::from(0),
        Some(v) => {
            let digits: Vec<String> = s.unit_digits().iter().map(u64::to_string).collect();
            Value::String(format!("[{}]@{v}", digits.join(",")))
        }
    }
}

pub fn field_to_value(e: &FieldElement) -> Value {
    if e.field().degree() == 1 {
        scalar_to_value(&e.coeffs()[0])
    } else {
        Value::Array(e.coeffs().iter().map(scalar_to_value).collect())
    }
}

pub fn deformation_to_value(e: &DeformationElement) -> Value {
    json!({
        "body": field_to_value(e.body()),
        "tangent": e.tangent().entries().iter().map(field_to_value).collect::<Vec<_>>(),
    })
}

pub fn character_to_value(c: &Character<DeformationElement>) -> Value {
    json!({
        "at_p": deformation_to_value(c.at_p()),
        "teich": c.teich(),
        "at_gamma": deformation_to_value(c.at_gamma()),
    })
}

/// The on-disk scenario format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub p: u64,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<i64>>,
    pub precision: u32,
    pub r: usize,
    pub delta: Value,
    pub eta: Value,
    pub q0: Value,
    #[serde(default)]
    pub label: String,
}

impl ScenarioFile {
    pub fn from_scenario(s: &Scenario) -> Self {
        let field = s.field();
        ScenarioFile {
            p: field.prime(),
            degree: field.degree(),
            poly: Some(field.modulus().to_vec()),
            precision: field.precision(),
            r: s.ctx.dim(),
            delta: character_to_value(&s.delta),
            eta: character_to_value(&s.eta),
            q0: json!({ "a": field_to_value(s.q0.a()), "b": field_to_value(s.q0.b()) }),
            label: s.label.clone(),
        }
    }

    pub fn to_scenario(&self) -> Result<Scenario> {
        let field = Field::new(self.p, self.degree, self.poly.as_deref(), self.precision)?;
        let ctx = DeformationContext::new(field.clone(), self.r)?;
        let delta = character_from_value(&ctx, &self.delta)?;
        let eta = character_from_value(&ctx, &self.eta)?;
        let q0 = kummer_from_value(&field, &self.q0)?;
        Scenario::new(delta, eta, q0, self.label.clone())
    }
}

pub fn scenario_from_json(text: &str) -> Result<Scenario> {
    let file: ScenarioFile = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
    file.to_scenario()
}

pub fn scenario_to_json(s: &Scenario) -> String {
    serde_json::to_string_pretty(&ScenarioFile::from_scenario(s)).expect("scenario values serialize")
}

/// Shorthand for an E-valued character literal in relaxed syntax.
pub fn parse_field_character(field: &Field, text: &str) -> Result<FieldCharacter> {
    character_from_value(field, &parse_relaxed(text)?)
}
