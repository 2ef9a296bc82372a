//! Exact rational helpers: parsing, JSON encoding and integer normalization.

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn from_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"3"`, `"-2/5"` or `"1/1"` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::input(format!("not a rational number: {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::input(format!("not a rational number: {s:?}")))?;
    if den.is_zero() {
        return Err(Error::input(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Parses a comma separated list of rationals, e.g. `"1,0,3/2"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

/// Parses a comma separated list of machine integers, e.g. `"3,1,2"`.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::input(format!("not an integer: {:?}", t.trim())))
        })
        .collect()
}

fn int_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

/// `{"num": n, "den": d}` with `d > 0` and the fraction in lowest terms.
/// Components that do not fit in an `i64` are written as decimal strings.
pub fn to_json(q: &Rational) -> Value {
    json!({ "num": int_to_json(q.numer()), "den": int_to_json(q.denom()) })
}

pub fn to_text(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn json_to_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::input(format!("expected an integer, got {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("expected an integer, got {s:?}"))),
        other => Err(Error::input(format!("expected an integer, got {other}"))),
    }
}

/// Accepts an integer, a `[num, den]` pair, a `{"num","den"}` object or a
/// string such as `"3/4"`.
pub fn from_json(v: &Value) -> Result<Rational> {
    let (num, den) = match v {
        Value::Number(_) => (json_to_int(v)?, BigInt::one()),
        Value::String(s) => return parse_rational(s),
        Value::Array(pair) if pair.len() == 2 => (json_to_int(&pair[0])?, json_to_int(&pair[1])?),
        Value::Object(map)
            if map.len() == 2 && map.contains_key("num") && map.contains_key("den") =>
        {
            (json_to_int(&map["num"])?, json_to_int(&map["den"])?)
        }
        other => return Err(Error::input(format!("not a rational entry: {other}"))),
    };
    if den.is_zero() {
        return Err(Error::input("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Rescales a nonzero rational vector to the primitive integer vector on the
/// same ray. The zero vector is returned unchanged.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &gcd))
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_nonneg(q: &Rational) -> bool {
    !q.is_negative()
}
