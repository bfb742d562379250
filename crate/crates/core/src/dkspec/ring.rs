//! Finite commutative rings given by full operation tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{group_from_table, AbGroup, FiniteAbelian};

#[derive(Clone)]
pub struct FinCommRing {
    name: String,
    labels: Vec<String>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    one: u32,
    additive: FiniteAbelian,
}

impl fmt::Debug for FinCommRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinCommRing({}, {} elements)", self.name, self.len())
    }
}

impl PartialEq for FinCommRing {
    fn eq(&self, other: &Self) -> bool {
        self.add == other.add && self.mul == other.mul && self.zero == other.zero && self.one == other.one
    }
}

/// JSON description of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum RingSpec {
    #[serde(rename = "Z/n")]
    Zmod { n: u32 },
    #[serde(rename = "F_q")]
    Field { q: u32 },
    /// `base[x]/(modulus)`, coefficients listed from the constant term up.
    #[serde(rename = "poly")]
    Poly { base: u32, modulus: Vec<u32> },
    #[serde(rename = "tables")]
    Tables {
        #[serde(default)]
        name: Option<String>,
        elements: Vec<String>,
        add: Vec<Vec<u32>>,
        mul: Vec<Vec<u32>>,
        zero: u32,
        one: u32,
    },
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Polynomial text for a coefficient vector (constant term first).
fn poly_label(c: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let coef = if a == 1 && i > 0 { String::new() } else { a.to_string() };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl FinCommRing {
    /// Builds a ring from tables and checks every axiom exhaustively.
    pub fn from_tables(name: &str, labels: Vec<String>, add: Vec<u32>, mul: Vec<u32>, zero: u32, one: u32) -> Result<Self> {
        let n = labels.len();
        let bad = |m: String| Error::InvalidRing(format!("{name}: {m}"));
        if n == 0 || add.len() != n * n || mul.len() != n * n {
            return Err(bad("tables must be n×n over a nonempty element list".into()));
        }
        if add.iter().chain(&mul).any(|&v| v as usize >= n) || zero as usize >= n || one as usize >= n {
            return Err(bad("table entry out of range".into()));
        }
        let a = |x: u32, y: u32| add[x as usize * n + y as usize];
        let m = |x: u32, y: u32| mul[x as usize * n + y as usize];
        let mut neg = vec![u32::MAX; n];
        for x in 0..n as u32 {
            if a(zero, x) != x {
                return Err(bad(format!("0 + {x} ≠ {x}")));
            }
            if m(one, x) != x {
                return Err(bad(format!("1 · {x} ≠ {x}")));
            }
            match (0..n as u32).find(|&y| a(x, y) == zero) {
                Some(y) => neg[x as usize] = y,
                None => return Err(bad(format!("{x} has no additive inverse"))),
            }
            for y in 0..n as u32 {
                if a(x, y) != a(y, x) {
                    return Err(bad(format!("addition not commutative at ({x}, {y})")));
                }
                if m(x, y) != m(y, x) {
                    return Err(bad(format!("multiplication not commutative at ({x}, {y})")));
                }
                for z in 0..n as u32 {
                    if a(a(x, y), z) != a(x, a(y, z)) {
                        return Err(bad(format!("addition not associative at ({x}, {y}, {z})")));
                    }
                    if m(m(x, y), z) != m(x, m(y, z)) {
                        return Err(bad(format!("multiplication not associative at ({x}, {y}, {z})")));
                    }
                    if m(x, a(y, z)) != a(m(x, y), m(x, z)) {
                        return Err(bad(format!("distributivity fails at ({x}, {y}, {z})")));
                    }
                }
            }
        }
        let additive = FiniteAbelian::from_table(n, &|x, y| add[x as usize * n + y as usize], zero)?;
        Ok(FinCommRing { name: name.to_string(), labels, add, mul, neg, zero, one, additive })
    }

    pub fn zmod(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("Z/{n} needs n ≥ 2")));
        }
        Self::poly_over(n, &[], &format!("Z/{n}"))
    }

    /// The field with `q` elements (`q` a prime power), built as
    /// `F_p[x]/(f)` with `f` the lexicographically first monic irreducible.
    pub fn field(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::InvalidRing(format!("{q} is not a prime power")))?;
        if k == 1 {
            return Self::poly_over(p, &[], &format!("F{q}"));
        }
        let f = first_irreducible(p, k as usize);
        Self::poly_over(p, &f, &format!("F{q}"))
    }

    /// `Z/base[x]/(modulus)` for a monic modulus (coefficients from the
    /// constant term up, leading 1 included).
    pub fn poly(base: u32, modulus: &[u32]) -> Result<Self> {
        if base < 2 || modulus.last() != Some(&1) || modulus.len() < 2 {
            return Err(Error::InvalidRing("modulus must be monic of degree ≥ 1 over Z/n, n ≥ 2".into()));
        }
        let name = format!("{}[x]/({})", if is_prime(base) { format!("F{base}") } else { format!("Z/{base}") }, poly_label(modulus));
        Self::poly_over(base, modulus, &name)
    }

    fn poly_over(base: u32, modulus: &[u32], name: &str) -> Result<Self> {
        let d = modulus.len().saturating_sub(1).max(1);
        let n = (base as usize).pow(d as u32);
        if n > 4096 {
            return Err(Error::InvalidRing(format!("{name}: {n} elements is beyond the supported size")));
        }
        let digits = |mut x: usize| -> Vec<u32> {
            (0..d)
                .map(|_| {
                    let c = (x % base as usize) as u32;
                    x /= base as usize;
                    c
                })
                .collect()
        };
        let index = |c: &[u32]| -> u32 { c.iter().rev().fold(0u32, |acc, &v| acc * base + v) };
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for x in 0..n {
            let cx = digits(x);
            for y in 0..n {
                let cy = digits(y);
                let s: Vec<u32> = cx.iter().zip(&cy).map(|(a, b)| (a + b) % base).collect();
                add[x * n + y] = index(&s);
                let mut prod = vec![0u64; 2 * d];
                for (i, &a) in cx.iter().enumerate() {
                    for (j, &b) in cy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a as u64 * b as u64) % base as u64;
                    }
                }
                if modulus.len() >= 2 {
                    // reduce by the monic modulus from the top
                    for t in (d..2 * d).rev() {
                        let c = prod[t];
                        if c != 0 {
                            for (i, &m) in modulus.iter().enumerate() {
                                let pos = t - d + i;
                                prod[pos] = (prod[pos] + (base as u64 - c) * m as u64) % base as u64;
                            }
                        }
                    }
                }
                let r: Vec<u32> = prod[..d].iter().map(|&v| v as u32).collect();
                mul[x * n + y] = index(&r);
            }
        }
        let labels = (0..n).map(|x| if modulus.len() >= 2 { poly_label(&digits(x)) } else { x.to_string() }).collect();
        Self::from_tables(name, labels, add, mul, 0, 1)
    }

    /// Parses `Z/n`, `Fq`, `F_q`, `GF(q)` and `<base>[x]/<poly>` such as
    /// `F2[x]/x^2` or `Z/4[x]/(x^2+1)`.
    pub fn parse(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some((base, rest)) = t.split_once("[x]/") {
            let b = parse_base(base)?;
            let m = parse_poly(rest.trim_start_matches('(').trim_end_matches(')'), b)?;
            let mut r = Self::poly(b, &m)?;
            r.name = t.clone();
            return Ok(r);
        }
        if let Some(n) = t.strip_prefix("Z/") {
            return Self::zmod(n.trim_end_matches('Z').parse().map_err(|_| Error::Parse(format!("bad ring `{text}`")))?);
        }
        let q = t
            .strip_prefix("GF(")
            .and_then(|s| s.strip_suffix(')'))
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| Error::Parse(format!("unrecognized ring `{text}`")))?;
        Self::field(q.parse().map_err(|_| Error::Parse(format!("bad field size in `{text}`")))?)
    }

    pub fn from_spec(spec: &RingSpec) -> Result<Self> {
        match spec {
            RingSpec::Zmod { n } => Self::zmod(*n),
            RingSpec::Field { q } => Self::field(*q),
            RingSpec::Poly { base, modulus } => Self::poly(*base, modulus),
            RingSpec::Tables { name, elements, add, mul, zero, one } => {
                let flat = |t: &Vec<Vec<u32>>| -> Result<Vec<u32>> {
                    if t.len() != elements.len() || t.iter().any(|r| r.len() != elements.len()) {
                        return Err(Error::InvalidRing("tables must be square over the element list".into()));
                    }
                    Ok(t.concat())
                };
                Self::from_tables(name.as_deref().unwrap_or("tables"), elements.clone(), flat(add)?, flat(mul)?, *zero, *one)
            }
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        if let Some(s) = v.as_str() {
            return Self::parse(s);
        }
        let spec: RingSpec = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_spec(&spec)
    }

    /// Full-table description (always round-trips).
    pub fn to_spec(&self) -> RingSpec {
        let n = self.len();
        RingSpec::Tables {
            name: Some(self.name.clone()),
            elements: self.labels.clone(),
            add: self.add.chunks(n).map(<[u32]>::to_vec).collect(),
            mul: self.mul.chunks(n).map(<[u32]>::to_vec).collect(),
            zero: self.zero,
            one: self.one,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: u32) -> &str {
        &self.labels[x as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        self.add[x as usize * self.len() + y as usize]
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[x as usize * self.len() + y as usize]
    }

    pub fn neg(&self, x: u32) -> u32 {
        self.neg[x as usize]
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    /// Image of an integer under `Z → R`.
    pub fn from_int(&self, k: i64) -> u32 {
        let mut acc = self.zero;
        for _ in 0..k.unsigned_abs() {
            acc = self.add(acc, self.one);
        }
        if k < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    /// Multiplicatively invertible elements, in increasing order.
    pub fn units(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&x| (0..self.len() as u32).any(|y| self.mul(x, y) == self.one)).collect()
    }

    pub fn inverse(&self, x: u32) -> Option<u32> {
        (0..self.len() as u32).find(|&y| self.mul(x, y) == self.one)
    }

    /// The additive group with a chosen cyclic decomposition.
    pub fn additive(&self) -> &FiniteAbelian {
        &self.additive
    }

    pub fn additive_group(&self) -> AbGroup {
        self.additive.group()
    }

    /// The unit group as an abstract abelian group.
    pub fn unit_group(&self) -> AbGroup {
        let u = self.units();
        let pos = |x: u32| u.iter().position(|&y| y == x).expect("units are closed") as u32;
        let one = pos(self.one);
        group_from_table(u.len(), &|a, b| pos(self.mul(u[a as usize], u[b as usize])), one).expect("finite group")
    }
}

fn parse_base(s: &str) -> Result<u32> {
    let n = s
        .strip_prefix("Z/")
        .or_else(|| s.strip_prefix("F_"))
        .or_else(|| s.strip_prefix('F'))
        .ok_or_else(|| Error::Parse(format!("bad coefficient ring `{s}`")))?;
    let n: u32 = n.parse().map_err(|_| Error::Parse(format!("bad coefficient ring `{s}`")))?;
    if s.starts_with('F') && !is_prime(n) {
        return Err(Error::Parse(format!("polynomial rings need a prime field, got `{s}`")));
    }
    Ok(n)
}

/// Parses `x^2+x+1`, `x^2`, `2x+3` into coefficients, constant term first.
fn parse_poly(s: &str, base: u32) -> Result<Vec<u32>> {
    let bad = || Error::Parse(format!("bad polynomial `{s}`"));
    let mut coeffs: Vec<u32> = Vec::new();
    for term in s.split('+').filter(|t| !t.is_empty()) {
        let (c, e) = match term.split_once('x') {
            None => (term.parse::<u32>().map_err(|_| bad())?, 0usize),
            Some((c, rest)) => {
                let c = if c.is_empty() { 1 } else { c.trim_end_matches('*').parse().map_err(|_| bad())? };
                let e = if rest.is_empty() { 1 } else { rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())? };
                (c, e)
            }
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] = (coeffs[e] + c) % base;
    }
    if coeffs.is_empty() {
        return Err(bad());
    }
    Ok(coeffs)
}

/// First monic irreducible polynomial of degree `k` over `F_p`, by trial
/// division against all monic polynomials of lower degree.
fn first_irreducible(p: u32, k: usize) -> Vec<u32> {
    let total = (p as usize).pow(k as u32);
    let digits = |mut x: usize, len: usize| -> Vec<u32> {
        (0..len)
            .map(|_| {
                let c = (x % p as usize) as u32;
                x /= p as usize;
                c
            })
            .collect()
    };
    let divides = |d: &[u32], f: &[u32]| -> bool {
        let mut r: Vec<u32> = f.to_vec();
        let dd = d.len() - 1;
        for t in (dd..r.len()).rev() {
            let c = r[t];
            if c != 0 {
                for (i, &m) in d.iter().enumerate() {
                    let pos = t - dd + i;
                    r[pos] = (r[pos] + (p - c) * m) % p;
                }
            }
        }
        r.iter().all(|&v| v == 0)
    };
    for x in 0..total {
        let mut f = digits(x, k);
        f.push(1);
        let reducible = (1..k).any(|dd| {
            (0..(p as usize).pow(dd as u32)).any(|y| {
                let mut d = digits(y, dd);
                d.push(1);
                divides(&d, &f)
            })
        });
        if !reducible {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_rings_parse() {
        let cases = [("Z/2", 2, 1), ("Z/4", 4, 2), ("Z/6", 6, 2), ("F5", 5, 4), ("F2[x]/x^2", 4, 2), ("F4", 4, 3), ("F_9", 9, 8)];
        for (name, size, units) in cases {
            let r = FinCommRing::parse(name).unwrap();
            assert_eq!(r.len(), size, "{name}");
            assert_eq!(r.units().len(), units, "{name}");
        }
    }

    #[test]
    fn unit_groups() {
        assert_eq!(FinCommRing::parse("F5").unwrap().unit_group(), AbGroup::cyclic(4));
        assert_eq!(FinCommRing::parse("Z/6").unwrap().unit_group(), AbGroup::cyclic(2));
        assert_eq!(FinCommRing::parse("F2[x]/x^2").unwrap().unit_group(), AbGroup::cyclic(2));
        assert_eq!(FinCommRing::parse("Z/8").unwrap().unit_group(), AbGroup::from_orders(&[2, 2]));
        assert_eq!(FinCommRing::parse("F4").unwrap().additive_group(), AbGroup::from_orders(&[2, 2]));
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let r = FinCommRing::parse("F2[x]/x^2").unwrap();
        let v = serde_json::to_value(r.to_spec()).unwrap();
        assert_eq!(FinCommRing::from_json(&v).unwrap(), r);
        let z = FinCommRing::from_json(&serde_json::json!({"kind": "Z/n", "n": 6})).unwrap();
        assert_eq!(z.len(), 6);
        // x·x = 1 but 1 + 1 ≠ 0 with a non-distributive product
        let bad = serde_json::json!({"kind": "tables", "elements": ["0", "1"], "add": [[0, 1], [1, 0]], "mul": [[1, 0], [0, 1]], "zero": 0, "one": 1});
        assert!(matches!(FinCommRing::from_json(&bad), Err(Error::InvalidRing(_))));
    }

    #[test]
    fn field_arithmetic() {
        let f4 = FinCommRing::field(4).unwrap();
        for x in 1..4 {
            assert!(f4.inverse(x).is_some());
        }
        let z6 = FinCommRing::zmod(6).unwrap();
        assert_eq!(z6.from_int(-1), 5);
        assert_eq!(z6.mul(5, 5), 1);
    }
}
