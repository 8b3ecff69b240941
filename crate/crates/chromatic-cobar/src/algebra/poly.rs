use std::collections::BTreeMap;
use std::fmt;

use num::BigInt;
use serde_json::{json, Value};

use super::gen::{Family, Gen};
use super::modulus::Modulus;
use super::rational::Rat;
use crate::error::Error;

/// A monomial: sparse exponent vector over the generator alphabet.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(BTreeMap<Gen, u32>);

impl Mono {
    pub fn one() -> Self {
        Mono::default()
    }

    pub fn gen(g: Gen) -> Self {
        Mono::gen_pow(g, 1)
    }

    pub fn gen_pow(g: Gen, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(g, e);
        }
        Mono(m)
    }

    pub fn from_pairs(pairs: &[(Gen, u32)]) -> Self {
        let mut m = BTreeMap::new();
        for &(g, e) in pairs {
            if e > 0 {
                *m.entry(g).or_insert(0) += e;
            }
        }
        Mono(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, g: Gen) -> u32 {
        self.0.get(&g).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Gen, &u32)> {
        self.0.iter()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = self.0.clone();
        for (g, e) in &other.0 {
            *m.entry(*g).or_insert(0) += e;
        }
        Mono(m)
    }

    pub fn pow(&self, e: u32) -> Mono {
        Mono(self.0.iter().map(|(g, k)| (*g, k * e)).collect())
    }

    pub fn degree_at(&self, p: u32) -> i64 {
        self.0.iter().map(|(g, e)| g.degree_at(p) * *e as i64).sum()
    }

    pub fn degree(&self) -> i64 {
        self.degree_at(2)
    }

    /// Total exponent of generators in the given family.
    pub fn family_weight(&self, fam: Family) -> u32 {
        self.0.iter().filter(|(g, _)| g.family == fam).map(|(_, e)| *e).sum()
    }

    /// Split into (part in `fam`, rest).
    pub fn split_family(&self, fam: Family) -> (Mono, Mono) {
        let mut inside = BTreeMap::new();
        let mut outside = BTreeMap::new();
        for (g, e) in &self.0 {
            if g.family == fam {
                inside.insert(*g, *e);
            } else {
                outside.insert(*g, *e);
            }
        }
        (Mono(inside), Mono(outside))
    }

    pub fn has_family(&self, fam: Family) -> bool {
        self.0.keys().any(|g| g.family == fam)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (g, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// The possible answers of `internal_degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}

impl Degree {
    pub fn compatible_with(self, d: i64) -> bool {
        matches!(self, Degree::Zero) || self == Degree::Homogeneous(d)
    }
}

/// Sparse multivariate polynomial with exact rational coefficients, graded
/// by the internal degree of its generators. No zero terms are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Poly::zero();
        p.add_term(Mono::one(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(Rat::from_int(n))
    }

    pub fn gen(g: Gen) -> Self {
        let mut p = Poly::zero();
        p.add_term(Mono::gen(g), Rat::one());
        p
    }

    pub fn v(i: u32) -> Self {
        Poly::gen(Gen::v(i))
    }

    pub fn t(i: u32) -> Self {
        Poly::gen(Gen::t(i))
    }

    pub fn monomial(m: Mono, c: Rat) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = &*e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Ring homomorphism determined by `map` on generators; generators not
    /// in the map are sent to themselves.
    pub fn substitute(&self, map: &BTreeMap<Gen, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for (g, e) in m.iter() {
                let image = match map.get(g) {
                    Some(p) => p.pow(*e),
                    None => Poly::monomial(Mono::gen_pow(*g, *e), Rat::one()),
                };
                term = term.mul(&image);
            }
            out = out.add(&term);
        }
        out
    }

    /// Substitute every generator of a family by zero (e.g. the counit kills
    /// all `t_n`).
    pub fn kill_family(&self, fam: Family) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.has_family(fam))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn internal_degree_at(&self, p: u32) -> Degree {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Degree::Zero };
        let d = first.degree_at(p);
        for m in it {
            if m.degree_at(p) != d {
                return Degree::Inhomogeneous;
            }
        }
        Degree::Homogeneous(d)
    }

    pub fn internal_degree(&self) -> Degree {
        self.internal_degree_at(2)
    }

    /// True when every coefficient lies in Z_(2).
    pub fn is_2_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_2_integral())
    }

    /// Canonical representative modulo the ideal: coefficients reduced to
    /// `[0, 2^N)` and monomials divisible by a killed `v_i` power dropped.
    /// Errors with `NonIntegral` when a coefficient has negative valuation.
    pub fn reduce(&self, m: &Modulus) -> Result<Poly, Error> {
        let mut out = Poly::zero();
        for (mono, c) in &self.terms {
            if !c.is_2_integral() {
                return Err(Error::NonIntegral(format!("{c} * {mono}")));
            }
            if mono.iter().any(|(g, e)| {
                g.family == Family::V
                    && m.v_power(g.index).is_some_and(|bound| *e >= bound)
            }) {
                continue;
            }
            let c = match m.two_power {
                Some(n) => Rat::from_bigint(c.residue_mod_2pow(n)?),
                None => c.clone(),
            };
            out.add_term(mono.clone(), c);
        }
        Ok(out)
    }

    /// Reduction mod 2 without an ideal, convenient in cocycle checks.
    pub fn mod2(&self) -> Poly {
        self.reduce(&Modulus::mod2()).expect("mod2 of integral poly")
    }

    /// Minimal 2-adic valuation over all coefficients; `None` for 0.
    pub fn min_nu2(&self) -> Option<i64> {
        self.terms
            .values()
            .map(|c| match c.nu2() {
                super::rational::Nu2::Finite(v) => v,
                super::rational::Nu2::Infinite => unreachable!(),
            })
            .min()
    }

    /// Divide exactly by 2^k; errors when some coefficient is not divisible.
    pub fn div_2pow(&self, k: u32) -> Result<Poly, Error> {
        for (m, c) in &self.terms {
            match c.nu2() {
                super::rational::Nu2::Finite(v) if v < k as i64 => {
                    return Err(Error::NonIntegral(format!("{c} * {m} not divisible by 2^{k}")))
                }
                _ => {}
            }
        }
        Ok(self.scale(&Rat::new(BigInt::from(1), BigInt::from(1) << k)))
    }

    /// Divide exactly by `v_index^k`; errors when a monomial lacks the factor.
    pub fn div_v_pow(&self, index: u32, k: u32) -> Result<Poly, Error> {
        let g = Gen::v(index);
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(g);
            if e < k {
                return Err(Error::NotDivisible { i: index as u64, j: k });
            }
            let mut pairs: Vec<(Gen, u32)> =
                m.iter().map(|(gg, ee)| (*gg, if *gg == g { ee - k } else { *ee })).collect();
            pairs.retain(|(_, e)| *e > 0);
            out.add_term(Mono::from_pairs(&pairs), c.clone());
        }
        Ok(out)
    }

    /// JSON encoding: `{"terms":[{"c":"num/den","e":{"v1":2,"t1":1}}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e: BTreeMap<String, u32> =
                    m.iter().map(|(g, e)| (g.name(), *e)).collect();
                json!({ "c": c.to_string(), "e": e })
            })
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Poly, Error> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("polynomial JSON needs a \"terms\" array".into()))?;
        let mut out = Poly::zero();
        for t in terms {
            let c: Rat = t
                .get("c")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("term needs string \"c\"".into()))?
                .parse()?;
            let mut pairs = Vec::new();
            if let Some(e) = t.get("e").and_then(Value::as_object) {
                for (name, exp) in e {
                    let exp = exp
                        .as_u64()
                        .ok_or_else(|| Error::Parse("exponent must be a non-negative integer".into()))?;
                    pairs.push((Gen::parse(name)?, exp as u32));
                }
            }
            out.add_term(Mono::from_pairs(&pairs), c);
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.numer() < &BigInt::from(0);
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Poly {
        Poly::v(i)
    }

    fn t(i: u32) -> Poly {
        Poly::t(i)
    }

    #[test]
    fn mul_degree_additivity() {
        // mul(v1, v1) -> v1^2, internal degree 4
        let sq = v(1).mul(&v(1));
        assert_eq!(sq.internal_degree(), Degree::Homogeneous(4));
        assert_eq!(sq, Poly::monomial(Mono::gen_pow(Gen::v(1), 2), Rat::one()));
    }

    #[test]
    fn substitution_is_ring_hom() {
        // substitute(t_i -> 0) applied to v1 + 2t1 -> v1 (the counit axiom)
        let p = v(1).add(&t(1).scale(&Rat::from_int(2)));
        assert_eq!(p.kill_family(Family::T), v(1));
    }

    #[test]
    fn internal_degrees() {
        assert_eq!(v(2).internal_degree(), Degree::Homogeneous(6));
        assert_eq!(t(1).pow(4).internal_degree(), Degree::Homogeneous(8));
        assert_eq!(v(1).add(&v(2)).internal_degree(), Degree::Inhomogeneous);
        assert_eq!(Poly::zero().internal_degree(), Degree::Zero);
    }

    #[test]
    fn reduction_examples() {
        // reduce(4 v1 t1 + 4 t1^2, mod 2) -> 0
        let p = v(1).mul(&t(1)).scale(&Rat::from_int(4)).add(&t(1).pow(2).scale(&Rat::from_int(4)));
        assert!(p.reduce(&Modulus::mod2()).unwrap().is_zero());

        // reduce(2t2 - 4t1^3 - 5 v1 t1^2 - 3 v1^2 t1, mod 2) -> v1 t1^2 + v1^2 t1
        let p = t(2)
            .scale(&Rat::from_int(2))
            .sub(&t(1).pow(3).scale(&Rat::from_int(4)))
            .sub(&v(1).mul(&t(1).pow(2)).scale(&Rat::from_int(5)))
            .sub(&v(1).pow(2).mul(&t(1)).scale(&Rat::from_int(3)));
        let expect = v(1).mul(&t(1).pow(2)).add(&v(1).pow(2).mul(&t(1)));
        assert_eq!(p.reduce(&Modulus::mod2()).unwrap(), expect);

        // reduce(v1^3 t1, mod (2, v1^3)) -> 0
        let p = v(1).pow(3).mul(&t(1));
        assert!(p.reduce(&Modulus::ideal(&[1, 3])).unwrap().is_zero());

        // NonIntegral on half-integer input
        let p = Poly::constant(Rat::new(BigInt::from(1), BigInt::from(2)));
        assert!(p.reduce(&Modulus::mod2()).is_err());
    }

    #[test]
    fn reduce_idempotent() {
        let m = Modulus::ideal(&[2, 2]);
        let p = v(1)
            .pow(3)
            .scale(&Rat::from_int(7))
            .add(&v(2).scale(&Rat::from_int(-3)))
            .add(&t(1).pow(2).mul(&v(1)).scale(&Rat::from_int(13)));
        let r1 = p.reduce(&m).unwrap();
        let r2 = r1.reduce(&m).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn json_roundtrip() {
        let p = v(1)
            .pow(2)
            .mul(&t(1))
            .scale(&Rat::new(BigInt::from(-3), BigInt::from(5)))
            .add(&Poly::one());
        let j = p.to_json();
        assert_eq!(Poly::from_json(&j).unwrap(), p);
    }
}
