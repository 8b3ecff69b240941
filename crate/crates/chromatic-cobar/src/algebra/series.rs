use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::poly::Poly;
use super::rational::Rat;
use crate::error::Error;

/// Coefficient rings a truncated series can be formed over.
pub trait Coeff: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, r: &Rat) -> Self;
}

impl Coeff for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn one() -> Self {
        Rat::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rat) -> Self {
        self * r
    }
}

impl Coeff for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn one() -> Self {
        Poly::one()
    }
    fn add(&self, other: &Self) -> Self {
        Poly::add(self, other)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        Poly::mul(self, other)
    }
    fn scale(&self, r: &Rat) -> Self {
        Poly::scale(self, r)
    }
}

/// Truncated power series in one formal variable `x`. Coefficients with
/// exponent `>= order` are unknown, not zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C: Coeff> {
    coeffs: Vec<C>,
    order: usize,
}

impl<C: Coeff> Series<C> {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "truncation order must be positive");
        Series { coeffs: Vec::new(), order }
    }

    pub fn from_coeffs(coeffs: Vec<C>, order: usize) -> Self {
        assert!(coeffs.len() <= order);
        let mut s = Series { coeffs, order };
        s.trim();
        s
    }

    /// The identity series `x`.
    pub fn x(order: usize) -> Self {
        let mut s = Series::zero(order);
        s.set(1, C::one());
        s
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn set(&mut self, i: usize, c: C) {
        assert!(i < self.order, "index beyond truncation order");
        if i >= self.coeffs.len() {
            if c.is_zero() {
                return;
            }
            self.coeffs.resize_with(i + 1, C::zero);
        }
        self.coeffs[i] = c;
        self.trim();
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the lowest stored non-zero coefficient; the truncation
    /// order when all stored coefficients vanish.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.order)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order);
        Series::from_coeffs(coeffs, order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Series::zero(order);
        for i in 0..order.min(self.coeffs.len().max(other.coeffs.len())) {
            let c = self.coeff(i).add(&other.coeff(i));
            out.set(i, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(C::neg).collect(), order: self.order }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let mut s =
            Series { coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(), order: self.order };
        s.trim();
        s
    }

    pub fn scale_coeff(&self, k: &C) -> Self {
        let mut s =
            Series { coeffs: self.coeffs.iter().map(|c| c.mul(k)).collect(), order: self.order };
        s.trim();
        s
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        let order = (self.order + k).min(usize::MAX);
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        coeffs.truncate(order);
        Series::from_coeffs(coeffs, order)
    }

    /// Product, with the truncation order accounting for the valuations of
    /// both factors: unknown tail terms of one factor first interact at the
    /// valuation of the other.
    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.valuation()).min(other.order + self.valuation());
        let mut out = vec![C::zero(); order.min(self.coeffs.len() + other.coeffs.len())];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= order {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        out.truncate(order);
        Series::from_coeffs(out, order)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc: Option<Series<C>> = None;
        let mut base = self.clone();
        let mut e = e;
        if e == 0 {
            let mut s = Series::zero(self.order);
            s.set(0, C::one());
            return s;
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap()
    }

    /// Composition `self(g(x))`; `g` must have zero constant term.
    pub fn compose(&self, g: &Self) -> Result<Self, Error> {
        if !g.coeff(0).is_zero() {
            return Err(Error::ConstantTerm);
        }
        let gval = g.valuation().max(1);
        // unknowns of self at >= self.order enter at x^{order * gval};
        // unknowns of g at >= g.order enter linearly at x^{g.order}.
        let order = g.order.min(self.order.saturating_mul(gval));
        let mut out = Series::zero(order);
        out.set(0, self.coeff(0));
        let mut gpow = Series::<C>::zero(order);
        gpow.set(0, C::one());
        for i in 1..self.coeffs.len() {
            gpow = gpow.mul(&g.truncate(order));
            let ci = self.coeff(i);
            if ci.is_zero() {
                continue;
            }
            out = out.add(&gpow.scale_coeff(&ci));
            if gpow.valuation() >= order {
                break;
            }
        }
        Ok(out.truncate(order))
    }

    /// Compositional inverse of a series `x + higher`, to the same order.
    pub fn reverse(&self) -> Result<Self, Error> {
        if !self.coeff(0).is_zero() || self.coeff(1) != C::one() {
            return Err(Error::BadLeadingTerm);
        }
        let order = self.order;
        let mut inv = Series::zero(order);
        inv.set(1, C::one());
        // solve self(inv(x)) = x degree by degree
        for n in 2..order {
            let sofar = self.truncate(n + 1).compose(&inv.truncate(n + 1))?;
            // coefficient of x^n in self(inv) is inv_n + (known lower data)
            let defect = sofar.coeff(n);
            if !defect.is_zero() {
                inv.set(n, defect.neg());
            }
        }
        Ok(inv)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series::from_coeffs(self.coeffs.iter().map(f).collect(), self.order)
    }
}

impl Series<Poly> {
    /// Exponential-style composition: `sum_{n>=0} w^n / n!` for a series `w`
    /// with zero constant term. Exact over rational coefficients.
    pub fn exp_of(w: &Series<Poly>) -> Result<Series<Poly>, Error> {
        if !w.coeff(0).is_zero() {
            return Err(Error::ConstantTerm);
        }
        let order = w.order;
        let mut out = Series::zero(order);
        out.set(0, Poly::one());
        let mut term = Series::zero(order);
        term.set(0, Poly::one());
        let mut n = 1u64;
        loop {
            term = term.mul(&w.truncate(order)).scale(&Rat::new(1.into(), n.into()));
            if term.valuation() >= order || term.is_zero() {
                break;
            }
            out = out.add(&term);
            n += 1;
            if n > order as u64 + 2 {
                break;
            }
        }
        Ok(out.truncate(order))
    }

    /// `log(1 + u)` for a series `u` with zero constant term.
    pub fn log1p_of(u: &Series<Poly>) -> Result<Series<Poly>, Error> {
        if !u.coeff(0).is_zero() {
            return Err(Error::ConstantTerm);
        }
        let order = u.order;
        let mut out = Series::zero(order);
        let mut pow = Series::zero(order);
        pow.set(0, Poly::one());
        let mut n = 1u64;
        loop {
            pow = pow.mul(&u.truncate(order));
            if pow.valuation() >= order || pow.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            out = out.add(&pow.scale(&Rat::new((sign).into(), n.into())));
            n += 1;
            if n > order as u64 + 2 {
                break;
            }
        }
        Ok(out)
    }

    pub fn is_2_integral(&self) -> bool {
        self.coeffs.iter().all(Poly::is_2_integral)
    }

    /// JSON encoding: `{"order":N,"coeffs":[poly,...]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "coeffs": self.coeffs.iter().map(Poly::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Series<Poly>, Error> {
        let order = v
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("series JSON needs \"order\"".into()))?;
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("series JSON needs \"coeffs\"".into()))?
            .iter()
            .map(Poly::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Series::from_coeffs(coeffs, order as usize))
    }
}

impl fmt::Display for Series<Poly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let needs_parens = c.num_terms() > 1;
            match i {
                0 => write!(f, "{cs}")?,
                _ => {
                    if needs_parens {
                        write!(f, "({cs})")?;
                    } else if cs == "1" {
                        write!(f, "")?;
                    } else {
                        write!(f, "{cs}*")?;
                    }
                    if cs == "1" {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x")?;
                    }
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order)
    }
}

/// Bivariate truncated series in `(x, y)`, truncated by total degree.
/// Used for the formal group law `F(x, y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bivar {
    pub coeffs: BTreeMap<(usize, usize), Poly>,
    pub order: usize,
}

impl Bivar {
    pub fn zero(order: usize) -> Self {
        Bivar { coeffs: BTreeMap::new(), order }
    }

    pub fn var_x(order: usize) -> Self {
        let mut b = Bivar::zero(order);
        b.set(1, 0, Poly::one());
        b
    }

    pub fn var_y(order: usize) -> Self {
        let mut b = Bivar::zero(order);
        b.set(0, 1, Poly::one());
        b
    }

    pub fn coeff(&self, i: usize, j: usize) -> Poly {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        if i + j >= self.order || p.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), p);
        }
    }

    pub fn add(&self, other: &Bivar) -> Bivar {
        let order = self.order.min(other.order);
        let mut out = Bivar::zero(order);
        for (&(i, j), p) in self.coeffs.iter().chain(other.coeffs.iter()) {
            let s = out.coeff(i, j).add(p);
            out.set(i, j, s);
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> Bivar {
        let mut out = Bivar::zero(self.order);
        for (&(i, j), p) in &self.coeffs {
            out.set(i, j, p.scale(r));
        }
        out
    }

    pub fn mul(&self, other: &Bivar) -> Bivar {
        let order = self.order.min(other.order);
        let mut out = Bivar::zero(order);
        for (&(i1, j1), p1) in &self.coeffs {
            for (&(i2, j2), p2) in &other.coeffs {
                if i1 + i2 + j1 + j2 >= order {
                    continue;
                }
                let s = out.coeff(i1 + i2, j1 + j2).add(&p1.mul(p2));
                out.set(i1 + i2, j1 + j2, s);
            }
        }
        out
    }

    /// Substitute a univariate series into the univariate `h`, treating the
    /// bivariate series as the inner value: `h(self)`.
    pub fn compose_into(h: &Series<Poly>, inner: &Bivar) -> Result<Bivar, Error> {
        if !inner.coeff(0, 0).is_zero() {
            return Err(Error::ConstantTerm);
        }
        let order = inner.order.min(h.order());
        let mut out = Bivar::zero(order);
        out.set(0, 0, h.coeff(0));
        let mut pow = Bivar::zero(order);
        pow.set(0, 0, Poly::one());
        for n in 1..h.order() {
            pow = pow.mul(inner);
            if pow.coeffs.is_empty() {
                break;
            }
            let hn = h.coeff(n);
            if hn.is_zero() {
                continue;
            }
            let mut scaled = Bivar::zero(order);
            for (&(i, j), p) in &pow.coeffs {
                scaled.set(i, j, p.mul(&hn));
            }
            out = out.add(&scaled);
        }
        Ok(out)
    }

    /// Evaluate at univariate series arguments `F(a(x), b(x))`.
    pub fn eval(&self, a: &Series<Poly>, b: &Series<Poly>) -> Result<Series<Poly>, Error> {
        if !a.coeff(0).is_zero() || !b.coeff(0).is_zero() {
            return Err(Error::ConstantTerm);
        }
        let order = a.order().min(b.order());
        let mut out = Series::zero(order);
        // cache powers
        let mut apows: Vec<Series<Poly>> = vec![{
            let mut s = Series::zero(order);
            s.set(0, Poly::one());
            s
        }];
        let mut bpows = apows.clone();
        for (&(i, j), p) in &self.coeffs {
            while apows.len() <= i {
                let next = apows.last().unwrap().mul(a);
                apows.push(next);
            }
            while bpows.len() <= j {
                let next = bpows.last().unwrap().mul(b);
                bpows.push(next);
            }
            let term = apows[i].mul(&bpows[j]);
            let mut scaled = Series::zero(order);
            for k in 0..order.min(term.coeffs.len()) {
                scaled.set(k, term.coeff(k).mul(p));
            }
            out = out.add(&scaled);
        }
        Ok(out.truncate(order))
    }

    pub fn is_2_integral(&self) -> bool {
        self.coeffs.values().all(Poly::is_2_integral)
    }

    /// Swap the two variables.
    pub fn swap(&self) -> Bivar {
        let mut out = Bivar::zero(self.order);
        for (&(i, j), p) in &self.coeffs {
            out.set(j, i, p.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gen::Gen;
    use crate::algebra::poly::Mono;

    fn x(order: usize) -> Series<Poly> {
        Series::x(order)
    }

    #[test]
    fn compose_identity() {
        let g = x(5).add(&x(5).pow(2).scale(&Rat::from_int(3)));
        assert_eq!(x(5).compose(&g).unwrap(), g);
    }

    #[test]
    fn compose_hand_oracle() {
        // compose(x^2, x - t1 x^2) = x^2 - 2 t1 x^3 + t1^2 x^4
        let t1 = Poly::t(1);
        let mut g = x(5);
        g.set(2, t1.neg());
        let got = x(5).pow(2).compose(&g).unwrap();
        let mut expect = Series::zero(5);
        expect.set(2, Poly::one());
        expect.set(3, t1.scale(&Rat::from_int(-2)));
        expect.set(4, Poly::monomial(Mono::gen_pow(Gen::t(1), 2), Rat::one()));
        assert_eq!(got, expect);
    }

    #[test]
    fn reverse_basics() {
        assert_eq!(x(6).reverse().unwrap(), x(6));
        let mut g = x(6);
        g.set(2, Poly::t(1));
        g.set(3, Poly::v(1));
        let inv = g.reverse().unwrap();
        let comp = g.compose(&inv).unwrap();
        assert_eq!(comp, x(comp.order()));
        let comp2 = inv.compose(&g).unwrap();
        assert_eq!(comp2, x(comp2.order()));
        // round trip
        assert_eq!(inv.reverse().unwrap().truncate(6), g.truncate(6));
    }

    #[test]
    fn reverse_rejects_bad_leading() {
        let mut g = Series::<Poly>::zero(4);
        g.set(1, Poly::int(2));
        assert!(matches!(g.reverse(), Err(Error::BadLeadingTerm)));
    }

    #[test]
    fn compose_rejects_constant_term() {
        let mut g = x(4);
        g.set(0, Poly::one());
        assert!(matches!(x(4).compose(&g), Err(Error::ConstantTerm)));
    }

    #[test]
    fn mul_tracks_valuation_in_order() {
        // (x + O(x^4)) * (x + O(x^4)) knows its x^4 coefficient? No: order 5.
        let a = x(4);
        let prod = a.mul(&a);
        assert_eq!(prod.order(), 5);
        // x^{2^k}-style powers keep enough order
        let p4 = a.pow(4);
        assert_eq!(p4.order(), 7); // 4 + 3*1
        assert_eq!(p4.coeff(4), Poly::one());
    }

    #[test]
    fn exp_log_inverse() {
        let mut u = Series::<Poly>::zero(7);
        u.set(1, Poly::t(1));
        u.set(2, Poly::v(1).scale(&Rat::from_int(3)));
        let l = Series::log1p_of(&u).unwrap();
        let e = Series::exp_of(&l).unwrap();
        // exp(log(1+u)) = 1 + u
        let mut expect = u.clone();
        expect.set(0, Poly::one());
        assert_eq!(e, expect.truncate(e.order()));
    }

    #[test]
    fn json_roundtrip() {
        let mut s = x(4);
        s.set(3, Poly::v(1).scale(&Rat::new(1.into(), 3.into())));
        let j = s.to_json();
        assert_eq!(Series::from_json(&j).unwrap(), s);
    }
}
