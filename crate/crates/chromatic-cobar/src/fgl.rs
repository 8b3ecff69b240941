//! The p-typical formal group law over `BP_*` with Hazewinkel generators:
//! logarithm, exponential, formal sum, p-series, the universal isomorphism
//! `f` with `f^{-1}(x) = sum^F t_i x^{p^i}`, the right unit `eta_R`, the
//! counit, and the coproduct on the `t_n`.
//!
//! Only `p = 2` is exercised downstream, but the constructions are uniform
//! in `p`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Bivar, Family, Gen, Mono, Poly, Rat, Series};
use crate::error::Error;
use crate::Result;

/// Logarithm coefficients `l_0 = 1, l_1, ..., l_n` as rational polynomials
/// in the `v_i`, from the recursion `p l_n = sum_{0<=i<n} l_i v_{n-i}^{p^i}`.
pub fn log_coefficients(p: u32, n_max: u32) -> Vec<Poly> {
    let mut ls = vec![Poly::one()];
    let inv_p = Rat::new(1.into(), (p as i64).into());
    for n in 1..=n_max {
        let mut sum = Poly::zero();
        for i in 0..n {
            let vpow = Poly::v(n - i).pow(p.pow(i));
            sum = sum.add(&ls[i as usize].mul(&vpow));
        }
        ls.push(sum.scale(&inv_p));
    }
    ls
}

/// `log(x) = sum_i l_i x^{p^i}` to the given truncation order, with the
/// `l_i` eliminated into rational polynomials in the `v_i`.
pub fn hazewinkel_log(p: u32, order: usize) -> Series<Poly> {
    assert!(order >= 1);
    let mut n_max: u32 = 0;
    while (p as u64).pow(n_max + 1) < order as u64 {
        n_max += 1;
    }
    let ls = log_coefficients(p, n_max);
    let mut s = Series::zero(order);
    for (i, l) in ls.iter().enumerate() {
        let e = (p as u64).pow(i as u32) as usize;
        if e < order {
            s.set(e, l.clone());
        }
    }
    s
}

/// Element of `BP_*BP (x) BP_*BP` in normal form: the left tensor slot
/// holds monomials in `v` and `t`, the right slot holds `t`-monomials
/// only (coefficients move across the tensor through the right unit).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Tensor2 {
    terms: BTreeMap<(Mono, Mono), Rat>,
}

impl Tensor2 {
    pub fn zero() -> Self {
        Tensor2::default()
    }

    pub fn one() -> Self {
        let mut t = Tensor2::zero();
        t.add_term(Mono::one(), Mono::one(), Rat::one());
        t
    }

    pub fn add_term(&mut self, left: Mono, right: Mono, c: Rat) {
        debug_assert!(!right.has_family(Family::V) && !right.has_family(Family::L));
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((left, right)) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&(Mono, Mono), &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `p (x) 1`.
    pub fn left(p: &Poly) -> Self {
        let mut out = Tensor2::zero();
        for (m, c) in p.terms() {
            out.add_term(m.clone(), Mono::one(), c.clone());
        }
        out
    }

    pub fn add(&self, other: &Tensor2) -> Tensor2 {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Tensor2 {
        Tensor2 { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Tensor2) -> Tensor2 {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rat) -> Tensor2 {
        if r.is_zero() {
            return Tensor2::zero();
        }
        Tensor2 { terms: self.terms.iter().map(|(k, c)| (k.clone(), c * r)).collect() }
    }

    pub fn mul(&self, other: &Tensor2) -> Tensor2 {
        let mut out = Tensor2::zero();
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &other.terms {
                out.add_term(l1.mul(l2), r1.mul(r2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_left(&self, p: &Poly) -> Tensor2 {
        self.mul(&Tensor2::left(p))
    }

    /// `(counit (x) 1)`: kills left slots containing `t`, multiplies the
    /// surviving `v`-part into the right slot.
    pub fn counit_left(&self) -> Poly {
        let mut out = Poly::zero();
        for ((l, r), c) in &self.terms {
            if l.has_family(Family::T) {
                continue;
            }
            out.add_term(l.mul(r), c.clone());
        }
        out
    }

    /// `(1 (x) counit)`: keeps terms with trivial right slot.
    pub fn counit_right(&self) -> Poly {
        let mut out = Poly::zero();
        for ((l, r), c) in &self.terms {
            if r.is_one() {
                out.add_term(l.clone(), c.clone());
            }
        }
        out
    }

    pub fn is_2_integral(&self) -> bool {
        self.terms.values().all(Rat::is_2_integral)
    }

    /// Reduce coefficients mod 2 (dropping even terms).
    pub fn mod2(&self) -> Tensor2 {
        let mut out = Tensor2::zero();
        for ((l, r), c) in &self.terms {
            let red = Rat::from_bigint(c.residue_mod_2pow(1).expect("integral tensor"));
            out.add_term(l.clone(), r.clone(), red);
        }
        out
    }
}

impl crate::algebra::Coeff for Tensor2 {
    fn zero() -> Self {
        Tensor2::zero()
    }
    fn is_zero(&self) -> bool {
        Tensor2::is_zero(self)
    }
    fn one() -> Self {
        Tensor2::one()
    }
    fn add(&self, other: &Self) -> Self {
        Tensor2::add(self, other)
    }
    fn neg(&self) -> Self {
        Tensor2::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        Tensor2::mul(self, other)
    }
    fn scale(&self, r: &Rat) -> Self {
        Tensor2::scale(self, r)
    }
}

impl fmt::Display for Tensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((l, r), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            write!(f, "{l}(x){r}")?;
        }
        Ok(())
    }
}

/// Precomputed formal group law data: logarithm, exponential, bivariate
/// `F(x,y)`, the p-series, the universal isomorphism pair, the right units
/// `eta_R(v_n)` and the coproducts `Delta(t_n)`.
pub struct Fgl {
    pub p: u32,
    pub order: usize,
    pub log: Series<Poly>,
    pub exp: Series<Poly>,
    pub f: Bivar,
    pub two_series: Series<Poly>,
    pub iso_f: Series<Poly>,
    pub iso_f_inv: Series<Poly>,
    eta_r: Vec<Poly>,
    coprod: Vec<Tensor2>,
    l_polys: Vec<Poly>,
}

impl Fgl {
    /// Build all structure data to truncation order `order` on `x`-series.
    pub fn build(p: u32, order: usize) -> Result<Fgl> {
        if order < 2 {
            return Err(Error::TruncationExceeded("formal group law needs order >= 2".into()));
        }
        let degree_bound = 4 * order as i64 + 8;
        let log = hazewinkel_log(p, order);
        let exp = log.reverse()?;

        // F(x, y) = exp(log x + log y)
        let w = {
            let mut b = Bivar::zero(order);
            for i in 1..order {
                let c = log.coeff(i);
                if !c.is_zero() {
                    b.set(i, 0, c.clone());
                    b.set(0, i, c);
                }
            }
            b
        };
        let f = Bivar::compose_into(&exp, &w)?;

        // [p](x) = exp(p * log x)
        let two_series = exp.compose(&log.scale(&Rat::from_int(p as i64)))?;

        // f^{-1}(x) = sum^F_i t_i x^{p^i} = exp( sum_{i,j} l_j t_i^{p^j} x^{p^{i+j}} )
        let l_count = {
            let mut n: u32 = 0;
            while (p as u64).pow(n + 1) < order as u64 {
                n += 1;
            }
            n
        };
        let ls = log_coefficients(p, l_count);
        let mut w = Series::<Poly>::zero(order);
        for i in 0..=l_count {
            let ti = if i == 0 { Poly::one() } else { Poly::t(i) };
            for (j, lj) in ls.iter().enumerate() {
                let e = (p as u128).pow(i) * (p as u128).pow(j as u32);
                if e >= order as u128 {
                    continue;
                }
                let coeff = lj.mul(&ti.pow(p.pow(j as u32)));
                let e = e as usize;
                let c = w.coeff(e).add(&coeff);
                w.set(e, c);
            }
        }
        let iso_f_inv = exp.compose(&w)?;
        let iso_f = iso_f_inv.reverse()?;

        for (name, s) in
            [("two-series", &two_series), ("iso f", &iso_f), ("iso f inverse", &iso_f_inv)]
        {
            if !s.is_2_integral() {
                return Err(Error::IntegralityFailure(name.into()));
            }
        }
        if !f.is_2_integral() {
            return Err(Error::IntegralityFailure("formal group law F".into()));
        }

        let mut fgl = Fgl {
            p,
            order,
            log,
            exp,
            f,
            two_series,
            iso_f,
            iso_f_inv,
            eta_r: Vec::new(),
            coprod: Vec::new(),
            l_polys: ls,
        };
        fgl.compute_eta_r(degree_bound)?;
        fgl.compute_coproducts()?;
        Ok(fgl)
    }

    /// Largest generator index carried by the right-unit table.
    pub fn eta_n_max(&self) -> u32 {
        self.eta_r.len() as u32
    }

    fn compute_eta_r(&mut self, degree_bound: i64) -> Result<()> {
        let p = self.p;
        let mut n_max: u32 = 0;
        while n_max < 5 && Gen::v(n_max + 1).degree_at(p) <= degree_bound {
            n_max += 1;
        }
        let ls = log_coefficients(p, n_max);
        // eta_R(l_n) = sum_{i+j=n} l_i t_j^{p^i}
        let eta_l = |n: u32| -> Poly {
            let mut sum = Poly::zero();
            for i in 0..=n {
                let j = n - i;
                let tj = if j == 0 { Poly::one() } else { Poly::t(j) };
                sum = sum.add(&ls[i as usize].mul(&tj.pow(p.pow(i))));
            }
            sum
        };
        let mut etas: Vec<Poly> = Vec::new();
        for n in 1..=n_max {
            // p eta_R(l_n) = sum_{0<=i<n} eta_R(l_i) eta_R(v_{n-i})^{p^i};
            // the i = 0 term is eta_R(v_n) itself.
            let mut rhs = eta_l(n).scale(&Rat::from_int(p as i64));
            for i in 1..n {
                let ev = etas[(n - i - 1) as usize].pow(p.pow(i));
                rhs = rhs.sub(&eta_l(i).mul(&ev));
            }
            if !rhs.is_2_integral() {
                return Err(Error::IntegralityFailure(format!("eta_R(v{n})")));
            }
            etas.push(rhs);
        }
        self.eta_r = etas;
        Ok(())
    }

    /// `eta_R(v_n)` as an integral polynomial in the `v` and `t`.
    pub fn right_unit(&self, n: u32, bound: i64) -> Result<&Poly> {
        if Gen::v(n).degree_at(self.p) > bound {
            return Err(Error::DegreeTooLarge(format!(
                "eta_R(v{n}) has degree {} beyond bound {bound}",
                Gen::v(n).degree_at(self.p)
            )));
        }
        self.eta_r
            .get(n as usize - 1)
            .ok_or_else(|| Error::DegreeTooLarge(format!("eta_R table stops before v{n}")))
    }

    /// Apply `eta_R` to a polynomial in the `v_i` (ring homomorphism; `t`
    /// generators pass through unchanged).
    pub fn apply_eta_r(&self, poly: &Poly) -> Result<Poly> {
        let mut map = BTreeMap::new();
        for (m, _) in poly.terms() {
            for (g, _) in m.iter() {
                if g.family == Family::V {
                    let image = self
                        .eta_r
                        .get(g.index as usize - 1)
                        .ok_or_else(|| {
                            Error::DegreeTooLarge(format!("eta_R table stops before {g}"))
                        })?
                        .clone();
                    map.insert(*g, image);
                } else if g.family == Family::L {
                    return Err(Error::IntegralityFailure(
                        "l-generators may not cross a module boundary".into(),
                    ));
                }
            }
        }
        Ok(poly.substitute(&map))
    }

    fn compute_coproducts(&mut self) -> Result<()> {
        let p = self.p;
        let mut n_max: u32 = 0;
        while n_max < 4 && (p as u64).pow(n_max + 1) < self.order as u64 {
            n_max += 1;
        }
        if n_max == 0 {
            return Ok(());
        }
        let order = (p as usize).pow(n_max) + 1;

        // right-hand side: sum^F_{i,j} (t_i (x) 1) ((1 (x) t_j) x^{p^j})^{p^i}
        let exp_t: Series<Tensor2> = self.exp.truncate(order).map(Tensor2::left);
        let ls = self.l_polys.clone();
        let log_term = |u: &Tensor2, k: usize, acc: &mut Series<Tensor2>| {
            // formal log of u * x^k: sum_m l_m u^{p^m} x^{k p^m}
            for (m, lm) in ls.iter().enumerate() {
                let e = k as u128 * (p as u128).pow(m as u32);
                if e >= order as u128 {
                    break;
                }
                let e = e as usize;
                let mut upow = Tensor2::one();
                for _ in 0..p.pow(m as u32) {
                    upow = upow.mul(u);
                }
                let term = upow.mul(&Tensor2::left(lm));
                let c = acc.coeff(e).add(&term);
                acc.set(e, c);
            }
        };

        let mut w_rhs = Series::<Tensor2>::zero(order);
        for i in 0..=n_max {
            for j in 0..=n_max {
                let e = (p as u128).pow(i + j);
                if e >= order as u128 {
                    continue;
                }
                let mut u = Tensor2::one();
                if i > 0 {
                    u = u.mul(&Tensor2::left(&Poly::t(i)));
                }
                if j > 0 {
                    let mut right = Tensor2::zero();
                    right.add_term(Mono::one(), Mono::gen_pow(Gen::t(j), p.pow(i)), Rat::one());
                    u = u.mul(&right);
                }
                log_term(&u, e as usize, &mut w_rhs);
            }
        }
        let rhs = exp_t.compose(&w_rhs)?;

        // solve sum^F_k Delta-tilde(t_k) x^{p^k} = rhs, coefficient by
        // coefficient at the 2-power exponents
        let mut deltas: Vec<Tensor2> = Vec::new();
        for n in 1..=n_max {
            let mut w_known = Series::<Tensor2>::zero(order);
            log_term(&Tensor2::one(), 1, &mut w_known);
            for (m, d) in deltas.iter().enumerate() {
                log_term(d, (p as usize).pow(m as u32 + 1), &mut w_known);
            }
            let known = exp_t.compose(&w_known)?;
            let e = (p as usize).pow(n);
            let delta = rhs.coeff(e).sub(&known.coeff(e));
            if !delta.is_2_integral() {
                return Err(Error::IntegralityFailure(format!("Delta(t{n})")));
            }
            deltas.push(delta);
        }
        self.coprod = deltas;
        Ok(())
    }

    /// Full coproduct `Delta(t_n)` in `BP_*BP (x) BP_*BP`, exact.
    pub fn coproduct(&self, n: u32, bound: i64) -> Result<Tensor2> {
        if Gen::t(n).degree_at(self.p) > bound {
            return Err(Error::DegreeTooLarge(format!("Delta(t{n}) beyond bound {bound}")));
        }
        let base = self
            .coprod
            .get(n as usize - 1)
            .ok_or_else(|| Error::DegreeTooLarge(format!("coproduct table stops before t{n}")))?;
        Ok(base.clone())
    }

    /// Coproduct of an arbitrary monomial in `v` and `t` (ring map with
    /// `Delta(v) = v (x) 1` on the left unit).
    pub fn coproduct_mono(&self, m: &Mono) -> Result<Tensor2> {
        let mut out = Tensor2::one();
        for (g, e) in m.iter() {
            match g.family {
                Family::V => {
                    out = out.mul_left(&Poly::gen(*g).pow(*e));
                }
                Family::T => {
                    let d = self.coproduct(g.index, i64::MAX)?;
                    for _ in 0..*e {
                        out = out.mul(&d);
                    }
                }
                _ => {
                    return Err(Error::Parse(format!("coproduct undefined on {g}")));
                }
            }
        }
        Ok(out)
    }

    /// Inject an element of `BP_*BP` into the right tensor factor:
    /// `t_n -> 1 (x) t_n`, `v_n -> eta_R(v_n) (x) 1`.
    pub fn inject_right(&self, poly: &Poly) -> Result<Tensor2> {
        let mut out = Tensor2::zero();
        for (m, c) in poly.terms() {
            let (tpart, rest) = m.split_family(Family::T);
            let vimage = self.apply_eta_r(&Poly::monomial(rest, c.clone()))?;
            let mut term = Tensor2::left(&vimage);
            if !tpart.is_one() {
                let mut right = Tensor2::zero();
                right.add_term(Mono::one(), tpart, Rat::one());
                term = term.mul(&right);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Reduced coproduct of a monomial: `Delta(m) - m (x) 1 - iota_R(m)`.
    pub fn reduced_coproduct(&self, m: &Mono) -> Result<Tensor2> {
        let full = self.coproduct_mono(m)?;
        let left = Tensor2::left(&Poly::monomial(m.clone(), Rat::one()));
        let right = self.inject_right(&Poly::monomial(m.clone(), Rat::one()))?;
        Ok(full.sub(&left).sub(&right))
    }

    /// Coefficients `c_0, c_1, ...` of the p-series `[p](x) = sum c_i x^{i+1}`.
    pub fn p_series_coefficients(&self, count: usize) -> Result<Vec<Poly>> {
        if count + 1 > self.order {
            return Err(Error::TruncationExceeded(format!(
                "two-series known to order {}, asked for {count} coefficients",
                self.order
            )));
        }
        Ok((0..count).map(|i| self.two_series.coeff(i + 1)).collect())
    }

    /// Coefficients `c_d` of `f(x)^j = sum_{d>=0} c_d x^{j+d}` for any
    /// integer `j` (negative powers invert the unit tail of `f`).
    pub fn f_power_tail(&self, j: i64, len: usize) -> Result<Vec<Poly>> {
        if len + 1 > self.order {
            return Err(Error::TruncationExceeded(format!(
                "f known to order {}, window tail of length {len} requested",
                self.order
            )));
        }
        // u = f(x)/x - 1
        let mut u = Series::<Poly>::zero(len.max(1));
        for d in 1..len {
            u.set(d, self.iso_f.coeff(d + 1));
        }
        let l = Series::log1p_of(&u)?;
        let tail = Series::exp_of(&l.scale(&Rat::from_int(j)))?;
        let out: Vec<Poly> = (0..len).map(|d| tail.coeff(d)).collect();
        for c in &out {
            if !c.is_2_integral() {
                return Err(Error::IntegralityFailure(format!("f^{j} tail")));
            }
        }
        Ok(out)
    }
}

/// Formal sum of a list of series with zero constant term, folded through
/// the formal group law.
pub fn formal_sum(terms: &[Series<Poly>], fgl: &Fgl) -> Result<Series<Poly>> {
    if terms.is_empty() {
        return Err(Error::TruncationExceeded("formal sum of an empty list".into()));
    }
    let order = terms.iter().map(Series::order).min().unwrap().min(fgl.order);
    if order < 2 {
        return Err(Error::TruncationExceeded("formal sum needs order >= 2".into()));
    }
    let mut w = Series::<Poly>::zero(order);
    for t in terms {
        if !t.coeff(0).is_zero() {
            return Err(Error::ConstantTerm);
        }
        w = w.add(&fgl.log.truncate(order).compose(&t.truncate(order))?);
    }
    fgl.exp.truncate(order).compose(&w)
}

/// The counit: substitute every `t_n` by zero.
pub fn counit(a: &Poly) -> Poly {
    a.kill_family(Family::T)
}

/// Three-fold tensor in normal form (left slot may hold `v` and `t`, the
/// other two slots hold `t`-monomials), for coassociativity checking.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Tensor3 {
    pub terms: BTreeMap<(Mono, Mono, Mono), Rat>,
}

impl Tensor3 {
    fn add_term(&mut self, a: Mono, b: Mono, c: Mono, r: Rat) {
        if r.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((a, b, c)) {
            Entry::Vacant(e) => {
                e.insert(r);
            }
            Entry::Occupied(mut e) => {
                let s = &*e.get() + &r;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Apply the coproduct to the left slot of a `Tensor2`.
    pub fn coproduct_left(t: &Tensor2, fgl: &Fgl) -> Result<Tensor3> {
        let mut out = Tensor3::default();
        for ((l, r), c) in t.terms() {
            let d = fgl.coproduct_mono(l)?;
            for ((a, b), c2) in d.terms() {
                out.add_term(a.clone(), b.clone(), r.clone(), c * c2);
            }
        }
        Ok(out)
    }

    /// Apply the coproduct to the right slot of a `Tensor2`. Any `v`
    /// coefficients landing in the middle slot move left through `eta_R`.
    pub fn coproduct_right(t: &Tensor2, fgl: &Fgl) -> Result<Tensor3> {
        let mut out = Tensor3::default();
        for ((l, r), c) in t.terms() {
            let d = fgl.coproduct_mono(r)?;
            for ((a, b), c2) in d.terms() {
                let (apart_t, apart_v) = a.split_family(Family::T);
                // crossing one tensor sign applies eta_R once; the whole
                // image (t-parts included) lands in the left slot
                let moved = fgl.apply_eta_r(&Poly::monomial(apart_v, c * c2))?;
                for (lm, lc) in moved.terms() {
                    out.add_term(l.mul(lm), apart_t.clone(), b.clone(), lc.clone());
                }
            }
        }
        Ok(out)
    }
}
