//! Exact integer linear algebra: Smith normal form with transforms,
//! kernel lattices, linear solving over Z and Z/2^e, and homology of a
//! two-step complex of free modules.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// Dense row-major matrix over Z.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Mat::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for i in 0..rows {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let ai = a * self.cols + j;
            let bi = b * self.cols + j;
            self.data.swap(ai, bi);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += k * row[b]
    fn add_row(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self[(b, j)] * k;
            self[(a, j)] += t;
        }
    }

    /// col[a] += k * col[b]
    fn add_col(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = &self[(i, b)] * k;
            self[(i, a)] += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let t = -self[(a, j)].clone();
            self[(a, j)] = t;
        }
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of `smith`: `u * a * v = s` with `u`, `v` unimodular and `s`
/// diagonal with a divisibility chain.
pub struct Smith {
    pub s: Mat,
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    pub rank: usize,
}

/// Smith normal form over Z with transformation matrices.
pub fn smith(a: &Mat) -> Smith {
    let mut s = a.clone();
    let mut u = Mat::identity(a.rows);
    let mut u_inv = Mat::identity(a.rows);
    let mut v = Mat::identity(a.cols);

    let n = a.rows.min(a.cols);
    let mut t = 0;
    while t < n {
        // find pivot: smallest non-zero magnitude in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..s.rows {
            for j in t..s.cols {
                if !s[(i, j)].is_zero()
                    && pivot.map_or(true, |(pi, pj)| s[(i, j)].abs() < s[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        // clear row and column t by euclidean steps
        loop {
            let mut clean = true;
            for i in (t + 1)..s.rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = div_round(&s[(i, t)], &s[(t, t)]);
                s.add_row(i, t, &(-&q));
                u.add_row(i, t, &(-&q));
                u_inv.add_col(t, i, &q);
                if !s[(i, t)].is_zero() {
                    // remainder smaller than pivot: swap up and restart
                    s.swap_rows(t, i);
                    u.swap_rows(t, i);
                    u_inv.swap_cols(t, i);
                    clean = false;
                }
            }
            for j in (t + 1)..s.cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = div_round(&s[(t, j)], &s[(t, t)]);
                s.add_col(j, t, &(-&q));
                v.add_col(j, t, &(-&q));
                if !s[(t, j)].is_zero() {
                    s.swap_cols(t, j);
                    v.swap_cols(t, j);
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }

        // enforce the divisibility chain: s[t][t] must divide everything below
        let mut redo = false;
        'outer: for i in (t + 1)..s.rows {
            for j in (t + 1)..s.cols {
                if !(&s[(i, j)] % &s[(t, t)]).is_zero() {
                    s.add_col(t, j, &BigInt::one());
                    v.add_col(t, j, &BigInt::one());
                    redo = true;
                    break 'outer;
                }
            }
        }
        if redo {
            continue;
        }

        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }

    let rank = (0..n).take_while(|&i| !s[(i, i)].is_zero()).count();
    Smith { s, u, u_inv, v, rank }
}

impl Mat {
    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let t = -self[(i, a)].clone();
            self[(i, a)] = t;
        }
    }
}

/// Truncated division; the remainder magnitude is strictly below |b|,
/// which is what the elimination loop needs to make progress.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_rem(b).0
}

/// Basis of the integer kernel lattice {x : a x = 0}.
pub fn kernel_basis(a: &Mat) -> Vec<Vec<BigInt>> {
    let sm = smith(a);
    let mut out = Vec::new();
    for j in sm.rank..a.cols {
        out.push(sm.v.column(j));
    }
    out
}

/// Solve `a x = b` over Z. Returns any solution.
pub fn solve(a: &Mat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let sm = smith(a);
    let ub = sm.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for i in 0..a.rows {
        if i < sm.rank {
            let (q, r) = ub[i].div_rem(&sm.s[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ub[i].is_zero() {
            return None;
        }
    }
    Some(sm.v.mul_vec(&y))
}

/// Solve `a x = b (mod 2^e)`; the result entries are reduced mod 2^e.
pub fn solve_mod_2pow(a: &Mat, b: &[BigInt], e: u32) -> Option<Vec<BigInt>> {
    let modulus = BigInt::one() << e;
    // augment with 2^e * I so the integral solver works modulo 2^e
    let mut aug = Mat::zero(a.rows, a.cols + a.rows);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols + i)] = modulus.clone();
    }
    let x = solve(&aug, b)?;
    Some(x[..a.cols].iter().map(|v| v.mod_floor(&modulus)).collect())
}

/// A lattice basis (column vectors) for the span of the given generators,
/// via column reduction.
pub fn lattice_basis(dim: usize, generators: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if generators.is_empty() {
        return Vec::new();
    }
    let m = Mat::from_columns(dim, generators);
    let sm = smith(&m);
    // span(m) = span(u_inv * s): columns u_inv * s e_i = s_ii * (u_inv col i)
    let mut out = Vec::new();
    for i in 0..sm.rank {
        let col = sm.u_inv.column(i);
        out.push(col.iter().map(|x| x * &sm.s[(i, i)]).collect());
    }
    out
}

/// Invariant factor decomposition of `ker(d_out) / im(d_in)`.
///
/// `d_in`: matrix of the incoming differential (rows indexed by the middle
/// term), `d_out`: matrix of the outgoing differential (columns indexed by
/// the middle term). When `two_power` is set the complex is taken over
/// Z/2^e, else over Z.
pub struct Homology {
    /// Finite invariant factors > 1, in divisibility order.
    pub factors: Vec<BigInt>,
    /// Generator vectors (middle-term coordinates), one per factor.
    pub generators: Vec<Vec<BigInt>>,
    /// Rank of the free part (only possible in the integral case).
    pub free_rank: usize,
    /// Kernel lattice basis used (middle-term coordinates).
    pub kernel: Vec<Vec<BigInt>>,
}

pub fn homology(d_in: &Mat, d_out: &Mat, two_power: Option<u32>) -> Homology {
    let dim = d_out.cols;
    assert_eq!(d_in.rows, dim);

    // kernel lattice of d_out (mod 2^e if requested)
    let kernel: Vec<Vec<BigInt>> = match two_power {
        None => kernel_basis(d_out),
        Some(e) => {
            let modulus = BigInt::one() << e;
            let mut aug = Mat::zero(d_out.rows, dim + d_out.rows);
            for i in 0..d_out.rows {
                for j in 0..dim {
                    aug[(i, j)] = d_out[(i, j)].clone();
                }
                aug[(i, dim + i)] = modulus.clone();
            }
            let mut gens: Vec<Vec<BigInt>> =
                kernel_basis(&aug).into_iter().map(|v| v[..dim].to_vec()).collect();
            // the kernel mod 2^e always contains 2^e Z^dim
            for i in 0..dim {
                let mut v = vec![BigInt::zero(); dim];
                v[i] = modulus.clone();
                gens.push(v);
            }
            lattice_basis(dim, &gens)
        }
    };

    if kernel.is_empty() {
        return Homology { factors: Vec::new(), generators: Vec::new(), free_rank: 0, kernel };
    }

    let kmat = Mat::from_columns(dim, &kernel);

    // express the image (plus 2^e relations) in kernel coordinates
    let mut image_cols: Vec<Vec<BigInt>> = (0..d_in.cols).map(|j| d_in.column(j)).collect();
    if let Some(e) = two_power {
        let modulus = BigInt::one() << e;
        for i in 0..dim {
            let mut v = vec![BigInt::zero(); dim];
            v[i] = modulus.clone();
            image_cols.push(v);
        }
    }
    let mut coords: Vec<Vec<BigInt>> = Vec::new();
    for col in &image_cols {
        let sol = solve(&kmat, col).expect("image must lie in kernel (d.d = 0)");
        coords.push(sol);
    }
    let k = kernel.len();
    let x = if coords.is_empty() { Mat::zero(k, 0) } else { Mat::from_columns(k, &coords) };
    let sm = smith(&x);

    let mut factors = Vec::new();
    let mut generators = Vec::new();
    for i in 0..sm.rank {
        let d = sm.s[(i, i)].clone();
        if d.abs() > BigInt::one() {
            // generator: kmat * u_inv e_i
            let coeffs = sm.u_inv.column(i);
            let mut vec = vec![BigInt::zero(); dim];
            for (kidx, c) in coeffs.iter().enumerate() {
                for d2 in 0..dim {
                    vec[d2] += &kernel[kidx][d2] * c;
                }
            }
            factors.push(d.abs());
            generators.push(vec);
        }
    }
    let free_rank = k - sm.rank;
    if free_rank > 0 {
        for i in sm.rank..k {
            let coeffs = sm.u_inv.column(i);
            let mut vec = vec![BigInt::zero(); dim];
            for (kidx, c) in coeffs.iter().enumerate() {
                for d2 in 0..dim {
                    vec[d2] += &kernel[kidx][d2] * c;
                }
            }
            generators.push(vec);
        }
    }

    Homology { factors, generators, free_rank, kernel }
}

/// Dense bit-packed vector over F_2.
#[derive(Clone, Debug, PartialEq)]
pub struct BitVec {
    pub len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zero(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        if v {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn xor_in(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn leading(&self) -> Option<usize> {
        for (wi, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }
}

/// Row-echelon accumulator over F_2 with optional combination tracking.
pub struct F2Echelon {
    dim: usize,
    /// (pivot index, vector, combination over the inserted generators)
    rows: Vec<(usize, BitVec, BitVec)>,
    inserted: usize,
    track: usize,
}

impl F2Echelon {
    /// `track` is the maximum number of insertions whose combinations are
    /// recorded.
    pub fn new(dim: usize, track: usize) -> Self {
        F2Echelon { dim, rows: Vec::new(), inserted: 0, track }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the echelon; returns the remainder and the
    /// combination of previously inserted vectors used.
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut r = v.clone();
        let mut combo = BitVec::zero(self.track.max(1));
        for (p, row, rc) in &self.rows {
            if r.get(*p) {
                r.xor_in(row);
                combo.xor_in(rc);
            }
        }
        (r, combo)
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let (mut r, mut combo) = self.reduce(v);
        let idx = self.inserted;
        self.inserted += 1;
        if idx < self.track {
            combo.set(idx, !combo.get(idx));
        }
        match r.leading() {
            None => false,
            Some(p) => {
                // back-substitute to keep reduced form
                for (q, row, rc) in self.rows.iter_mut() {
                    if row.get(p) {
                        row.xor_in(&r);
                        rc.xor_in(&combo);
                        let _ = q;
                    }
                }
                self.rows.push((p, r.split_off_self(), combo));
                self.rows.sort_by_key(|(p, _, _)| *p);
                true
            }
        }
    }

    /// Membership of `v` in the span; on success, the combination of
    /// inserted generators realizing it.
    pub fn express(&self, v: &BitVec) -> Option<BitVec> {
        let (r, combo) = self.reduce(v);
        if r.is_zero() {
            Some(combo)
        } else {
            None
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

trait SplitOffSelf {
    fn split_off_self(&mut self) -> Self;
}

impl SplitOffSelf for BitVec {
    fn split_off_self(&mut self) -> BitVec {
        BitVec { len: self.len, words: std::mem::take(&mut self.words) }
    }
}

/// Kernel basis of an F_2 matrix given by columns.
pub fn f2_kernel_basis(dim_from: usize, columns: &[BitVec]) -> Vec<BitVec> {
    // gaussian elimination on the transpose-with-identity trick:
    // treat each column as (image, unit vector) and find combinations
    // mapping to zero.
    let mut ech: Vec<(usize, BitVec, BitVec)> = Vec::new(); // pivot in image space
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut img = col.clone();
        let mut pre = BitVec::zero(dim_from);
        pre.set(j, true);
        for (p, erow, epre) in &ech {
            if img.get(*p) {
                img.xor_in(erow);
                pre.xor_in(epre);
            }
        }
        match img.leading() {
            None => kernel.push(pre),
            Some(p) => ech.push((p, img, pre)),
        }
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, vals: &[i64]) -> Mat {
        let mut mat = Mat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                mat[(i, j)] = BigInt::from(vals[i * cols + j]);
            }
        }
        mat
    }

    #[test]
    fn smith_diagonal_chain() {
        let a = m(3, 3, &[2, 4, 4, -6, 6, 12, 10, 4, 16]);
        let sm = smith(&a);
        // classic example: invariant factors 2, 2, 156
        assert_eq!(sm.s[(0, 0)], BigInt::from(2));
        assert_eq!(sm.s[(1, 1)], BigInt::from(2));
        assert_eq!(sm.s[(2, 2)], BigInt::from(156));
        // check u a v = s and u u_inv = 1
        let uav = {
            let mut acc = Mat::zero(3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    let mut s = BigInt::zero();
                    for k in 0..3 {
                        for l in 0..3 {
                            s += &sm.u[(i, k)] * &a[(k, l)] * &sm.v[(l, j)];
                        }
                    }
                    acc[(i, j)] = s;
                }
            }
            acc
        };
        assert_eq!(uav, sm.s);
        let mut uu = Mat::zero(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                let mut s = BigInt::zero();
                for k in 0..3 {
                    s += &sm.u[(i, k)] * &sm.u_inv[(k, j)];
                }
                uu[(i, j)] = s;
            }
        }
        assert_eq!(uu, Mat::identity(3));
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(2, 3, &[1, 2, 3, 2, 4, 6]);
        let ker = kernel_basis(&a);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            assert!(a.mul_vec(k).iter().all(Zero::is_zero));
        }
        let b = vec![BigInt::from(6), BigInt::from(12)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(solve(&a, &[BigInt::from(1), BigInt::from(1)]).is_none());
    }

    #[test]
    fn solve_mod() {
        // 2x = 4 mod 8 has solution x = 2 (among others)
        let a = m(1, 1, &[2]);
        let x = solve_mod_2pow(&a, &[BigInt::from(4)], 3).unwrap();
        let got = (BigInt::from(2) * &x[0]).mod_floor(&BigInt::from(8));
        assert_eq!(got, BigInt::from(4));
        // 2x = 1 mod 8 has none
        assert!(solve_mod_2pow(&a, &[BigInt::from(1)], 3).is_none());
    }

    #[test]
    fn homology_of_z_complex() {
        // 0 -> Z --2--> Z -> 0 : H_middle at 'target' has ker(0)/im(2) = Z/2
        let d_in = m(1, 1, &[2]);
        let d_out = Mat::zero(0, 1);
        let h = homology(&d_in, &d_out, None);
        assert_eq!(h.factors, vec![BigInt::from(2)]);
        assert_eq!(h.free_rank, 0);
    }

    #[test]
    fn homology_mod_2pow_complex() {
        // over Z/4: middle Z/4, d_out = 2: kernel = {0, 2}; d_in = 0:
        // H = Z/2 generated by 2.
        let d_in = Mat::zero(1, 0);
        let d_out = m(1, 1, &[2]);
        let h = homology(&d_in, &d_out, Some(2));
        assert_eq!(h.factors, vec![BigInt::from(2)]);
    }
}

#[cfg(test)]
mod f2_tests {
    use super::*;

    fn bv(bits: &[usize], len: usize) -> BitVec {
        let mut v = BitVec::zero(len);
        for &b in bits {
            v.set(b, true);
        }
        v
    }

    #[test]
    fn echelon_and_express() {
        let mut e = F2Echelon::new(4, 8);
        assert!(e.insert(&bv(&[0, 1], 4)));
        assert!(e.insert(&bv(&[1, 2], 4)));
        assert!(!e.insert(&bv(&[0, 2], 4))); // dependent
        assert_eq!(e.rank(), 2);
        let combo = e.express(&bv(&[0, 2], 4)).unwrap();
        assert!(combo.get(0) && combo.get(1));
        assert!(e.express(&bv(&[3], 4)).is_none());
    }

    #[test]
    fn kernel_over_f2() {
        // columns c0 = (1,0), c1 = (1,0), c2 = (0,1): kernel spanned by c0+c1
        let cols = vec![bv(&[0], 2), bv(&[0], 2), bv(&[1], 2)];
        let ker = f2_kernel_basis(3, &cols);
        assert_eq!(ker.len(), 1);
        assert!(ker[0].get(0) && ker[0].get(1) && !ker[0].get(2));
    }
}
