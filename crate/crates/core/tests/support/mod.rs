//! Test oracles that share no code with the library's floating-point path:
//! exact rational elimination over ℚ(i), and elimination over the field
//! F_{p²} = F_p[i]/(i² + 1) with p = 2⁶¹ − 1 for Gaussian-integer families
//! too large for big rationals. Any rank over F_{p²} is a lower bound on the
//! rank over ℚ(i) and equals it unless p divides every maximal nonzero minor.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use exposed_maps::numlin::CVector;

/// Gaussian integer (re, im).
pub type GInt = (i64, i64);

pub fn gmul(a: GInt, b: GInt) -> GInt {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

pub fn gconj(a: GInt) -> GInt {
    (a.0, -a.1)
}

pub fn gkron(a: &[GInt], b: &[GInt]) -> Vec<GInt> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| gmul(x, y))).collect()
}

pub fn gmatvec(m: &[Vec<GInt>], v: &[GInt]) -> Vec<GInt> {
    m.iter()
        .map(|row| row.iter().zip(v).fold((0, 0), |acc, (&a, &b)| {
            let p = gmul(a, b);
            (acc.0 + p.0, acc.1 + p.1)
        }))
        .collect()
}

/// Every nonzero vector in ℂⁿ with entries drawn from `values`.
pub fn gaussian_grid(n: usize, values: &[GInt]) -> Vec<Vec<GInt>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<GInt>| {
                values.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&z| z != (0, 0)));
    out
}

pub const UNITS_AND_ZERO: [GInt; 5] = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)];

/// Exact conversion of a floating vector with Gaussian-integer entries.
pub fn to_gint(v: &CVector<f64>) -> Vec<GInt> {
    v.iter()
        .map(|z| {
            assert!(z.re.fract() == 0.0 && z.im.fract() == 0.0, "non-integral entry {z}");
            (z.re as i64, z.im as i64)
        })
        .collect()
}

pub fn to_cvector(v: &[GInt]) -> CVector<f64> {
    v.iter().map(|&(a, b)| Complex::new(a as f64, b as f64)).collect()
}

const P: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Fp2(u64, u64);

fn addp(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn subp(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn mulp(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powp(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulp(r, a);
        }
        a = mulp(a, a);
        e >>= 1;
    }
    r
}

impl Fp2 {
    fn from_gint(z: GInt) -> Self {
        let red = |x: i64| -> u64 { (x as i128).rem_euclid(P as i128) as u64 };
        Fp2(red(z.0), red(z.1))
    }

    fn is_zero(self) -> bool {
        self.0 == 0 && self.1 == 0
    }

    fn mul(self, o: Self) -> Self {
        Fp2(subp(mulp(self.0, o.0), mulp(self.1, o.1)), addp(mulp(self.0, o.1), mulp(self.1, o.0)))
    }

    fn sub(self, o: Self) -> Self {
        Fp2(subp(self.0, o.0), subp(self.1, o.1))
    }

    fn inv(self) -> Self {
        // (a + bi)⁻¹ = (a − bi)/(a² + b²); a² + b² ≠ 0 since −1 is not a square mod p
        let n = addp(mulp(self.0, self.0), mulp(self.1, self.1));
        let ni = powp(n, P - 2);
        Fp2(mulp(self.0, ni), mulp(subp(0, self.1), ni))
    }
}

/// Incremental echelon form over F_{p²}.
#[derive(Default)]
pub struct ModRank {
    pivots: Vec<(usize, Vec<Fp2>)>,
}

impl ModRank {
    /// Returns whether `v` was independent of everything seen so far.
    pub fn add(&mut self, v: &[GInt]) -> bool {
        let mut w: Vec<Fp2> = v.iter().map(|&z| Fp2::from_gint(z)).collect();
        for (c, row) in &self.pivots {
            let f = w[*c];
            if !f.is_zero() {
                for (x, r) in w.iter_mut().zip(row) {
                    *x = x.sub(f.mul(*r));
                }
            }
        }
        match w.iter().position(|z| !z.is_zero()) {
            Some(c) => {
                let inv = w[c].inv();
                let row = w.iter().map(|z| z.mul(inv)).collect();
                self.pivots.push((c, row));
                true
            }
            None => false,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn mod_rank(vectors: &[Vec<GInt>]) -> usize {
    let mut r = ModRank::default();
    for v in vectors {
        r.add(v);
    }
    r.rank()
}

pub type CQ = Complex<BigRational>;

pub fn q(re: i64, im: i64) -> CQ {
    Complex::new(BigRational::from_integer(BigInt::from(re)), BigRational::from_integer(BigInt::from(im)))
}

/// Rank over ℚ(i) by Gaussian elimination on the rows.
pub fn rational_rank(rows: &[Vec<CQ>]) -> usize {
    let mut m: Vec<Vec<CQ>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = CQ::one() / m[rank][c].clone();
        let pivot_row: Vec<CQ> = m[rank].iter().map(|z| z.clone() * inv.clone()).collect();
        for r in (rank + 1)..m.len() {
            let f = m[r][c].clone();
            if !f.is_zero() {
                for (x, pv) in m[r].iter_mut().zip(&pivot_row) {
                    *x = x.clone() - f.clone() * pv.clone();
                }
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

pub fn gint_rows_to_q(rows: &[Vec<GInt>]) -> Vec<Vec<CQ>> {
    rows.iter().map(|r| r.iter().map(|&(a, b)| q(a, b)).collect()).collect()
}
