//! Dense multiplication kernel.
//!
//! Both operands are scaled to integer coefficients (in the field generator
//! `t` as a third variable), convolved on a dense grid, and only the output
//! terms are divided back and reduced modulo the minimal polynomial. The
//! convolution runs in `i128` when a bit-length bound rules out overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{BiPoly, Monomial};
use crate::numfield::{FieldElement, Rational};

/// Largest grid (cells times generator slots) worth allocating densely.
const MAX_CELLS: usize = 1 << 22;

struct IntForm {
    den: BigInt,
    terms: Vec<(Monomial, Vec<BigInt>)>,
    width: usize,
    max_bits: u64,
}

fn int_form(p: &BiPoly) -> IntForm {
    let mut den = BigInt::one();
    for c in p.terms.values() {
        for q in c.raw_coeffs() {
            if !q.denom().is_one() {
                den = den.lcm(q.denom());
            }
        }
    }
    let mut width = 0;
    let mut max_bits = 0;
    let terms = p
        .terms
        .iter()
        .map(|(m, c)| {
            let v: Vec<BigInt> = c.raw_coeffs().iter().map(|q| q.numer() * (&den / q.denom())).collect();
            width = width.max(v.len());
            for n in &v {
                max_bits = max_bits.max(n.bits());
            }
            (*m, v)
        })
        .collect();
    IntForm { den, terms, width, max_bits }
}

/// `a * b`, or `None` when the dense grid would be too large.
pub(super) fn mul_dense(a: &BiPoly, b: &BiPoly) -> Option<BiPoly> {
    let w = (a.deg_x() + b.deg_x() + 1) as usize;
    let h = (a.deg_y() + b.deg_y() + 1) as usize;
    let fa = int_form(a);
    let fb = int_form(b);
    let nt = fa.width + fb.width - 1;
    let cells = w.checked_mul(h)?.checked_mul(nt)?;
    if cells > MAX_CELLS || cells > 64 * fa.terms.len() * fb.terms.len() * nt {
        return None;
    }
    let summands = (fa.terms.len().min(fb.terms.len()) * fa.width.min(fb.width)) as u64;
    let bound = fa.max_bits + fb.max_bits + (64 - summands.leading_zeros() as u64);
    let idx = |x: u32, y: u32, k: usize| ((x as usize) * h + y as usize) * nt + k;
    let numerators: Vec<(usize, BigInt)> = if bound < 126 {
        let small = |f: &IntForm| -> Vec<(Monomial, Vec<i128>)> {
            f.terms.iter().map(|(m, v)| (*m, v.iter().map(|n| n.to_i128().unwrap()).collect())).collect()
        };
        let (sa, sb) = (small(&fa), small(&fb));
        let mut grid = vec![0i128; cells];
        for (ma, va) in &sa {
            for (mb, vb) in &sb {
                let base = idx(ma.x + mb.x, ma.y + mb.y, 0);
                for (i, ca) in va.iter().enumerate() {
                    if *ca == 0 {
                        continue;
                    }
                    for (j, cb) in vb.iter().enumerate() {
                        grid[base + i + j] += ca * cb;
                    }
                }
            }
        }
        grid.into_iter().enumerate().filter(|(_, v)| *v != 0).map(|(i, v)| (i, BigInt::from(v))).collect()
    } else {
        let mut grid = vec![BigInt::zero(); cells];
        for (ma, va) in &fa.terms {
            for (mb, vb) in &fb.terms {
                let base = idx(ma.x + mb.x, ma.y + mb.y, 0);
                for (i, ca) in va.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (j, cb) in vb.iter().enumerate() {
                        grid[base + i + j] += ca * cb;
                    }
                }
            }
        }
        grid.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
    };
    let den = &fa.den * &fb.den;
    let field = a.field.clone();
    let mut out = BiPoly::zero(&field);
    let mut i = 0;
    while i < numerators.len() {
        let cell = numerators[i].0 / nt;
        let mut coeffs = vec![Rational::zero(); nt];
        while i < numerators.len() && numerators[i].0 / nt == cell {
            let (k, n) = &numerators[i];
            coeffs[k % nt] = Rational::new(n.clone(), den.clone());
            i += 1;
        }
        let c = FieldElement::from_coeffs(&field, coeffs);
        if !c.is_zero() {
            let m = Monomial::new((cell / h) as u32, (cell % h) as u32);
            out.terms.insert(m, c);
        }
    }
    Some(out)
}
