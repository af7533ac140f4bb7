//! Deformation invariants: the modular homomorphism `q`, its image in the
//! positive rationals, and the first Betti number.
//!
//! The image of `q` is a finitely generated subgroup of `Q_{>0}`, which is
//! free abelian on the primes. It is stored as a row lattice of prime
//! exponent vectors in Hermite normal form, so equal subgroups have equal
//! representations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{GraphError, WordError};
use crate::graph::{EdgeEnd, GbsGraph};
use crate::words::PathWord;

/// `q(w) = ∏ |λ(x)| / |λ(~x)|` over the edge crossings `x` of `w`.
pub fn q_of_word(g: &GbsGraph, w: &PathWord) -> Result<BigRational, WordError> {
    w.check(g)?;
    if !w.is_closed(g) {
        return Err(WordError::NotClosed {
            start: w.base().to_string(),
            end: w.end_vertex(g).to_string(),
        });
    }
    Ok(q_of_path(g, w.edges()))
}

fn q_of_path(g: &GbsGraph, path: &[EdgeEnd]) -> BigRational {
    path.iter().fold(BigRational::one(), |acc, x| {
        acc * BigRational::new(g.label(x).abs(), g.label(&x.reverse()).abs())
    })
}

pub fn betti_number(g: &GbsGraph) -> Result<usize, GraphError> {
    g.betti_number()
}

/// Prime exponents of a positive rational, or `None` for nonpositive input.
pub fn prime_exponents(q: &BigRational) -> Option<BTreeMap<BigUint, BigInt>> {
    if !q.is_positive() {
        return None;
    }
    let mut out: BTreeMap<BigUint, BigInt> = BTreeMap::new();
    for (part, sign) in [(q.numer(), 1), (q.denom(), -1)] {
        let n = part.magnitude().clone();
        if n.is_one() {
            continue;
        }
        for (p, k) in num_prime::nt_funcs::factorize(n) {
            *out.entry(p).or_default() += BigInt::from(k as i64 * sign);
        }
    }
    out.retain(|_, k| !k.is_zero());
    Some(out)
}

/// A subgroup of the positive rationals in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModularImage {
    /// Primes with a nonzero exponent somewhere in the lattice, ascending.
    pub primes: Vec<BigUint>,
    /// Hermite normal form rows; pivots are positive and entries above a
    /// pivot lie in `[0, pivot)`.
    pub basis: Vec<Vec<BigInt>>,
}

impl ModularImage {
    pub fn trivial() -> Self {
        ModularImage { primes: Vec::new(), basis: Vec::new() }
    }

    /// The subgroup generated by `gens`.
    pub fn generated_by<'a>(gens: impl IntoIterator<Item = &'a BigRational>) -> Self {
        let factored: Vec<BTreeMap<BigUint, BigInt>> = gens
            .into_iter()
            .map(|q| prime_exponents(q).expect("positive generator"))
            .collect();
        let primes: BTreeSet<BigUint> =
            factored.iter().flat_map(|f| f.keys().cloned()).collect();
        let primes: Vec<BigUint> = primes.into_iter().collect();
        let rows: Vec<Vec<BigInt>> = factored
            .iter()
            .map(|f| primes.iter().map(|p| f.get(p).cloned().unwrap_or_default()).collect())
            .collect();
        let basis = hermite_normal_form(rows);
        // Every prime occurs in some generator, so no column of the HNF is zero.
        ModularImage { primes, basis }
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Basis rows as rationals.
    pub fn generators(&self) -> Vec<BigRational> {
        self.basis
            .iter()
            .map(|row| {
                self.primes.iter().zip(row).fold(BigRational::one(), |acc, (p, k)| {
                    let p = BigRational::from_integer(BigInt::from(p.clone()));
                    let e = i32::try_from(k).expect("exponent fits in i32");
                    acc * p.pow(e)
                })
            })
            .collect()
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        let Some(f) = prime_exponents(q) else {
            return false;
        };
        if f.keys().any(|p| self.primes.binary_search(p).is_err()) {
            return false;
        }
        let mut v: Vec<BigInt> =
            self.primes.iter().map(|p| f.get(p).cloned().unwrap_or_default()).collect();
        for row in &self.basis {
            let c = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            let (t, r) = v[c].div_rem(&row[c]);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &t * y;
            }
        }
        v.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for ModularImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(ToString::to_string).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// `q` evaluated on the fundamental cycles of the deterministic spanning
/// tree, which generate the image.
pub fn modular_image(g: &GbsGraph) -> Result<ModularImage, GraphError> {
    g.ensure_valid()?;
    let qs: Vec<BigRational> =
        g.fundamental_cycles().iter().map(|c| q_of_path(g, c)).collect();
    Ok(ModularImage::generated_by(&qs))
}

/// Row Hermite normal form over the integers with zero rows removed.
pub fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for c in 0..cols {
        if pivot_row == rows.len() {
            break;
        }
        // gcd elimination below the pivot row
        for i in pivot_row + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let a = rows[pivot_row][c].clone();
            let b = rows[i][c].clone();
            let e = a.extended_gcd(&b);
            let (x, y) = (e.x, e.y);
            let (a_g, b_g) = (&a / &e.gcd, &b / &e.gcd);
            let top: Vec<BigInt> = rows[pivot_row]
                .iter()
                .zip(&rows[i])
                .map(|(p, q)| &x * p + &y * q)
                .collect();
            let bottom: Vec<BigInt> = rows[pivot_row]
                .iter()
                .zip(&rows[i])
                .map(|(p, q)| &a_g * q - &b_g * p)
                .collect();
            rows[pivot_row] = top;
            rows[i] = bottom;
        }
        if rows[pivot_row][c].is_zero() {
            continue;
        }
        if rows[pivot_row][c].sign() == Sign::Minus {
            rows[pivot_row].iter_mut().for_each(|x| *x = -x.clone());
        }
        let p = rows[pivot_row][c].clone();
        for i in 0..pivot_row {
            let t = rows[i][c].div_floor(&p);
            if t.is_zero() {
                continue;
            }
            let pivot = rows[pivot_row].clone();
            for (x, y) in rows[i].iter_mut().zip(&pivot) {
                *x -= &t * y;
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeId;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn bs16_image_generated_by_6() {
        let g = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 6, 1)]);
        let im = modular_image(&g).unwrap();
        assert_eq!(im.generators(), vec![int(6)]);
        assert_eq!(im.primes, vec![BigUint::from(2u8), BigUint::from(3u8)]);
    }

    #[test]
    fn tree_has_trivial_image() {
        let g = GbsGraph::from_edges(&["u", "w"], &[("e", "u", "w", 2, 3)]);
        assert!(modular_image(&g).unwrap().is_trivial());
    }

    #[test]
    fn two_loops_give_full_lattice() {
        let g = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 2, 4), ("f", "v", "v", 16, 3)]);
        let im = modular_image(&g).unwrap();
        assert_eq!(im.basis, bi(&[&[1, 0], &[0, 1]]));
        assert_eq!(im.generators(), vec![int(2), int(3)]);
    }

    #[test]
    fn q_values() {
        let g = GbsGraph::from_edges(&["v"], &[("e", "v", "v", 6, 1)]);
        let v = crate::graph::VertexId::new("v");
        let t = EdgeEnd::forward(EdgeId::new("e"));
        let mut w = PathWord::syllable(v.clone(), 0);
        w.push_edge(t.clone());
        w.push_power(&BigInt::zero());
        assert_eq!(q_of_word(&g, &w).unwrap(), int(6));
        let w2 = w.power(&g, 2).unwrap();
        assert_eq!(q_of_word(&g, &w2).unwrap(), int(36));
        assert_eq!(q_of_word(&g, &PathWord::syllable(v, 5)).unwrap(), int(1));
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hermite_normal_form(bi(&[&[-1, 0], &[4, -1]])), bi(&[&[1, 0], &[0, 1]]));
        assert_eq!(hermite_normal_form(bi(&[&[2, 4], &[3, 6]])), bi(&[&[1, 2]]));
        assert_eq!(hermite_normal_form(bi(&[&[0, 0]])), bi(&[]));
        assert_eq!(hermite_normal_form(bi(&[&[4, 1], &[0, 3]])), bi(&[&[4, 1], &[0, 3]]));
        assert_eq!(hermite_normal_form(bi(&[&[4, 5], &[0, 3]])), bi(&[&[4, 2], &[0, 3]]));
    }

    #[test]
    fn membership() {
        let im = ModularImage::generated_by(&[int(6)]);
        assert!(im.contains(&int(36)));
        assert!(im.contains(&BigRational::new(1.into(), 6.into())));
        assert!(im.contains(&int(1)));
        assert!(!im.contains(&int(2)));
        assert!(!im.contains(&int(12)));
        assert!(!im.contains(&int(-6)));
        let half = ModularImage::generated_by(&[BigRational::new(4.into(), 9.into())]);
        assert!(half.contains(&BigRational::new(81.into(), 16.into())));
        assert!(!half.contains(&BigRational::new(2.into(), 3.into())));
    }

    #[test]
    fn equal_subgroups_equal_forms() {
        let a = ModularImage::generated_by(&[int(6), int(4)]);
        let b = ModularImage::generated_by(&[BigRational::new(3.into(), 2.into()), int(4)]);
        assert_eq!(a, b);
        let c = ModularImage::generated_by(&[BigRational::new(3.into(), 2.into()), int(2)]);
        assert_ne!(a, c);
    }
}
