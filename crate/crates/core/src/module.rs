//! Finitely presented modules.
//!
//! A module is a cokernel presentation: `generators` free generators and a
//! relation matrix whose columns span the relation submodule. The normal
//! form (free rank plus invariant factor chain) is a complete isomorphism
//! invariant over every ring of the class. Over a quotient ring all
//! computations lift to the covering localization with modulus relations
//! appended, never by ad hoc elimination mod n.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::matrix::{in_span, kernel, solve_matrix, Matrix};
use crate::ring::{Ring, RingMap};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpModule {
    ring: Ring,
    generators: usize,
    relations: Matrix,
}

/// Normal form: free rank and the invariant factor chain d1 | d2 | ...,
/// each factor a unit-free integer > 1 (and a proper divisor of the modulus
/// over a quotient ring).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub free_rank: usize,
    pub factors: Vec<BigInt>,
}

impl NormalForm {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total length of the torsion part, counted with prime multiplicity.
    pub fn torsion_length(&self) -> usize {
        self.factors
            .iter()
            .map(|d| {
                let mut m = d.clone();
                let mut len = 0;
                let mut p = BigInt::from(2);
                while &p * &p <= m {
                    while (&m % &p).is_zero() {
                        m /= &p;
                        len += 1;
                    }
                    p += 1;
                }
                if m > BigInt::one() {
                    len += 1;
                }
                len
            })
            .sum()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("R".to_string()),
            r => parts.push(format!("R^{r}")),
        }
        for d in &self.factors {
            parts.push(format!("R/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl FpModule {
    pub fn new(ring: &Ring, generators: usize, relations: Matrix) -> Result<Self> {
        if relations.ring() != ring {
            return Err(Error::RingMismatch(
                ring.to_string(),
                relations.ring().to_string(),
            ));
        }
        if relations.rows() != generators {
            return Err(Error::InvalidMatrix(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                generators
            )));
        }
        Ok(FpModule {
            ring: ring.clone(),
            generators,
            relations,
        })
    }

    pub fn free(ring: &Ring, rank: usize) -> Self {
        FpModule {
            ring: ring.clone(),
            generators: rank,
            relations: Matrix::zero(ring, rank, 0),
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        FpModule::free(ring, 0)
    }

    /// Cyclic module `R/d`.
    pub fn cyclic(ring: &Ring, d: &BigRational) -> Result<Self> {
        let rel = Matrix::new(ring, 1, 1, vec![d.clone()])?;
        FpModule::new(ring, 1, rel)
    }

    /// `R^rank + R/f1 + R/f2 + ...` with the stated torsion factors.
    pub fn from_invariants(ring: &Ring, rank: usize, factors: &[u64]) -> Result<Self> {
        let g = rank + factors.len();
        let mut rel = Matrix::zero(ring, g, factors.len());
        for (j, &d) in factors.iter().enumerate() {
            rel.set(rank + j, j, BigRational::from_integer(BigInt::from(d)));
        }
        FpModule::new(ring, g, rel)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    pub fn is_free_presentation(&self) -> bool {
        self.relations.cols() == 0
    }

    /// Normal form. For a quotient ring the presentation lifts to the
    /// covering localization with modulus relations appended; the lifted
    /// invariant factors equal to the modulus give free summands, proper
    /// divisors give torsion.
    pub fn normal_form(&self) -> Result<NormalForm> {
        if self.ring.is_zero_ring() {
            return Ok(NormalForm {
                free_rank: 0,
                factors: Vec::new(),
            });
        }
        if self.ring.is_domain() {
            let inv = self.relations.invariant_factors()?;
            let free_rank = self.generators - inv.len();
            let factors = inv.into_iter().filter(|d| !d.is_one()).collect();
            return Ok(NormalForm { free_rank, factors });
        }
        let cover = self.ring.cover();
        let n = BigInt::from(self.ring.modulus());
        let lifted = self.relations.map_entries(&cover)?;
        let modulus = Matrix::scalar(
            &cover,
            self.generators,
            &BigRational::from_integer(n.clone()),
        )?;
        let inv = lifted.hstack(&modulus)?.invariant_factors()?;
        debug_assert_eq!(inv.len(), self.generators);
        let free_rank = inv.iter().filter(|d| **d == n).count();
        let factors = inv
            .into_iter()
            .filter(|d| !d.is_one() && *d != n)
            .collect();
        Ok(NormalForm { free_rank, factors })
    }

    pub fn is_zero_module(&self) -> Result<bool> {
        Ok(self.normal_form()?.is_zero())
    }

    /// Extension of scalars along a canonical ring map: the presentation
    /// matrix with entries pushed into the target ring.
    pub fn base_change(&self, f: &RingMap) -> Result<FpModule> {
        if &self.ring != f.source() {
            return Err(Error::RingMismatch(
                self.ring.to_string(),
                f.source().to_string(),
            ));
        }
        FpModule::new(f.target(), self.generators, self.relations.map_along(f)?)
    }

    /// Restriction of scalars along a module-finite canonical map: the same
    /// generators with target-ring relations rewritten over the source plus
    /// one kernel relation per generator.
    pub fn restrict(&self, f: &RingMap) -> Result<FpModule> {
        if &self.ring != f.target() {
            return Err(Error::RingMismatch(
                self.ring.to_string(),
                f.target().to_string(),
            ));
        }
        if f.source() == f.target() {
            return Ok(self.clone());
        }
        if !f.is_module_finite() {
            return Err(Error::NotModuleFinite {
                src: f.source().to_string(),
                dst: f.target().to_string(),
                arrow: None,
            });
        }
        // Target modulus is positive, so entries are canonical integers and
        // lift verbatim.
        let src = f.source();
        let lifted = self.relations.map_entries(src)?;
        let k = f.kernel_generator()?;
        let extra = Matrix::scalar(src, self.generators, &k)?;
        FpModule::new(src, self.generators, lifted.hstack(&extra)?)
    }

    pub fn direct_sum(&self, other: &FpModule) -> Result<FpModule> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        let rel = Matrix::block_diag(&self.ring, &[&self.relations, &other.relations])?;
        FpModule::new(&self.ring, self.generators + other.generators, rel)
    }

    /// A free basis when the module is free: `inclusion` expresses the basis
    /// in the old generators, `projection` expresses old generators in the
    /// basis (mod relations), with `projection * inclusion = id`. Returns
    /// `None` when the module has torsion.
    pub fn free_basis(&self) -> Result<Option<FreeBasis>> {
        if self.ring.is_zero_ring() {
            return Ok(Some(FreeBasis {
                rank: 0,
                inclusion: Matrix::zero(&self.ring, self.generators, 0),
                projection: Matrix::zero(&self.ring, 0, self.generators),
            }));
        }
        let (snf, free_idx) = if self.ring.is_domain() {
            let snf = self.relations.snf()?;
            let diag_len = self.relations.rows().min(self.relations.cols());
            let mut idx = Vec::new();
            for i in 0..self.generators {
                if i >= diag_len || snf.d.get(i, i).is_zero() {
                    idx.push(i);
                } else if !self.ring.is_unit(snf.d.get(i, i)) {
                    return Ok(None);
                }
            }
            (snf, idx)
        } else {
            let cover = self.ring.cover();
            let n = BigInt::from(self.ring.modulus());
            let lifted = self.relations.map_entries(&cover)?;
            let modulus = Matrix::scalar(
                &cover,
                self.generators,
                &BigRational::from_integer(n.clone()),
            )?;
            let snf = lifted.hstack(&modulus)?.snf()?;
            let mut idx = Vec::new();
            for i in 0..self.generators {
                let d = snf.d.get(i, i);
                if d.numer() == &n {
                    idx.push(i);
                } else if !self.ring.is_unit(d) {
                    return Ok(None);
                }
            }
            (snf, idx)
        };
        let inclusion = snf
            .u_inv
            .map_entries(&self.ring)?
            .columns_subset(&free_idx);
        let mut proj_rows = Matrix::zero(&self.ring, free_idx.len(), self.generators);
        let u = snf.u.map_entries(&self.ring)?;
        for (r, &i) in free_idx.iter().enumerate() {
            for j in 0..self.generators {
                proj_rows.set(r, j, u.get(i, j).clone());
            }
        }
        Ok(Some(FreeBasis {
            rank: free_idx.len(),
            inclusion,
            projection: proj_rows,
        }))
    }
}

impl fmt::Display for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.normal_form() {
            Ok(nf) => write!(f, "{nf} over {}", self.ring),
            Err(_) => write!(
                f,
                "<module with {} generators over {}>",
                self.generators, self.ring
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FreeBasis {
    pub rank: usize,
    pub inclusion: Matrix,
    pub projection: Matrix,
}

/// Cokernel of a matrix viewed as a map into the free module on its rows.
pub fn cokernel(f: &Matrix) -> Result<FpModule> {
    FpModule::new(f.ring(), f.rows(), f.clone())
}

/// Image of a matrix as an abstract module: the free module on its columns
/// modulo the solution kernel.
pub fn image(f: &Matrix) -> Result<FpModule> {
    FpModule::new(f.ring(), f.cols(), kernel(f)?)
}

/// The subquotient span(P)/span(Q) of an ambient presented module
/// `R^G / span(rel_amb)`; requires span(Q) contained in span(P) + relations.
/// Generators are the columns of `P`.
pub fn subquotient(p: &Matrix, q: &Matrix, rel_amb: &Matrix) -> Result<FpModule> {
    let ring = p.ring().clone();
    let stacked = p.hstack(q)?.hstack(rel_amb)?;
    let k = kernel(&stacked)?;
    let rel = k.rows_range(0, p.cols());
    FpModule::new(&ring, p.cols(), rel)
}

/// Is `f` a well-defined map of presented modules on generators, i.e. does
/// it carry source relations into target relations?
pub fn hom_well_defined(f: &Matrix, src: &FpModule, tgt: &FpModule) -> Result<bool> {
    if f.rows() != tgt.generators() || f.cols() != src.generators() {
        return Err(Error::InvalidMatrix(format!(
            "hom shape {}x{} does not match {} -> {} generators",
            f.rows(),
            f.cols(),
            src.generators(),
            tgt.generators()
        )));
    }
    let moved = f.mul(src.relations())?;
    for j in 0..moved.cols() {
        if !in_span(tgt.relations(), &moved.column(j))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equality of two generator-level matrices as maps into a presented target.
pub fn maps_equal(f: &Matrix, g: &Matrix, tgt: &FpModule) -> Result<bool> {
    if f.rows() != g.rows() || f.cols() != g.cols() {
        return Ok(false);
    }
    let diff = f.sub(g)?;
    for j in 0..diff.cols() {
        if !in_span(tgt.relations(), &diff.column(j))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Surjectivity of a generator-level map onto a presented target.
pub fn is_surjective(f: &Matrix, tgt: &FpModule) -> Result<bool> {
    let rel = tgt.relations().hstack(f)?;
    FpModule::new(tgt.ring(), tgt.generators(), rel)?.is_zero_module()
}

/// Injectivity: every solution of `f x = 0` (mod target relations) already
/// lies in the source relations.
pub fn is_injective(f: &Matrix, src: &FpModule, tgt: &FpModule) -> Result<bool> {
    let stacked = f.hstack(tgt.relations())?;
    let k = kernel(&stacked)?;
    let head = k.rows_range(0, src.generators());
    for j in 0..head.cols() {
        if !in_span(src.relations(), &head.column(j))? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_isomorphism(f: &Matrix, src: &FpModule, tgt: &FpModule) -> Result<bool> {
    Ok(hom_well_defined(f, src, tgt)?
        && is_surjective(f, tgt)?
        && is_injective(f, src, tgt)?)
}

/// Kernel of a map of presented modules: an abstract module together with
/// the matrix of its generators as elements of the source.
pub fn kernel_of_hom(f: &Matrix, src: &FpModule, tgt: &FpModule) -> Result<(FpModule, Matrix)> {
    let stacked = f.hstack(tgt.relations())?;
    let k = kernel(&stacked)?;
    let reps = k.rows_range(0, src.generators());
    let module = subquotient(
        &reps,
        &Matrix::zero(f.ring(), src.generators(), 0),
        src.relations(),
    )?;
    Ok((module, reps))
}

/// Express target elements (columns, in target generators) as images of `f`
/// modulo target relations: returns `x` with `f x = cols` as maps.
pub fn express_through(f: &Matrix, tgt: &FpModule, cols: &Matrix) -> Result<Option<Matrix>> {
    let stacked = f.hstack(tgt.relations())?;
    match solve_matrix(&stacked, cols)? {
        None => Ok(None),
        Some(sol) => Ok(Some(sol.rows_range(0, f.cols()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::integers()
    }

    fn nf(rank: usize, factors: &[i64]) -> NormalForm {
        NormalForm {
            free_rank: rank,
            factors: factors.iter().map(|&d| BigInt::from(d)).collect(),
        }
    }

    #[test]
    fn cokernel_of_diag_2_3() {
        // Minor-gcd oracle: d1 = gcd(2,3) = 1, d1 d2 = 6, so the chain is
        // (1, 6) and the unit drops.
        let m = Matrix::from_int_rows(&z(), &[vec![2, 0], vec![0, 3]]).unwrap();
        let c = cokernel(&m).unwrap();
        assert_eq!(c.normal_form().unwrap(), nf(0, &[6]));
    }

    #[test]
    fn free_module_over_rationals() {
        let q = Ring::rationals();
        let m = FpModule::free(&q, 2);
        assert_eq!(m.normal_form().unwrap(), nf(2, &[]));
    }

    #[test]
    fn cyclic_mod_two_over_z4() {
        let z4 = Ring::quotient(4).unwrap();
        let m = FpModule::cyclic(&z4, &BigRational::from_integer(BigInt::from(2))).unwrap();
        assert_eq!(m.normal_form().unwrap(), nf(0, &[2]));
    }

    #[test]
    fn free_over_quotient_ring() {
        let z4 = Ring::quotient(4).unwrap();
        let m = FpModule::free(&z4, 2);
        assert_eq!(m.normal_form().unwrap(), nf(2, &[]));
    }

    #[test]
    fn zero_ring_modules_vanish() {
        let zero = Ring::new(crate::ring::Inverted::none(), 1).unwrap();
        let m = FpModule::free(&zero, 3);
        assert!(m.is_zero_module().unwrap());
    }

    #[test]
    fn base_change_z2_to_z4() {
        let m = FpModule::cyclic(&z(), &BigRational::from_integer(BigInt::from(2))).unwrap();
        let f = RingMap::canonical(&z(), &Ring::quotient(4).unwrap()).unwrap();
        let bc = m.base_change(&f).unwrap();
        assert_eq!(bc.normal_form().unwrap(), nf(0, &[2]));
    }

    #[test]
    fn base_change_kills_inverted_torsion() {
        let m = FpModule::cyclic(&z(), &BigRational::from_integer(BigInt::from(3))).unwrap();
        let f = RingMap::canonical(&z(), &Ring::localization(&[3]).unwrap()).unwrap();
        let bc = m.base_change(&f).unwrap();
        assert!(bc.is_zero_module().unwrap());
    }

    #[test]
    fn restrict_z2_over_z4_to_z() {
        let z4 = Ring::quotient(4).unwrap();
        let m = FpModule::cyclic(&z4, &BigRational::from_integer(BigInt::from(2))).unwrap();
        let f = RingMap::canonical(&z(), &z4).unwrap();
        let r = m.restrict(&f).unwrap();
        assert_eq!(r.ring(), &z());
        assert_eq!(r.normal_form().unwrap(), nf(0, &[2]));
    }

    #[test]
    fn restrict_localization_fails() {
        let l2 = Ring::localization(&[2]).unwrap();
        let m = FpModule::free(&l2, 1);
        let f = RingMap::canonical(&z(), &l2).unwrap();
        assert!(matches!(m.restrict(&f), Err(Error::NotModuleFinite { .. })));
    }

    #[test]
    fn restrict_z3_over_localized_quotient() {
        // Z/3 as the full ring Z[1/2]/(3), restricted to Z: still Z/3.
        let r = Ring::new(crate::ring::Inverted::primes(&[2]), 3).unwrap();
        let m = FpModule::free(&r, 1);
        let f = RingMap::canonical(&z(), &r).unwrap();
        let res = m.restrict(&f).unwrap();
        assert_eq!(res.normal_form().unwrap(), nf(0, &[3]));
    }

    #[test]
    fn cokernel_of_identity_is_zero() {
        let m = Matrix::identity(&z(), 3);
        assert!(cokernel(&m).unwrap().is_zero_module().unwrap());
    }

    #[test]
    fn image_of_injective_map_is_free() {
        let m = Matrix::from_int_rows(&z(), &[vec![2], vec![1]]).unwrap();
        let im = image(&m).unwrap();
        assert_eq!(im.normal_form().unwrap(), nf(1, &[]));
    }

    #[test]
    fn subquotient_example() {
        // span{(2,0), (0,1)} / span{(0,3)} = Z + Z/3 inside Z^2.
        let p = Matrix::from_int_rows(&z(), &[vec![2, 0], vec![0, 1]]).unwrap();
        let q = Matrix::from_int_rows(&z(), &[vec![0], vec![3]]).unwrap();
        let amb = Matrix::zero(&z(), 2, 0);
        let sq = subquotient(&p, &q, &amb).unwrap();
        assert_eq!(sq.normal_form().unwrap(), nf(1, &[3]));
    }

    #[test]
    fn from_invariants_normalizes_chain() {
        let m = FpModule::from_invariants(&z(), 1, &[8, 3]).unwrap();
        assert_eq!(m.normal_form().unwrap(), nf(1, &[24]));
    }

    #[test]
    fn free_basis_of_presented_free_module() {
        // coker of the column (2, 1) in Z^2 is free of rank 1.
        let rel = Matrix::from_int_rows(&z(), &[vec![2], vec![1]]).unwrap();
        let m = FpModule::new(&z(), 2, rel).unwrap();
        let fb = m.free_basis().unwrap().unwrap();
        assert_eq!(fb.rank, 1);
        let id = fb.projection.mul(&fb.inclusion).unwrap();
        assert_eq!(id, Matrix::identity(&z(), 1));
        // inclusion . projection is the identity as a map on the module.
        let ip = fb.inclusion.mul(&fb.projection).unwrap();
        assert!(maps_equal(&ip, &Matrix::identity(&z(), 2), &m).unwrap());
    }

    #[test]
    fn free_basis_none_for_torsion() {
        let m = FpModule::cyclic(&z(), &BigRational::from_integer(BigInt::from(2))).unwrap();
        assert!(m.free_basis().unwrap().is_none());
    }

    #[test]
    fn hom_checks() {
        let z4 = Ring::quotient(4).unwrap();
        let z2m = FpModule::cyclic(&z4, &BigRational::from_integer(BigInt::from(2))).unwrap();
        let r = FpModule::free(&z4, 1);
        // The quotient map R -> R/2 is well defined and surjective...
        let one = Matrix::from_int_rows(&z4, &[vec![1]]).unwrap();
        assert!(hom_well_defined(&one, &r, &z2m).unwrap());
        assert!(is_surjective(&one, &z2m).unwrap());
        // ... but R/2 -> R by 1 is not well defined over Z/4.
        assert!(!hom_well_defined(&one, &z2m, &r).unwrap());
        // Multiplication by 2 on R has kernel (2) mod 4.
        let dbl = Matrix::from_int_rows(&z4, &[vec![2]]).unwrap();
        assert!(!is_injective(&dbl, &r, &r).unwrap());
        let (ker, reps) = kernel_of_hom(&dbl, &r, &r).unwrap();
        assert_eq!(ker.normal_form().unwrap(), nf(0, &[2]));
        assert_eq!(reps.get(0, 0), &BigRational::from_integer(BigInt::from(2)));
    }
}
