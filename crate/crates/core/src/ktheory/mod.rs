//! `K₀` of a toric Deligne–Mumford stack, presented as a quotient of a
//! Laurent (or group) ring by Stanley–Reisner and lattice relations.
//!
//! In Laurent mode the ring has one variable per ray:
//!
//! ```text
//! K₀ ≅ ℤ[x₁^±..xₙ^±] / ( ∏_{i∈S}(1 − xᵢ) for S a non-face,  g₁..g_d )
//! ```
//!
//! with `g_j` the binomial splitting `∏ xᵢ^{⟨m_j, vᵢ⟩}` into positive and
//! negative exponents. In group-ring mode each ray class `xᵢ` is the monomial
//! of `β^∨(eᵢ)` in `ℤ[DG(β)]`, which absorbs the lattice relations and admits
//! torsion in `N`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactlinalg::{FgAbelianGroup, IntMatrix, Order};
use crate::ringpres::{
    abelian_structure, parse_element, standard_monomial_count, strong_groebner_with, Field, GbOptions, GroebnerBasis,
    IntPolynomial, Monomial, ParseError, QuotientStructure, Ring, RingError, Staircase, TermOrder,
};
use crate::simplicial::SimplicialError;
use crate::stackyfan::{gale_dual, underlying_complex, validate, FanError, StackyFan};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KTheoryError {
    #[error("invalid fan: {}", .0.join("; "))]
    InvalidFan(Vec<String>),
    #[error("laurent mode needs a torsion-free lattice; use group_ring mode")]
    TorsionLattice,
    #[error("basis of M must be a unimodular {0}x{0} matrix")]
    BadBasis(usize),
    #[error("torsion order {0} of the Gale dual is too large for a unit variable")]
    UnitOrderTooLarge(BigInt),
    #[error("K0 is not finitely generated over Z")]
    InfiniteStructure,
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    Laurent,
    #[default]
    GroupRing,
}

impl Mode {
    pub fn label(&self) -> &'static str {
        match self {
            Mode::Laurent => "laurent",
            Mode::GroupRing => "group_ring",
        }
    }
}

/// `ℤ[x₁^±..xₙ^±]` with variables named after the rays.
pub fn ray_ring(fan: &StackyFan) -> Ring {
    Ring::laurent(fan.ray_count())
}

/// One generator `∏_{i∈S}(1 − xᵢ)` per minimal non-face `S`, in the ray ring.
pub fn sr_ideal(fan: &StackyFan) -> Result<Vec<IntPolynomial>, KTheoryError> {
    let k = underlying_complex(fan)?;
    let one = IntPolynomial::one();
    Ok(k.minimal_nonfaces()
        .iter()
        .map(|s| s.iter().fold(one.clone(), |acc, &i| acc.mul(&one.sub(&IntPolynomial::from_monomial(Monomial::var(i, 1))))))
        .collect())
}

/// Pairings `⟨m_j, vᵢ⟩` for the rows `m_j` of `basis`.
fn pairings(fan: &StackyFan, basis: &IntMatrix) -> Result<IntMatrix, KTheoryError> {
    if !fan.lattice().is_torsion_free() {
        return Err(KTheoryError::TorsionLattice);
    }
    let d = fan.lattice().free_rank();
    if basis.rows() != d || basis.cols() != d || basis.determinant().abs() != BigInt::from(1) {
        return Err(KTheoryError::BadBasis(d));
    }
    Ok(basis * &fan.free_ray_matrix())
}

fn split_monomials(ring: &Ring, row: &[BigInt]) -> (Monomial, Monomial) {
    let part = |keep: fn(&BigInt) -> bool| {
        let pairs = row
            .iter()
            .enumerate()
            .filter(|(_, e)| keep(e))
            .map(|(i, e)| (ring.x(i), e.abs().to_u32().expect("pairing fits u32")))
            .collect();
        Monomial::from_exponents(pairs)
    };
    (part(|e| e.is_positive()), part(|e| e.is_negative()))
}

/// `g_j = ∏_{⟨m_j,vᵢ⟩>0} xᵢ^{⟨m_j,vᵢ⟩} − ∏_{⟨m_j,vᵢ⟩<0} xᵢ^{−⟨m_j,vᵢ⟩}` over the standard dual basis.
pub fn lattice_relations(fan: &StackyFan) -> Result<Vec<IntPolynomial>, KTheoryError> {
    lattice_relations_in_basis(fan, &IntMatrix::identity(fan.lattice().free_rank()))
}

/// [`lattice_relations`] for the basis of `M` given by the rows of `basis`.
pub fn lattice_relations_in_basis(fan: &StackyFan, basis: &IntMatrix) -> Result<Vec<IntPolynomial>, KTheoryError> {
    let ring = ray_ring(fan);
    let p = pairings(fan, basis)?;
    Ok((0..p.rows())
        .map(|j| {
            let (pos, neg) = split_monomials(&ring, p.row(j));
            IntPolynomial::from_monomial(pos).sub(&IntPolynomial::from_monomial(neg))
        })
        .collect())
}

/// `h_j = ∏ xᵢ^{⟨m_j, vᵢ⟩} − 1`, negative powers through inverse partners.
pub fn laurent_lattice_relations(fan: &StackyFan, basis: &IntMatrix) -> Result<Vec<IntPolynomial>, KTheoryError> {
    let ring = ray_ring(fan);
    let p = pairings(fan, basis)?;
    Ok((0..p.rows())
        .map(|j| {
            let exps: Vec<i64> = p.row(j).iter().map(|e| e.to_i64().expect("pairing fits i64")).collect();
            IntPolynomial::from_monomial(ring.laurent_monomial(&exps)).sub(&IntPolynomial::one())
        })
        .collect())
}

/// The multiplier `∏_{⟨m_j,vᵢ⟩<0} xᵢ^{−⟨m_j,vᵢ⟩}` with `g_j = multiplier · h_j`.
pub fn lattice_relation_multipliers(fan: &StackyFan, basis: &IntMatrix) -> Result<Vec<Monomial>, KTheoryError> {
    let ring = ray_ring(fan);
    let p = pairings(fan, basis)?;
    Ok((0..p.rows()).map(|j| split_monomials(&ring, p.row(j)).1).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KZeroPresentation {
    pub mode: Mode,
    pub ring: Ring,
    /// The image of each ray class `xᵢ` (a monomial).
    pub ray_classes: Vec<IntPolynomial>,
    pub sr_relations: Vec<IntPolynomial>,
    pub lattice_relations: Vec<IntPolynomial>,
    /// One note per relation, in the order of [`KZeroPresentation::relations`].
    pub notes: Vec<String>,
}

impl KZeroPresentation {
    pub fn relations(&self) -> Vec<IntPolynomial> {
        self.sr_relations.iter().chain(&self.lattice_relations).cloned().collect()
    }

    /// Rewrites an element of the ray ring into this presentation's ring.
    pub fn from_ray_ring(&self, f: &IntPolynomial) -> IntPolynomial {
        let n = self.ray_classes.len();
        let inverses = self.ray_classes.iter().map(|c| {
            let (m, _) = c.terms().next().expect("ray classes are monomials");
            IntPolynomial::from_monomial(self.ring.inverse_monomial(m).expect("ray classes are invertible"))
        });
        let images: Vec<IntPolynomial> = self.ray_classes.iter().cloned().chain(inverses).collect();
        debug_assert_eq!(images.len(), 2 * n);
        self.ring.canonical(&f.substitute(&images))
    }
}

pub fn k0_presentation(fan: &StackyFan, mode: Mode) -> Result<KZeroPresentation, KTheoryError> {
    let k = underlying_complex(fan)?;
    let nonfaces = k.minimal_nonfaces();
    let sr = sr_ideal(fan)?;
    match mode {
        Mode::Laurent => {
            let ring = ray_ring(fan);
            let lattice = lattice_relations(fan)?;
            let ray_classes = (0..fan.ray_count()).map(|i| IntPolynomial::from_monomial(Monomial::var(i, 1))).collect();
            let mut notes: Vec<String> = nonfaces.iter().map(|s| format!("non-face {}", one_based(s))).collect();
            notes.extend((1..=lattice.len()).map(|j| format!("lattice relation m_{j}")));
            Ok(KZeroPresentation { mode, ring, ray_classes, sr_relations: sr, lattice_relations: lattice, notes })
        }
        Mode::GroupRing => {
            let gale = gale_dual(fan)?;
            let group = gale.group();
            let r = group.rank;
            let names: Vec<String> = if r == 1 { vec!["t".into()] } else { (1..=r).map(|i| format!("t{i}")).collect() };
            let mut orders = Vec::new();
            for a in &group.invariant_factors {
                orders.push(a.to_u64().filter(|&o| o <= u64::from(u32::MAX)).ok_or_else(|| KTheoryError::UnitOrderTooLarge(a.clone()))?);
            }
            let units: Vec<String> = (1..=orders.len()).map(|j| format!("u{j}")).collect();
            let ring = Ring::with_names(names, units, &orders)?;
            let ray_classes: Vec<IntPolynomial> = gale
                .beta_vee
                .iter()
                .map(|b| {
                    let free: Vec<i64> = b[..r].iter().map(|e| e.to_i64().expect("exponent fits i64")).collect();
                    let mut m = ring.laurent_monomial(&free);
                    for (j, e) in b[r..].iter().enumerate() {
                        m = m.mul(&Monomial::var(ring.u(j), e.to_u32().expect("residue fits u32")));
                    }
                    IntPolynomial::from_monomial(m)
                })
                .collect();
            let mut pres = KZeroPresentation {
                mode,
                ring,
                ray_classes,
                sr_relations: Vec::new(),
                lattice_relations: Vec::new(),
                notes: nonfaces.iter().map(|s| format!("non-face {}", one_based(s))).collect(),
            };
            pres.sr_relations = sr.iter().map(|g| pres.from_ray_ring(g)).collect();
            Ok(pres)
        }
    }
}

fn one_based(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct K0Options {
    pub mode: Mode,
    pub order: TermOrder,
    pub max_steps: usize,
}

impl Default for K0Options {
    fn default() -> Self {
        let gb = GbOptions::default();
        K0Options { mode: Mode::default(), order: gb.order, max_steps: gb.max_steps }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Debug)]
pub struct KZeroStructure {
    pub presentation: KZeroPresentation,
    pub basis: GroebnerBasis,
    /// `None` when the quotient is not finitely generated over ℤ.
    pub structure: Option<QuotientStructure>,
    pub rank: Rank,
    /// `dim_ℚ K₀ ⊗ ℚ`, from an independent field computation, when finite.
    pub rational_rank: Option<usize>,
    pub invariant_factors: Vec<BigInt>,
    pub free: bool,
    /// Whether the fan is complete.
    pub complete: bool,
}

impl KZeroStructure {
    pub fn is_finite(&self) -> bool {
        self.structure.is_some()
    }

    pub fn group(&self) -> Option<&FgAbelianGroup> {
        self.structure.as_ref().map(QuotientStructure::group)
    }
}

pub fn k0_structure(fan: &StackyFan) -> Result<KZeroStructure, KTheoryError> {
    k0_structure_with(fan, K0Options::default())
}

pub fn k0_structure_with(fan: &StackyFan, opts: K0Options) -> Result<KZeroStructure, KTheoryError> {
    let diag = validate(fan);
    if !diag.valid {
        return Err(KTheoryError::InvalidFan(diag.messages));
    }
    let presentation = k0_presentation(fan, opts.mode)?;
    structure_of(presentation, diag.complete, opts)
}

fn structure_of(presentation: KZeroPresentation, complete: bool, opts: K0Options) -> Result<KZeroStructure, KTheoryError> {
    let gb_opts = GbOptions { order: opts.order, max_steps: opts.max_steps };
    let relations = presentation.relations();
    let basis = strong_groebner_with(&presentation.ring, &relations, gb_opts)?;
    let rational = standard_monomial_count(&presentation.ring, &relations, Field::Rationals, opts.order)?;
    let rational_rank = match rational {
        Staircase::Finite(s) => Some(s.len()),
        Staircase::Infinite { .. } => None,
    };
    match abelian_structure(&basis) {
        Ok(q) => {
            let g = q.group().clone();
            Ok(KZeroStructure {
                presentation,
                basis,
                rank: Rank::Finite(g.rank),
                rational_rank,
                free: g.invariant_factors.is_empty(),
                invariant_factors: g.invariant_factors,
                structure: Some(q),
                complete,
            })
        }
        Err(RingError::InfiniteStructure(_)) => Ok(KZeroStructure {
            presentation,
            basis,
            structure: None,
            rank: rational_rank.map_or(Rank::Infinite, Rank::Finite),
            rational_rank,
            invariant_factors: Vec::new(),
            free: false,
            complete,
        }),
        Err(e) => Err(e.into()),
    }
}

/// Order of the class of `expr`, written over the ray alphabet `x1..xn`.
pub fn element_order_in_k0(fan: &StackyFan, expr: &str) -> Result<Order, KTheoryError> {
    element_order_with(&k0_structure(fan)?, expr)
}

pub fn element_order_with(k: &KZeroStructure, expr: &str) -> Result<Order, KTheoryError> {
    let ring = Ring::laurent(k.presentation.ray_classes.len());
    let f = parse_element(expr, &ring)?;
    let q = k.structure.as_ref().ok_or(KTheoryError::InfiniteStructure)?;
    let image = k.presentation.from_ray_ring(&f);
    Ok(q.element_order(&image).expect("coordinates match the group"))
}

/// Rank of `K₀` predicted by the cone multiplicities: `|torsion(N)| · Σ mult(σ)`.
pub fn multiplicity_rank(fan: &StackyFan) -> Result<BigInt, KTheoryError> {
    let (reduced, torsion) = crate::stackyfan::reduce_lattice(fan);
    let mut total = BigInt::zero();
    for c in reduced.max_cones() {
        total += crate::stackyfan::multiplicity(&reduced, c)?;
    }
    Ok(total * torsion.torsion_order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stackyfan::{Lattice, LatticePoint};

    fn fan(rays: &[Vec<i64>], cones: &[Vec<usize>]) -> StackyFan {
        StackyFan::free(rays, cones).unwrap()
    }

    fn p2() -> StackyFan {
        fan(&[vec![1, 0], vec![0, 1], vec![-1, -1]], &[vec![0, 1], vec![1, 2], vec![2, 0]])
    }

    fn p1xp1() -> StackyFan {
        fan(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]], &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]])
    }

    fn gerbe() -> StackyFan {
        let lat = Lattice::new(1, vec![BigInt::from(2)]).unwrap();
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let rays = vec![LatticePoint::new(b(&[1]), b(&[1])), LatticePoint::new(b(&[-1]), b(&[0]))];
        StackyFan::new(lat, rays, vec![vec![0], vec![1]]).unwrap()
    }

    fn p111122() -> StackyFan {
        let mut rays = vec![vec![-1, -1, -1, -2, -2]];
        for j in 0..5 {
            let mut e = vec![0; 5];
            e[j] = 1;
            rays.push(e);
        }
        let cones: Vec<Vec<usize>> = (0..6).map(|skip| (0..6).filter(|&i| i != skip).collect()).collect();
        fan(&rays, &cones)
    }

    fn p111122_open() -> StackyFan {
        let full = p111122();
        let cones: Vec<Vec<usize>> = full
            .max_cones()
            .iter()
            .flat_map(|c| {
                // Remaining cones avoid both {0,1,2,3} and {4,5}.
                let c = c.clone();
                (0..c.len()).map(move |k| c.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, &v)| v).collect::<Vec<_>>())
            })
            .filter(|f: &Vec<usize>| !(0..4).all(|i| f.contains(&i)) && !(f.contains(&4) && f.contains(&5)))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        fan(&full.rays().iter().map(|r| r.free.iter().map(|x| x.to_i64().unwrap()).collect()).collect::<Vec<_>>(), &cones)
    }

    fn ray(ring: &Ring, s: &str) -> IntPolynomial {
        parse_element(s, ring).unwrap()
    }

    #[test]
    fn sr_examples() {
        let r = Ring::laurent(3);
        assert_eq!(sr_ideal(&p2()).unwrap(), vec![ray(&r, "(1-x1)*(1-x2)*(1-x3)")]);
        let r = Ring::laurent(4);
        assert_eq!(sr_ideal(&p1xp1()).unwrap(), vec![ray(&r, "(1-x1)*(1-x3)"), ray(&r, "(1-x2)*(1-x4)")]);
        let r = Ring::laurent(6);
        let open = p111122_open();
        assert_eq!(open.max_cones().len(), 8);
        assert_eq!(sr_ideal(&open).unwrap(), vec![ray(&r, "(1-x1)*(1-x2)*(1-x3)*(1-x4)"), ray(&r, "(1-x5)*(1-x6)")]);
    }

    #[test]
    fn lattice_relation_examples() {
        let r = Ring::laurent(3);
        assert_eq!(lattice_relations(&p2()).unwrap(), vec![ray(&r, "x1-x3"), ray(&r, "x2-x3")]);
        let p112 = fan(&[vec![1, 0], vec![0, 1], vec![-1, -2]], &[vec![0, 1], vec![1, 2], vec![2, 0]]);
        assert_eq!(lattice_relations(&p112).unwrap(), vec![ray(&r, "x1-x3"), ray(&r, "x2-x3^2")]);
        let p1 = fan(&[vec![1], vec![-1]], &[vec![0], vec![1]]);
        assert_eq!(lattice_relations(&p1).unwrap(), vec![ray(&Ring::laurent(2), "x1-x2")]);
        assert_eq!(lattice_relations(&gerbe()), Err(KTheoryError::TorsionLattice));
        let bad = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(lattice_relations_in_basis(&p2(), &bad), Err(KTheoryError::BadBasis(2)));
    }

    #[test]
    fn presentations() {
        let t = Ring::with_names(vec!["t".into()], vec![], &[]).unwrap();
        let pres = k0_presentation(&p2(), Mode::GroupRing).unwrap();
        assert_eq!(pres.sr_relations, vec![ray(&t, "(1-t)^3")]);
        let pres = k0_presentation(&gerbe(), Mode::GroupRing).unwrap();
        assert_eq!(pres.ring.unit_count(), 0);
        assert_eq!(pres.sr_relations, vec![ray(&t, "(1-t^2)^2")]);
        let pres = k0_presentation(&p111122_open(), Mode::GroupRing).unwrap();
        assert_eq!(pres.sr_relations, vec![ray(&t, "(1-t)^4"), ray(&t, "(1-t^2)^2")]);
        assert_eq!(pres.notes, vec!["non-face {1,2,3,4}", "non-face {5,6}"]);
        assert_eq!(k0_presentation(&gerbe(), Mode::Laurent), Err(KTheoryError::TorsionLattice));
    }

    #[test]
    fn structures() {
        let k = k0_structure(&p2()).unwrap();
        assert!(k.free);
        assert_eq!(k.rank, Rank::Finite(3));
        assert_eq!(k.rational_rank, Some(3));
        let k = k0_structure(&p111122_open()).unwrap();
        assert!(!k.free && !k.complete);
        assert_eq!(k.rank, Rank::Finite(2));
        assert_eq!(k.invariant_factors, vec![BigInt::from(4), BigInt::from(4)]);
        let k = k0_structure(&gerbe()).unwrap();
        assert!(k.free && k.complete);
        assert_eq!(k.rank, Rank::Finite(4));
    }

    #[test]
    fn laurent_mode_matches() {
        for f in [p2(), p1xp1(), p111122(), p111122_open()] {
            let a = k0_structure_with(&f, K0Options { mode: Mode::Laurent, ..Default::default() }).unwrap();
            let b = k0_structure(&f).unwrap();
            assert_eq!(a.rank, b.rank);
            assert_eq!(a.invariant_factors, b.invariant_factors);
        }
    }

    #[test]
    fn element_orders() {
        let open = p111122_open();
        let k = k0_structure(&open).unwrap();
        assert_eq!(element_order_with(&k, "x1*(1-x1)^2").unwrap(), Order::Finite(BigInt::from(4)));
        assert_eq!(element_order_with(&k, "(1-x1)^4").unwrap(), Order::Finite(BigInt::from(1)));
        assert_eq!(element_order_in_k0(&p2(), "1").unwrap(), Order::Infinite);
        assert!(matches!(element_order_in_k0(&p2(), "x7+1"), Err(KTheoryError::Parse(_))));
    }

    #[test]
    fn weighted_projective_five_space() {
        let f = p111122();
        assert_eq!(multiplicity_rank(&f).unwrap(), BigInt::from(8));
        let k = k0_structure(&f).unwrap();
        assert!(k.free);
        assert_eq!(k.rank, Rank::Finite(8));
    }
}
