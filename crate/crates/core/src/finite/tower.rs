use std::fmt;

use crate::error::{Error, Result};
use crate::linear::{nullspace, Field, Subspace};

use super::group::FiniteGroup;
use super::rep::{mat_mul, mat_sub, identity, ModuleRep};

pub const MAX_ORDER_RATIONAL: usize = 200;
pub const MAX_ORDER_PRIME: usize = 60;

fn check_order<F: Field>(gp: &FiniteGroup, field: &F) -> Result<()> {
    let limit = if field.characteristic() == 0 { MAX_ORDER_RATIONAL } else { MAX_ORDER_PRIME };
    if gp.order() > limit {
        return Err(Error::Resource(format!(
            "group of order {} exceeds the limit {limit} over {}",
            gp.order(),
            field.name()
        )));
    }
    Ok(())
}

/// `e_x − e_1` in the group algebra.
fn augmentation_vector<F: Field>(gp: &FiniteGroup, field: &F, x: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); gp.order()];
    v[x] = field.add(&v[x], &field.one());
    v[gp.identity()] = field.sub(&v[gp.identity()], &field.one());
    v
}

/// `b·(h − 1)` for a group-algebra vector `b`.
fn times_h_minus_one<F: Field>(gp: &FiniteGroup, field: &F, b: &[F::Elem], h: usize) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = b.iter().map(|c| field.neg(c)).collect();
    for (y, c) in b.iter().enumerate() {
        if !field.is_zero(c) {
            let yh = gp.mul(y, h);
            out[yh] = field.add(&out[yh], c);
        }
    }
    out
}

/// The augmentation ideal I.
pub fn augmentation_ideal<F: Field>(gp: &FiniteGroup, field: F) -> Result<Subspace<F>> {
    Ok(augmentation_powers(gp, field, 1)?.pop().expect("q_max = 1"))
}

/// `[I, I², …, I^{q_max}]`, using `I^{k+1} = Σ_i I^k(γ_i − 1)` over the generators.
pub fn augmentation_powers<F: Field>(gp: &FiniteGroup, field: F, q_max: usize) -> Result<Vec<Subspace<F>>> {
    check_order(gp, &field)?;
    augmentation_powers_unchecked(gp, field, q_max)
}

fn augmentation_powers_unchecked<F: Field>(gp: &FiniteGroup, field: F, q_max: usize) -> Result<Vec<Subspace<F>>> {
    let mut powers = Vec::with_capacity(q_max);
    if q_max == 0 {
        return Ok(powers);
    }
    let vectors: Vec<_> = (0..gp.order())
        .filter(|&x| x != gp.identity())
        .map(|x| augmentation_vector(gp, &field, x))
        .collect();
    powers.push(Subspace::span(field.clone(), &vectors, gp.order())?);
    for _ in 1..q_max {
        let prev = powers.last().expect("nonempty");
        let vectors: Vec<_> = prev
            .basis()
            .iter()
            .flat_map(|b| gp.generators().iter().map(move |&g| (b, g)))
            .map(|(b, g)| times_h_minus_one(gp, &field, b, g))
            .collect();
        powers.push(Subspace::span(field.clone(), &vectors, gp.order())?);
    }
    Ok(powers)
}

/// The left ideal `F[Γ]·I_Σ`, spanned by `g(σ − 1)`.
pub fn sigma_ideal<F: Field>(gp: &FiniteGroup, field: F) -> Result<Subspace<F>> {
    check_order(gp, &field)?;
    let mut vectors = Vec::new();
    for &s in gp.sigma().iter().filter(|&&s| s != gp.identity()) {
        for g in 0..gp.order() {
            let mut v = vec![field.zero(); gp.order()];
            v[gp.mul(g, s)] = field.one();
            v[g] = field.sub(&v[g], &field.one());
            vectors.push(v);
        }
    }
    Subspace::span(field, &vectors, gp.order())
}

/// `[J_1, …, J_{q_max}]` with `J_q = I^q + F[Γ]I_Σ`.
pub fn ideal_tower<F: Field>(gp: &FiniteGroup, field: F, q_max: usize) -> Result<Vec<Subspace<F>>> {
    let sigma = sigma_ideal(gp, field.clone())?;
    augmentation_powers(gp, field, q_max)?
        .into_iter()
        .map(|p| p.sum(&sigma))
        .collect()
}

/// Row space whose kernel is the Σ-invariants.
fn sigma_constraints<F: Field>(gp: &FiniteGroup, rep: &ModuleRep<F>) -> Vec<Vec<F::Elem>> {
    let field = rep.field();
    let id = identity(field, rep.dim());
    gp.sigma()
        .iter()
        .filter(|&&s| s != gp.identity())
        .flat_map(|&s| mat_sub(field, rep.action(s), &id))
        .collect()
}

/// `[H_1^0, …, H_{q_max}^0]` by the generator tower.
///
/// `W_k` is held as the kernel of a constraint row space `C_k`, starting from
/// `C_0 = 1`; then `C_{k+1}` is spanned by the rows of `C_k(ρ(γ_i) − 1)`. This
/// uses that `I^k` is two-sided, so generator conditions suffice. The common
/// kernel of `ρ(σ) − 1` over Σ is intersected at each level.
pub fn hq0_tower<F: Field>(gp: &FiniteGroup, rep: &ModuleRep<F>, q_max: usize) -> Result<Vec<Subspace<F>>> {
    check_order(gp, rep.field())?;
    let field = rep.field().clone();
    let dim = rep.dim();
    let id = identity(&field, dim);
    let shifted: Vec<_> = rep.generator_action().iter().map(|m| mat_sub(&field, m, &id)).collect();
    let sigma_rows = sigma_constraints(gp, rep);
    let mut constraints: Vec<Vec<F::Elem>> = id.clone();
    let mut out = Vec::with_capacity(q_max);
    for _ in 0..q_max {
        let rows: Vec<Vec<F::Elem>> = shifted
            .iter()
            .flat_map(|m| mat_mul(&field, &constraints, m))
            .collect();
        constraints = Subspace::span(field.clone(), &rows, dim)?.basis().to_vec();
        let mut all = constraints.clone();
        all.extend(sigma_rows.iter().cloned());
        out.push(nullspace(field.clone(), &all, dim)?);
    }
    Ok(out)
}

/// `H_q^0 = V^{I^q} ∩ V^{I_Σ}` by the generator tower.
pub fn hq0<F: Field>(gp: &FiniteGroup, rep: &ModuleRep<F>, q: usize) -> Result<Subspace<F>> {
    if q == 0 {
        return Err(Error::Range("q must be at least 1".into()));
    }
    Ok(hq0_tower(gp, rep, q)?.pop().expect("q ≥ 1"))
}

/// `H_q^0` as the common kernel of ρ(m) over a basis of `J_q`.
pub fn hq0_direct<F: Field>(gp: &FiniteGroup, rep: &ModuleRep<F>, q: usize) -> Result<Subspace<F>> {
    if q == 0 {
        return Err(Error::Range("q must be at least 1".into()));
    }
    let field = rep.field().clone();
    let jq = ideal_tower(gp, field.clone(), q)?.pop().expect("q ≥ 1");
    let rows: Vec<Vec<F::Elem>> = jq.basis().iter().flat_map(|m| rep.algebra_action(m)).collect();
    let reduced = Subspace::span(field.clone(), &rows, rep.dim())?;
    nullspace(field, reduced.basis(), rep.dim())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Stable,
    Growth { first_q: usize },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Stable => write!(f, "STABLE"),
            Verdict::Growth { first_q } => write!(f, "GROWTH at q={first_q}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationReport {
    pub group: String,
    pub field: String,
    pub dims: Vec<usize>,
    pub verdict: Verdict,
    /// Whether |Γ| is invertible in the field.
    pub invertible: bool,
    /// Whether the tower and the direct annihilator agree at every q.
    pub routes_agree: bool,
    /// Whether the tower is ascending.
    pub ascending: bool,
}

impl StabilizationReport {
    /// Stable whenever |Γ| is invertible, both routes agree, and the tower ascends.
    pub fn passes(&self) -> bool {
        self.routes_agree && self.ascending && (!self.invertible || self.verdict == Verdict::Stable)
    }
}

pub fn stabilization_report<F: Field>(
    gp: &FiniteGroup,
    rep: &ModuleRep<F>,
    q_max: usize,
) -> Result<StabilizationReport> {
    if q_max == 0 {
        return Err(Error::Range("q_max must be at least 1".into()));
    }
    let tower = hq0_tower(gp, rep, q_max)?;
    let dims: Vec<usize> = tower.iter().map(Subspace::dim).collect();
    let mut routes_agree = true;
    for (k, w) in tower.iter().enumerate() {
        let direct = hq0_direct(gp, rep, k + 1)?;
        routes_agree &= direct.dim() == w.dim() && direct.is_subspace_of(w)?;
    }
    let mut ascending = true;
    for pair in tower.windows(2) {
        ascending &= pair[0].is_subspace_of(&pair[1])?;
    }
    let verdict = match dims.windows(2).position(|w| w[1] != w[0]) {
        None => Verdict::Stable,
        Some(k) => Verdict::Growth { first_q: k + 2 },
    };
    let p = rep.field().characteristic();
    let invertible = p == 0 || gp.order() as u64 % p != 0;
    Ok(StabilizationReport {
        group: gp.name().to_string(),
        field: rep.field().name(),
        dims,
        verdict,
        invertible,
        routes_agree,
        ascending,
    })
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether `I² = I` integrally, i.e. whether Γ is perfect.
///
/// Over Q the identity `I² = I` holds for every finite group (the algebra is
/// semisimple), so the test runs over `F_p` for each prime `p` dividing `|Γ|`,
/// where `dim I − dim I² = dim Γ^ab ⊗ F_p`. Prime factors above the largest
/// supported modulus fall back to the commutator subgroup.
pub fn perfect_check(gp: &FiniteGroup) -> Result<bool> {
    if gp.order() > MAX_ORDER_RATIONAL {
        return Err(Error::Resource(format!("group of order {} exceeds the limit {MAX_ORDER_RATIONAL}", gp.order())));
    }
    for p in prime_factors(gp.order()) {
        if p > crate::linear::field::MAX_PRIME as usize {
            return Ok(gp.is_perfect());
        }
        let field = crate::linear::PrimeField::new(p as u32)?;
        let powers = augmentation_powers_unchecked(gp, field, 2)?;
        if powers[0].dim() != powers[1].dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `ghg⁻¹h⁻¹ − 1` lies in the given `I²`.
pub fn commutator_in_square<F: Field>(gp: &FiniteGroup, i2: &Subspace<F>, g: usize, h: usize) -> Result<bool> {
    let c = gp.commutator(g, h);
    i2.contains(&augmentation_vector(gp, i2.field(), c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{PrimeField, Rationals};

    fn dims<F: Field>(s: &[Subspace<F>]) -> Vec<usize> {
        s.iter().map(Subspace::dim).collect()
    }

    #[test]
    fn z2_over_f2_square_vanishes() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let powers = augmentation_powers(&z2, PrimeField::new(2).unwrap(), 2).unwrap();
        assert_eq!(dims(&powers), vec![1, 0]);
    }

    #[test]
    fn z3_powers_are_constant() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(dims(&ideal_tower(&z3, Rationals, 4).unwrap()), vec![2, 2, 2, 2]);
    }

    #[test]
    fn a5_is_perfect() {
        let a5 = FiniteGroup::alternating5().unwrap();
        let powers = augmentation_powers(&a5, Rationals, 2).unwrap();
        assert_eq!(dims(&powers), vec![59, 59]);
        assert!(perfect_check(&a5).unwrap());
    }

    #[test]
    fn perfect_check_examples() {
        assert!(!perfect_check(&FiniteGroup::cyclic(5).unwrap()).unwrap());
        assert!(perfect_check(&FiniteGroup::trivial()).unwrap());
        let z5 = augmentation_powers(&FiniteGroup::cyclic(5).unwrap(), PrimeField::new(5).unwrap(), 2).unwrap();
        assert_eq!(z5[0].dim(), 4);
        assert_eq!(z5[1].dim(), 3);
        // Over Q the square never drops.
        let z5q = augmentation_powers(&FiniteGroup::cyclic(5).unwrap(), Rationals, 2).unwrap();
        assert_eq!(z5q[1].dim(), 4);
        assert!(!perfect_check(&FiniteGroup::symmetric(3).unwrap()).unwrap());
        assert!(!perfect_check(&FiniteGroup::cyclic(101).unwrap()).unwrap());
    }

    #[test]
    fn s3_regular_is_stable() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let rep = ModuleRep::regular(&s3, Rationals).unwrap();
        let report = stabilization_report(&s3, &rep, 4).unwrap();
        assert_eq!(report.dims, vec![1, 1, 1, 1]);
        assert_eq!(report.verdict, Verdict::Stable);
        assert!(report.passes());
        let ones = vec![crate::linear::rat(1); 6];
        assert!(hq0(&s3, &rep, 1).unwrap().contains(&ones).unwrap());
    }

    #[test]
    fn z2_over_f2_grows() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let rep = ModuleRep::regular(&z2, PrimeField::new(2).unwrap()).unwrap();
        let report = stabilization_report(&z2, &rep, 3).unwrap();
        assert_eq!(report.dims, vec![1, 2, 2]);
        assert_eq!(report.verdict, Verdict::Growth { first_q: 2 });
        assert_eq!(report.verdict.to_string(), "GROWTH at q=2");
        assert!(!report.invertible);
        assert!(report.passes());
    }

    #[test]
    fn z3_trivial_rep() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let rep = ModuleRep::trivial(&z3, Rationals, 1).unwrap();
        assert_eq!(stabilization_report(&z3, &rep, 3).unwrap().dims, vec![1, 1, 1]);
    }

    #[test]
    fn sigma_cuts_down_invariants() {
        // Σ = rotations in S_3 over F_3: the tower grows, and Σ restricts it.
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let c = s3.generators()[1];
        let sigma = vec![s3.identity(), c, s3.mul(c, c)];
        let f3 = PrimeField::new(3).unwrap();
        let rep = ModuleRep::regular(&s3, f3.clone()).unwrap();
        let free = stabilization_report(&s3, &rep, 3).unwrap();
        let s3s = s3.with_sigma(sigma).unwrap();
        let rep_s = ModuleRep::regular(&s3s, f3).unwrap();
        let cut = stabilization_report(&s3s, &rep_s, 3).unwrap();
        assert!(free.routes_agree && cut.routes_agree);
        for (a, b) in cut.dims.iter().zip(&free.dims) {
            assert!(a <= b);
        }
    }

    #[test]
    fn commutators_lie_in_square() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let i2 = augmentation_powers(&s3, Rationals, 2).unwrap().pop().unwrap();
        for g in 0..6 {
            for h in 0..6 {
                assert!(commutator_in_square(&s3, &i2, g, h).unwrap());
            }
        }
    }

    #[test]
    fn order_limit_over_prime_field() {
        let big = FiniteGroup::cyclic(61).unwrap();
        let err = augmentation_ideal(&big, PrimeField::new(2).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
        assert!(augmentation_ideal(&big, Rationals).is_ok());
    }
}
