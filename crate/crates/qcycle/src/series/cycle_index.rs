//! Factorized cycle indices for GL, Mat, U, Sp, and the orthogonal sum.
//!
//! Each family's generating function is a product over polynomial slots of
//! partition sums `sum_lambda w(lambda) u^{...}/denominator(lambda)`. Slots
//! of the same shape are grouped (the factor depends only on the degree and
//! the involution type of the polynomial, not the polynomial itself), so the
//! product is a handful of truncated-series powers with exponents given by
//! the irreducible-counting formulas:
//!
//! - GL: one slot per irreducible of degree m (excluding z), denominator
//!   `c_GL(lambda, q^m)`, u-weight m per unit.
//! - Mat: the same with the z slot included.
//! - U (over F_{q^2}): self-tilde slots with the unitary denominator at base
//!   q^m and pair slots {phi, tilde phi} with denominator `c_GL(lambda, q^{2m})`
//!   and u-weight 2m.
//! - Sp: two signed slots at z±1 (Wall's B factors), self-bar slots with the
//!   unitary denominator at base q^{m/2}, pair slots at base q^m.
//! - O-sum: as Sp with orthogonal signed slots; the resulting coefficient of
//!   u^n is the *sum* of the O^+ and O^- averages (consumers halve it).
//!
//! Series are normalized so that the u^n coefficient is the expectation of
//! the weight over the group (for Mat: over all matrices, which multiplies
//! the raw coefficient by |GL(n,q)|/q^{n^2}).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::classdata::{
    centralizer_order, matrix_field, witt_type_of_datum, ClassDatum, SlotData,
};
use crate::error::{Error, Result};
use crate::groups::{gl_order, Family, GroupId};
use crate::partition::{
    c_gl, c_o_signed, c_sp_signed, c_unitary, OSignedPartition, Partition, SpSignedPartition,
};
use crate::poly::{irreducible_count, self_bar_count, self_tilde_count};
use crate::series::trunc::TruncSeries;

/// The families that have a factorized cycle index here. `OSum` carries the
/// sum of the two orthogonal-group averages in one series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesFamily {
    Gl,
    Mat,
    U,
    Sp,
    OSum,
}

impl SeriesFamily {
    pub fn parse(s: &str) -> Result<SeriesFamily> {
        match s {
            "GL" | "gl" => Ok(SeriesFamily::Gl),
            "Mat" | "mat" => Ok(SeriesFamily::Mat),
            "U" | "u" => Ok(SeriesFamily::U),
            "Sp" | "sp" => Ok(SeriesFamily::Sp),
            "O" | "o" | "O-sum" | "Oavg" | "O-avg" => Ok(SeriesFamily::OSum),
            _ => Err(Error::domain(format!("unknown series family '{s}'"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SeriesFamily::Gl => "GL",
            SeriesFamily::Mat => "Mat",
            SeriesFamily::U => "U",
            SeriesFamily::Sp => "Sp",
            SeriesFamily::OSum => "O",
        }
    }

    fn check_q(self, q: u32) -> Result<()> {
        if q < 2 {
            return Err(Error::domain("q must be at least 2"));
        }
        if matches!(self, SeriesFamily::Sp | SeriesFamily::OSum) && q % 2 == 0 {
            return Err(Error::domain("Sp and O need odd characteristic"));
        }
        Ok(())
    }
}

/// Class-function predicates on the partition at each polynomial slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartPredicate {
    /// All parts have size at most one (diagonalizable over the closure).
    Semisimple,
    /// At most one part (minimal polynomial = characteristic polynomial).
    Regular,
    /// Size at most one.
    RegularSemisimple,
}

impl PartPredicate {
    pub fn holds(self, lam: &Partition) -> bool {
        match self {
            PartPredicate::Semisimple => lam.largest() <= 1,
            PartPredicate::Regular => lam.num_parts() <= 1,
            PartPredicate::RegularSemisimple => lam.size() <= 1,
        }
    }

    pub fn parse(s: &str) -> Result<PartPredicate> {
        match s {
            "semisimple" | "ss" => Ok(PartPredicate::Semisimple),
            "regular" | "reg" => Ok(PartPredicate::Regular),
            "regular-semisimple" | "rss" => Ok(PartPredicate::RegularSemisimple),
            _ => Err(Error::domain(format!("unknown property '{s}'"))),
        }
    }
}

/// Weight rules for the cycle index: the all-ones weight, a per-slot
/// partition predicate, or the indicator of a single fixed class datum
/// (signs ignored: pinning an unsigned datum sums its signed completions).
#[derive(Debug, Clone)]
pub enum WeightSpec {
    One,
    Predicate(PartPredicate),
    Pin(ClassDatum),
}

// --- slot bookkeeping ---

enum SlotKind {
    /// c_GL(lambda, base), u-weight `unit` per unit of |lambda|.
    GlPlain { base: BigInt, unit: usize },
    /// Unitary denominator c_U(lambda, base).
    SelfInvolutive { base: BigInt, unit: usize },
    /// Involution pair; c_GL(lambda, base), u-weight `unit` = 2 deg phi, and
    /// the weight applies to both members (x-marks count twice).
    Pair { base: BigInt, unit: usize },
    /// Wall's signed factor at z±1.
    SpSigned { q: u32 },
    OSigned { q: u32 },
}

struct SlotGroup {
    kind: SlotKind,
    count: BigUint,
}

fn to_count(v: BigInt) -> BigUint {
    v.to_biguint().expect("slot counts are nonnegative")
}

fn family_slot_groups(fam: SeriesFamily, q: u32, trunc: usize) -> Vec<SlotGroup> {
    let qi = BigInt::from(q);
    let mut groups = Vec::new();
    match fam {
        SeriesFamily::Gl | SeriesFamily::Mat => {
            for m in 1..=trunc {
                let mut count = irreducible_count(q as u64, m as u32, true);
                if fam == SeriesFamily::Mat && m == 1 {
                    count += 1; // the z slot participates for Mat
                }
                if count.is_zero() {
                    continue;
                }
                groups.push(SlotGroup {
                    kind: SlotKind::GlPlain { base: qi.pow(m as u32), unit: m },
                    count: to_count(count),
                });
            }
        }
        SeriesFamily::U => {
            let q2 = q as u64 * q as u64;
            for m in 1..=trunc {
                let st = self_tilde_count(q as u64, m as u32);
                if !st.is_zero() {
                    groups.push(SlotGroup {
                        kind: SlotKind::SelfInvolutive { base: qi.pow(m as u32), unit: m },
                        count: to_count(st.clone()),
                    });
                }
                if 2 * m <= trunc {
                    let pairs: BigInt = (irreducible_count(q2, m as u32, true) - st) / BigInt::from(2);
                    if !pairs.is_zero() {
                        groups.push(SlotGroup {
                            kind: SlotKind::Pair { base: qi.pow(2 * m as u32), unit: 2 * m },
                            count: to_count(pairs),
                        });
                    }
                }
            }
        }
        SeriesFamily::Sp | SeriesFamily::OSum => {
            let signed = match fam {
                SeriesFamily::Sp => SlotKind::SpSigned { q },
                _ => SlotKind::OSigned { q },
            };
            groups.push(SlotGroup { kind: signed, count: BigUint::from(2u32) });
            for m in 1..=trunc {
                let sb = if m == 1 {
                    BigInt::zero() // z±1 handled by the signed slots
                } else {
                    self_bar_count(q as u64, m as u32)
                };
                if !sb.is_zero() {
                    assert!(m % 2 == 0);
                    groups.push(SlotGroup {
                        kind: SlotKind::SelfInvolutive {
                            base: qi.pow(m as u32 / 2),
                            unit: m,
                        },
                        count: to_count(sb.clone()),
                    });
                }
                if 2 * m <= trunc {
                    let self_count = if m == 1 { BigInt::from(2) } else { sb };
                    let pairs: BigInt = (irreducible_count(q as u64, m as u32, true) - self_count) / BigInt::from(2);
                    if !pairs.is_zero() {
                        groups.push(SlotGroup {
                            kind: SlotKind::Pair { base: qi.pow(m as u32), unit: 2 * m },
                            count: to_count(pairs),
                        });
                    }
                }
            }
        }
    }
    groups
}

/// Scalar weight of a partition under a predicate-style spec (One/Predicate).
fn scalar_weight(weight: &WeightSpec, lam: &Partition) -> bool {
    match weight {
        WeightSpec::One => true,
        WeightSpec::Predicate(p) => p.holds(lam),
        WeightSpec::Pin(_) => unreachable!("pinned weights take the direct path"),
    }
}

fn slot_series(kind: &SlotKind, weight: &WeightSpec, trunc: usize) -> TruncSeries {
    let mut s = TruncSeries::zero(trunc);
    match kind {
        SlotKind::GlPlain { base, unit }
        | SlotKind::SelfInvolutive { base, unit }
        | SlotKind::Pair { base, unit } => {
            let unitary = matches!(kind, SlotKind::SelfInvolutive { .. });
            for j in 0..=(trunc / unit) {
                let mut acc = BigRational::zero();
                for lam in Partition::enumerate(j as u32) {
                    if !scalar_weight(weight, &lam) {
                        continue;
                    }
                    let den = if unitary { c_unitary(&lam, base) } else { c_gl(&lam, base) };
                    acc += BigRational::new(BigInt::one(), den);
                }
                s.set_coeff(j * unit, acc);
            }
        }
        SlotKind::SpSigned { q } => {
            for j in 0..=trunc {
                let mut acc = BigRational::zero();
                for sp in SpSignedPartition::enumerate(j as u32) {
                    if !scalar_weight(weight, sp.partition()) {
                        continue;
                    }
                    acc += BigRational::new(BigInt::one(), c_sp_signed(&sp, *q));
                }
                s.set_coeff(j, acc);
            }
        }
        SlotKind::OSigned { q } => {
            for j in 0..=trunc {
                let mut acc = BigRational::zero();
                for o in OSignedPartition::enumerate(j as u32) {
                    if !scalar_weight(weight, o.partition()) {
                        continue;
                    }
                    acc += BigRational::new(BigInt::one(), c_o_signed(&o, *q));
                }
                s.set_coeff(j, acc);
            }
        }
    }
    s
}

fn normalize(fam: SeriesFamily, q: u32, mut s: TruncSeries) -> TruncSeries {
    if fam == SeriesFamily::Mat {
        for n in 0..=s.trunc() {
            let scale = BigRational::new(gl_order(n as u32, q), BigInt::from(q).pow((n * n) as u32));
            let v = s.coeff(n) * scale;
            s.set_coeff(n, v);
        }
    }
    s
}

/// The weighted cycle-index series, truncated at `trunc`. The u^n coefficient
/// is the expected weight over the group at dimension n (with the O-sum
/// convention for orthogonal groups, and the empty-product constant 1 at n=0).
pub fn cycle_index_series(
    fam: SeriesFamily,
    q: u32,
    weight: &WeightSpec,
    trunc: usize,
    budget: &Budget,
) -> Result<TruncSeries> {
    fam.check_q(q)?;
    if let WeightSpec::Pin(datum) = weight {
        return pinned_series(fam, q, datum, trunc, budget);
    }
    let mut acc = TruncSeries::one(trunc);
    for group in family_slot_groups(fam, q, trunc) {
        let s = slot_series(&group.kind, weight, trunc);
        acc = acc.mul(&s.pow_big(&group.count));
    }
    Ok(normalize(fam, q, acc))
}

/// The pinned series: all slots outside the datum are forced empty, so the
/// series is a single monomial at the datum's weighted degree whose
/// coefficient is `sum 1/centralizer` over the signed completions.
fn pinned_series(
    fam: SeriesFamily,
    q: u32,
    datum: &ClassDatum,
    trunc: usize,
    budget: &Budget,
) -> Result<TruncSeries> {
    let _ = budget;
    let wdeg = datum.weighted_degree() as usize;
    let mut s = TruncSeries::zero(trunc);
    if wdeg > trunc {
        return Ok(s);
    }
    let mut acc = BigRational::zero();
    match fam {
        SeriesFamily::Gl | SeriesFamily::Mat | SeriesFamily::U => {
            let family = match fam {
                SeriesFamily::Gl => Family::Gl,
                SeriesFamily::Mat => Family::Mat,
                _ => Family::U,
            };
            let g = GroupId::new(family, wdeg as u32, q)?;
            acc += BigRational::new(BigInt::one(), centralizer_order(datum, &g)?);
        }
        SeriesFamily::Sp | SeriesFamily::OSum => {
            for completion in signed_completions(fam, q, datum)? {
                let family = match fam {
                    SeriesFamily::Sp => Family::Sp,
                    _ => {
                        let g_probe = GroupId { family: Family::OPlus, n: wdeg as u32, q };
                        let (_, sign) = witt_type_of_datum(&completion, &g_probe)?;
                        if sign == crate::groups::Sign::Plus {
                            Family::OPlus
                        } else {
                            Family::OMinus
                        }
                    }
                };
                let g = GroupId::new(family, wdeg as u32, q)?;
                acc += BigRational::new(BigInt::one(), centralizer_order(&completion, &g)?);
            }
        }
    }
    s.set_coeff(wdeg, acc);
    Ok(normalize(fam, q, s))
}

/// All ways to put signs on the z±1 slots of an unsigned datum (other slots
/// unchanged); invalid sign patterns are dropped.
pub fn signed_completions(
    fam: SeriesFamily,
    q: u32,
    datum: &ClassDatum,
) -> Result<Vec<ClassDatum>> {
    let family = match fam {
        SeriesFamily::Sp => Family::Sp,
        SeriesFamily::OSum => Family::OPlus,
        _ => return Ok(vec![datum.clone()]),
    };
    let g = GroupId { family, n: 0, q };
    let field = matrix_field(&g)?;
    let zm = crate::poly::MonicPoly::z_minus_one(&field);
    let zp = crate::poly::MonicPoly::z_plus_one(&field);
    let mut completions = vec![ClassDatum::empty()];
    for (poly, slot) in &datum.slots {
        let lam = slot.partition().clone();
        let variants: Vec<SlotData> = if *poly == zm || *poly == zp {
            match fam {
                SeriesFamily::Sp => SpSignedPartition::enumerate(lam.size() as u32)
                    .into_iter()
                    .filter(|sp| sp.partition() == &lam)
                    .map(SlotData::SpSigned)
                    .collect(),
                _ => OSignedPartition::enumerate(lam.size() as u32)
                    .into_iter()
                    .filter(|o| o.partition() == &lam)
                    .map(SlotData::OSigned)
                    .collect(),
            }
        } else {
            vec![SlotData::Plain(lam)]
        };
        if variants.is_empty() {
            return Ok(Vec::new()); // parity-invalid partition at z±1
        }
        let mut next = Vec::new();
        for base in &completions {
            for v in &variants {
                let mut d = base.clone();
                d.slots.insert(poly.clone(), v.clone());
                next.push(d);
            }
        }
        completions = next;
    }
    Ok(completions)
}

/// Exact probability that a uniform element at dimension n satisfies the
/// property (for the orthogonal family this is the average of the O^+ and
/// O^- probabilities).
pub fn finite_n_probability(
    fam: SeriesFamily,
    n: u32,
    q: u32,
    pred: PartPredicate,
) -> Result<BigRational> {
    let series = cycle_index_series(
        fam,
        q,
        &WeightSpec::Predicate(pred),
        n as usize,
        &Budget::default(),
    )?;
    let c = series.coeff(n as usize).clone();
    if fam == SeriesFamily::OSum && n >= 1 {
        return Ok(c / BigRational::from(BigInt::from(2)));
    }
    Ok(c)
}

// --- x-marked series for the irreducible-factor-count statistic ---

/// A series whose coefficients track (value at x=1, d/dx at x=1) of an
/// x-marked quantity; enough to extract means of the marked statistic.
#[derive(Debug, Clone)]
pub struct MarkedSeries {
    pub val: TruncSeries,
    pub dx: TruncSeries,
}

impl MarkedSeries {
    pub fn one(trunc: usize) -> MarkedSeries {
        MarkedSeries { val: TruncSeries::one(trunc), dx: TruncSeries::zero(trunc) }
    }

    pub fn mul(&self, other: &MarkedSeries) -> MarkedSeries {
        MarkedSeries {
            val: self.val.mul(&other.val),
            dx: self.dx.mul(&other.val).add(&self.val.mul(&other.dx)),
        }
    }

    pub fn pow_big(&self, e: &BigUint) -> MarkedSeries {
        let mut acc = MarkedSeries::one(self.val.trunc());
        if e.is_zero() {
            return acc;
        }
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc);
            if e.bit(i) {
                acc = acc.mul(self);
            }
        }
        acc
    }
}

fn marked_slot(kind: &SlotKind, trunc: usize) -> MarkedSeries {
    let mut val = TruncSeries::zero(trunc);
    let mut dx = TruncSeries::zero(trunc);
    match kind {
        SlotKind::GlPlain { base, unit }
        | SlotKind::SelfInvolutive { base, unit }
        | SlotKind::Pair { base, unit } => {
            let unitary = matches!(kind, SlotKind::SelfInvolutive { .. });
            let marks_per_unit: u64 = if matches!(kind, SlotKind::Pair { .. }) { 2 } else { 1 };
            for j in 0..=(trunc / unit) {
                let mut v = BigRational::zero();
                let mut d = BigRational::zero();
                for lam in Partition::enumerate(j as u32) {
                    let den = if unitary { c_unitary(&lam, base) } else { c_gl(&lam, base) };
                    let t = BigRational::new(BigInt::one(), den);
                    d += &t * BigRational::from(BigInt::from(marks_per_unit * lam.size()));
                    v += t;
                }
                val.set_coeff(j * unit, v);
                dx.set_coeff(j * unit, d);
            }
        }
        SlotKind::SpSigned { q } => {
            for j in 0..=trunc {
                let mut v = BigRational::zero();
                let mut d = BigRational::zero();
                for sp in SpSignedPartition::enumerate(j as u32) {
                    let t = BigRational::new(BigInt::one(), c_sp_signed(&sp, *q));
                    d += &t * BigRational::from(BigInt::from(sp.size()));
                    v += t;
                }
                val.set_coeff(j, v);
                dx.set_coeff(j, d);
            }
        }
        SlotKind::OSigned { q } => {
            for j in 0..=trunc {
                let mut v = BigRational::zero();
                let mut d = BigRational::zero();
                for o in OSignedPartition::enumerate(j as u32) {
                    let t = BigRational::new(BigInt::one(), c_o_signed(&o, *q));
                    d += &t * BigRational::from(BigInt::from(o.size()));
                    v += t;
                }
                val.set_coeff(j, v);
                dx.set_coeff(j, d);
            }
        }
    }
    MarkedSeries { val, dx }
}

/// Cycle index with every slot marked `x^{|lambda|}`, tracked to first order
/// at x = 1; `dx` over `val` at u^n is the mean number of irreducible factors
/// (with multiplicity) of the characteristic polynomial.
pub fn marked_cycle_index_series(
    fam: SeriesFamily,
    q: u32,
    trunc: usize,
    _budget: &Budget,
) -> Result<MarkedSeries> {
    fam.check_q(q)?;
    let mut acc = MarkedSeries::one(trunc);
    for group in family_slot_groups(fam, q, trunc) {
        acc = acc.mul(&marked_slot(&group.kind, trunc).pow_big(&group.count));
    }
    Ok(MarkedSeries { val: normalize(fam, q, acc.val), dx: normalize(fam, q, acc.dx) })
}

/// Exact mean of the irreducible-factor-count statistic at dimension n.
/// For the orthogonal family this is half the sum of the two group means.
pub fn jordan_block_mean(fam: SeriesFamily, n: u32, q: u32) -> Result<BigRational> {
    let marked = marked_cycle_index_series(fam, q, n as usize, &Budget::default())?;
    let mass = marked.val.coeff(n as usize);
    if mass.is_zero() {
        return Err(Error::domain(format!(
            "dimension {n} carries no mass for {}",
            fam.name()
        )));
    }
    Ok(marked.dx.coeff(n as usize) / mass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classdata::{acting_group_order, enumerate_classes};
    use crate::poly::MonicPoly;

    fn q_pow_inv(q: u32, e: u32) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(q).pow(e))
    }


    fn mass_series(fam: SeriesFamily, q: u32, n: usize) -> TruncSeries {
        cycle_index_series(fam, q, &WeightSpec::One, n, &Budget::default()).unwrap()
    }

    #[test]
    fn mass_gl_mat_u() {
        for q in [2u32, 3] {
            for fam in [SeriesFamily::Gl, SeriesFamily::Mat, SeriesFamily::U] {
                let s = mass_series(fam, q, 8);
                for n in 0..=8 {
                    assert_eq!(
                        s.coeff(n),
                        &BigRational::one(),
                        "{} q={q} n={n}",
                        fam.name()
                    );
                }
            }
        }
    }

    #[test]
    fn mass_sp_parity() {
        for q in [3u32, 5] {
            let s = mass_series(SeriesFamily::Sp, q, 8);
            for n in 0..=8 {
                let expect = if n % 2 == 0 { BigRational::one() } else { BigRational::zero() };
                assert_eq!(s.coeff(n), &expect, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn mass_o_sum_is_two() {
        for q in [3u32, 5] {
            let s = mass_series(SeriesFamily::OSum, q, 6);
            assert_eq!(s.coeff(0), &BigRational::one());
            for n in 1..=6 {
                assert_eq!(
                    s.coeff(n),
                    &BigRational::from(BigInt::from(2)),
                    "q={q} n={n}"
                );
            }
        }
    }

    #[test]
    fn gl22_probabilities() {
        assert_eq!(
            finite_n_probability(SeriesFamily::Gl, 2, 2, PartPredicate::Semisimple).unwrap(),
            BigRational::new(BigInt::one(), BigInt::from(2))
        );
        assert_eq!(
            finite_n_probability(SeriesFamily::Gl, 2, 2, PartPredicate::Regular).unwrap(),
            BigRational::new(BigInt::from(5), BigInt::from(6))
        );
        assert_eq!(
            finite_n_probability(SeriesFamily::Gl, 2, 2, PartPredicate::RegularSemisimple)
                .unwrap(),
            BigRational::new(BigInt::one(), BigInt::from(3))
        );
    }

    /// Series coefficients must coincide with direct sums over the class
    /// enumeration, for all three weight kinds.
    #[test]
    fn factorization_matches_enumeration() {
        let cases: Vec<(SeriesFamily, Vec<Family>, u32, u32)> = vec![
            (SeriesFamily::Gl, vec![Family::Gl], 2, 2),
            (SeriesFamily::Gl, vec![Family::Gl], 2, 3),
            (SeriesFamily::Gl, vec![Family::Gl], 3, 2),
            (SeriesFamily::Mat, vec![Family::Mat], 2, 2),
            (SeriesFamily::Mat, vec![Family::Mat], 2, 3),
            (SeriesFamily::U, vec![Family::U], 2, 2),
            (SeriesFamily::U, vec![Family::U], 3, 2),
            (SeriesFamily::Sp, vec![Family::Sp], 2, 3),
            (SeriesFamily::Sp, vec![Family::Sp], 4, 3),
            (SeriesFamily::OSum, vec![Family::OPlus, Family::OMinus], 2, 3),
            (SeriesFamily::OSum, vec![Family::OPlus, Family::OMinus], 3, 3),
        ];
        for (fam, groups, n, q) in cases {
            // gather (datum, size, acting order) over the constituent groups
            let mut classes = Vec::new();
            for family in &groups {
                let g = GroupId::new(*family, n, q).unwrap();
                let order = acting_group_order(&g);
                for (d, s) in enumerate_classes(&g, &Budget::default()).unwrap() {
                    classes.push((d, s, order.clone()));
                }
            }
            // the Mat "probability" denominator is the number of matrices
            let denom_override = if fam == SeriesFamily::Mat {
                Some(BigInt::from(q).pow(n * n))
            } else {
                None
            };
            for pred in [
                PartPredicate::Semisimple,
                PartPredicate::Regular,
                PartPredicate::RegularSemisimple,
            ] {
                let coeff = cycle_index_series(
                    fam,
                    q,
                    &WeightSpec::Predicate(pred),
                    n as usize,
                    &Budget::default(),
                )
                .unwrap()
                .coeff(n as usize)
                .clone();
                let mut expect = BigRational::zero();
                for (d, s, order) in &classes {
                    if d.slots.values().all(|slot| pred.holds(slot.partition())) {
                        let den = denom_override.clone().unwrap_or_else(|| order.clone());
                        expect += BigRational::new(s.clone(), den);
                    }
                }
                assert_eq!(coeff, expect, "{} n={n} q={q} {pred:?}", fam.name());
            }
            // x-marked: mean factor count
            let marked =
                marked_cycle_index_series(fam, q, n as usize, &Budget::default()).unwrap();
            let mut expect = BigRational::zero();
            for (d, s, order) in &classes {
                let den = denom_override.clone().unwrap_or_else(|| order.clone());
                expect += BigRational::new(s.clone(), den)
                    * BigRational::from(BigInt::from(d.factor_count()));
            }
            assert_eq!(marked.dx.coeff(n as usize), &expect, "{} marked n={n} q={q}", fam.name());
            // pinned: first nonidentity datum
            let (d0, s0, order0) = classes
                .iter()
                .find(|(d, _, _)| d.factor_count() > 1 || d.slots.len() > 1)
                .unwrap();
            let pin = WeightSpec::Pin(d0.unsigned());
            let coeff = cycle_index_series(fam, q, &pin, n as usize, &Budget::default())
                .unwrap()
                .coeff(n as usize)
                .clone();
            let mut expect = BigRational::zero();
            for (d, s, order) in &classes {
                if d.unsigned() == d0.unsigned() {
                    let den = denom_override.clone().unwrap_or_else(|| order.clone());
                    expect += BigRational::new(s.clone(), den);
                }
            }
            let _ = (s0, order0);
            assert_eq!(coeff, expect, "{} pinned n={n} q={q}", fam.name());
        }
    }

    #[test]
    fn jordan_mean_examples() {
        // one linear factor always at n=1
        for q in [2u32, 3, 5] {
            assert_eq!(jordan_block_mean(SeriesFamily::Gl, 1, q).unwrap(), BigRational::one());
        }
        // GL(2,2): (1*2 + 3*2 + 2*1)/6 = 5/3
        assert_eq!(
            jordan_block_mean(SeriesFamily::Gl, 2, 2).unwrap(),
            BigRational::new(BigInt::from(5), BigInt::from(3))
        );
        assert_eq!(jordan_block_mean(SeriesFamily::U, 1, 2).unwrap(), BigRational::one());
        assert!(jordan_block_mean(SeriesFamily::Sp, 3, 3).is_err());
    }

    /// Lemma-style product identity: prod over all monic irreducibles
    /// (z included) of (1 - u^m/q^{tm}) telescopes to 1 - u/q^{t-1}.
    #[test]
    fn allpoly_product_identity() {
        let trunc = 10usize;
        for q in [2u32, 3] {
            for t in [1u32, 2, 3] {
                let mut acc = TruncSeries::one(trunc);
                for m in 1..=trunc {
                    let count = irreducible_count(q as u64, m as u32, false)
                        .to_biguint()
                        .unwrap();
                    let mut factor = TruncSeries::one(trunc);
                    factor.set_coeff(m, -q_pow_inv(q, t * m as u32));
                    acc = acc.mul(&factor.pow_big(&count));
                }
                let mut expect = TruncSeries::one(trunc);
                expect.set_coeff(1, -q_pow_inv(q, t - 1));
                assert_eq!(acc, expect, "q={q} t={t}");
            }
        }
    }

    /// prod_{phi != z} prod_{r<=R} (1 - u^m/q^{rm}) approaches 1 - u as R grows.
    #[test]
    fn product_lemma_convergence() {
        let trunc = 8usize;
        for q in [2u32, 3] {
            let mut target = TruncSeries::one(trunc);
            target.set_coeff(1, -BigRational::one());
            let mut last: Option<BigRational> = None;
            for big_r in [3u32, 6, 9, 12] {
                let mut acc = TruncSeries::one(trunc);
                for m in 1..=trunc {
                    let count = irreducible_count(q as u64, m as u32, true)
                        .to_biguint()
                        .unwrap();
                    let mut factor = TruncSeries::one(trunc);
                    for r in 1..=big_r {
                        let mut f = TruncSeries::one(trunc);
                        f.set_coeff(m, -q_pow_inv(q, r * m as u32));
                        factor = factor.mul(&f);
                    }
                    acc = acc.mul(&factor.pow_big(&count));
                }
                let err = acc.max_abs_diff(&target);
                if let Some(prev) = last {
                    assert!(err < prev, "q={q} R={big_r}");
                }
                if big_r == 12 {
                    let bound = q_pow_inv(q, big_r) * BigRational::from(BigInt::from(4));
                    assert!(err <= bound, "q={q} err={err} bound={bound}");
                }
                last = Some(err);
            }
        }
    }

    #[test]
    fn semisimple_gl2_coefficient() {
        // 3 of 6 elements of GL(2,2) are semisimple
        let s = cycle_index_series(
            SeriesFamily::Gl,
            2,
            &WeightSpec::Predicate(PartPredicate::Semisimple),
            4,
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(s.coeff(2), &BigRational::new(BigInt::one(), BigInt::from(2)));
    }

    #[test]
    fn pinned_transvection_mass() {
        // GL(2,2) transvection class: 3 elements of 6
        let f2 = crate::field::Field::prime(2);
        let datum = ClassDatum::new(
            [(
                MonicPoly::z_plus_one(&f2),
                SlotData::Plain(Partition::new(vec![2])),
            )]
            .into(),
        );
        let s = cycle_index_series(
            SeriesFamily::Gl,
            2,
            &WeightSpec::Pin(datum),
            4,
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(s.coeff(2), &BigRational::new(BigInt::one(), BigInt::from(2)));
        // Sp(2,3) unsigned (2) at z-1: both signed classes, 8 of 24 elements
        let f3 = crate::field::Field::prime(3);
        let datum = ClassDatum::new(
            [(
                MonicPoly::z_minus_one(&f3),
                SlotData::Plain(Partition::new(vec![2])),
            )]
            .into(),
        );
        let s = cycle_index_series(
            SeriesFamily::Sp,
            3,
            &WeightSpec::Pin(datum),
            4,
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(s.coeff(2), &BigRational::new(BigInt::from(8), BigInt::from(24)));
    }
}
