//! Conjugacy-class parameterization for the classical families: validation,
//! centralizer orders, class sizes, Witt-type sign assignment, and full
//! symbolic class enumeration.
//!
//! A class datum assigns to monic irreducible polynomials over the matrix
//! field either a plain partition, or (at z±1 for Sp/O) a signed partition.
//! The restrictions are: z never appears with a nonempty partition except in
//! the Mat family; the data is closed under the relevant involution
//! (lambda_phi = lambda_{tilde phi} for U, = lambda_{bar phi} for Sp/O); and
//! the weighted sizes sum to the dimension.
//!
//! The centralizer order is a product of per-polynomial factors:
//! c_GL for GL/Mat slots; the unitary quantity for self-involutive slots
//! (base q^m for U, q^{m/2} for Sp/O); c_GL at base q^{2m} (U) or q^m (Sp/O)
//! once per involution pair; and Wall's signed factors at z±1. Class size is
//! the group order divided by the centralizer order, always exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groups::{group_order, Family, GroupId, Sign};
use crate::partition::{
    c_gl, c_o_signed, c_sp_signed, c_unitary, OSignedPartition, Partition, SpSignedPartition,
};
use crate::poly::{bar, irreducibles_up_to, tilde, MonicPoly};

/// Partition data attached to one polynomial slot.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlotData {
    Plain(Partition),
    SpSigned(SpSignedPartition),
    OSigned(OSignedPartition),
}

impl SlotData {
    pub fn partition(&self) -> &Partition {
        match self {
            SlotData::Plain(p) => p,
            SlotData::SpSigned(s) => s.partition(),
            SlotData::OSigned(o) => o.partition(),
        }
    }

    pub fn size(&self) -> u64 {
        self.partition().size()
    }

    pub fn render(&self) -> String {
        match self {
            SlotData::Plain(p) => p.render(),
            SlotData::SpSigned(s) => s.render(),
            SlotData::OSigned(o) => o.render(),
        }
    }
}

/// A full conjugacy-class datum: polynomial -> slot data. Absent polynomials
/// carry the empty partition. Involution pairs store both members explicitly.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ClassDatum {
    pub slots: BTreeMap<MonicPoly, SlotData>,
}

impl ClassDatum {
    pub fn new(slots: BTreeMap<MonicPoly, SlotData>) -> ClassDatum {
        ClassDatum { slots }
    }

    pub fn empty() -> ClassDatum {
        ClassDatum::default()
    }

    /// Total weighted degree: sum over slots of |lambda| * deg(phi), except
    /// that signed slots at z±1 weigh |lambda| * 1 by construction.
    pub fn weighted_degree(&self) -> u64 {
        self.slots
            .iter()
            .map(|(p, s)| s.size() * p.degree() as u64)
            .sum()
    }

    /// Strip signs, keeping only the underlying partitions (the shape the
    /// brute-force oracle can observe from a matrix alone).
    pub fn unsigned(&self) -> ClassDatum {
        ClassDatum {
            slots: self
                .slots
                .iter()
                .map(|(p, s)| (p.clone(), SlotData::Plain(s.partition().clone())))
                .collect(),
        }
    }

    /// Number of irreducible factors of the characteristic polynomial counted
    /// with multiplicity: sum over slots of |lambda_phi|.
    pub fn factor_count(&self) -> u64 {
        self.slots.values().map(|s| s.size()).sum()
    }

    pub fn render(&self, field: &Field) -> String {
        let inner = self
            .slots
            .iter()
            .map(|(p, s)| format!("({})->{}", p.render(field), s.render()))
            .collect::<Vec<_>>()
            .join(" ");
        format!("{{{inner}}}")
    }
}

/// Serialized form of a class datum, matching the documented JSON schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DatumJson {
    pub group: String,
    pub n: u32,
    pub q: u32,
    pub data: Vec<DatumSlotJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DatumSlotJson {
    pub poly: String,
    pub partition: String,
}

pub fn datum_to_json(datum: &ClassDatum, g: &GroupId, field: &Field) -> DatumJson {
    DatumJson {
        group: g.family.name().to_string(),
        n: g.n,
        q: g.q,
        data: datum
            .slots
            .iter()
            .map(|(p, s)| DatumSlotJson { poly: p.render(field), partition: s.render() })
            .collect(),
    }
}

pub fn datum_from_json(json: &DatumJson) -> Result<(GroupId, ClassDatum)> {
    let g = GroupId::new(Family::parse(&json.group)?, json.n, json.q)?;
    let field = matrix_field(&g)?;
    let mut slots = BTreeMap::new();
    for slot in &json.data {
        let poly = MonicPoly::parse(&field, &slot.poly)?;
        let data = match g.family {
            Family::Sp if is_z_pm_one(&field, &poly) => {
                SlotData::SpSigned(SpSignedPartition::parse(&slot.partition)?)
            }
            Family::OPlus | Family::OMinus if is_z_pm_one(&field, &poly) => {
                SlotData::OSigned(OSignedPartition::parse(&slot.partition)?)
            }
            _ => SlotData::Plain(Partition::parse(&slot.partition)?),
        };
        slots.insert(poly, data);
    }
    Ok((g, ClassDatum { slots }))
}

/// The field the group's matrices live over.
pub fn matrix_field(g: &GroupId) -> Result<Field> {
    let (p, k) = prime_power(g.matrix_field_size())?;
    Field::new(p, k, &Budget::default())
}

fn prime_power(q: u64) -> Result<(u32, u32)> {
    for p in 2..=q {
        if q % p == 0 {
            let mut k = 0;
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            if rest != 1 {
                return Err(Error::domain(format!("{q} is not a prime power")));
            }
            return Ok((p as u32, k));
        }
    }
    Err(Error::domain("field size must be >= 2"))
}

fn is_z_pm_one(field: &Field, p: &MonicPoly) -> bool {
    *p == MonicPoly::z_minus_one(field) || *p == MonicPoly::z_plus_one(field)
}

fn involution(g: &GroupId, field: &Field, p: &MonicPoly) -> Result<Option<MonicPoly>> {
    match g.family {
        Family::Gl | Family::Mat => Ok(None),
        Family::U => Ok(Some(tilde(field, g.q as u64, p)?)),
        Family::Sp | Family::OPlus | Family::OMinus => Ok(Some(bar(field, p)?)),
    }
}

/// Check every restriction of the family's class parameterization; the error
/// message names the violated rule.
pub fn validate(datum: &ClassDatum, g: &GroupId) -> Result<()> {
    g.check()?;
    let field = matrix_field(g)?;
    let z = MonicPoly::z();
    let mut total: u64 = 0;
    for (poly, slot) in &datum.slots {
        if slot.size() == 0 {
            return Err(Error::domain("empty partitions must be omitted, not stored"));
        }
        if *poly == z && g.family != Family::Mat {
            return Err(Error::domain("lambda_z nonempty"));
        }
        if !poly.is_irreducible(&field) {
            return Err(Error::domain(format!(
                "polynomial {} is not irreducible",
                poly.render(&field)
            )));
        }
        let at_z_pm = is_z_pm_one(&field, poly);
        match (g.family, slot) {
            (Family::Gl | Family::Mat | Family::U, SlotData::Plain(_)) => {}
            (Family::Sp, SlotData::SpSigned(_)) if at_z_pm => {}
            (Family::Sp, SlotData::Plain(_)) if !at_z_pm => {}
            (Family::OPlus | Family::OMinus, SlotData::OSigned(_)) if at_z_pm => {}
            (Family::OPlus | Family::OMinus, SlotData::Plain(_)) if !at_z_pm => {}
            _ => {
                return Err(Error::domain(format!(
                    "slot kind mismatch at {}",
                    poly.render(&field)
                )))
            }
        }
        if !at_z_pm || matches!(g.family, Family::Gl | Family::Mat | Family::U) {
            if let Some(partner) = involution(g, &field, poly)? {
                if partner != *poly {
                    match datum.slots.get(&partner) {
                        Some(ps) if ps.partition() == slot.partition() => {}
                        _ => {
                            return Err(Error::domain(format!(
                                "involution partner of {} missing or mismatched",
                                poly.render(&field)
                            )))
                        }
                    }
                }
            }
        }
        total += slot.size() * poly.degree() as u64;
    }
    if total != g.n as u64 {
        return Err(Error::domain(format!(
            "weighted degree {total} != dimension {}",
            g.n
        )));
    }
    Ok(())
}

/// Product of Wall/Kung centralizer factors over the slots.
pub fn centralizer_order(datum: &ClassDatum, g: &GroupId) -> Result<BigInt> {
    validate(datum, g)?;
    let field = matrix_field(g)?;
    let q = BigInt::from(g.q);
    let mut acc = BigInt::one();
    for (poly, slot) in &datum.slots {
        let m = poly.degree() as u32;
        match slot {
            SlotData::SpSigned(sp) => acc *= c_sp_signed(sp, g.q),
            SlotData::OSigned(o) => acc *= c_o_signed(o, g.q),
            SlotData::Plain(lam) => match g.family {
                Family::Gl | Family::Mat => acc *= c_gl(lam, &q.pow(m)),
                Family::U => {
                    let partner = tilde(&field, g.q as u64, poly)?;
                    match partner.cmp(poly) {
                        std::cmp::Ordering::Equal => acc *= c_unitary(lam, &q.pow(m)),
                        std::cmp::Ordering::Greater => acc *= c_gl(lam, &q.pow(2 * m)),
                        std::cmp::Ordering::Less => {} // counted at the smaller member
                    }
                }
                Family::Sp | Family::OPlus | Family::OMinus => {
                    let partner = bar(&field, poly)?;
                    match partner.cmp(poly) {
                        std::cmp::Ordering::Equal => {
                            assert!(m % 2 == 0, "self-bar irreducibles away from z±1 have even degree");
                            acc *= c_unitary(lam, &q.pow(m / 2));
                        }
                        std::cmp::Ordering::Greater => acc *= c_gl(lam, &q.pow(m)),
                        std::cmp::Ordering::Less => {}
                    }
                }
            },
        }
    }
    Ok(acc)
}

/// Order of the group whose conjugation action produces the classes: the
/// group itself, except that Mat(n,q) orbits come from GL(n,q) acting on all
/// matrices.
pub fn acting_group_order(g: &GroupId) -> BigInt {
    match g.family {
        Family::Mat => crate::groups::gl_order(g.n, g.q),
        _ => group_order(g),
    }
}

/// Class (orbit) size: acting group order / centralizer, exact.
pub fn class_size(datum: &ClassDatum, g: &GroupId) -> Result<BigInt> {
    let c = centralizer_order(datum, g)?;
    let order = acting_group_order(g);
    let (quot, rem) = order.div_rem(&c);
    if !rem.is_zero() {
        return Err(Error::domain(format!(
            "centralizer {c} does not divide group order {order}"
        )));
    }
    Ok(quot)
}

// --- Witt types ---

/// The four Witt types of nondegenerate quadratic forms over F_q, q odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WittType {
    Zero,
    One,
    Delta,
    Omega,
}

impl WittType {
    /// (dimension parity, is the signed discriminant a nonsquare)
    fn invariants(self) -> (bool, bool) {
        match self {
            WittType::Zero => (false, false),
            WittType::Omega => (false, true),
            WittType::One => (true, false),
            WittType::Delta => (true, true),
        }
    }

    fn from_invariants(odd_dim: bool, nonsquare: bool) -> WittType {
        match (odd_dim, nonsquare) {
            (false, false) => WittType::Zero,
            (false, true) => WittType::Omega,
            (true, false) => WittType::One,
            (true, true) => WittType::Delta,
        }
    }

    /// Witt type of `O^sign(dim, q)` (type of the invariant form).
    pub fn of_orthogonal_group(sign: Sign, dim: u32) -> WittType {
        WittType::from_invariants(dim % 2 == 1, sign == Sign::Minus)
    }
}

/// Addition in the Witt group of F_q. A class is represented by (dim mod 2,
/// square class of the signed discriminant (-1)^{d(d-1)/2} disc); the twist
/// by the class of -1 on odd*odd sums makes this the group law for both
/// q = 1 mod 4 (Klein four-group) and q = 3 mod 4 (cyclic of order 4).
#[derive(Debug, Clone, Copy)]
pub struct WittGroup {
    minus_one_is_square: bool,
}

impl WittGroup {
    pub fn new(q: u32) -> WittGroup {
        assert!(q % 2 == 1, "Witt types are used here only for odd q");
        WittGroup { minus_one_is_square: q % 4 == 1 }
    }

    pub fn add(&self, a: WittType, b: WittType) -> WittType {
        let (pa, na) = a.invariants();
        let (pb, nb) = b.invariants();
        let twist = pa && pb && !self.minus_one_is_square;
        WittType::from_invariants(pa ^ pb, na ^ nb ^ twist)
    }

    pub fn sum(&self, types: impl IntoIterator<Item = WittType>) -> WittType {
        types.into_iter().fold(WittType::Zero, |acc, t| self.add(acc, t))
    }
}

/// Witt type of a valid orthogonal datum, and the sign of the orthogonal
/// group containing the class: contributions Theta_i from the odd part sizes
/// at z±1, plus one omega per unit of |lambda_phi| on the remaining slots.
pub fn witt_type_of_datum(datum: &ClassDatum, g: &GroupId) -> Result<(WittType, Sign)> {
    if !matches!(g.family, Family::OPlus | Family::OMinus) {
        return Err(Error::domain("Witt types apply to orthogonal data"));
    }
    let wg = WittGroup::new(g.q);
    let mut total = WittType::Zero;
    let mut omega_units: u64 = 0;
    for (_, slot) in &datum.slots {
        match slot {
            SlotData::OSigned(o) => {
                for (&i, &mi) in o.partition().multiplicities().iter() {
                    if i % 2 == 1 && mi > 0 {
                        total = wg.add(total, WittType::of_orthogonal_group(o.signs()[&i], mi));
                    }
                }
            }
            SlotData::Plain(lam) => omega_units += lam.size(),
            SlotData::SpSigned(_) => return Err(Error::domain("symplectic slot in orthogonal datum")),
        }
    }
    if omega_units % 2 == 1 {
        total = wg.add(total, WittType::Omega);
    }
    let sign = match (g.n % 2 == 1, total) {
        (true, WittType::One) => Sign::Plus,
        (true, WittType::Delta) => Sign::Minus,
        (false, WittType::Zero) => Sign::Plus,
        (false, WittType::Omega) => Sign::Minus,
        _ => {
            return Err(Error::domain(format!(
                "Witt type {total:?} incompatible with dimension {}",
                g.n
            )))
        }
    };
    Ok((total, sign))
}

// --- enumeration ---

enum Slot {
    /// z-1 or z+1 in Sp/O: signed partitions, unit weight 1.
    SpSigned(MonicPoly),
    OSigned(MonicPoly),
    /// A single polynomial slot (GL/Mat always; self-involutive for U/Sp/O).
    Plain(MonicPoly),
    /// An involution pair {phi, partner}, phi the smaller; weight 2 deg phi per unit.
    Pair(MonicPoly, MonicPoly),
}

impl Slot {
    fn unit_weight(&self) -> u64 {
        match self {
            Slot::SpSigned(_) | Slot::OSigned(_) => 1,
            Slot::Plain(p) => p.degree() as u64,
            Slot::Pair(p, _) => 2 * p.degree() as u64,
        }
    }
}

/// The slot decomposition of a family at dimension n: signed slots first,
/// then self-involutive polynomials, then canonical involution pairs.
fn family_slots(g: &GroupId, field: &Field, budget: &Budget) -> Result<Vec<Slot>> {
    let n = g.n as usize;
    let mut slots = Vec::new();
    if n == 0 {
        return Ok(slots);
    }
    match g.family {
        Family::Gl | Family::Mat => {
            for list in irreducibles_up_to(field, n, budget)? {
                for p in list {
                    if p == MonicPoly::z() && g.family == Family::Gl {
                        continue;
                    }
                    slots.push(Slot::Plain(p));
                }
            }
        }
        Family::U => {
            for list in irreducibles_up_to(field, n, budget)? {
                for p in list {
                    if p == MonicPoly::z() {
                        continue;
                    }
                    let partner = tilde(field, g.q as u64, &p)?;
                    match partner.cmp(&p) {
                        std::cmp::Ordering::Equal => slots.push(Slot::Plain(p)),
                        std::cmp::Ordering::Greater => {
                            if 2 * p.degree() <= n {
                                slots.push(Slot::Pair(p, partner));
                            }
                        }
                        std::cmp::Ordering::Less => {}
                    }
                }
            }
        }
        Family::Sp | Family::OPlus | Family::OMinus => {
            let zm = MonicPoly::z_minus_one(field);
            let zp = MonicPoly::z_plus_one(field);
            if g.family == Family::Sp {
                slots.push(Slot::SpSigned(zm));
                slots.push(Slot::SpSigned(zp));
            } else {
                slots.push(Slot::OSigned(zm));
                slots.push(Slot::OSigned(zp));
            }
            for list in irreducibles_up_to(field, n, budget)? {
                for p in list {
                    if p == MonicPoly::z() || is_z_pm_one(field, &p) {
                        continue;
                    }
                    let partner = bar(field, &p)?;
                    match partner.cmp(&p) {
                        std::cmp::Ordering::Equal => slots.push(Slot::Plain(p)),
                        std::cmp::Ordering::Greater => {
                            if 2 * p.degree() <= n {
                                slots.push(Slot::Pair(p, partner));
                            }
                        }
                        std::cmp::Ordering::Less => {}
                    }
                }
            }
        }
    }
    Ok(slots)
}

/// Every valid class datum of the group, paired with its exact class size.
/// For O^±, only the data whose Witt type lands in the requested sign.
pub fn enumerate_classes(g: &GroupId, budget: &Budget) -> Result<Vec<(ClassDatum, BigInt)>> {
    g.check()?;
    let field = matrix_field(g)?;
    let slots = family_slots(g, &field, budget)?;
    let mut out = Vec::new();
    let mut steps: u64 = 0;
    let mut current: Vec<(usize, SlotData)> = Vec::new();
    assign(g, &slots, 0, g.n as u64, &mut current, &mut out, &mut steps, budget)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn assign(
    g: &GroupId,
    slots: &[Slot],
    idx: usize,
    remaining: u64,
    current: &mut Vec<(usize, SlotData)>,
    out: &mut Vec<(ClassDatum, BigInt)>,
    steps: &mut u64,
    budget: &Budget,
) -> Result<()> {
    *steps += 1;
    if *steps > budget.max_class_steps {
        return Err(Error::budget("class enumeration exceeded the step budget"));
    }
    if remaining == 0 {
        let mut datum = ClassDatum::empty();
        for (slot_idx, data) in current.iter() {
            match &slots[*slot_idx] {
                Slot::SpSigned(p) | Slot::OSigned(p) | Slot::Plain(p) => {
                    datum.slots.insert(p.clone(), data.clone());
                }
                Slot::Pair(p, partner) => {
                    datum.slots.insert(p.clone(), data.clone());
                    datum.slots.insert(partner.clone(), data.clone());
                }
            }
        }
        if matches!(g.family, Family::OPlus | Family::OMinus) {
            let (_, sign) = witt_type_of_datum(&datum, g)?;
            let want = if g.family == Family::OPlus { Sign::Plus } else { Sign::Minus };
            if sign != want {
                return Ok(());
            }
        }
        let size = class_size(&datum, g)?;
        out.push((datum, size));
        return Ok(());
    }
    if idx == slots.len() {
        return Ok(());
    }
    // skip this slot entirely
    assign(g, slots, idx + 1, remaining, current, out, steps, budget)?;
    let unit = slots[idx].unit_weight();
    let max_units = remaining / unit;
    for units in 1..=max_units {
        let candidates: Vec<SlotData> = match &slots[idx] {
            Slot::SpSigned(_) => SpSignedPartition::enumerate(units as u32)
                .into_iter()
                .map(SlotData::SpSigned)
                .collect(),
            Slot::OSigned(_) => OSignedPartition::enumerate(units as u32)
                .into_iter()
                .map(SlotData::OSigned)
                .collect(),
            Slot::Plain(_) | Slot::Pair(..) => Partition::enumerate(units as u32)
                .into_iter()
                .map(SlotData::Plain)
                .collect(),
        };
        for data in candidates {
            current.push((idx, data));
            assign(g, slots, idx + 1, remaining - units * unit, current, out, steps, budget)?;
            current.pop();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{o_order, u_order};

    fn plain(poly: MonicPoly, parts: Vec<u32>) -> (MonicPoly, SlotData) {
        (poly, SlotData::Plain(Partition::new(parts)))
    }

    #[test]
    fn validate_examples() {
        let gl22 = GroupId::new(Family::Gl, 2, 2).unwrap();
        let f2 = Field::prime(2);
        // transvection datum {z+1 -> (2)} is valid
        let datum = ClassDatum::new([plain(MonicPoly::z_plus_one(&f2), vec![2])].into());
        assert!(validate(&datum, &gl22).is_ok());
        // lambda_z nonempty is rejected for GL
        let bad = ClassDatum::new(
            [plain(MonicPoly::z(), vec![1]), plain(MonicPoly::z_plus_one(&f2), vec![1])].into(),
        );
        let err = validate(&bad, &gl22).unwrap_err().to_string();
        assert!(err.contains("lambda_z"), "{err}");
        // but allowed for Mat
        let mat22 = GroupId::new(Family::Mat, 2, 2).unwrap();
        assert!(validate(&bad, &mat22).is_ok());
        // symplectic parity: a single odd part cannot be signed data
        assert!(SpSignedPartition::new(Partition::single(1), BTreeMap::new()).is_err());
        // wrong dimension
        let datum3 = ClassDatum::new([plain(MonicPoly::z_plus_one(&f2), vec![3])].into());
        assert!(validate(&datum3, &gl22).is_err());
    }

    #[test]
    fn gl_transvection_class_size() {
        // lambda_{z-1} = (2, 1^{n-2}): size (q^n - 1)(q^{n-1} - 1)/(q - 1)
        for (n, q) in [(2u32, 2u32), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3), (5, 2)] {
            let g = GroupId::new(Family::Gl, n, q).unwrap();
            let field = matrix_field(&g).unwrap();
            let mut parts = vec![1u32; n as usize - 1];
            parts[0] = 2;
            let datum = ClassDatum::new([plain(MonicPoly::z_minus_one(&field), parts)].into());
            let size = class_size(&datum, &g).unwrap();
            let qq = BigInt::from(q);
            let expect = (qq.pow(n) - 1) * (qq.pow(n - 1) - 1) / (qq - 1);
            assert_eq!(size, expect, "n={n} q={q}");
        }
    }

    #[test]
    fn unitary_transvection_class_size() {
        // single class of size (q^n - (-1)^n)(q^{n-1} - (-1)^{n-1})/(q+1)
        for (n, q) in [(2u32, 2u32), (3, 2), (2, 3), (3, 3), (4, 2)] {
            let g = GroupId::new(Family::U, n, q).unwrap();
            let field = matrix_field(&g).unwrap();
            let mut parts = vec![1u32; n as usize - 1];
            parts[0] = 2;
            let datum = ClassDatum::new([plain(MonicPoly::z_minus_one(&field), parts)].into());
            let size = class_size(&datum, &g).unwrap();
            let qq = BigInt::from(q);
            let sn = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let expect = (qq.pow(n) - &sn) * (qq.pow(n - 1) + &sn) / (qq + 1);
            assert_eq!(size, expect, "n={n} q={q}");
        }
        // U(2,2): the explicit value 3
        let g = GroupId::new(Family::U, 2, 2).unwrap();
        let field = matrix_field(&g).unwrap();
        let datum = ClassDatum::new([plain(MonicPoly::z_minus_one(&field), vec![2])].into());
        assert_eq!(class_size(&datum, &g).unwrap(), BigInt::from(3));
    }

    #[test]
    fn symplectic_transvections_split() {
        // two classes of size (q^{2n} - 1)/2 each
        for (two_n, q) in [(2u32, 3u32), (4, 3), (2, 5), (4, 5), (6, 3)] {
            let g = GroupId::new(Family::Sp, two_n, q).unwrap();
            let field = matrix_field(&g).unwrap();
            for sg in ["+", "-"] {
                let mut txt: Vec<String> = vec![format!("{sg}2")];
                txt.extend(std::iter::repeat("1".to_string()).take(two_n as usize - 2));
                let sp = SpSignedPartition::parse(&format!("[{}]", txt.join(","))).unwrap();
                let datum = ClassDatum::new(
                    [(MonicPoly::z_minus_one(&field), SlotData::SpSigned(sp))].into(),
                );
                let size = class_size(&datum, &g).unwrap();
                let expect = (BigInt::from(q).pow(two_n) - 1) / 2;
                assert_eq!(size, expect, "2n={two_n} q={q} sign={sg}");
            }
        }
    }

    #[test]
    fn enumerate_gl22() {
        let g = GroupId::new(Family::Gl, 2, 2).unwrap();
        let classes = enumerate_classes(&g, &Budget::default()).unwrap();
        let mut sizes: Vec<u64> = classes.iter().map(|(_, s)| s.try_into().unwrap()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn enumerate_sp23_matches_sl23() {
        let g = GroupId::new(Family::Sp, 2, 3).unwrap();
        let classes = enumerate_classes(&g, &Budget::default()).unwrap();
        assert_eq!(classes.len(), 7);
        let total: BigInt = classes.iter().map(|(_, s)| s.clone()).sum();
        assert_eq!(total, BigInt::from(24));
        let mut sizes: Vec<u64> = classes.iter().map(|(_, s)| s.try_into().unwrap()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 4, 4, 4, 4, 6]);
    }

    #[test]
    fn enumerate_mat22_sums_to_16() {
        let g = GroupId::new(Family::Mat, 2, 2).unwrap();
        let classes = enumerate_classes(&g, &Budget::default()).unwrap();
        let total: BigInt = classes.iter().map(|(_, s)| s.clone()).sum();
        assert_eq!(total, BigInt::from(16));
    }

    #[test]
    fn partition_of_unity_samples() {
        for g in [
            GroupId::new(Family::Gl, 3, 2).unwrap(),
            GroupId::new(Family::Gl, 2, 3).unwrap(),
            GroupId::new(Family::U, 2, 2).unwrap(),
            GroupId::new(Family::U, 3, 2).unwrap(),
            GroupId::new(Family::U, 4, 2).unwrap(),
            GroupId::new(Family::Mat, 2, 3).unwrap(),
            GroupId::new(Family::Sp, 4, 3).unwrap(),
            GroupId::new(Family::Sp, 6, 3).unwrap(),
            GroupId::new(Family::Sp, 4, 5).unwrap(),
            GroupId::new(Family::OPlus, 2, 3).unwrap(),
            GroupId::new(Family::OMinus, 2, 3).unwrap(),
            GroupId::new(Family::OPlus, 3, 3).unwrap(),
            GroupId::new(Family::OMinus, 3, 3).unwrap(),
            GroupId::new(Family::OPlus, 5, 3).unwrap(),
            GroupId::new(Family::OMinus, 5, 3).unwrap(),
            GroupId::new(Family::OPlus, 4, 5).unwrap(),
            GroupId::new(Family::OMinus, 4, 5).unwrap(),
        ] {
            let classes = enumerate_classes(&g, &Budget::default()).unwrap();
            let total: BigInt = classes.iter().map(|(_, s)| s.clone()).sum();
            assert_eq!(total, group_order(&g), "partition of unity for {g}");
        }
    }

    #[test]
    fn witt_group_law() {
        for q in [3u32, 5, 7, 9] {
            let wg = WittGroup::new(q);
            assert_eq!(wg.add(WittType::Omega, WittType::Omega), WittType::Zero);
            assert_eq!(wg.add(WittType::Zero, WittType::Delta), WittType::Delta);
            // 1 + delta: hyperbolic iff -1 is a nonsquare (q = 3 mod 4)
            let sum = wg.add(WittType::One, WittType::Delta);
            if q % 4 == 3 {
                assert_eq!(sum, WittType::Zero);
            } else {
                assert_eq!(sum, WittType::Omega);
            }
            // associativity spot check
            for a in [WittType::Zero, WittType::One, WittType::Delta, WittType::Omega] {
                for b in [WittType::Zero, WittType::One, WittType::Delta, WittType::Omega] {
                    for c in [WittType::Zero, WittType::One, WittType::Delta, WittType::Omega] {
                        assert_eq!(wg.add(wg.add(a, b), c), wg.add(a, wg.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn witt_assignment_examples() {
        // identity of O^+(n,q) lands in O^+
        for n in [1u32, 2, 3, 4, 5] {
            let g = GroupId::new(Family::OPlus, n, 3).unwrap();
            let field = matrix_field(&g).unwrap();
            let o = OSignedPartition::parse(&format!(
                "[{}]",
                std::iter::repeat("+1").take(n as usize).collect::<Vec<_>>().join(",")
            ))
            .unwrap();
            let datum =
                ClassDatum::new([(MonicPoly::z_minus_one(&field), SlotData::OSigned(o))].into());
            let (_, sign) = witt_type_of_datum(&datum, &g).unwrap();
            assert_eq!(sign, Sign::Plus, "n={n}");
            assert_eq!(class_size(&datum, &g).unwrap(), BigInt::one());
        }
        // the orthogonal-symmetry datum {z-1 -> (+1^2), z+1 -> (+1)} at q=3, n=3
        let g = GroupId::new(Family::OPlus, 3, 3).unwrap();
        let field = matrix_field(&g).unwrap();
        let datum = ClassDatum::new(
            [
                (
                    MonicPoly::z_minus_one(&field),
                    SlotData::OSigned(OSignedPartition::parse("[+1,+1]").unwrap()),
                ),
                (
                    MonicPoly::z_plus_one(&field),
                    SlotData::OSigned(OSignedPartition::parse("[+1]").unwrap()),
                ),
            ]
            .into(),
        );
        let (_, sign) = witt_type_of_datum(&datum, &g).unwrap();
        assert_eq!(sign, Sign::Plus);
    }

    #[test]
    fn unipotent_mass_examples() {
        // data supported on z-1 alone sum to the square of the p-Sylow order
        for g in [
            GroupId::new(Family::Gl, 3, 2).unwrap(),
            GroupId::new(Family::U, 3, 2).unwrap(),
            GroupId::new(Family::Sp, 2, 3).unwrap(),
            GroupId::new(Family::OPlus, 3, 3).unwrap(),
        ] {
            let field = matrix_field(&g).unwrap();
            let zm = MonicPoly::z_minus_one(&field);
            let classes = enumerate_classes(&g, &Budget::default()).unwrap();
            let total: BigInt = classes
                .iter()
                .filter(|(d, _)| d.slots.len() == 1 && d.slots.contains_key(&zm))
                .map(|(_, s)| s.clone())
                .sum();
            let sylow = crate::groups::p_sylow_order(&g);
            assert_eq!(total, &sylow * &sylow, "{g}");
        }
    }

    #[test]
    fn centralizer_denominators_match_worked_examples() {
        // U(n,q) transvection: B = q^{2n-3} |U(n-2,q)| |U(1,q)|
        let g = GroupId::new(Family::U, 3, 2).unwrap();
        let field = matrix_field(&g).unwrap();
        let datum =
            ClassDatum::new([plain(MonicPoly::z_minus_one(&field), vec![2, 1])].into());
        let c = centralizer_order(&datum, &g).unwrap();
        let q = BigInt::from(2);
        assert_eq!(c, q.pow(3) * u_order(1, 2) * u_order(1, 2));
        // O^+(3,3) reflections: B-products 4*2 and 8*2
        let g = GroupId::new(Family::OPlus, 3, 3).unwrap();
        let field3 = matrix_field(&g).unwrap();
        let mk = |s1: &str, s2: &str| {
            ClassDatum::new(
                [
                    (
                        MonicPoly::z_minus_one(&field3),
                        SlotData::OSigned(OSignedPartition::parse(s1).unwrap()),
                    ),
                    (
                        MonicPoly::z_plus_one(&field3),
                        SlotData::OSigned(OSignedPartition::parse(s2).unwrap()),
                    ),
                ]
                .into(),
            )
        };
        let dp = mk("[+1,+1]", "[+1]");
        let dm = mk("[-1,-1]", "[-1]");
        assert_eq!(
            centralizer_order(&dp, &g).unwrap(),
            o_order(Sign::Plus, 2, 3) * o_order(Sign::Plus, 1, 3)
        );
        let sp = class_size(&dp, &g).unwrap();
        let sm = class_size(&dm, &g).unwrap();
        assert_eq!(&sp + &sm, BigInt::from(9)); // q^{n-1}
    }

    #[test]
    fn datum_json_roundtrip() {
        let g = GroupId::new(Family::Sp, 2, 3).unwrap();
        let field = matrix_field(&g).unwrap();
        let sp = SpSignedPartition::parse("[+2]").unwrap();
        let datum =
            ClassDatum::new([(MonicPoly::z_minus_one(&field), SlotData::SpSigned(sp))].into());
        let json = datum_to_json(&datum, &g, &field);
        let text = serde_json::to_string(&json).unwrap();
        let back: DatumJson = serde_json::from_str(&text).unwrap();
        let (g2, datum2) = datum_from_json(&back).unwrap();
        assert_eq!(g2, g);
        assert_eq!(datum2, datum);
    }
}
