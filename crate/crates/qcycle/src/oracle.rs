//! Brute-force ground truth: enumerate the small classical groups element by
//! element, read off rational-canonical-form data per matrix, build empirical
//! class tables by explicit conjugation orbits, and certify every formula in
//! the crate against them.
//!
//! Groups are enumerated column by column with the invariant-form conditions
//! enforced incrementally:
//! - `U(n,q)`: columns over `F_{q^2}` with Gram `sum_k x_k y_k^q = delta_ij`
//! - `Sp(2l,q)`: Gram `x^T J y` with J the block-diagonal alternating form
//! - `O^±(n,q)`: Gram `x^T A y` with the standard split/non-split symmetric
//!   forms (for odd n the two groups coincide as matrix groups; the data
//!   assignment differs by which form is preserved, which only the formula
//!   side sees — class multisets agree, which is what certification checks)
//!
//! Conjugacy classes for the form groups are computed by orbit expansion
//! under conjugation by a verified generating set; GL and Mat classes come
//! straight from the rational-canonical data, which is a complete invariant
//! there.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::budget::Budget;
use crate::classdata::{
    acting_group_order, centralizer_order, enumerate_classes, matrix_field, ClassDatum, SlotData,
};
use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::groups::{group_order, Family, GroupId};
use crate::partition::Partition;
use crate::poly::{factor, MonicPoly};
use crate::series::{
    cycle_index_series, marked_cycle_index_series, PartPredicate, SeriesFamily, WeightSpec,
};

/// A square matrix over a finite field, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixFq {
    pub n: usize,
    pub entries: Vec<Fq>,
}

impl MatrixFq {
    pub fn zero(n: usize) -> MatrixFq {
        MatrixFq { n, entries: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> MatrixFq {
        let mut m = MatrixFq::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, f: &Field, other: &MatrixFq) -> MatrixFq {
        let n = self.n;
        let mut out = MatrixFq::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = f.add(out.get(i, j), f.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self, f: &Field) -> usize {
        let n = self.n;
        let mut rows: Vec<Vec<Fq>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let pivot = (rank..n).find(|&r| rows[r][col] != 0);
            let Some(p) = pivot else { continue };
            rows.swap(rank, p);
            let inv = f.inv(rows[rank][col]);
            for c in col..n {
                rows[rank][c] = f.mul(rows[rank][c], inv);
            }
            for r in 0..n {
                if r != rank && rows[r][col] != 0 {
                    let factor = rows[r][col];
                    for c in col..n {
                        let v = f.sub(rows[r][c], f.mul(factor, rows[rank][c]));
                        rows[r][c] = v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.rank(f) == self.n
    }

    pub fn inverse(&self, f: &Field) -> Option<MatrixFq> {
        let n = self.n;
        let mut rows: Vec<Vec<Fq>> = (0..n)
            .map(|i| {
                let mut r = self.entries[i * n..(i + 1) * n].to_vec();
                let mut aug = vec![0; n];
                aug[i] = 1;
                r.extend(aug);
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| rows[r][col] != 0)?;
            rows.swap(col, pivot);
            let inv = f.inv(rows[col][col]);
            for c in 0..2 * n {
                rows[col][c] = f.mul(rows[col][c], inv);
            }
            for r in 0..n {
                if r != col && rows[r][col] != 0 {
                    let factor = rows[r][col];
                    for c in 0..2 * n {
                        let v = f.sub(rows[r][c], f.mul(factor, rows[col][c]));
                        rows[r][c] = v;
                    }
                }
            }
        }
        let mut out = MatrixFq::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, rows[i][n + j]);
            }
        }
        Some(out)
    }

    /// Multiplicative order (the matrix must be invertible).
    pub fn order(&self, f: &Field) -> u64 {
        let id = MatrixFq::identity(self.n);
        let mut acc = self.clone();
        let mut k = 1u64;
        while acc != id {
            acc = acc.mul(f, self);
            k += 1;
            assert!(k < 1_000_000, "order computation runaway");
        }
        k
    }

    /// Characteristic polynomial det(zI - M) by recursive minor expansion
    /// over polynomial entries (fine at oracle sizes).
    pub fn charpoly(&self, f: &Field) -> MonicPoly {
        let n = self.n;
        // entry (i,j) of zI - M as a coefficient vector
        let entry = |i: usize, j: usize| -> Vec<Fq> {
            let mut c = vec![f.neg(self.get(i, j)), 0];
            if i == j {
                c[1] = 1;
            }
            c
        };
        let cols: Vec<usize> = (0..n).collect();
        let det = poly_det(f, &entry, 0, &cols);
        let mut coeffs = det;
        while coeffs.len() < n + 1 {
            coeffs.push(0);
        }
        assert_eq!(*coeffs.last().unwrap(), 1, "char poly must be monic");
        MonicPoly::from_coeffs(coeffs)
    }

    /// Evaluate a monic polynomial at the matrix.
    pub fn eval_poly(&self, f: &Field, p: &MonicPoly) -> MatrixFq {
        let n = self.n;
        let mut acc = MatrixFq::zero(n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(f, self);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }
}

fn poly_add(f: &Field, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| f.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect()
}

fn poly_mul(f: &Field, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
    }
    out
}

fn poly_neg(f: &Field, a: &[Fq]) -> Vec<Fq> {
    a.iter().map(|&c| f.neg(c)).collect()
}

/// Determinant of the polynomial matrix rows `row..n` on the given columns.
fn poly_det(
    f: &Field,
    entry: &impl Fn(usize, usize) -> Vec<Fq>,
    row: usize,
    cols: &[usize],
) -> Vec<Fq> {
    if cols.is_empty() {
        return vec![1];
    }
    let mut acc = vec![0];
    for (pos, &c) in cols.iter().enumerate() {
        let e = entry(row, c);
        if e.iter().all(|&x| x == 0) {
            continue;
        }
        let rest: Vec<usize> = cols
            .iter()
            .enumerate()
            .filter(|(p, _)| *p != pos)
            .map(|(_, &cc)| cc)
            .collect();
        let minor = poly_det(f, entry, row + 1, &rest);
        let term = poly_mul(f, &e, &minor);
        let term = if pos % 2 == 0 { term } else { poly_neg(f, &term) };
        acc = poly_add(f, &acc, &term);
    }
    acc
}

// --- invariant forms ---

/// Block-diagonal alternating form for Sp(2l, q).
pub fn sp_form(f: &Field, n: usize) -> MatrixFq {
    assert!(n % 2 == 0);
    let mut j = MatrixFq::zero(n);
    for b in 0..n / 2 {
        j.set(2 * b, 2 * b + 1, f.one());
        j.set(2 * b + 1, 2 * b, f.neg(f.one()));
    }
    j
}

/// Symmetric bilinear forms for the two orthogonal groups. For odd n the
/// minus form is delta times the plus form (same stabilizer); for even n the
/// minus form replaces the last hyperbolic plane by diag(1, -delta).
pub fn o_form(f: &Field, n: usize, sign: crate::groups::Sign) -> MatrixFq {
    let delta = f.nonsquare();
    let mut a = MatrixFq::zero(n);
    if n % 2 == 1 {
        let l = n / 2;
        a.set(0, 0, f.one());
        for b in 0..l {
            a.set(1 + b, 1 + l + b, f.one());
            a.set(1 + l + b, 1 + b, f.one());
        }
        if sign == crate::groups::Sign::Minus {
            for i in 0..n {
                for j in 0..n {
                    a.set(i, j, f.mul(a.get(i, j), delta));
                }
            }
        }
    } else {
        let l = n / 2;
        match sign {
            crate::groups::Sign::Plus => {
                for b in 0..l {
                    a.set(b, l + b, f.one());
                    a.set(l + b, b, f.one());
                }
            }
            crate::groups::Sign::Minus => {
                for b in 0..l - 1 {
                    a.set(b, l - 1 + b, f.one());
                    a.set(l - 1 + b, b, f.one());
                }
                a.set(n - 2, n - 2, f.one());
                a.set(n - 1, n - 1, f.neg(delta));
            }
        }
    }
    a
}

enum FormKind {
    None,
    Bilinear(MatrixFq),
    /// Skew-linear Gram `sum_k x_k y_k^q` with the subfield power.
    Unitary { q_sub: u64 },
}

fn gram(f: &Field, kind: &FormKind, x: &[Fq], y: &[Fq]) -> Fq {
    match kind {
        FormKind::None => 0,
        FormKind::Bilinear(j) => {
            let n = x.len();
            let mut acc = f.zero();
            for a in 0..n {
                if x[a] == 0 {
                    continue;
                }
                for b in 0..n {
                    let jv = j.get(a, b);
                    if jv != 0 && y[b] != 0 {
                        acc = f.add(acc, f.mul(x[a], f.mul(jv, y[b])));
                    }
                }
            }
            acc
        }
        FormKind::Unitary { q_sub } => {
            let mut acc = f.zero();
            for (a, &xa) in x.iter().enumerate() {
                if xa != 0 && y[a] != 0 {
                    acc = f.add(acc, f.mul(xa, f.pow(y[a], *q_sub)));
                }
            }
            acc
        }
    }
}

fn target_gram(f: &Field, g: &GroupId, kind: &FormKind, i: usize, j: usize) -> Fq {
    match kind {
        FormKind::None => 0,
        FormKind::Bilinear(m) => m.get(i, j),
        FormKind::Unitary { .. } => {
            let _ = g;
            if i == j {
                f.one()
            } else {
                f.zero()
            }
        }
    }
}

/// All elements of the group, by column DFS with incremental form and rank
/// constraints. For Mat this is simply every matrix.
pub fn enumerate_group(g: &GroupId, budget: &Budget) -> Result<Vec<MatrixFq>> {
    g.check()?;
    let order = group_order(g);
    if order > BigInt::from(budget.max_group_order) {
        return Err(Error::budget(format!(
            "group order {order} exceeds enumeration budget {}",
            budget.max_group_order
        )));
    }
    let field = matrix_field(g)?;
    let n = g.n as usize;
    let q = field.q();
    if g.family == Family::Mat {
        let total = q.pow((n * n) as u32);
        let mut out = Vec::with_capacity(total as usize);
        for code in 0..total {
            let mut m = MatrixFq::zero(n);
            let mut c = code;
            for e in m.entries.iter_mut() {
                *e = (c % q) as Fq;
                c /= q;
            }
            out.push(m);
        }
        return Ok(out);
    }
    let kind = match g.family {
        Family::Gl | Family::Mat => FormKind::None,
        Family::U => FormKind::Unitary { q_sub: g.q as u64 },
        Family::Sp => FormKind::Bilinear(sp_form(&field, n)),
        Family::OPlus => FormKind::Bilinear(o_form(&field, n, crate::groups::Sign::Plus)),
        Family::OMinus => FormKind::Bilinear(o_form(&field, n, crate::groups::Sign::Minus)),
    };
    // all column vectors, indexed 0..q^n
    let total_vecs = q.pow(n as u32);
    let vectors: Vec<Vec<Fq>> = (0..total_vecs)
        .map(|code| {
            let mut v = vec![0 as Fq; n];
            let mut c = code;
            for e in v.iter_mut() {
                *e = (c % q) as Fq;
                c /= q;
            }
            v
        })
        .collect();
    let mut out = Vec::new();
    let mut cols: Vec<usize> = Vec::new();
    // row-echelon basis of the chosen columns for rank pruning
    let mut basis: Vec<Vec<Fq>> = Vec::new();
    dfs_columns(g, &field, &kind, &vectors, &mut cols, &mut basis, &mut out);
    debug_assert_eq!(BigInt::from(out.len() as u64), order, "enumeration count for {g}");
    Ok(out)
}

fn reduce_against(f: &Field, basis: &[Vec<Fq>], v: &[Fq]) -> Vec<Fq> {
    let mut v = v.to_vec();
    for b in basis {
        let lead = b.iter().position(|&c| c != 0).unwrap();
        if v[lead] != 0 {
            let factor = f.mul(v[lead], f.inv(b[lead]));
            for i in 0..v.len() {
                v[i] = f.sub(v[i], f.mul(factor, b[i]));
            }
        }
    }
    v
}

fn dfs_columns(
    g: &GroupId,
    f: &Field,
    kind: &FormKind,
    vectors: &[Vec<Fq>],
    cols: &mut Vec<usize>,
    basis: &mut Vec<Vec<Fq>>,
    out: &mut Vec<MatrixFq>,
) {
    let n = g.n as usize;
    if cols.len() == n {
        let mut m = MatrixFq::zero(n);
        for (j, &ci) in cols.iter().enumerate() {
            for i in 0..n {
                m.set(i, j, vectors[ci][i]);
            }
        }
        out.push(m);
        return;
    }
    let j = cols.len();
    'cand: for (ci, v) in vectors.iter().enumerate() {
        // form constraints against previous columns and self
        for (jj, &cj) in cols.iter().enumerate() {
            if gram(f, kind, &vectors[cj], v) != target_gram(f, g, kind, jj, j) {
                continue 'cand;
            }
            if gram(f, kind, v, &vectors[cj]) != target_gram(f, g, kind, j, jj) {
                continue 'cand;
            }
        }
        if gram(f, kind, v, v) != target_gram(f, g, kind, j, j) {
            continue 'cand;
        }
        // linear independence
        let reduced = reduce_against(f, basis, v);
        if reduced.iter().all(|&c| c == 0) {
            continue 'cand;
        }
        cols.push(ci);
        basis.push(reduced);
        dfs_columns(g, f, kind, vectors, cols, basis, out);
        basis.pop();
        cols.pop();
    }
}

// --- rational canonical form ---

/// The (unsigned) class datum of a matrix: factor the characteristic
/// polynomial, then recover each partition from the kernel-dimension jumps
/// `lambda'_k = (dim ker phi(M)^k - dim ker phi(M)^{k-1}) / deg(phi)`.
pub fn rcf_data(m: &MatrixFq, field: &Field, budget: &Budget) -> Result<ClassDatum> {
    let n = m.n;
    let chi = m.charpoly(field);
    let factors = factor(field, &chi, budget)?;
    let mut slots = BTreeMap::new();
    for (phi, &mult) in &factors {
        let d = phi.degree();
        let mut dual_parts: Vec<u32> = Vec::new();
        let mut prev_dim = 0usize;
        let mut power = MatrixFq::identity(n);
        let phi_m = m.eval_poly(field, phi);
        for _k in 1..=mult {
            power = power.mul(field, &phi_m);
            let dim = n - power.rank(field);
            let jump = (dim - prev_dim) / d;
            debug_assert_eq!((dim - prev_dim) % d, 0);
            if jump == 0 {
                break;
            }
            dual_parts.push(jump as u32);
            prev_dim = dim;
        }
        let lam = Partition::new(dual_parts).dual();
        debug_assert_eq!(lam.size(), mult as u64);
        slots.insert(phi.clone(), SlotData::Plain(lam));
    }
    Ok(ClassDatum::new(slots))
}

// --- empirical class tables ---

#[derive(Debug, Clone)]
pub struct EmpiricalClass {
    pub rep: MatrixFq,
    pub size: u64,
    pub datum: ClassDatum,
}

#[derive(Debug)]
pub struct EmpiricalClassTable {
    pub group: GroupId,
    pub elements: Vec<MatrixFq>,
    pub classes: Vec<EmpiricalClass>,
}

impl EmpiricalClassTable {
    /// Mean element order (elements of Mat would not all be invertible, so
    /// this is only offered for the group families).
    pub fn mean_order(&self, field: &Field) -> BigRational {
        assert!(self.group.family != Family::Mat);
        let total: u64 = self
            .classes
            .iter()
            .map(|c| c.size * c.rep.order(field))
            .sum();
        BigRational::new(BigInt::from(total), BigInt::from(self.elements.len() as u64))
    }

    /// Number of unipotent elements (all eigenvalues 1).
    pub fn unipotent_count(&self, field: &Field) -> u64 {
        let zm = MonicPoly::z_minus_one(field);
        self.classes
            .iter()
            .filter(|c| c.datum.slots.len() == 1 && c.datum.slots.contains_key(&zm))
            .map(|c| c.size)
            .sum()
    }
}

/// Greedily extend a generating set until it spans the whole element list.
fn generating_set(field: &Field, elements: &[MatrixFq], index: &HashMap<Vec<Fq>, u32>) -> Vec<usize> {
    let n_el = elements.len();
    let mut gens: Vec<usize> = Vec::new();
    let mut closed = vec![false; n_el];
    let id_idx = index[&MatrixFq::identity(elements[0].n).entries] as usize;
    closed[id_idx] = true;
    let mut closed_count = 1usize;
    for cand in 0..n_el {
        if closed[cand] {
            continue;
        }
        gens.push(cand);
        // close under right multiplication by all generators
        let mut stack: Vec<usize> = closed
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(i, _)| i)
            .collect();
        while let Some(x) = stack.pop() {
            for &gi in &gens {
                let prod = elements[x].mul(field, &elements[gi]);
                let pi = index[&prod.entries] as usize;
                if !closed[pi] {
                    closed[pi] = true;
                    closed_count += 1;
                    stack.push(pi);
                }
            }
        }
        if closed_count == n_el {
            break;
        }
    }
    assert_eq!(closed_count, n_el, "generating set must span the group");
    gens
}

/// Empirical conjugacy classes. GL/Mat group by rational-canonical data (a
/// complete invariant); the form groups use conjugation-orbit expansion.
pub fn empirical_class_table(g: &GroupId, budget: &Budget) -> Result<EmpiricalClassTable> {
    let field = matrix_field(g)?;
    let elements = enumerate_group(g, budget)?;
    match g.family {
        Family::Gl | Family::Mat => {
            let mut buckets: BTreeMap<ClassDatum, (usize, u64)> = BTreeMap::new();
            for (i, m) in elements.iter().enumerate() {
                let datum = rcf_data(m, &field, budget)?;
                let e = buckets.entry(datum).or_insert((i, 0));
                e.1 += 1;
            }
            let classes = buckets
                .into_iter()
                .map(|(datum, (rep, size))| EmpiricalClass {
                    rep: elements[rep].clone(),
                    size,
                    datum,
                })
                .collect();
            Ok(EmpiricalClassTable { group: *g, elements, classes })
        }
        _ => {
            if BigInt::from(elements.len() as u64) > BigInt::from(budget.max_orbit_group_order) {
                return Err(Error::budget("group too large for conjugation orbits"));
            }
            let index: HashMap<Vec<Fq>, u32> = elements
                .iter()
                .enumerate()
                .map(|(i, m)| (m.entries.clone(), i as u32))
                .collect();
            let gens = generating_set(&field, &elements, &index);
            let gen_invs: Vec<MatrixFq> = gens
                .iter()
                .map(|&gi| elements[gi].inverse(&field).expect("group element"))
                .collect();
            let mut assigned = vec![false; elements.len()];
            let mut classes = Vec::new();
            for start in 0..elements.len() {
                if assigned[start] {
                    continue;
                }
                // conjugation orbit BFS
                let mut orbit = vec![start];
                assigned[start] = true;
                let mut head = 0;
                while head < orbit.len() {
                    let x = orbit[head];
                    head += 1;
                    for (k, &gi) in gens.iter().enumerate() {
                        let conj = elements[gi]
                            .mul(&field, &elements[x])
                            .mul(&field, &gen_invs[k]);
                        let ci = index[&conj.entries] as usize;
                        if !assigned[ci] {
                            assigned[ci] = true;
                            orbit.push(ci);
                        }
                    }
                }
                let datum = rcf_data(&elements[start], &field, budget)?;
                classes.push(EmpiricalClass {
                    rep: elements[start].clone(),
                    size: orbit.len() as u64,
                    datum,
                });
            }
            Ok(EmpiricalClassTable { group: *g, elements, classes })
        }
    }
}

// --- certification ---

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct CertReport {
    pub group: String,
    pub group_order: String,
    pub formula_classes: usize,
    pub empirical_classes: usize,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

fn size_multiset(v: &mut Vec<BigInt>) {
    v.sort();
}

fn check(name: &str, pass: bool, detail: String) -> CheckResult {
    CheckResult { name: name.to_string(), pass, detail }
}

/// Full certification of one group: class-size multisets keyed by unsigned
/// datum, brute-force centralizer orders against the Wall/Kung products, and
/// the weighted cycle-index coefficients (predicate, x-mark, pinned) against
/// empirical averages.
pub fn certify(g: &GroupId, budget: &Budget) -> Result<CertReport> {
    let field = matrix_field(g)?;
    let formula = enumerate_classes(g, budget)?;
    let table = empirical_class_table(g, budget)?;
    let mut checks = Vec::new();

    // partition of unity on both sides
    let order = group_order(g);
    let ftotal: BigInt = formula.iter().map(|(_, s)| s.clone()).sum();
    let etotal: BigInt = BigInt::from(table.elements.len() as u64);
    checks.push(check(
        "partition-of-unity",
        ftotal == order && etotal == order,
        format!("formula {ftotal}, empirical {etotal}, order {order}"),
    ));

    // (a) class-size multisets per unsigned datum
    let mut fbuckets: BTreeMap<ClassDatum, Vec<BigInt>> = BTreeMap::new();
    for (d, s) in &formula {
        fbuckets.entry(d.unsigned()).or_default().push(s.clone());
    }
    let mut ebuckets: BTreeMap<ClassDatum, Vec<BigInt>> = BTreeMap::new();
    for c in &table.classes {
        ebuckets
            .entry(c.datum.clone())
            .or_default()
            .push(BigInt::from(c.size));
    }
    for sizes in fbuckets.values_mut() {
        size_multiset(sizes);
    }
    for sizes in ebuckets.values_mut() {
        size_multiset(sizes);
    }
    let mut multiset_ok = true;
    let mut detail = String::new();
    for (d, fs) in &fbuckets {
        match ebuckets.get(d) {
            Some(es) if es == fs => {}
            other => {
                multiset_ok = false;
                detail = format!(
                    "datum {} expected sizes {:?}, observed {:?}",
                    d.render(&field),
                    fs,
                    other
                );
                break;
            }
        }
    }
    if multiset_ok && fbuckets.len() != ebuckets.len() {
        multiset_ok = false;
        detail = format!(
            "formula has {} data, empirical {}",
            fbuckets.len(),
            ebuckets.len()
        );
    }
    checks.push(check("class-size-multisets", multiset_ok, detail));

    // (b) brute centralizer of each representative equals the B-product
    let acting = acting_group_order(g);
    let mut cent_ok = true;
    let mut cent_detail = String::new();
    for c in &table.classes {
        let mut count = 0u64;
        for e in &table.elements {
            if e.mul(&field, &c.rep) == c.rep.mul(&field, e) {
                count += 1;
            }
        }
        // for Mat the acting group is GL, so recount the centralizer there
        let count = if g.family == Family::Mat {
            let mut inv_count = 0u64;
            for e in &table.elements {
                if e.is_invertible(&field) && e.mul(&field, &c.rep) == c.rep.mul(&field, e) {
                    inv_count += 1;
                }
            }
            inv_count
        } else {
            count
        };
        let expected = &acting / BigInt::from(c.size);
        if BigInt::from(count) != expected {
            cent_ok = false;
            cent_detail = format!(
                "orbit-stabilizer failed at {}: |C| = {count}, |G|/size = {expected}",
                c.datum.render(&field)
            );
            break;
        }
        // the Wall/Kung product must reproduce it through some signed datum
        let matching = formula.iter().any(|(d, s)| {
            d.unsigned() == c.datum
                && *s == BigInt::from(c.size)
                && centralizer_order(d, g).map(|co| co == BigInt::from(count)).unwrap_or(false)
        });
        if !matching {
            cent_ok = false;
            cent_detail = format!(
                "no formula datum reproduces centralizer {count} at {}",
                c.datum.render(&field)
            );
            break;
        }
    }
    checks.push(check("centralizer-products", cent_ok, cent_detail));

    // (c) weighted cycle-index coefficients vs empirical averages
    let (series_fam, tables): (SeriesFamily, Vec<EmpiricalClassTable>) = match g.family {
        Family::Gl => (SeriesFamily::Gl, vec![table]),
        Family::Mat => (SeriesFamily::Mat, vec![table]),
        Family::U => (SeriesFamily::U, vec![table]),
        Family::Sp => (SeriesFamily::Sp, vec![table]),
        Family::OPlus | Family::OMinus => {
            let partner_family = if g.family == Family::OPlus {
                Family::OMinus
            } else {
                Family::OPlus
            };
            let partner = GroupId::new(partner_family, g.n, g.q)?;
            let partner_table = empirical_class_table(&partner, budget)?;
            (SeriesFamily::OSum, vec![table, partner_table])
        }
    };
    let n = g.n as usize;
    let empirical_avg = |weight: &dyn Fn(&ClassDatum) -> BigRational| -> BigRational {
        let mut acc = BigRational::zero();
        for t in &tables {
            let denom = BigInt::from(t.elements.len() as u64);
            for c in &t.classes {
                acc += BigRational::new(BigInt::from(c.size), denom.clone()) * weight(&c.datum);
            }
        }
        acc
    };

    // predicate weights
    let mut weights_ok = true;
    let mut weights_detail = String::new();
    for pred in [
        PartPredicate::Semisimple,
        PartPredicate::Regular,
        PartPredicate::RegularSemisimple,
    ] {
        let coeff = cycle_index_series(series_fam, g.q, &WeightSpec::Predicate(pred), n, budget)?
            .coeff(n)
            .clone();
        let avg = empirical_avg(&|d: &ClassDatum| {
            if d.slots.values().all(|s| pred.holds(s.partition())) {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        if coeff != avg {
            weights_ok = false;
            weights_detail = format!("{pred:?}: series {coeff}, empirical {avg}");
            break;
        }
    }
    // x-marked factor count
    if weights_ok {
        let marked = marked_cycle_index_series(series_fam, g.q, n, budget)?;
        let coeff = marked.dx.coeff(n).clone();
        let avg = empirical_avg(&|d: &ClassDatum| BigRational::from(BigInt::from(d.factor_count())));
        if coeff != avg {
            weights_ok = false;
            weights_detail = format!("x-mark: series {coeff}, empirical {avg}");
        }
    }
    // pinned datum (the lexicographically first bucket beyond the identity)
    if weights_ok {
        if let Some((pin, _)) = formula
            .iter()
            .find(|(d, s)| !s.is_one() || d.factor_count() > 1)
        {
            let pin = pin.unsigned();
            let coeff = cycle_index_series(series_fam, g.q, &WeightSpec::Pin(pin.clone()), n, budget)?
                .coeff(n)
                .clone();
            let avg = empirical_avg(&|d: &ClassDatum| {
                if *d == pin {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            });
            if coeff != avg {
                weights_ok = false;
                weights_detail = format!(
                    "pin {}: series {coeff}, empirical {avg}",
                    pin.render(&field)
                );
            }
        }
    }
    checks.push(check("weighted-coefficients", weights_ok, weights_detail));

    let pass = checks.iter().all(|c| c.pass);
    Ok(CertReport {
        group: g.to_string(),
        group_order: order.to_string(),
        formula_classes: formula.len(),
        empirical_classes: {
            let mut t = 0;
            for tb in &tables {
                if tb.group == *g {
                    t = tb.classes.len();
                }
            }
            t
        },
        pass,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn enumerate_small_groups() {
        let gl22 = GroupId::new(Family::Gl, 2, 2).unwrap();
        assert_eq!(enumerate_group(&gl22, &b()).unwrap().len(), 6);
        let sp23 = GroupId::new(Family::Sp, 2, 3).unwrap();
        assert_eq!(enumerate_group(&sp23, &b()).unwrap().len(), 24);
        let op23 = GroupId::new(Family::OPlus, 2, 3).unwrap();
        assert_eq!(enumerate_group(&op23, &b()).unwrap().len(), 4);
        let om23 = GroupId::new(Family::OMinus, 2, 3).unwrap();
        assert_eq!(enumerate_group(&om23, &b()).unwrap().len(), 8);
        let u22 = GroupId::new(Family::U, 2, 2).unwrap();
        assert_eq!(enumerate_group(&u22, &b()).unwrap().len(), 18);
        let mat22 = GroupId::new(Family::Mat, 2, 2).unwrap();
        assert_eq!(enumerate_group(&mat22, &b()).unwrap().len(), 16);
    }

    #[test]
    fn charpoly_and_rcf_examples() {
        let f2 = Field::prime(2);
        // identity: lambda_{z-1} = (1^n)
        let id = MatrixFq::identity(3);
        let datum = rcf_data(&id, &f2, &b()).unwrap();
        assert_eq!(datum.slots.len(), 1);
        let slot = datum.slots.values().next().unwrap();
        assert_eq!(slot.partition().parts(), &[1, 1, 1]);
        // the transvection [[1,1],[0,1]] over F_2: lambda_{z+1} = (2)
        let mut t = MatrixFq::identity(2);
        t.set(0, 1, 1);
        let datum = rcf_data(&t, &f2, &b()).unwrap();
        let (poly, slot) = datum.slots.iter().next().unwrap();
        assert_eq!(*poly, MonicPoly::z_plus_one(&f2));
        assert_eq!(slot.partition().parts(), &[2]);
        // companion matrix of z^2+z+1: a single size-1 part there
        let mut c = MatrixFq::zero(2);
        c.set(0, 1, 1);
        c.set(1, 0, 1);
        c.set(1, 1, 1);
        assert_eq!(c.charpoly(&f2), MonicPoly::from_coeffs(vec![1, 1, 1]));
        let datum = rcf_data(&c, &f2, &b()).unwrap();
        let (poly, slot) = datum.slots.iter().next().unwrap();
        assert_eq!(*poly, MonicPoly::from_coeffs(vec![1, 1, 1]));
        assert_eq!(slot.partition().parts(), &[1]);
    }

    #[test]
    fn charpoly_det_matches_eval() {
        // Cayley-Hamilton: chi(M) = 0, across a sample of GL(3,2)
        let f2 = Field::prime(2);
        let g = GroupId::new(Family::Gl, 3, 2).unwrap();
        for m in enumerate_group(&g, &b()).unwrap().iter().take(40) {
            let chi = m.charpoly(&f2);
            let z = m.eval_poly(&f2, &chi);
            assert_eq!(z, MatrixFq::zero(3));
        }
    }

    #[test]
    fn gl22_class_table() {
        let g = GroupId::new(Family::Gl, 2, 2).unwrap();
        let t = empirical_class_table(&g, &b()).unwrap();
        let mut sizes: Vec<u64> = t.classes.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn sp23_class_table_splits_unipotents() {
        let g = GroupId::new(Family::Sp, 2, 3).unwrap();
        let t = empirical_class_table(&g, &b()).unwrap();
        let mut sizes: Vec<u64> = t.classes.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 4, 4, 4, 4, 6]);
        // the unsigned datum (2) at z-1 carries the sub-multiset {4, 4}
        let f3 = Field::prime(3);
        let zm = MonicPoly::z_minus_one(&f3);
        let mut unipotent_sizes: Vec<u64> = t
            .classes
            .iter()
            .filter(|c| {
                c.datum.slots.len() == 1
                    && c.datum.slots.get(&zm).map(|s| s.partition().parts() == [2]) == Some(true)
            })
            .map(|c| c.size)
            .collect();
        unipotent_sizes.sort_unstable();
        assert_eq!(unipotent_sizes, vec![4, 4]);
    }

    #[test]
    fn mat22_orbits() {
        let g = GroupId::new(Family::Mat, 2, 2).unwrap();
        let t = empirical_class_table(&g, &b()).unwrap();
        let total: u64 = t.classes.iter().map(|c| c.size).sum();
        assert_eq!(total, 16);
    }

    #[test]
    fn certify_tiny_groups() {
        for g in [
            GroupId::new(Family::Gl, 2, 2).unwrap(),
            GroupId::new(Family::Gl, 2, 3).unwrap(),
            GroupId::new(Family::Mat, 2, 2).unwrap(),
            GroupId::new(Family::U, 2, 2).unwrap(),
            GroupId::new(Family::Sp, 2, 3).unwrap(),
            GroupId::new(Family::OPlus, 2, 3).unwrap(),
            GroupId::new(Family::OMinus, 2, 3).unwrap(),
        ] {
            let report = certify(&g, &b()).unwrap();
            assert!(report.pass, "{}: {:?}", report.group, report.checks);
        }
    }

    #[test]
    fn orthogonal_symmetry_count_by_force() {
        // reflections (det -1, fixed hyperplane) in O^+(3,3) total q^{n-1} = 9
        let g = GroupId::new(Family::OPlus, 3, 3).unwrap();
        let f3 = Field::prime(3);
        let id = MatrixFq::identity(3);
        let mut count = 0;
        for m in enumerate_group(&g, &b()).unwrap() {
            // fixed space of dimension n-1 and m != I
            let mut diff = m.clone();
            for i in 0..3 {
                let v = f3.sub(diff.get(i, i), 1);
                diff.set(i, i, v);
            }
            if m != id && diff.rank(&f3) == 1 && m.mul(&f3, &m) == id {
                count += 1;
            }
        }
        assert_eq!(count, 9);
    }

    #[test]
    fn companion_matrix_roundtrip() {
        // the companion matrix of any monic polynomial has it as its
        // characteristic polynomial, and rcf data concentrated there
        for (p, k) in [(2u32, 1u32), (3, 1), (2, 2)] {
            let f = Field::extension(p, k).unwrap();
            let q = f.q();
            for deg in 2..=3usize {
                for code in 0..q.pow(deg as u32) {
                    let mut coeffs = vec![0 as Fq; deg + 1];
                    let mut c = code;
                    for e in coeffs.iter_mut().take(deg) {
                        *e = (c % q) as Fq;
                        c /= q;
                    }
                    coeffs[deg] = 1;
                    let phi = MonicPoly::from_coeffs(coeffs);
                    let mut m = MatrixFq::zero(deg);
                    for i in 0..deg - 1 {
                        m.set(i, i + 1, 1);
                    }
                    for j in 0..deg {
                        m.set(deg - 1, j, f.neg(phi.coeffs()[j]));
                    }
                    assert_eq!(m.charpoly(&f), phi, "companion of {}", phi.render(&f));
                    let datum = rcf_data(&m, &f, &b()).unwrap();
                    assert_eq!(datum.weighted_degree(), deg as u64);
                    // a companion matrix is regular: one part per polynomial
                    assert!(datum
                        .slots
                        .values()
                        .all(|s| s.partition().num_parts() == 1));
                }
            }
        }
    }

    #[test]
    fn rcf_is_a_class_function() {
        // conjugate matrices carry identical data
        for g in [
            GroupId::new(Family::Gl, 2, 3).unwrap(),
            GroupId::new(Family::U, 2, 2).unwrap(),
            GroupId::new(Family::Sp, 2, 3).unwrap(),
            GroupId::new(Family::OMinus, 2, 3).unwrap(),
        ] {
            let field = matrix_field(&g).unwrap();
            let elements = enumerate_group(&g, &b()).unwrap();
            for x in &elements {
                let base = rcf_data(x, &field, &b()).unwrap();
                for h in &elements {
                    let conj = h.mul(&field, x).mul(&field, &h.inverse(&field).unwrap());
                    assert_eq!(rcf_data(&conj, &field, &b()).unwrap(), base, "{g}");
                }
            }
        }
    }

    #[test]
    fn steinberg_by_force() {
        for g in [
            GroupId::new(Family::Gl, 2, 3).unwrap(),
            GroupId::new(Family::U, 2, 2).unwrap(),
            GroupId::new(Family::Sp, 2, 3).unwrap(),
            GroupId::new(Family::OMinus, 2, 3).unwrap(),
        ] {
            let field = matrix_field(&g).unwrap();
            let t = empirical_class_table(&g, &b()).unwrap();
            let sylow = crate::groups::p_sylow_order(&g);
            assert_eq!(
                BigInt::from(t.unipotent_count(&field)),
                &sylow * &sylow,
                "{g}"
            );
        }
    }
}
