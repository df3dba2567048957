//! Brute-force engine for graded invariants and separating degrees.
//!
//! A generator `g` with matrix `A` acts on variables by
//! `x_i -> sum_j (A^{-1})_{ij} x_j`, so that `(g f)(v) = f(g^{-1} v)`.
//! The degree-`d` invariants are the common kernel of `rho_d(g) - I` over
//! the generators, where column `c` of `rho_d(g)` holds the coefficients of
//! `g` applied to monomial `c` of [`monomials_of_degree`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gf::{Code, FieldSpec, GfError};
use crate::linalg::{kernel_basis, Echelon, LinalgError, MatrixFq};
use crate::mpoly::{graded_action_columns, monomials_of_degree, Monomial, MpolyError, Polynomial};
use crate::reps::{
    close_group, fixed_space, GroupClosure, MatrixGroupRep, ModuleDescriptor, RepError, DEFAULT_GROUP_CAP,
};

pub const DEFAULT_POINT_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantsError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("monomial has degree {got}, expected {expected}")]
    DegreeMismatch { expected: u32, got: u32 },
    #[error("point has {got} coordinates, module has dimension {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("bad point: {0}")]
    BadPoint(String),
    #[error("the zero vector has no separating degree")]
    ZeroPoint,
    #[error("no invariant of degree <= {0} separates the point")]
    NotSeparated(u32),
    #[error("{points} projective points exceed the point cap {cap}")]
    PointBudgetExceeded { points: u128, cap: usize },
    #[error("not a direct sum of Jordan modules for one cyclic group")]
    NotCyclicJordan,
    #[error("expected a nonzero linear form")]
    NotLinear,
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Mpoly(#[from] MpolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] GfError),
}

type Result<T, E = InvariantsError> = std::result::Result<T, E>;

/// Canonical basis of `F[V]^G_d`.
#[derive(Debug, Clone)]
pub struct GradedInvariantBasis {
    pub degree: u32,
    pub ambient_dim: usize,
    pub monomials: Vec<Monomial>,
    /// Sparse coefficient vectors over `monomials`, each scaled so its
    /// lowest-index (lex-greatest) entry is 1.
    pub vectors: Vec<Vec<(u32, Code)>>,
    pub basis: Vec<Polynomial>,
}

impl GradedInvariantBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Values of every degree-`d` monomial at `point`.
    fn monomial_values(&self, field: &FieldSpec, point: &[Code]) -> Vec<Code> {
        self.monomials
            .iter()
            .map(|m| {
                m.0.iter().zip(point).fold(field.one(), |acc, (&a, &x)| {
                    if a == 0 {
                        acc
                    } else {
                        field.mul(acc, field.pow(x, a as u64))
                    }
                })
            })
            .collect()
    }

    /// Index of the first basis element that is nonzero at `point`.
    pub fn first_nonvanishing(&self, field: &FieldSpec, point: &[Code]) -> Option<usize> {
        let vals = self.monomial_values(field, point);
        self.vectors
            .iter()
            .position(|v| v.iter().fold(0, |acc, &(c, x)| field.add(acc, field.mul(x, vals[c as usize]))) != 0)
    }
}

/// Outcome of an `epsilon` search at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationResult {
    pub point: Vec<Code>,
    pub degree_found: u32,
    pub witness: Polynomial,
    /// `dim F[V]^G_d` for `d = 1..=degree_found`.
    pub per_degree_dims: Vec<usize>,
}

/// Outcome of a `delta`/`gamma` computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupremumResult {
    /// The supremum when `complete`, otherwise a lower bound.
    pub value: u32,
    pub complete: bool,
    /// Number of projective points examined.
    pub points: usize,
    /// First point (in canonical order) attaining `value`.
    pub argmax: Option<Vec<Code>>,
    pub witness: Option<String>,
    /// `dim F[V]^G_d` for `d = 1..` up to the last degree computed.
    pub per_degree_dims: Vec<usize>,
}

/// Cached, thread-safe access to invariant bases of one representation.
pub struct InvariantEngine {
    rep: MatrixGroupRep,
    images: Vec<Vec<Vec<Code>>>,
    cache: Mutex<HashMap<u32, Arc<OnceLock<Arc<GradedInvariantBasis>>>>>,
    closure: OnceLock<std::result::Result<Arc<GroupClosure>, RepError>>,
    group_cap: usize,
    point_cap: usize,
}

impl InvariantEngine {
    pub fn new(rep: MatrixGroupRep) -> Self {
        let images = rep.generators().iter().map(|g| g.inverse.to_rows()).collect();
        InvariantEngine {
            rep,
            images,
            cache: Mutex::new(HashMap::new()),
            closure: OnceLock::new(),
            group_cap: DEFAULT_GROUP_CAP,
            point_cap: DEFAULT_POINT_CAP,
        }
    }

    pub fn with_group_cap(mut self, cap: usize) -> Self {
        self.group_cap = cap;
        self
    }

    pub fn with_point_cap(mut self, cap: usize) -> Self {
        self.point_cap = cap;
        self
    }

    pub fn rep(&self) -> &MatrixGroupRep {
        &self.rep
    }

    pub fn field(&self) -> &FieldSpec {
        self.rep.field()
    }

    pub fn closure(&self) -> Result<Arc<GroupClosure>> {
        self.closure.get_or_init(|| close_group(&self.rep, self.group_cap).map(Arc::new)).clone().map_err(Into::into)
    }

    pub fn group_order(&self) -> Result<usize> {
        Ok(self.closure()?.order())
    }

    fn generator_index(&self, label: &str) -> Result<usize> {
        self.rep
            .generators()
            .iter()
            .position(|g| g.label == label)
            .ok_or_else(|| InvariantsError::UnknownGenerator(label.to_string()))
    }

    /// Images of the variables under generator `label`.
    pub fn coaction(&self, label: &str) -> Result<Vec<Polynomial>> {
        let gi = self.generator_index(label)?;
        Ok(self.images[gi].iter().map(|row| Polynomial::linear(self.field(), row)).collect())
    }

    /// `g f - f`.
    pub fn delta_op(&self, label: &str, f: &Polynomial) -> Result<Polynomial> {
        let images = self.coaction(label)?;
        Ok(f.substitute_linear(&images)?.sub(f)?)
    }

    pub fn is_invariant(&self, f: &Polynomial) -> Result<bool> {
        for g in self.rep.generators() {
            if !self.delta_op(&g.label, f)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn invariant_basis(&self, d: u32) -> Arc<GradedInvariantBasis> {
        let slot = {
            let mut cache = self.cache.lock().expect("cache lock");
            cache.entry(d).or_default().clone()
        };
        slot.get_or_init(|| Arc::new(self.compute_basis(d))).clone()
    }

    fn compute_basis(&self, d: u32) -> GradedInvariantBasis {
        let field = self.field();
        let n = self.rep.dim();
        let monomials = monomials_of_degree(n, d);
        let size = monomials.len();
        let all_cols: Vec<Vec<Vec<(u32, Code)>>> =
            self.images.par_iter().map(|im| graded_action_columns(field, im, d)).collect();

        let mut ech = Echelon::new(field, size);
        let minus_one = field.neg(field.one());
        for cols in &all_cols {
            let mut rows: Vec<Vec<(usize, Code)>> = vec![Vec::new(); size];
            for (c, col) in cols.iter().enumerate() {
                for &(r, v) in col {
                    rows[r as usize].push((c, v));
                }
            }
            for (r, mut row) in rows.into_iter().enumerate() {
                row.push((r, minus_one));
                ech.insert_sparse(&row);
            }
        }

        let vectors: Vec<Vec<(u32, Code)>> = ech
            .kernel()
            .into_iter()
            .map(|v| {
                let lead = *v.iter().find(|&&x| x != 0).expect("kernel vectors are nonzero");
                let s = field.inv(lead).expect("nonzero");
                v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i as u32, field.mul(x, s))).collect()
            })
            .collect();

        for (cols, g) in all_cols.iter().zip(self.rep.generators()) {
            for v in &vectors {
                assert!(fixed_by(field, cols, v, size), "basis vector not fixed by {}", g.label);
            }
        }

        let basis: Vec<Polynomial> = vectors
            .iter()
            .map(|v| {
                let mut p = Polynomial::zero(field, n);
                for &(i, c) in v {
                    p.add_term(monomials[i as usize].clone(), c);
                }
                p
            })
            .collect();
        if cfg!(debug_assertions) && size <= 2000 {
            for f in &basis {
                debug_assert!(self.is_invariant(f).unwrap_or(false), "{f} is not invariant");
            }
        }
        GradedInvariantBasis { degree: d, ambient_dim: size, monomials, vectors, basis }
    }

    pub fn dimensions(&self, max_degree: u32) -> Vec<usize> {
        (1..=max_degree).map(|d| self.invariant_basis(d).dim()).collect()
    }

    /// Whether some invariant of degree `d` has a nonzero coefficient on `m`.
    pub fn monomial_in_invariants(&self, d: u32, m: &Monomial) -> Result<bool> {
        if m.nvars() != self.rep.dim() {
            return Err(InvariantsError::ArityMismatch { expected: self.rep.dim(), got: m.nvars() });
        }
        if m.degree() != d {
            return Err(InvariantsError::DegreeMismatch { expected: d, got: m.degree() });
        }
        let b = self.invariant_basis(d);
        Ok(b.basis.iter().any(|f| f.coefficient(m) != 0))
    }

    fn check_point(&self, v: &[Code]) -> Result<()> {
        if v.len() != self.rep.dim() {
            return Err(InvariantsError::ArityMismatch { expected: self.rep.dim(), got: v.len() });
        }
        if v.iter().any(|&c| c >= self.field().q()) {
            return Err(InvariantsError::BadPoint(format!("{v:?} has a code outside {}", self.field())));
        }
        if v.iter().all(|&c| c == 0) {
            return Err(InvariantsError::ZeroPoint);
        }
        Ok(())
    }

    /// Smallest degree of an invariant that is nonzero at `v`, searched up
    /// to `max_degree` (default `|G|`).
    pub fn epsilon(&self, v: &[Code], max_degree: Option<u32>) -> Result<SeparationResult> {
        self.check_point(v)?;
        let order = self.group_order()?;
        let max = max_degree.unwrap_or(order as u32);
        let mut dims = Vec::new();
        for d in 1..=max {
            let b = self.invariant_basis(d);
            dims.push(b.dim());
            if let Some(i) = b.first_nonvanishing(self.field(), v) {
                assert!(d as usize <= order, "degree {d} exceeds |G| = {order}");
                return Ok(SeparationResult {
                    point: v.to_vec(),
                    degree_found: d,
                    witness: b.basis[i].clone(),
                    per_degree_dims: dims,
                });
            }
        }
        Err(InvariantsError::NotSeparated(max))
    }

    /// `delta(G, V)`: supremum of `epsilon` over nonzero fixed points.
    pub fn delta_value(&self) -> Result<SupremumResult> {
        let basis = fixed_space(&self.rep)?;
        self.supremum(&basis, None)
    }

    /// `gamma(G, V)`: supremum of `epsilon` over all nonzero points.
    pub fn gamma_value(&self) -> Result<SupremumResult> {
        let n = self.rep.dim();
        let basis: Vec<Vec<Code>> = (0..n).map(|i| crate::reps::unit(n, i)).collect();
        self.supremum(&basis, None)
    }

    /// Supremum of `epsilon` over the projective points of the span of
    /// `basis`, searching degrees up to `max_degree` (default `|G|`).
    pub fn supremum(&self, basis: &[Vec<Code>], max_degree: Option<u32>) -> Result<SupremumResult> {
        self.supremum_impl(basis, max_degree, None, 0)
    }

    /// Like [`supremum`](Self::supremum), but once `deadline` has passed no
    /// degree above `floor` is started; the result is then a lower bound.
    pub fn supremum_until(&self, basis: &[Vec<Code>], deadline: Option<Instant>, floor: u32) -> Result<SupremumResult> {
        self.supremum_impl(basis, None, deadline, floor)
    }

    fn supremum_impl(
        &self,
        basis: &[Vec<Code>],
        max_degree: Option<u32>,
        deadline: Option<Instant>,
        floor: u32,
    ) -> Result<SupremumResult> {
        if basis.is_empty() {
            return Ok(SupremumResult {
                value: 0,
                complete: true,
                points: 0,
                argmax: None,
                witness: None,
                per_degree_dims: Vec::new(),
            });
        }
        let points = projective_points(self.field(), basis, self.point_cap)?;
        let order = self.group_order()? as u32;
        let max = max_degree.unwrap_or(order);
        let field = self.field();
        let mut unresolved: Vec<usize> = (0..points.len()).collect();
        let mut dims = Vec::new();
        let mut last: Option<(u32, usize, String)> = None;
        for d in 1..=max {
            if d > floor && deadline.is_some_and(|t| Instant::now() >= t) {
                return Ok(self.truncated(d, points.len(), dims));
            }
            let b = self.invariant_basis(d);
            dims.push(b.dim());
            let hits: Vec<Option<usize>> =
                unresolved.par_iter().map(|&i| b.first_nonvanishing(field, &points[i])).collect();
            let mut still = Vec::new();
            for (&i, hit) in unresolved.iter().zip(hits) {
                match hit {
                    Some(w) => {
                        if last.as_ref().is_none_or(|(ld, li, _)| *ld < d || *li > i) {
                            last = Some((d, i, b.basis[w].to_string()));
                        }
                    }
                    None => still.push(i),
                }
            }
            unresolved = still;
            if unresolved.is_empty() {
                let (value, i, w) = last.expect("at least one point");
                assert!(value <= order, "separating degree {value} exceeds |G| = {order}");
                return Ok(SupremumResult {
                    value,
                    complete: true,
                    points: points.len(),
                    argmax: Some(points[i].clone()),
                    witness: Some(w),
                    per_degree_dims: dims,
                });
            }
        }
        if max_degree.is_some() {
            return Ok(self.truncated(max + 1, points.len(), dims));
        }
        Err(InvariantsError::NotSeparated(max))
    }

    fn truncated(&self, next_degree: u32, points: usize, dims: Vec<usize>) -> SupremumResult {
        SupremumResult {
            value: next_degree,
            complete: false,
            points,
            argmax: None,
            witness: None,
            per_degree_dims: dims,
        }
    }

    /// Product of the distinct images of a linear form under the group.
    pub fn orbit_product(&self, ell: &Polynomial) -> Result<Polynomial> {
        let n = self.rep.dim();
        if ell.is_zero() || ell.nvars() != n || ell.degree() != Some(1) {
            return Err(InvariantsError::NotLinear);
        }
        let coeffs: Vec<Code> = (0..n).map(|i| ell.coefficient(&Monomial::var(n, i))).collect();
        let row = MatrixFq::from_rows(self.field(), &[coeffs])?;
        let cl = self.closure()?;
        let mut orbit: Vec<Vec<Code>> = Vec::new();
        // g ell has coefficient row `c A_g^{-1}`; g^{-1} runs over the group too
        for h in cl.elements() {
            let img = row.mul(h)?.row(0).to_vec();
            if !orbit.contains(&img) {
                orbit.push(img);
            }
        }
        let mut prod = Polynomial::constant(self.field(), n, 1);
        for c in &orbit {
            prod = prod.mul(&Polynomial::linear(self.field(), c))?;
        }
        assert!(self.is_invariant(&prod)?, "orbit product is not invariant");
        Ok(prod)
    }

    /// Canonical basis of `V_0`, the common zero set of the linear invariants.
    pub fn v_zero(&self) -> Result<Vec<Vec<Code>>> {
        let n = self.rep.dim();
        let b = self.invariant_basis(1);
        if b.dim() == 0 {
            return Ok((0..n).map(|i| crate::reps::unit(n, i)).collect());
        }
        let rows: Vec<Vec<Code>> =
            b.basis.iter().map(|f| (0..n).map(|i| f.coefficient(&Monomial::var(n, i))).collect()).collect();
        let basis = kernel_basis(&MatrixFq::from_rows(self.field(), &rows)?);
        if cfg!(debug_assertions) {
            let span = MatrixFq::from_rows_with_cols(self.field(), &basis, n)?;
            for g in self.rep.generators() {
                for v in &basis {
                    let gv = g.matrix.apply(v)?;
                    let mut ech = Echelon::new(self.field(), n);
                    for r in span.to_rows() {
                        ech.insert(r);
                    }
                    debug_assert!(ech.contains(&gv), "V_0 is not G-stable");
                }
            }
        }
        Ok(basis)
    }

    /// Checks that every monomial in the terminal variables occurring in a
    /// degree-`d` invariant has `p^s | a_j` for all `j` with `n_j > p^{s-1}`.
    pub fn terminal_divisibility_check(&self, d: u32) -> Result<DivisibilityReport> {
        let desc = self.rep.descriptor().ok_or(InvariantsError::NotCyclicJordan)?;
        let (p, r, dims) = cyclic_jordan_dims(desc)?;
        let mut terminals = Vec::new();
        let mut off = 0;
        for &nj in &dims {
            terminals.push(off + nj - 1);
            off += nj;
        }
        let b = self.invariant_basis(d);
        let mut checked = 0;
        let mut violations = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for f in &b.basis {
            for (m, _) in f.terms() {
                if m.support().any(|i| !terminals.contains(&i)) || !seen.insert(m.clone()) {
                    continue;
                }
                checked += 1;
                for s in 0..=r {
                    let ps = (p as u64).pow(s);
                    for (j, &nj) in dims.iter().enumerate() {
                        let in_js = s == 0 || nj as u64 > (p as u64).pow(s - 1);
                        let a = m.0[terminals[j]] as u64;
                        if in_js && !a.is_multiple_of(ps) {
                            violations.push(format!("{m}: s={s}, summand {}, exponent {a}", j + 1));
                        }
                    }
                }
            }
        }
        Ok(DivisibilityReport { degree: d, monomials_checked: checked, violations })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityReport {
    pub degree: u32,
    pub monomials_checked: usize,
    pub violations: Vec<String>,
}

fn fixed_by(field: &FieldSpec, cols: &[Vec<(u32, Code)>], v: &[(u32, Code)], size: usize) -> bool {
    let mut acc = vec![0; size];
    for &(c, x) in v {
        for &(r, y) in &cols[c as usize] {
            acc[r as usize] = field.add(acc[r as usize], field.mul(x, y));
        }
    }
    for &(c, x) in v {
        acc[c as usize] = field.sub(acc[c as usize], x);
    }
    acc.iter().all(|&x| x == 0)
}

/// `(p, r, [n_1, .., n_k])` for a Jordan module or a sum of Jordan modules
/// of one cyclic group.
pub fn cyclic_jordan_dims(desc: &ModuleDescriptor) -> Result<(u32, u32, Vec<usize>)> {
    let mut pr = None;
    let mut dims = Vec::new();
    for s in desc.summands() {
        match s {
            ModuleDescriptor::Jordan { p, r, n } => {
                if pr.is_some_and(|x| x != (*p, *r)) {
                    return Err(InvariantsError::NotCyclicJordan);
                }
                pr = Some((*p, *r));
                dims.push(*n);
            }
            _ => return Err(InvariantsError::NotCyclicJordan),
        }
    }
    let (p, r) = pr.ok_or(InvariantsError::NotCyclicJordan)?;
    Ok((p, r, dims))
}

/// One representative per line in the span of `basis`: coefficient vectors
/// whose first nonzero entry is 1, in ascending lexicographic order of the
/// canonical element enumeration.
pub fn projective_points(field: &FieldSpec, basis: &[Vec<Code>], cap: usize) -> Result<Vec<Vec<Code>>> {
    let k = basis.len() as u32;
    let q = field.q() as u128;
    let count = (q.pow(k) - 1) / (q - 1);
    if count > cap as u128 {
        return Err(InvariantsError::PointBudgetExceeded { points: count, cap });
    }
    let n = basis.first().map_or(0, |b| b.len());
    let one_idx = field.elements().position(|c| c == field.one()).expect("one is enumerated") as u32;
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0u32; k as usize];
    loop {
        if let Some(lead) = digits.iter().find(|&&x| x != 0) {
            if *lead == one_idx {
                let mut v = vec![0; n];
                for (b, &di) in basis.iter().zip(&digits) {
                    let c = field.canonical_code(di);
                    if c != 0 {
                        field.axpy(&mut v, c, b);
                    }
                }
                out.push(v);
            }
        }
        // odometer with the last coordinate varying fastest
        let mut i = k as usize;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < q as u32 {
                break;
            }
            digits[i] = 0;
        }
    }
}
