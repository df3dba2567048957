//! Sparse multivariate polynomials over `F_{p^k}`.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so the
//! canonical order (descending lexicographic on exponents) is simply the
//! reverse iteration order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::gf::{Code, FieldSpec, FqElement, GfError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MpolyError {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("image of x{0} is not homogeneous linear")]
    NotLinear(usize),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Exponent vector. The derived order is lexicographic ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &a)| a > 0).map(|(i, _)| i)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, a) })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// All exponent vectors of total degree `d` in descending lexicographic
/// order. This order indexes the columns of every graded matrix.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(rest: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if rest == 1 {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(rest - 1, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(nvars, d, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Number of monomials of degree `d` in `nvars` variables, `C(n+d-1, d)`.
pub fn count_monomials(nvars: usize, d: u32) -> u128 {
    if nvars == 0 {
        return u128::from(d == 0);
    }
    let n = nvars as u128 + d as u128 - 1;
    let k = (d as u128).min(nvars as u128 - 1);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Monomial, Code>,
}

impl Polynomial {
    pub fn zero(field: &FieldSpec, nvars: usize) -> Self {
        Polynomial { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &FieldSpec, nvars: usize, c: Code) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(field: &FieldSpec, nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::var(nvars, i), 1);
        p
    }

    /// `sum_i coeffs[i] * x_i`.
    pub fn linear(field: &FieldSpec, coeffs: &[Code]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(field, n);
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c);
        }
        p
    }

    /// Polynomial with the given coefficient vector over `basis`.
    pub fn from_vector(field: &FieldSpec, nvars: usize, basis: &[Monomial], coeffs: &[Code]) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, &c) in basis.iter().zip(coeffs) {
            p.add_term(m.clone(), c);
        }
        p
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Code)> {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> Code {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn coefficient_element(&self, m: &Monomial) -> FqElement {
        self.field.element(self.coefficient(m))
    }

    /// Lex-greatest term.
    pub fn leading_term(&self) -> Option<(&Monomial, Code)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    /// Adds `c * m`, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Code) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c == 0 {
            return;
        }
        let f = &self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(*e.get(), c);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Maximum total degree over all terms; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<(), MpolyError> {
        self.field.check_same(&other.field)?;
        if self.nvars != other.nvars {
            return Err(MpolyError::ArityMismatch { expected: self.nvars, got: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, MpolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, MpolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn scale(&self, s: Code) -> Polynomial {
        let mut out = Self::zero(&self.field, self.nvars);
        if s != 0 {
            for (m, &c) in &self.terms {
                out.terms.insert(m.clone(), self.field.mul(s, c));
            }
        }
        out
    }

    /// Rescales so that the lex-greatest coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) => self.scale(self.field.inv(c).expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, MpolyError> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut acc: HashMap<Vec<u32>, Code> = HashMap::new();
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                let e: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                let v = f.mul(c1, c2);
                let slot = acc.entry(e).or_insert(0);
                *slot = f.add(*slot, v);
            }
        }
        let mut out = Self::zero(f, self.nvars);
        out.terms = acc.into_iter().filter(|(_, c)| *c != 0).map(|(e, c)| (Monomial(e), c)).collect();
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial, MpolyError> {
        let mut acc = Self::constant(&self.field, self.nvars, 1);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Replaces each variable `x_i` by `images[i]` and re-collects terms.
    /// Images must be homogeneous of degree 1 (or zero).
    pub fn substitute_linear(&self, images: &[Polynomial]) -> Result<Polynomial, MpolyError> {
        if images.len() != self.nvars {
            return Err(MpolyError::ArityMismatch { expected: self.nvars, got: images.len() });
        }
        let out_vars = images.first().map_or(self.nvars, |p| p.nvars);
        for (i, img) in images.iter().enumerate() {
            self.field.check_same(&img.field)?;
            if img.nvars != out_vars {
                return Err(MpolyError::ArityMismatch { expected: out_vars, got: img.nvars });
            }
            if img.terms.keys().any(|m| m.degree() != 1) {
                return Err(MpolyError::NotLinear(i));
            }
        }
        let mut powers: Vec<Vec<Polynomial>> =
            (0..self.nvars).map(|_| vec![Self::constant(&self.field, out_vars, 1)]).collect();
        let mut out = Self::zero(&self.field, out_vars);
        for (m, &c) in &self.terms {
            let mut prod = Self::constant(&self.field, out_vars, c);
            for (i, &a) in m.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                while powers[i].len() <= a as usize {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                prod = prod.mul(&powers[i][a as usize])?;
            }
            for (pm, pc) in prod.terms {
                out.add_term(pm, pc);
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Code]) -> Result<Code, MpolyError> {
        if point.len() != self.nvars {
            return Err(MpolyError::ArityMismatch { expected: self.nvars, got: point.len() });
        }
        let f = &self.field;
        let mut acc = 0;
        for (m, &c) in &self.terms {
            let mut v = c;
            for (i, &a) in m.0.iter().enumerate() {
                if a > 0 {
                    v = f.mul(v, f.pow(point[i], a as u64));
                    if v == 0 {
                        break;
                    }
                }
            }
            acc = f.add(acc, v);
        }
        Ok(acc)
    }

    pub fn evaluate_elements(&self, point: &[FqElement]) -> Result<FqElement, MpolyError> {
        for x in point {
            self.field.check_same(x.field())?;
        }
        let codes: Vec<Code> = point.iter().map(FqElement::code).collect();
        Ok(self.field.element(self.evaluate(&codes)?))
    }

    /// Coefficient vector over an ordered monomial basis.
    pub fn to_vector(&self, basis: &[Monomial]) -> Vec<Code> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| {
                let coeff = self.field.format_code(c);
                let coeff = if coeff.contains('+') { format!("({coeff})") } else { coeff };
                if m.degree() == 0 {
                    coeff
                } else if c == 1 {
                    m.to_string()
                } else {
                    format!("{coeff}*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// The degree-`d` graded piece `F[x_1..x_n]_d` with fast index lookups.
pub struct GradedPiece {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedPiece {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let monomials = monomials_of_degree(nvars, degree);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        GradedPiece { degree, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// `up[i * nvars + j]` = index in `next` of `monomials[i] * x_j`.
    fn up_table(&self, next: &GradedPiece, nvars: usize) -> Vec<u32> {
        let mut table = Vec::with_capacity(self.len() * nvars);
        let mut e = Vec::with_capacity(nvars);
        for m in &self.monomials {
            for j in 0..nvars {
                e.clear();
                e.extend_from_slice(&m.0);
                e[j] += 1;
                table.push(next.index[&Monomial(e.clone())] as u32);
            }
        }
        table
    }
}

/// Images of every degree-`d` monomial under the linear substitution
/// `x_i -> sum_j images[i][j] x_j`, as sparse columns over the same basis
/// (`columns[c]` lists `(row, coefficient)` pairs for monomial `c` of
/// [`monomials_of_degree`]).
///
/// Built level by level: the image of `m` is the image of `m / x_v` times
/// the image of `x_v`, where `x_v` is the last variable dividing `m`.
pub fn graded_action_columns(field: &FieldSpec, images: &[Vec<Code>], d: u32) -> Vec<Vec<(u32, Code)>> {
    let n = images.len();
    let sparse_images: Vec<Vec<(usize, Code)>> = images
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| (j, c)).collect())
        .collect();
    let mut prev_piece = GradedPiece::new(n, 0);
    let mut prev_cols: Vec<Vec<(u32, Code)>> = vec![vec![(0, 1)]];
    for t in 1..=d {
        let piece = GradedPiece::new(n, t);
        let up = prev_piece.up_table(&piece, n);
        let mut acc = vec![0 as Code; piece.len()];
        let mut touched: Vec<u32> = Vec::new();
        let mut cols = Vec::with_capacity(piece.len());
        for m in &piece.monomials {
            let v = m.0.iter().rposition(|&a| a > 0).expect("positive degree");
            let mut pred = m.0.clone();
            pred[v] -= 1;
            let src = &prev_cols[prev_piece.index[&Monomial(pred)]];
            for &(i, a) in src {
                for &(j, c) in &sparse_images[v] {
                    let r = up[i as usize * n + j];
                    let slot = &mut acc[r as usize];
                    if *slot == 0 {
                        touched.push(r);
                    }
                    *slot = field.add(*slot, field.mul(a, c));
                }
            }
            touched.sort_unstable();
            let col: Vec<(u32, Code)> = touched
                .iter()
                .filter_map(|&r| {
                    let c = std::mem::take(&mut acc[r as usize]);
                    (c != 0).then_some((r, c))
                })
                .collect();
            touched.clear();
            cols.push(col);
        }
        prev_piece = piece;
        prev_cols = cols;
    }
    prev_cols
}
