//! Matrix representations built from descriptors, and their structural
//! data: group closure, fixed points, duals, Jordan types.
//!
//! A generator matrix `A` acts on column vectors, `v -> A v`.

mod closure;
mod descriptor;

pub use closure::{close_group, GroupClosure, DEFAULT_GROUP_CAP};
pub use descriptor::{dihedral_regular, min_degree_for_roots, KleinVariant, Lambda, ModuleDescriptor};

use crate::gf::{Code, FieldSpec, FqElement, GfError};
use crate::linalg::{kernel_basis, stack_rows, LinalgError, MatrixFq};
use crate::mpoly::graded_action_columns;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("generator labels differ: {0:?} vs {1:?}")]
    LabelMismatch(Vec<String>, Vec<String>),
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("group has more than {0} elements (group cap)")]
    CapExceeded(usize),
    #[error("defining relation violated: {0}")]
    RelationViolated(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub matrix: MatrixFq,
    /// Cached inverse; the induced action on `F[V]` uses it.
    pub inverse: MatrixFq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGroupRep {
    field: FieldSpec,
    dim: usize,
    generators: Vec<Generator>,
    descriptor: Option<ModuleDescriptor>,
}

impl MatrixGroupRep {
    /// Representation from labeled generator matrices. Every matrix must be
    /// square of the same size over `field` and invertible.
    pub fn new(field: &FieldSpec, dim: usize, gens: Vec<(String, MatrixFq)>) -> Result<Self, RepError> {
        let mut generators = Vec::with_capacity(gens.len());
        for (label, matrix) in gens {
            if matrix.field() != field {
                return Err(RepError::FieldMismatch(format!("generator {label} lives in {}", matrix.field())));
            }
            if matrix.rows() != dim || matrix.cols() != dim {
                return Err(LinalgError::ShapeMismatch(format!("generator {label} is not {dim}x{dim}")).into());
            }
            let inverse = matrix.inv()?;
            generators.push(Generator { label, matrix, inverse });
        }
        Ok(MatrixGroupRep { field: field.clone(), dim, generators, descriptor: None })
    }

    pub fn with_descriptor(mut self, d: ModuleDescriptor) -> Self {
        self.descriptor = Some(d);
        self
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn descriptor(&self) -> Option<&ModuleDescriptor> {
        self.descriptor.as_ref()
    }

    pub fn labels(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.label.clone()).collect()
    }

    pub fn generator(&self, label: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.label == label)
    }

    /// Same module with one generator dropped (a subgroup).
    pub fn without_generator(&self, label: &str) -> MatrixGroupRep {
        MatrixGroupRep {
            field: self.field.clone(),
            dim: self.dim,
            generators: self.generators.iter().filter(|g| g.label != label).cloned().collect(),
            descriptor: None,
        }
    }

    fn map_generators(&self, f: impl Fn(&Generator) -> Result<MatrixFq, RepError>) -> Result<Self, RepError> {
        let gens =
            self.generators.iter().map(|g| Ok((g.label.clone(), f(g)?))).collect::<Result<Vec<_>, RepError>>()?;
        let dim = gens.first().map_or(self.dim, |(_, m)| m.rows());
        MatrixGroupRep::new(&self.field, dim, gens)
    }
}

/// Builds the representation a descriptor names, over `field`.
pub fn build(desc: &ModuleDescriptor, field: &FieldSpec) -> Result<MatrixGroupRep, RepError> {
    if let Some(p) = desc.characteristic() {
        if p != field.p() {
            return Err(RepError::FieldMismatch(format!("descriptor has characteristic {p}, field is {field}")));
        }
    }
    let rep = match desc {
        ModuleDescriptor::Jordan { p, r, n } => {
            check_jordan_dims(*p, *r, *n)?;
            let sigma = jordan_sigma(field, *n)?;
            check_power_is_identity(&sigma, (*p as u64).pow(*r), "sigma^(p^r) = 1")?;
            MatrixGroupRep::new(field, *n, vec![("sigma".into(), sigma)])?
        }
        ModuleDescriptor::WModule { p, r, m, n, lambda } => {
            check_jordan_dims(*p, *r, *n)?;
            if *m == 0 || *m % *p as u64 == 0 {
                return Err(RepError::BadParameter(format!("m = {m} must be positive and prime to {p}")));
            }
            let lam = resolve_lambda(lambda, field)?;
            let ord = lam.order().map_err(|_| RepError::BadParameter("lambda must be nonzero".into()))?;
            if m % ord != 0 {
                return Err(RepError::BadParameter(format!("lambda has order {ord}, which does not divide m = {m}")));
            }
            let sigma = jordan_sigma(field, *n)?;
            let mut alpha = MatrixFq::zeros(field, *n, *n);
            for i in 0..*n {
                alpha.set(i, i, lam.code());
            }
            check_power_is_identity(&sigma, (*p as u64).pow(*r), "sigma^(p^r) = 1")?;
            check_power_is_identity(&alpha, *m, "alpha^m = 1")?;
            check_commute(&sigma, &alpha, "sigma alpha = alpha sigma")?;
            MatrixGroupRep::new(field, *n, vec![("sigma".into(), sigma), ("alpha".into(), alpha)])?
        }
        ModuleDescriptor::Klein { variant } => {
            let (s1, s2) = klein_matrices(variant, field)?;
            check_power_is_identity(&s1, 2, "sigma1^2 = 1")?;
            check_power_is_identity(&s2, 2, "sigma2^2 = 1")?;
            check_commute(&s1, &s2, "sigma1 sigma2 = sigma2 sigma1")?;
            let dim = s1.rows();
            MatrixGroupRep::new(field, dim, vec![("sigma1".into(), s1), ("sigma2".into(), s2)])?
        }
        ModuleDescriptor::Perm { n, gens, .. } => {
            if gens.is_empty() {
                return Err(RepError::BadParameter("perm needs at least one generator".into()));
            }
            let mut mats = Vec::new();
            for (k, g) in gens.iter().enumerate() {
                let mut seen = vec![false; *n];
                if g.len() != *n || g.iter().any(|&i| i >= *n || std::mem::replace(&mut seen[i], true)) {
                    return Err(RepError::BadParameter(format!("generator {k} is not a permutation of 0..{n}")));
                }
                let mut a = MatrixFq::zeros(field, *n, *n);
                for (i, &gi) in g.iter().enumerate() {
                    a.set(gi, i, 1);
                }
                mats.push((format!("g{}", k + 1), a));
            }
            MatrixGroupRep::new(field, *n, mats)?
        }
        ModuleDescriptor::Borel { p } => {
            if field.k() != 1 && *p != field.p() {
                return Err(RepError::FieldMismatch("borel needs characteristic p".into()));
            }
            let fp = FieldSpec::prime(*p as u64)?;
            let b = fp.root_of_unity(*p as u64 - 1)?.code();
            let sigma = MatrixFq::from_rows(field, &[vec![1, 1], vec![0, 1]])?;
            let beta = MatrixFq::from_rows(field, &[vec![1, 0], vec![0, field.from_int(b as i64)]])?;
            MatrixGroupRep::new(field, 2, vec![("sigma".into(), sigma), ("beta".into(), beta)])?
        }
        ModuleDescriptor::SymPower { n, inner } => {
            let inner_rep = build(inner, field)?;
            symmetric_power(&inner_rep, *n)?
        }
        ModuleDescriptor::Dual { inner } => dual(&build(inner, field)?)?,
        ModuleDescriptor::DirectSum { summands } => {
            if summands.is_empty() {
                return Err(RepError::BadParameter("empty direct sum".into()));
            }
            let reps = summands.iter().map(|s| build(s, field)).collect::<Result<Vec<_>, _>>()?;
            direct_sum(&reps)?
        }
    };
    Ok(rep.with_descriptor(desc.clone()))
}

fn check_jordan_dims(p: u32, r: u32, n: usize) -> Result<(), RepError> {
    let pr = (p as u64).checked_pow(r).ok_or_else(|| RepError::BadParameter("p^r overflows".into()))?;
    if n == 0 || n as u64 > pr {
        return Err(RepError::BadParameter(format!("need 1 <= n <= p^r = {pr}, got n = {n}")));
    }
    Ok(())
}

fn resolve_lambda(l: &Lambda, field: &FieldSpec) -> Result<FqElement, RepError> {
    match l {
        Lambda::Coords(c) => field
            .from_coeffs(c)
            .map_err(|e| RepError::FieldMismatch(format!("lambda {c:?} is not an element of {field}: {e}"))),
        Lambda::Order { order } => field
            .root_of_unity(*order)
            .map_err(|_| RepError::FieldMismatch(format!("{field} has no root of unity of order {order}"))),
    }
}

/// `A_sigma = (I + N)^{-1}` with `N e_i = e_{i+1}`.
pub fn jordan_sigma(field: &FieldSpec, n: usize) -> Result<MatrixFq, RepError> {
    let mut sigma_inv = MatrixFq::identity(field, n);
    for i in 0..n.saturating_sub(1) {
        sigma_inv.set(i + 1, i, 1);
    }
    Ok(sigma_inv.inv()?)
}

fn check_power_is_identity(a: &MatrixFq, e: u64, what: &str) -> Result<(), RepError> {
    if a.pow(e)?.is_identity() {
        Ok(())
    } else {
        Err(RepError::RelationViolated(what.into()))
    }
}

fn check_commute(a: &MatrixFq, b: &MatrixFq, what: &str) -> Result<(), RepError> {
    if a.mul(b)? == b.mul(a)? {
        Ok(())
    } else {
        Err(RepError::RelationViolated(what.into()))
    }
}

fn klein_matrices(variant: &KleinVariant, field: &FieldSpec) -> Result<(MatrixFq, MatrixFq), RepError> {
    let need_m = |m: usize| {
        if m == 0 {
            Err(RepError::BadParameter("klein modules need m >= 1".into()))
        } else {
            Ok(m)
        }
    };
    Ok(match variant {
        KleinVariant::Regular => {
            // basis e_(a,b) at index a + 2b; sigma1 = (1,0), sigma2 = (0,1)
            let mut s1 = MatrixFq::zeros(field, 4, 4);
            let mut s2 = MatrixFq::zeros(field, 4, 4);
            for a in 0..2 {
                for b in 0..2 {
                    let src = a + 2 * b;
                    s1.set((1 - a) + 2 * b, src, 1);
                    s2.set(a + 2 * (1 - b), src, 1);
                }
            }
            (s1, s2)
        }
        KleinVariant::V2m { m, lambda } => {
            let m = need_m(*m)?;
            let lam = resolve_lambda(lambda, field)?.code();
            type_ii(field, m, lam)
        }
        KleinVariant::W2m { m } => {
            let (s1, s2) = type_ii(field, need_m(*m)?, 0);
            (s2, s1)
        }
        KleinVariant::VOdd { m } => {
            let m = need_m(*m)?;
            // h_1..h_{m+1} at 0..=m, e_1..e_m at m+1..2m
            let dim = 2 * m + 1;
            let mut s1 = MatrixFq::identity(field, dim);
            let mut s2 = MatrixFq::identity(field, dim);
            for i in 1..=m {
                s1.set(m + i, i - 1, 1);
            }
            for i in 2..=m + 1 {
                s2.set(m + i - 1, i - 1, 1);
            }
            (s1, s2)
        }
        KleinVariant::WOdd { m } => {
            let m = need_m(*m)?;
            let dim = 2 * m + 1;
            let mut s1 = MatrixFq::identity(field, dim);
            let mut s2 = MatrixFq::identity(field, dim);
            for j in 0..m {
                s1.set(j, m + 1 + j, 1);
                s2.set(j + 1, m + 1 + j, 1);
            }
            (s1, s2)
        }
    })
}

/// `V_{2m,lambda}` on the basis `h_1..h_m, e_1..e_m`.
fn type_ii(field: &FieldSpec, m: usize, lambda: Code) -> (MatrixFq, MatrixFq) {
    let dim = 2 * m;
    let mut s1 = MatrixFq::identity(field, dim);
    let mut s2 = MatrixFq::identity(field, dim);
    for j in 0..m {
        s1.set(m + j, j, 1);
        s2.set(m + j, j, lambda);
        if j + 1 < m {
            s2.set(m + j + 1, j, 1);
        }
    }
    (s1, s2)
}

/// `S^n(V)` on the degree-`n` monomials in the basis of `V`.
pub fn symmetric_power(rep: &MatrixGroupRep, n: usize) -> Result<MatrixGroupRep, RepError> {
    let field = rep.field().clone();
    rep.map_generators(|g| {
        // b_i -> sum_j A[j][i] b_j
        let images = g.matrix.transpose().to_rows();
        let cols = graded_action_columns(&field, &images, n as u32);
        let size = cols.len();
        let mut out = MatrixFq::zeros(&field, size, size);
        for (c, col) in cols.iter().enumerate() {
            for &(r, v) in col {
                out.set(r as usize, c, v);
            }
        }
        Ok(out)
    })
}

/// Contragredient module: each generator `A` becomes `(A^{-1})^T`.
pub fn dual(rep: &MatrixGroupRep) -> Result<MatrixGroupRep, RepError> {
    rep.map_generators(|g| Ok(g.inverse.transpose()))
}

/// Block-diagonal sum; all summands must carry the same generator labels.
pub fn direct_sum(reps: &[MatrixGroupRep]) -> Result<MatrixGroupRep, RepError> {
    let first = reps.first().ok_or_else(|| RepError::BadParameter("empty direct sum".into()))?;
    let labels = first.labels();
    let mut sorted = labels.clone();
    sorted.sort();
    for r in &reps[1..] {
        if r.field() != first.field() {
            return Err(RepError::FieldMismatch(format!("{} vs {}", first.field(), r.field())));
        }
        let mut other = r.labels();
        other.sort();
        if other != sorted {
            return Err(RepError::LabelMismatch(labels.clone(), r.labels()));
        }
    }
    let mut gens = Vec::new();
    for label in &labels {
        let blocks: Vec<MatrixFq> = reps.iter().map(|r| r.generator(label).unwrap().matrix.clone()).collect();
        gens.push((label.clone(), MatrixFq::block_diag(&blocks)?));
    }
    let dim = reps.iter().map(|r| r.dim()).sum();
    MatrixGroupRep::new(first.field(), dim, gens)
}

/// Canonical basis of `V^G`: the common kernel of all `A_g - I`.
pub fn fixed_space(rep: &MatrixGroupRep) -> Result<Vec<Vec<Code>>, RepError> {
    if rep.generators().is_empty() {
        return Ok((0..rep.dim()).map(|i| unit(rep.dim(), i)).collect());
    }
    let blocks = rep.generators().iter().map(|g| g.matrix.minus_identity()).collect::<Result<Vec<_>, _>>()?;
    Ok(kernel_basis(&stack_rows(&blocks)?))
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Code> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Jordan block sizes of a unipotent matrix, largest first, from
/// `#(blocks of size >= j) = rank N^{j-1} - rank N^j` with `N = A - I`.
pub fn jordan_type(a: &MatrixFq) -> Result<Vec<usize>, RepError> {
    let n = a.rows();
    let nil = a.minus_identity()?;
    let mut ranks = vec![n];
    let mut power = MatrixFq::identity(a.field(), n);
    for _ in 0..n {
        power = power.mul(&nil)?;
        ranks.push(power.rank());
    }
    if ranks[n] != 0 {
        return Err(RepError::NotUnipotent);
    }
    let at_least: Vec<usize> = (1..=n).map(|j| ranks[j - 1] - ranks[j]).collect();
    let mut blocks = Vec::new();
    for j in (1..=n).rev() {
        let exactly = at_least[j - 1] - at_least.get(j).copied().unwrap_or(0);
        blocks.extend(std::iter::repeat_n(j, exactly));
    }
    Ok(blocks)
}
