//! Structured recipes for the modules the engine knows how to build, and
//! their JSON encoding.
//!
//! Basis conventions (these fix the variable order of `F[V]`):
//!
//! * `jordan`, `w`: `e_1..e_n`; the generator `sigma` satisfies
//!   `sigma^{-1} e_i = e_i + e_{i+1}`, so `e_n` spans the fixed points.
//! * `klein` `v2m`/`w2m`: `h_1..h_m, e_1..e_m`; the dual variables are then
//!   `x_1..x_m, y_1..y_m` with `x_j = h_j^*`, `y_j = e_j^*`.
//! * `klein` `v_odd`: `h_1..h_{m+1}, e_1..e_m` (variables `x_1..x_{m+1},
//!   y_1..y_m`).
//! * `klein` `w_odd`: the block matrices act on the standard basis.
//! * `klein` `regular`: basis indexed by `1, s1, s2, s1 s2`.
//! * `sym`: the degree-`n` monomials in the inner basis in descending
//!   lexicographic order (`X^n, X^{n-1} Y, .., Y^n` for a plane).
//! * `sum`: summand bases concatenated in order.

use serde::{Deserialize, Serialize};

use crate::gf::{FieldSpec, GfError};

use super::RepError;

/// Root-of-unity parameter. Either explicit power-basis coordinates
/// (constant term first) or "the canonical element of this order".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Lambda {
    Coords(Vec<u32>),
    Order { order: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum KleinVariant {
    /// Type (i), the regular representation.
    Regular,
    /// Type (ii), `V_{2m,lambda}`.
    V2m { m: usize, lambda: Lambda },
    /// Type (iii), `W_{2m}`.
    W2m { m: usize },
    /// Type (iv), `V_{2m+1}`.
    VOdd { m: usize },
    /// Type (v), `W_{2m+1}`.
    WOdd { m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ModuleDescriptor {
    /// `Z_{p^r}` acting on the Jordan module `V_n`.
    Jordan {
        p: u32,
        r: u32,
        n: usize,
    },
    /// `Z_{p^r m}` acting on `W_{n,lambda}`.
    #[serde(rename = "w")]
    WModule {
        p: u32,
        r: u32,
        m: u64,
        n: usize,
        lambda: Lambda,
    },
    Klein {
        #[serde(flatten)]
        variant: KleinVariant,
    },
    /// Natural permutation action on `F^n`; `gens[k][i]` is the image of `i`.
    Perm {
        n: usize,
        gens: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<u32>,
    },
    /// Upper triangular `[[1, a], [0, b]]` over `F_p`, order `p(p-1)`.
    Borel {
        p: u32,
    },
    #[serde(rename = "sym")]
    SymPower {
        n: usize,
        inner: Box<ModuleDescriptor>,
    },
    Dual {
        inner: Box<ModuleDescriptor>,
    },
    #[serde(rename = "sum")]
    DirectSum {
        summands: Vec<ModuleDescriptor>,
    },
}

impl ModuleDescriptor {
    pub fn jordan(p: u32, r: u32, n: usize) -> Self {
        ModuleDescriptor::Jordan { p, r, n }
    }

    pub fn w(p: u32, r: u32, m: u64, n: usize, lambda: Lambda) -> Self {
        ModuleDescriptor::WModule { p, r, m, n, lambda }
    }

    pub fn klein(variant: KleinVariant) -> Self {
        ModuleDescriptor::Klein { variant }
    }

    pub fn sum(summands: Vec<ModuleDescriptor>) -> Self {
        ModuleDescriptor::DirectSum { summands }
    }

    pub fn sym(inner: ModuleDescriptor, n: usize) -> Self {
        ModuleDescriptor::SymPower { n, inner: Box::new(inner) }
    }

    pub fn dual(inner: ModuleDescriptor) -> Self {
        ModuleDescriptor::Dual { inner: Box::new(inner) }
    }

    pub fn perm(n: usize, gens: Vec<Vec<usize>>, p: Option<u32>) -> Self {
        ModuleDescriptor::Perm { n, gens, p }
    }

    /// Compact JSON, used as a stable key in reports.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, RepError> {
        serde_json::from_str(s).map_err(|e| RepError::BadParameter(format!("descriptor JSON: {e}")))
    }

    /// Characteristic implied by the descriptor, if any.
    pub fn characteristic(&self) -> Option<u32> {
        match self {
            ModuleDescriptor::Jordan { p, .. }
            | ModuleDescriptor::WModule { p, .. }
            | ModuleDescriptor::Borel { p } => Some(*p),
            ModuleDescriptor::Klein { .. } => Some(2),
            ModuleDescriptor::Perm { p, .. } => *p,
            ModuleDescriptor::SymPower { inner, .. } | ModuleDescriptor::Dual { inner } => inner.characteristic(),
            ModuleDescriptor::DirectSum { summands } => summands.iter().find_map(|s| s.characteristic()),
        }
    }

    fn lambdas(&self, out: &mut Vec<Lambda>) {
        match self {
            ModuleDescriptor::WModule { lambda, .. } => out.push(lambda.clone()),
            ModuleDescriptor::Klein { variant: KleinVariant::V2m { lambda, .. } } => out.push(lambda.clone()),
            ModuleDescriptor::SymPower { inner, .. } | ModuleDescriptor::Dual { inner } => inner.lambdas(out),
            ModuleDescriptor::DirectSum { summands } => summands.iter().for_each(|s| s.lambdas(out)),
            _ => {}
        }
    }

    /// Smallest field `F_{p^k}` with a built-in modulus that can hold every
    /// parameter of the descriptor.
    pub fn default_field(&self) -> Result<FieldSpec, RepError> {
        let p = self.characteristic().ok_or_else(|| {
            RepError::BadParameter("descriptor does not determine a characteristic; pass a field".into())
        })?;
        let mut lambdas = Vec::new();
        self.lambdas(&mut lambdas);
        let mut k = 1u32;
        for l in &lambdas {
            let need = match l {
                Lambda::Coords(c) => c.len().max(1) as u32,
                Lambda::Order { order } => min_degree_for_roots(p, *order)?,
            };
            k = k.max(need);
        }
        FieldSpec::canonical(p as u64, k).map_err(RepError::from)
    }

    /// Order of the abstract group the descriptor names, when it is
    /// determined by the descriptor alone. The matrix group built from it
    /// is a quotient of this group.
    pub fn group_order(&self) -> Option<u64> {
        match self {
            ModuleDescriptor::Jordan { p, r, .. } => Some((*p as u64).pow(*r)),
            ModuleDescriptor::WModule { p, r, m, .. } => Some((*p as u64).pow(*r) * m),
            ModuleDescriptor::Klein { .. } => Some(4),
            ModuleDescriptor::Borel { p } => Some(*p as u64 * (*p as u64 - 1)),
            ModuleDescriptor::Perm { .. } => None,
            ModuleDescriptor::SymPower { inner, .. } | ModuleDescriptor::Dual { inner } => inner.group_order(),
            ModuleDescriptor::DirectSum { summands } => {
                let orders: Vec<Option<u64>> = summands.iter().map(|s| s.group_order()).collect();
                match orders.first() {
                    Some(Some(o)) if orders.iter().all(|x| *x == Some(*o)) => Some(*o),
                    _ => None,
                }
            }
        }
    }

    /// Flattens nested direct sums.
    pub fn summands(&self) -> Vec<&ModuleDescriptor> {
        match self {
            ModuleDescriptor::DirectSum { summands } => summands.iter().flat_map(|s| s.summands()).collect(),
            other => vec![other],
        }
    }
}

/// Smallest `k` with `order | p^k - 1`.
pub fn min_degree_for_roots(p: u32, order: u64) -> Result<u32, RepError> {
    if order == 0 || order.is_multiple_of(p as u64) {
        return Err(RepError::BadParameter(format!("no root of unity of order {order} in characteristic {p}")));
    }
    let mut pk = p as u64;
    for k in 1..=20u32 {
        if (pk - 1).is_multiple_of(order) {
            return Ok(k);
        }
        pk = pk.saturating_mul(p as u64);
        if pk > crate::gf::MAX_FIELD_SIZE {
            break;
        }
    }
    Err(GfError::TooLarge(pk).into())
}

/// Regular representation of the dihedral group of order `2^{r+1}` as a
/// permutation descriptor over `F_2`. The element `rho^i s^j` is basis
/// vector `i + 2^r j`; generators act by left multiplication.
pub fn dihedral_regular(r: u32) -> ModuleDescriptor {
    let n = 1usize << r;
    let idx = |i: usize, j: usize| i % n + n * (j % 2);
    let mut rho = vec![0; 2 * n];
    let mut s = vec![0; 2 * n];
    for j in 0..2 {
        for i in 0..n {
            rho[idx(i, j)] = idx(i + 1, j);
            // s rho^i s^j = rho^{-i} s^{j+1}
            s[idx(i, j)] = idx(n - i, j + 1);
        }
    }
    ModuleDescriptor::perm(2 * n, vec![rho, s], Some(2))
}
