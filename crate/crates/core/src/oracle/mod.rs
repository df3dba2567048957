//! Closed-form predictions of separating degrees, and the verifier that
//! compares them with the brute-force engine.

mod suite;
mod verify;

pub use suite::{
    cyclic_epsilon_table, klein_modules, klein_table, pm_modules, pm_table, reference_suite, run_suite, SuiteCase,
    SuiteReport, Table, TABLE_NAMES,
};
pub use verify::{verify, Check, Evidence, Target, TargetKind, Verdict, VerificationReport, VerifyOptions, VERSION};

use serde::{Deserialize, Serialize};

use crate::gf::{Code, FieldSpec};
use crate::invariants::{InvariantEngine, InvariantsError};
use crate::linalg::Echelon;
use crate::reps::{fixed_space, GroupClosure, KleinVariant, Lambda, MatrixGroupRep, ModuleDescriptor, RepError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("empty support")]
    EmptySupport,
    #[error("module is not faithful: no summand has n > p^(r-1)")]
    NotFaithful,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("the representation is trivial")]
    TrivialModule,
    #[error("not a Klein four module: {0}")]
    NotKlein(String),
    #[error("group of order {0} is not a p-group")]
    NotPGroup(usize),
    #[error("group order {order} is not p*m with p = {p} not dividing m")]
    BadGroupOrder { order: u64, p: u32 },
    #[error("bad target {0:?}")]
    BadTarget(String),
    #[error(transparent)]
    Engine(#[from] InvariantsError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

type Result<T, E = OracleError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictionKind {
    EpsilonCyclic,
    DeltaCyclic,
    GammaW,
    GammaSum,
    KleinTable,
    PgroupLowerBound,
    CenterExponentBound,
    PmTrichotomy,
    /// Terminal exponents are divisible as required; the value counts violations.
    LemmaDivide,
    /// `y_m^d` never occurs in an invariant; the value counts occurrences.
    MonomialAbsence,
    /// A value supplied by the user.
    Expected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub kind: PredictionKind,
    pub value: u64,
    /// Equality is claimed when true; otherwise `value` is a lower bound.
    pub exact: bool,
    pub hypothesis: String,
}

impl Prediction {
    fn exact(kind: PredictionKind, value: u64, hypothesis: impl Into<String>) -> Self {
        Prediction { kind, value, exact: true, hypothesis: hypothesis.into() }
    }

    fn bound(kind: PredictionKind, value: u64, hypothesis: impl Into<String>) -> Self {
        Prediction { kind, value, exact: false, hypothesis: hypothesis.into() }
    }

    /// Whether a brute-force value agrees with the prediction. A value
    /// that is itself only a lower bound can confirm a lower bound
    /// prediction but never an equality.
    pub fn holds(&self, computed: u64, computed_exact: bool) -> bool {
        if self.exact {
            computed_exact && computed == self.value
        } else {
            self.value <= computed
        }
    }
}

/// `binom(t, s) mod p` via base-`p` digits.
pub fn lucas(mut t: u64, mut s: u64, p: u64) -> u64 {
    let mut acc = 1;
    while s > 0 || t > 0 {
        let (ti, si) = (t % p, s % p);
        if si > ti {
            return 0;
        }
        acc = acc * small_binomial(ti, si, p) % p;
        t /= p;
        s /= p;
    }
    acc
}

fn small_binomial(n: u64, k: u64, p: u64) -> u64 {
    // n < p, so every factor below is invertible mod p
    let mut num = 1;
    let mut den = 1;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_pow(den, p - 2, p) % p
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Smallest `s` with `n <= p^s`, i.e. `p^{s-1} < n <= p^s`.
fn ceil_log(p: u64, n: u64) -> u32 {
    let mut s = 0;
    let mut ps = 1;
    while ps < n {
        ps *= p;
        s += 1;
    }
    s
}

/// `epsilon(G, v) = p^s` for a fixed point supported on the summands `support`
/// (0-based), with `s` maximal such that `p^{s-1} < n_j` for all `j` there.
pub fn predict_epsilon_cyclic(n_list: &[usize], support: &[usize], p: u32) -> Result<Prediction> {
    if support.is_empty() {
        return Err(OracleError::EmptySupport);
    }
    let mut min_n = u64::MAX;
    for &j in support {
        let nj = *n_list.get(j).ok_or_else(|| OracleError::BadParameter(format!("summand {j} out of range")))?;
        if nj == 0 {
            return Err(OracleError::BadParameter("summand of dimension 0".into()));
        }
        min_n = min_n.min(nj as u64);
    }
    // largest s with p^{s-1} < min_n, which is the smallest s with min_n <= p^s
    let s = ceil_log(p as u64, min_n);
    Ok(Prediction::exact(
        PredictionKind::EpsilonCyclic,
        (p as u64).pow(s),
        format!("cyclic p-group, p = {p}, dims {n_list:?}, support {support:?}: s = {s}"),
    ))
}

/// `delta = p^r` for a faithful module of `Z_{p^r}`.
pub fn predict_delta_cyclic_faithful(p: u32, r: u32, n_list: &[usize]) -> Result<Prediction> {
    let threshold = if r == 0 { 0 } else { (p as u64).pow(r - 1) };
    if !n_list.iter().any(|&n| n as u64 > threshold) {
        return Err(OracleError::NotFaithful);
    }
    Ok(Prediction::exact(
        PredictionKind::DeltaCyclic,
        (p as u64).pow(r),
        format!("Z_{}^{r} acting faithfully on dims {n_list:?}", p),
    ))
}

/// `gamma(Z_{p^r m}, W_{n, lambda}) = p^s ord(lambda)` with `p^{s-1} < n <= p^s`.
pub fn predict_gamma_w(p: u32, r: u32, m: u64, n: usize, lambda_order: u64) -> Result<Prediction> {
    let pr = (p as u64).pow(r);
    if n == 0 || n as u64 > pr {
        return Err(OracleError::BadParameter(format!("need 1 <= n <= {pr}")));
    }
    if lambda_order == 0 || !m.is_multiple_of(lambda_order) {
        return Err(OracleError::BadParameter(format!("ord(lambda) = {lambda_order} does not divide m = {m}")));
    }
    let s = ceil_log(p as u64, n as u64);
    Ok(Prediction::exact(
        PredictionKind::GammaW,
        (p as u64).pow(s) * lambda_order,
        format!("W_(n={n}) with ord(lambda) = {lambda_order}: s = {s}"),
    ))
}

/// Per-summand `gamma` for Jordan and `W` summands, combined by the max rule.
pub fn predict_gamma_cyclic_sum(desc: &ModuleDescriptor, field: &FieldSpec) -> Result<Prediction> {
    let summands = desc.summands();
    let mut values = Vec::new();
    for s in &summands {
        let v = match s {
            ModuleDescriptor::Jordan { p, r, n } => predict_gamma_w(*p, *r, 1, *n, 1)?.value,
            ModuleDescriptor::WModule { p, r, m, n, lambda } => {
                let ord = lambda_order(lambda, field)?;
                predict_gamma_w(*p, *r, *m, *n, ord)?.value
            }
            _ => return Err(OracleError::BadParameter("not a sum of Jordan or W modules".into())),
        };
        values.push(v);
    }
    let value = *values.iter().max().ok_or(OracleError::EmptySupport)?;
    if summands.len() == 1 {
        let mut p = Prediction::exact(PredictionKind::GammaW, value, format!("single summand, gamma = {value}"));
        if let ModuleDescriptor::Jordan { .. } = summands[0] {
            p.hypothesis = format!("Jordan summand viewed as W with lambda = 1, gamma = {value}");
        }
        return Ok(p);
    }
    Ok(Prediction::exact(PredictionKind::GammaSum, value, format!("max of summand gammas {values:?}")))
}

fn lambda_order(l: &Lambda, field: &FieldSpec) -> Result<u64> {
    match l {
        Lambda::Order { order } => Ok(*order),
        Lambda::Coords(c) => field
            .from_coeffs(c)
            .and_then(|x| x.order())
            .map_err(|e| OracleError::BadParameter(format!("lambda {c:?}: {e}"))),
    }
}

/// Value of `delta = gamma` for one indecomposable Klein four module.
fn klein_summand(v: &KleinVariant, field: &FieldSpec) -> Result<(u64, String)> {
    Ok(match v {
        KleinVariant::Regular => (4, "regular".into()),
        KleinVariant::V2m { m: 1, lambda } => {
            let code = match lambda {
                Lambda::Coords(c) => {
                    field.from_coeffs(c).map_err(|e| OracleError::BadParameter(format!("lambda {c:?}: {e}")))?.code()
                }
                Lambda::Order { order } => {
                    field.root_of_unity(*order).map_err(|e| OracleError::BadParameter(e.to_string()))?.code()
                }
            };
            // lambda = 1 gives the same matrix group as lambda = 0
            let key = if code == field.one() { 0 } else { code };
            if key == 0 {
                (2, "V_(2,0)".into())
            } else {
                (4, format!("V_(2,{})", field.format_code(code)))
            }
        }
        KleinVariant::V2m { m, .. } => (4, format!("V_({},lambda), m >= 2", 2 * m)),
        KleinVariant::W2m { m: 1 } => (2, "W_2".into()),
        KleinVariant::W2m { m } => (4, format!("W_{}", 2 * m)),
        KleinVariant::VOdd { m } => (4, format!("V_{}", 2 * m + 1)),
        KleinVariant::WOdd { m } => (2, format!("W_{}", 2 * m + 1)),
    })
}

/// `delta = gamma` for a sum of Klein four indecomposables: 2 when every
/// summand is `V_{2,0}`, `V_{2,1}`, `W_2` or an odd `W`, and 4 otherwise.
pub fn predict_klein(desc: &ModuleDescriptor, field: &FieldSpec) -> Result<Prediction> {
    let mut values = Vec::new();
    let mut names = Vec::new();
    for s in desc.summands() {
        match s {
            ModuleDescriptor::Klein { variant } => {
                let (v, name) = klein_summand(variant, field)?;
                values.push(v);
                names.push(name);
            }
            other => return Err(OracleError::NotKlein(other.to_json())),
        }
    }
    let value = *values.iter().max().ok_or(OracleError::TrivialModule)?;
    Ok(Prediction::exact(PredictionKind::KleinTable, value, format!("Klein four summands [{}]", names.join(", "))))
}

fn is_power_of(p: u64, mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// `delta >= p^r` for every `sigma` of order `p^r` with `sigma^{p^{r-1}}` central.
pub fn pgroup_lower_bound(cl: &GroupClosure, p: u32) -> Result<Prediction> {
    let order = cl.order();
    if order < 2 || !is_power_of(p as u64, order as u64) {
        return Err(OracleError::NotPGroup(order));
    }
    let center: Vec<_> = cl.center_indices().iter().map(|&i| &cl.elements()[i]).collect();
    let mut best = 1;
    for (e, &o) in cl.elements().iter().zip(cl.orders()) {
        if o <= best {
            continue;
        }
        let pw = e.pow(o / p as u64).map_err(RepError::from)?;
        if center.contains(&&pw) {
            best = o;
        }
    }
    Ok(Prediction::bound(
        PredictionKind::PgroupLowerBound,
        best,
        format!("p-group of order {order}: element of order {best} with central p-th-root power"),
    ))
}

/// `delta >= exp(Z(G))` for abelian-center arguments on p-groups.
pub fn center_exponent_bound(cl: &GroupClosure, p: u32) -> Result<Prediction> {
    let order = cl.order();
    if order < 2 || !is_power_of(p as u64, order as u64) {
        return Err(OracleError::NotPGroup(order));
    }
    Ok(Prediction::bound(
        PredictionKind::CenterExponentBound,
        cl.center_exponent(),
        format!("p-group of order {order}, exp(Z(G)) = {}", cl.center_exponent()),
    ))
}

fn span_rank(field: &FieldSpec, dim: usize, vecs: &[&Vec<Code>]) -> usize {
    let mut ech = Echelon::new(field, dim);
    for v in vecs {
        ech.insert((*v).clone());
    }
    ech.rank()
}

/// `delta in {0, 1, p}` for groups of order `p m` with `p` not dividing
/// `m`, read off from `V^G` and `V_0`. `order` is the group order; it
/// defaults to the order of the matrix group.
pub fn classify_pm(engine: &InvariantEngine, order: Option<u64>) -> Result<Prediction> {
    let rep: &MatrixGroupRep = engine.rep();
    let p = rep.field().p();
    let order = match order {
        Some(o) => o,
        None => engine.group_order()? as u64,
    };
    if order % p as u64 != 0 || (order / p as u64).is_multiple_of(p as u64) {
        return Err(OracleError::BadGroupOrder { order, p });
    }
    let fixed = fixed_space(rep)?;
    if fixed.is_empty() {
        return Ok(Prediction::exact(PredictionKind::PmTrichotomy, 0, format!("|G| = {order}, V^G = 0")));
    }
    let v0 = engine.v_zero()?;
    let n = rep.dim();
    let a: Vec<&Vec<Code>> = fixed.iter().collect();
    let b: Vec<&Vec<Code>> = v0.iter().collect();
    let both: Vec<&Vec<Code>> = fixed.iter().chain(v0.iter()).collect();
    let meet = span_rank(rep.field(), n, &a) + span_rank(rep.field(), n, &b) - span_rank(rep.field(), n, &both);
    let (value, why) =
        if meet == 0 { (1, "V^G meets V_0 trivially") } else { (p as u64, "V^G meets V_0 nontrivially") };
    Ok(Prediction::exact(
        PredictionKind::PmTrichotomy,
        value,
        format!("|G| = {order}, dim V^G = {}, dim V_0 = {}, {why}", fixed.len(), v0.len()),
    ))
}
