//! Decision procedures for "exactly two distinct eigenvalues" (exact over
//! `Z[zeta_k]` for `k in {3, 4, 6}`, float clustering otherwise), the three
//! eigenvalue test for regular tournaments, and the structural checks the
//! two-eigenvalue classification rests on.

mod value;

pub use value::{EigenValue, ExactValue};

use crate::cyclotomic::{build_exact_h, build_float_h, CycError, CycInt, ExactMatrix, Order, RootOfUnity};
use crate::graph::{MixedGraph, OrientedGraph, Relation, SignedGraph, SimpleGraph};
use crate::spectra::{ComplexMatrix, Spectrum, SpectrumError, DEFAULT_CLUSTER_TOL};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance for matching a tournament spectrum against the closed form.
pub const THREE_EV_TOL: f64 = 1e-6;
/// Slack for the lower bound on the least eigenvalue.
pub const S_BOUND_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error("root of unity order must be at least 3, got {0}")]
    InvalidOrder(u32),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not a tournament")]
    NotTournament,
    #[error("tournament is not regular")]
    NotRegular,
    #[error("certificate has verdict 'no'")]
    NotCertified,
    #[error("real part of the root must be positive, got {0}")]
    NonPositiveRealPart(f64),
    #[error("walk census needs two distinct vertices, got {0} twice")]
    SameVertex(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Cyclotomic(#[from] CycError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// `H^2 - (r + s) H + rs I = 0` verified in exact arithmetic.
    ExactIdentity,
    /// Float eigenvalues clustered at a tolerance; not authoritative.
    FloatCluster,
}

/// Verdict of a two-eigenvalue test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: bool,
    pub k: u32,
    pub n: usize,
    /// `(r, s)` with `r > s`.
    pub pair: Option<(EigenValue, EigenValue)>,
    /// Multiplicities of `r` and `s`.
    pub multiplicities: Option<(usize, usize)>,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_reason: Option<String>,
}

impl Certificate {
    fn no(k: u32, n: usize, method: Method, tol: Option<f64>, reason: impl Into<String>) -> Self {
        Certificate {
            verdict: false,
            k,
            n,
            pair: None,
            multiplicities: None,
            method,
            tol,
            failure_reason: Some(reason.into()),
        }
    }

    pub fn r(&self) -> Option<f64> {
        self.pair.as_ref().map(|p| p.0.to_f64())
    }

    pub fn s(&self) -> Option<f64> {
        self.pair.as_ref().map(|p| p.1.to_f64())
    }
}

/// Outcome of the exact identity test on a matrix whose support is
/// `degree`-regular.
pub(crate) enum ExactTwoEv {
    Yes {
        r: ExactValue,
        s: ExactValue,
        m: usize,
    },
    No(String),
}

/// Given `H` with zero diagonal on a connected `degree`-regular support
/// (`n >= 2`), decides whether `H` has exactly two eigenvalues.
///
/// The diagonal of `H^2` is the degree, so the constant term is forced to
/// `-d`. For any adjacent pair the identity requires
/// `(H^2)_{uv} = p H_{uv}`, and `H_{uv}` is a unit, which pins down the
/// only possible `p = r + s`. Trace zero then forces either `p = 0`
/// (`r = -s = sqrt(d)`) or `p^2 + 4d` a perfect square (`r, s` integers).
pub(crate) fn exact_two_ev(h: &ExactMatrix, degree: usize) -> ExactTwoEv {
    let n = h.n();
    let Some((u, v)) = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .find(|&(u, v)| !h.get(u, v).is_zero())
    else {
        return ExactTwoEv::No("matrix is zero".into());
    };
    let order = h.order();
    let mut h2 = CycInt::zero(order);
    for k in 0..n {
        h2 = h2 + h.get(u, k) * h.get(k, v);
    }
    let Some(p) = (h2 * h.get(u, v).conj()).as_integer() else {
        return ExactTwoEv::No(format!(
            "(H^2)[{u}][{v}] is not an integer multiple of H[{u}][{v}]"
        ));
    };
    let d = degree as i64;
    if !h.satisfies_quadratic(p, -d) {
        return ExactTwoEv::No(format!("H^2 != {p} H + {d} I"));
    }
    if p == 0 {
        if !n.is_multiple_of(2) {
            return ExactTwoEv::No("r = -s needs an even number of vertices".into());
        }
        return ExactTwoEv::Yes {
            r: ExactValue::sqrt(degree as u64, false),
            s: ExactValue::sqrt(degree as u64, true),
            m: n / 2,
        };
    }
    let disc = p * p + 4 * d;
    let root = disc.isqrt();
    if root * root != disc {
        return ExactTwoEv::No("r + s is nonzero but r, s are irrational".into());
    }
    let (r, s) = ((p + root) / 2, (p - root) / 2);
    // m r + (n - m) s = 0
    let num = n as i64 * -s;
    if num % root != 0 {
        return ExactTwoEv::No("multiplicities from the trace are not integral".into());
    }
    let m = num / root;
    if m <= 0 || m >= n as i64 {
        return ExactTwoEv::No("multiplicities from the trace are out of range".into());
    }
    ExactTwoEv::Yes {
        r: ExactValue::Int(r),
        s: ExactValue::Int(s),
        m: m as usize,
    }
}

fn precheck(g: &MixedGraph, k: u32) -> Result<(), CertifyError> {
    if k < 3 {
        return Err(CertifyError::InvalidOrder(k));
    }
    if !g.is_connected() {
        return Err(CertifyError::Disconnected);
    }
    Ok(())
}

/// Two-eigenvalue certificate for `H_sigma(g)`; exact when `k` is 3, 4 or
/// 6, float clustering at [`DEFAULT_CLUSTER_TOL`] with the principal root
/// otherwise.
pub fn certify_two_ev(g: &MixedGraph, k: u32) -> Result<Certificate, CertifyError> {
    precheck(g, k)?;
    match Order::try_from(k) {
        Ok(order) => certify_two_ev_exact(g, order),
        Err(_) => certify_two_ev_float(g, &RootOfUnity::principal(k)?, DEFAULT_CLUSTER_TOL),
    }
}

pub fn certify_two_ev_exact(g: &MixedGraph, order: Order) -> Result<Certificate, CertifyError> {
    let k = order.k();
    precheck(g, k)?;
    let n = g.n();
    let method = Method::ExactIdentity;
    if n < 2 {
        return Ok(Certificate::no(k, n, method, None, "fewer than two vertices"));
    }
    let Some(d) = g.underlying().regular_degree() else {
        return Ok(Certificate::no(k, n, method, None, "underlying graph is not regular"));
    };
    let h = build_exact_h(g, order);
    Ok(match exact_two_ev(&h, d) {
        ExactTwoEv::Yes { r, s, m } => Certificate {
            verdict: true,
            k,
            n,
            pair: Some((EigenValue::Exact(r), EigenValue::Exact(s))),
            multiplicities: Some((m, n - m)),
            method,
            tol: None,
            failure_reason: None,
        },
        ExactTwoEv::No(reason) => Certificate::no(k, n, method, None, reason),
    })
}

pub fn certify_two_ev_float(
    g: &MixedGraph,
    root: &RootOfUnity,
    tol: f64,
) -> Result<Certificate, CertifyError> {
    let k = root.k();
    precheck(g, k)?;
    let n = g.n();
    let method = Method::FloatCluster;
    let spec = Spectrum::of(&build_float_h(g, root), tol)?;
    if spec.distinct() != 2 {
        return Ok(Certificate::no(
            k,
            n,
            method,
            Some(tol),
            format!("{} distinct eigenvalues", spec.distinct()),
        ));
    }
    let (r, m) = spec.clusters[0];
    let (s, m2) = spec.clusters[1];
    Ok(Certificate {
        verdict: true,
        k,
        n,
        pair: Some((EigenValue::Float(r), EigenValue::Float(s))),
        multiplicities: Some((m, m2)),
        method,
        tol: Some(tol),
        failure_reason: None,
    })
}

/// Spectrum of `H_omega(T)` for a regular tournament compared against the
/// closed form for tournaments built from skew-Hadamard matrices of order
/// `N = |T| + 1`: `(N-2)/2` once and `-1/2 ± sqrt(3(N-1))/2`, each
/// `(N-2)/2` times.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThreeEvReport {
    pub order: usize,
    /// Formula values with multiplicities; coinciding values are merged.
    pub expected: Vec<(f64, usize)>,
    pub observed: Spectrum,
    /// Largest gap between the sorted observed and formula eigenvalues.
    pub max_deviation: f64,
    pub distinct: usize,
    /// The formula's three values coincide in fewer than three.
    pub collapsed: bool,
    pub matches_formula: bool,
    /// Exactly three distinct eigenvalues matching the formula.
    pub verdict: bool,
}

pub fn certify_three_ev_tournament(t: &OrientedGraph) -> Result<ThreeEvReport, CertifyError> {
    if !t.is_tournament() {
        return Err(CertifyError::NotTournament);
    }
    if !t.is_regular() {
        return Err(CertifyError::NotRegular);
    }
    let order = t.n();
    let big_n = (order + 1) as f64;
    let half = (big_n - 2.0) / 2.0;
    let mult = (order - 1) / 2;
    let spread = (3.0 * (big_n - 1.0)).sqrt() / 2.0;
    let mut formula = vec![half];
    formula.extend(std::iter::repeat_n(-0.5 + spread, mult));
    formula.extend(std::iter::repeat_n(-0.5 - spread, mult));
    let expected_spec = Spectrum::from_eigenvalues(formula, THREE_EV_TOL);

    let observed = Spectrum::of(
        &build_float_h(t, &Order::Six.root()),
        THREE_EV_TOL,
    )?;
    let max_deviation = observed.max_deviation(&expected_spec);
    let matches_formula = max_deviation < THREE_EV_TOL;
    let distinct = observed.distinct();
    let collapsed = expected_spec.distinct() < 3;
    Ok(ThreeEvReport {
        order,
        expected: expected_spec.clusters,
        verdict: matches_formula && distinct == 3,
        observed,
        max_deviation,
        distinct,
        collapsed,
        matches_formula,
    })
}

/// Two-eigenvalue test for the real adjacency matrix of a signed graph,
/// by float clustering. Reported with `k = 2`.
pub fn certify_signed_two_ev(g: &SignedGraph, tol: f64) -> Result<Certificate, CertifyError> {
    let n = g.n();
    let adj: Vec<f64> = g.adjacency().iter().map(|&x| x as f64).collect();
    let spec = Spectrum::of(&ComplexMatrix::from_real(n, &adj), tol)?;
    if spec.distinct() != 2 {
        let reason = format!("{} distinct eigenvalues", spec.distinct());
        return Ok(Certificate::no(2, n, Method::FloatCluster, Some(tol), reason));
    }
    Ok(Certificate {
        verdict: true,
        k: 2,
        n,
        pair: Some((
            EigenValue::Float(spec.clusters[0].0),
            EigenValue::Float(spec.clusters[1].0),
        )),
        multiplicities: Some((spec.clusters[0].1, spec.clusters[1].1)),
        method: Method::FloatCluster,
        tol: Some(tol),
        failure_reason: None,
    })
}

/// Every pair of distinct vertices has a multiple of three common
/// neighbors.
pub fn check_common_neighbor_rule(g: &SimpleGraph) -> bool {
    let n = g.n();
    (0..n).all(|u| (u + 1..n).all(|v| g.common_neighbors(u, v).is_multiple_of(3)))
}

/// Checks the least eigenvalue against `s >= -1 / Re(sigma)`, with equality
/// exactly when `g` is an oriented regular graph.
///
/// For mixed graphs the Rayleigh quotient of the all-ones vector weighs an
/// undirected edge by 2 and an arc by `2 Re(sigma)`, so the bound is strict
/// as soon as an undirected edge is present.
pub fn check_s_bound(
    cert: &Certificate,
    g: &MixedGraph,
    root: &RootOfUnity,
) -> Result<bool, CertifyError> {
    let re = root.re();
    if re <= 0.0 {
        return Err(CertifyError::NonPositiveRealPart(re));
    }
    let s = match (cert.verdict, cert.s()) {
        (true, Some(s)) => s,
        _ => return Err(CertifyError::NotCertified),
    };
    let bound = -1.0 / re;
    let above = s >= bound - S_BOUND_TOL;
    let tight = (s - bound).abs() < S_BOUND_TOL;
    Ok(above && tight == (g.is_oriented() && g.is_regular()))
}

/// Counts of 2-walks `u, x, v` by value: `a` for value 1 (absorbing
/// `u -> x <- v` or repelling `u <- x -> v`), `b` for `omega^2` (directed
/// `u -> x -> v`) and `c` for `omega^4` (directed `u <- x <- v`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkValueCensus {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl WalkValueCensus {
    pub fn total(&self) -> usize {
        self.a + self.b + self.c
    }
}

pub fn walk_value_census(
    d: &OrientedGraph,
    u: usize,
    v: usize,
) -> Result<WalkValueCensus, CertifyError> {
    let n = d.n();
    for w in [u, v] {
        if w >= n {
            return Err(CertifyError::VertexOutOfRange(w));
        }
    }
    if u == v {
        return Err(CertifyError::SameVertex(u));
    }
    let mut census = WalkValueCensus::default();
    for x in (0..n).filter(|&x| x != u && x != v) {
        match (d.relation(u, x), d.relation(x, v)) {
            (Relation::None, _) | (_, Relation::None) => {}
            (Relation::Forward, Relation::Forward) => census.b += 1,
            (Relation::Backward, Relation::Backward) => census.c += 1,
            _ => census.a += 1,
        }
    }
    Ok(census)
}

/// Whether `H_omega(g)` has the spectrum of the undirected `K_n`:
/// `n - 1` once and `-1` with multiplicity `n - 1`.
pub fn is_cospectral_with_complete(g: &MixedGraph, tol: f64) -> Result<bool, CertifyError> {
    let n = g.n();
    if n == 0 {
        return Ok(true);
    }
    let spec = Spectrum::of(&build_float_h(g, &Order::Six.root()), tol)?;
    let mut target = vec![-1.0; n];
    target[0] = (n - 1) as f64;
    let target = Spectrum::from_eigenvalues(target, tol);
    Ok(spec.max_deviation(&target) < tol)
}
