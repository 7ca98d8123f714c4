//! Machine checks of the tiling identities relating `R_n` and `R̃_n`, and
//! the full cross-verification bundle.
//!
//! Each identity is checked twice: once on the symbolic tables, and once per
//! weight point on tables evaluated to integers *before* the identity is
//! formed, so the integer layer does not go through polynomial arithmetic.
//!
//! `R̃` always comes from the unbreakable system, which agrees with
//! enumeration. The as-stated binary recurrence does not, and would make
//! the identities fail for the wrong reason.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bipoly::BiPoly;
use crate::board::{build_board, BoardSpec, Variant};
use crate::error::{Error, Result};
use crate::oracle::Oracle;
use crate::recurrence::{
    self, characteristic_coeffs, closed_coeffs, closed_r_table, coeff_tables_recursive,
    coefficient_matrix, delta_power, delta_quartic, euclidean, explicit_coeffs_long,
    explicit_coeffs_short, fib_coeffs, fib_r_table, fib_unbreakable_table, fibonacci, shifted_fib,
    sign, system_tables, closed_unbreakable_r2, unbreakable_closed_table,
    unbreakable_system_tables, GenFib, Mode,
};

/// Weight points every identity is evaluated at by default.
pub const DEFAULT_POINTS: [(i64, i64); 4] = [(1, 1), (2, 1), (1, 2), (2, 3)];

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// A documented discrepancy that showed up as expected.
    ExpectedFail,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ExpectedFail => "expected-fail",
        }
    }
}

/// Where a check was made.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Site {
    pub q: u32,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub k: Option<usize>,
}

impl Site {
    pub fn q(q: u32) -> Self {
        Self { q, ..Self::default() }
    }

    pub fn qn(q: u32, n: usize) -> Self {
        Self { q, n: Some(n), ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub site: Site,
    /// `None` for a symbolic mismatch.
    pub point: Option<(i64, i64)>,
    pub lhs: BiPoly,
    pub rhs: BiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub leg: String,
    pub params: String,
    pub points: Vec<(i64, i64)>,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
    pub checked: usize,
    pub note: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} ({}; {} checks)", self.status.name(), self.leg, self.params, self.checked)?;
        if let Some(c) = &self.counterexample {
            write!(f, "; first mismatch at q={}", c.site.q)?;
            for (name, v) in [("n", c.site.n), ("m", c.site.m), ("k", c.site.k)] {
                if let Some(v) = v {
                    write!(f, " {name}={v}")?;
                }
            }
            if let Some((a, b)) = c.point {
                write!(f, " (a,b)=({a},{b})")?;
            }
            write!(f, ": {} vs {}", c.lhs, c.rhs)?;
        }
        Ok(())
    }
}

/// Accumulates comparisons for one leg, keeping the first mismatch.
struct Checker<'p> {
    leg: &'static str,
    points: &'p [(i64, i64)],
    checked: usize,
    first: Option<Counterexample>,
}

impl<'p> Checker<'p> {
    fn new(leg: &'static str, points: &'p [(i64, i64)]) -> Self {
        Self { leg, points, checked: 0, first: None }
    }

    fn record(&mut self, site: Site, point: Option<(i64, i64)>, lhs: BiPoly, rhs: BiPoly) -> bool {
        self.checked += 1;
        let ok = lhs == rhs;
        if !ok && self.first.is_none() {
            self.first = Some(Counterexample { site, point, lhs, rhs });
        }
        ok
    }

    /// Symbolic comparison followed by a comparison at every weight point.
    fn poly(&mut self, site: Site, lhs: &BiPoly, rhs: &BiPoly) -> bool {
        let mut ok = self.record(site, None, lhs.clone(), rhs.clone());
        for &(a, b) in self.points {
            let (l, r) = (lhs.eval_i64(a, b), rhs.eval_i64(a, b));
            ok &= self.record(site, Some((a, b)), l.into(), r.into());
        }
        ok
    }

    fn int(&mut self, site: Site, point: (i64, i64), lhs: BigInt, rhs: BigInt) -> bool {
        self.record(site, Some(point), lhs.into(), rhs.into())
    }

    fn finish(self, params: String, expected_fail: bool, note: Option<String>) -> CheckReport {
        let status = match (&self.first, expected_fail) {
            (None, _) => Status::Pass,
            (Some(_), false) => Status::Fail,
            (Some(_), true) => Status::ExpectedFail,
        };
        CheckReport {
            leg: self.leg.into(),
            params,
            points: self.points.to_vec(),
            status,
            counterexample: self.first,
            checked: self.checked,
            note,
        }
    }
}

/// Minimal ring interface the identity formulas are written against.
pub trait Weight: Clone + PartialEq {
    fn zero() -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn into_poly(self) -> BiPoly;
}

impl Weight for BiPoly {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn into_poly(self) -> BiPoly {
        self
    }
}

impl Weight for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn into_poly(self) -> BiPoly {
        BiPoly::from(self)
    }
}

fn sum<T: Weight>(terms: impl Iterator<Item = T>) -> T {
    terms.fold(T::zero(), |acc, t| acc.plus(&t))
}

/// The seven identities.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// `R_n = Σ_{i=0}^{n-1} R_i R̃_{n-i}`.
    Decomposition,
    /// `R_n = Σ_{i=1}^{n} R_{n-i} R̃_i`.
    DecompositionReindexed,
    /// `R_{n+m} = R_n R_m + Σ_{i=1}^{n} Σ_{j=1}^{m} R_{n-i} R_{m-j} R̃_{i+j}`.
    Concatenation,
    /// The case `m = 1`.
    ConcatenationStep,
    /// The case `(n, (k-1) n)`, giving `R_{kn}`.
    ConcatenationMultiple,
    /// The case `(n-k, n+k)`, giving `R_{2n}`.
    ConcatenationSplit,
    /// `R_n R_m = Σ_{i<n} Σ_{j<m} R_i R_j R̃_{n-i} R̃_{m-j}`.
    Product,
}

impl IdentityId {
    pub const ALL: [IdentityId; 7] = [
        IdentityId::Decomposition,
        IdentityId::DecompositionReindexed,
        IdentityId::Concatenation,
        IdentityId::ConcatenationStep,
        IdentityId::ConcatenationMultiple,
        IdentityId::ConcatenationSplit,
        IdentityId::Product,
    ];

    pub fn leg(self) -> &'static str {
        match self {
            IdentityId::Decomposition => "decomposition",
            IdentityId::DecompositionReindexed => "decomposition-reindexed",
            IdentityId::Concatenation => "concatenation",
            IdentityId::ConcatenationStep => "concatenation-step",
            IdentityId::ConcatenationMultiple => "concatenation-multiple",
            IdentityId::ConcatenationSplit => "concatenation-split",
            IdentityId::Product => "product",
        }
    }

    /// Both sides at `site`; `None` when the table is too short.
    pub fn sides<T: Weight>(self, r: &[T], rt: &[T], site: Site) -> Option<(T, T)> {
        let n = site.n.unwrap_or(0);
        let m = site.m.unwrap_or(0);
        let k = site.k.unwrap_or(0);
        let need = match self {
            IdentityId::Decomposition | IdentityId::DecompositionReindexed => n,
            IdentityId::Concatenation => n + m,
            IdentityId::ConcatenationStep => n + 1,
            IdentityId::ConcatenationMultiple => k * n,
            IdentityId::ConcatenationSplit => 2 * n,
            IdentityId::Product => n.max(m),
        };
        if need >= r.len() || need >= rt.len() {
            return None;
        }
        // R_{x+y} = R_x R_y + Σ_{i<=x} Σ_{j<=y} R_{x-i} R_{y-j} R̃_{i+j}
        let concat = |x: usize, y: usize| {
            let cross = sum((1..=x).flat_map(|i| (1..=y).map(move |j| (i, j))).map(|(i, j)| {
                r[x - i].times(&r[y - j]).times(&rt[i + j])
            }));
            (r[x + y].clone(), r[x].times(&r[y]).plus(&cross))
        };
        Some(match self {
            IdentityId::Decomposition => (r[n].clone(), sum((0..n).map(|i| r[i].times(&rt[n - i])))),
            IdentityId::DecompositionReindexed => {
                (r[n].clone(), sum((1..=n).map(|i| r[n - i].times(&rt[i]))))
            }
            IdentityId::Concatenation => concat(n, m),
            IdentityId::ConcatenationStep => (
                r[n + 1].clone(),
                r[n].times(&r[1]).plus(&sum((1..=n).map(|i| r[n - i].times(&rt[i + 1])))),
            ),
            IdentityId::ConcatenationMultiple => concat(n, (k - 1) * n),
            IdentityId::ConcatenationSplit => concat(n - k, n + k),
            IdentityId::Product => {
                let rhs = sum((0..n).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| {
                    r[i].times(&r[j]).times(&rt[n - i]).times(&rt[m - j])
                }));
                (r[n].times(&r[m]), rhs)
            }
        })
    }
}

/// `R` and `R̃` tables of one `q` fed to the identity checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityInput {
    pub q: u32,
    pub r: Vec<BiPoly>,
    pub rt: Vec<BiPoly>,
}

impl IdentityInput {
    /// Tables from the coupled systems, indices `0..=size`.
    pub fn from_system(q: u32, size: usize) -> Result<Self> {
        Ok(Self {
            q,
            r: system_tables(q, size)?.r.values().to_vec(),
            rt: unbreakable_system_tables(q, size.max(1))?.r.values().to_vec(),
        })
    }
}

fn run_identity(
    id: IdentityId,
    inputs: &[IdentityInput],
    sites: &dyn Fn(u32) -> Vec<Site>,
    points: &[(i64, i64)],
    params: String,
) -> Result<CheckReport> {
    let mut checker = Checker::new(id.leg(), points);
    for input in inputs {
        let evaluated: Vec<_> = points
            .iter()
            .map(|&(a, b)| {
                let ev = |t: &[BiPoly]| t.iter().map(|p| p.eval_i64(a, b)).collect::<Vec<_>>();
                ((a, b), ev(&input.r), ev(&input.rt))
            })
            .collect();
        for site in sites(input.q) {
            let short = || Error::InvalidRange(format!("{} needs longer tables at {site:?}", id.leg()));
            let (lhs, rhs) = id.sides(&input.r, &input.rt, site).ok_or_else(short)?;
            checker.record(site, None, lhs, rhs);
            for (point, r, rt) in &evaluated {
                let (lhs, rhs) = id.sides(r, rt, site).ok_or_else(short)?;
                checker.int(site, *point, lhs, rhs);
            }
        }
    }
    Ok(checker.finish(params, false, Some("Rtilde from the unbreakable system".into())))
}

fn q_list(inputs: &[IdentityInput]) -> String {
    let qs: Vec<String> = inputs.iter().map(|i| format!("{}", i.q)).collect();
    format!("q in {{{}}}", qs.join(","))
}

/// [`IdentityId::Decomposition`] and its reindexing for `1 <= n <= n_max`.
pub fn check_decomposition(
    inputs: &[IdentityInput],
    n_max: usize,
    points: &[(i64, i64)],
) -> Result<Vec<CheckReport>> {
    let sites = |q| (1..=n_max).map(|n| Site::qn(q, n)).collect();
    [IdentityId::Decomposition, IdentityId::DecompositionReindexed]
        .into_iter()
        .map(|id| run_identity(id, inputs, &sites, points, format!("{}, 1 <= n <= {n_max}", q_list(inputs))))
        .collect()
}

/// Ranges for [`check_concatenation`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ConcatBounds {
    /// The general identity on `n, m >= 1`, `n + m <= sum_max`; the `m = 1`
    /// case on the same range.
    pub sum_max: usize,
    /// `R_{kn}` for `2 <= k <= k_max`, `1 <= n <= multiple_n_max`.
    pub k_max: usize,
    pub multiple_n_max: usize,
    /// `R_{2n}` for `0 <= k < n <= split_n_max`.
    pub split_n_max: usize,
}

impl ConcatBounds {
    /// Largest table index the checks read.
    pub fn table_size(&self) -> usize {
        self.sum_max.max(self.k_max * self.multiple_n_max).max(2 * self.split_n_max)
    }
}

/// [`IdentityId::Concatenation`] and its three special cases.
pub fn check_concatenation(
    inputs: &[IdentityInput],
    bounds: ConcatBounds,
    points: &[(i64, i64)],
) -> Result<Vec<CheckReport>> {
    let qs = q_list(inputs);
    let ConcatBounds { sum_max, k_max, multiple_n_max, split_n_max } = bounds;
    let grid = move |q| {
        (1..sum_max)
            .flat_map(|n| (1..=sum_max - n).map(move |m| Site { q, n: Some(n), m: Some(m), k: None }))
            .collect()
    };
    let step = move |q| (1..sum_max.max(1)).map(|n| Site::qn(q, n)).collect();
    let multiple = move |q| {
        (1..=multiple_n_max)
            .flat_map(|n| (2..=k_max).map(move |k| Site { q, n: Some(n), m: None, k: Some(k) }))
            .collect()
    };
    let split = move |q| {
        (1..=split_n_max)
            .flat_map(|n| (0..n).map(move |k| Site { q, n: Some(n), m: None, k: Some(k) }))
            .collect()
    };
    Ok(alloc::vec![
        run_identity(IdentityId::Concatenation, inputs, &grid, points,
            format!("{qs}, n, m >= 1, n + m <= {sum_max}"))?,
        run_identity(IdentityId::ConcatenationStep, inputs, &step, points,
            format!("{qs}, m = 1, 1 <= n <= {}", sum_max.saturating_sub(1)))?,
        run_identity(IdentityId::ConcatenationMultiple, inputs, &multiple, points,
            format!("{qs}, 1 <= n <= {multiple_n_max}, 2 <= k <= {k_max}"))?,
        run_identity(IdentityId::ConcatenationSplit, inputs, &split, points,
            format!("{qs}, 0 <= k < n <= {split_n_max}"))?,
    ])
}

/// [`IdentityId::Product`] on `1 <= n <= n_max`, `1 <= m <= m_max`.
pub fn check_product(
    inputs: &[IdentityInput],
    n_max: usize,
    m_max: usize,
    points: &[(i64, i64)],
) -> Result<CheckReport> {
    let sites = move |q| {
        (1..=n_max)
            .flat_map(|n| (1..=m_max).map(move |m| Site { q, n: Some(n), m: Some(m), k: None }))
            .collect()
    };
    run_identity(IdentityId::Product, inputs, &sites, points,
        format!("{}, 1 <= n <= {n_max}, 1 <= m <= {m_max}", q_list(inputs)))
}

/// Ranges for [`crosscheck_all`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckConfig {
    pub qs: Vec<u32>,
    /// Inclusive; `None` is the empty range.
    pub n_range: Option<(usize, usize)>,
    pub points: Vec<(i64, i64)>,
    pub oracle: Oracle,
}

impl CrossCheckConfig {
    pub fn new(qs: Vec<u32>, n_range: Option<(usize, usize)>, points: Vec<(i64, i64)>) -> Self {
        Self { qs, n_range, points, oracle: Oracle::new() }
    }

    fn ns(&self) -> impl Iterator<Item = usize> + Clone {
        let (lo, hi) = self.n_range.unwrap_or((1, 0));
        lo..=hi
    }

    fn n_hi(&self) -> Option<usize> {
        self.n_range.filter(|(lo, hi)| lo <= hi).map(|(_, hi)| hi)
    }

    fn range_text(&self) -> String {
        let qs: Vec<String> = self.qs.iter().map(|q| format!("{q}")).collect();
        match self.n_range {
            Some((lo, hi)) => format!("q in {{{}}}, {lo} <= n <= {hi}", qs.join(",")),
            None => format!("q in {{{}}}, no n", qs.join(",")),
        }
    }
}

/// All reports of one verification run, in execution order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub reports: Vec<CheckReport>,
}

impl Bundle {
    /// True iff no leg failed; expected failures do not count.
    pub fn passed(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }

    pub fn report(&self, leg: &str) -> Option<&CheckReport> {
        self.reports.iter().find(|r| r.leg == leg)
    }

    pub fn checked(&self) -> usize {
        self.reports.iter().map(|r| r.checked).sum()
    }
}

/// Runs every verification leg over the configured ranges.
pub fn crosscheck_all(config: &CrossCheckConfig) -> Result<Bundle> {
    for &q in &config.qs {
        recurrence::check_q(q)?;
    }
    let mut reports = Vec::new();
    let params = config.range_text();
    let pts = &config.points[..];
    let size = config.n_hi().unwrap_or(0);
    let with_ns = config.n_hi().is_some();

    // oracle vs system vs closed for R, and the subboards
    {
        let mut full = Checker::new("oracle-R", pts);
        let mut subs = Checker::new("oracle-subboards", pts);
        let mut tilde = Checker::new("oracle-Rtilde", pts);
        let mut skipped = Vec::new();
        for &q in &config.qs {
            if !with_ns {
                break;
            }
            let sys = system_tables(q, size)?;
            let closed = closed_r_table(q, size)?;
            let usys = unbreakable_system_tables(q, size.max(1))?;
            for n in config.ns() {
                let site = Site::qn(q, n);
                full.poly(site, &sys.r.values()[n], &closed.values()[n]);
                let board = build_board(BoardSpec::full(q, n))?;
                if config.oracle.check_limit(&board).is_err() {
                    skipped.push(format!("(q={q},n={n})"));
                    continue;
                }
                full.poly(site, &config.oracle.weighted_count(&board)?, &sys.r.values()[n]);
                if n >= 1 {
                    tilde.poly(site, &config.oracle.unbreakable_count(&board)?, &usys.r.values()[n]);
                    for (variant, table) in [(Variant::A, &sys.a), (Variant::B, &sys.b), (Variant::C, &sys.c)] {
                        let g = build_board(BoardSpec::new(q, n, variant))?;
                        subs.poly(site, &config.oracle.weighted_count(&g)?, &table.values()[n]);
                    }
                }
            }
        }
        let note = (!skipped.is_empty()).then(|| {
            format!("over the {}-cell limit, oracle skipped: {}", config.oracle.limit(), skipped.join(" "))
        });
        reports.push(full.finish(params.clone(), false, note.clone()));
        reports.push(tilde.finish(params.clone(), false, note.clone()));
        reports.push(subs.finish(params.clone(), false, note));
    }

    // one column is a path of q-2 cells
    {
        let mut c = Checker::new("r1-law", pts);
        for &q in &config.qs {
            let fib = GenFib::for_q(q);
            let path = build_board(BoardSpec::path((q - 2) as usize))?;
            let column = build_board(BoardSpec::full(q, 1))?;
            if config.oracle.check_limit(&column).is_ok() {
                c.poly(Site::qn(q, 1), &config.oracle.weighted_count(&column)?, fib.uq(q, 2));
                c.poly(Site::qn(q, 1), &config.oracle.weighted_count(&path)?, fib.uq(q, 2));
            }
        }
        reports.push(c.finish(params.clone(), false, None));
    }

    // characteristic polynomial vs closed coefficients
    {
        let mut c = Checker::new("charpoly-coefficients", pts);
        for &q in &config.qs {
            let ch = characteristic_coeffs(&coefficient_matrix(q)?);
            let co = closed_coeffs(q)?;
            for (mine, theirs) in [(&ch.c3, &co.alpha), (&ch.c2, &co.beta), (&ch.c1, &co.gamma), (&ch.c0, &co.delta)] {
                c.poly(Site::q(q), mine, &-theirs);
            }
        }
        reports.push(c.finish(params.clone(), false, None));
    }

    // explicit forms vs recursive tables, and the delta law
    {
        let mut forms = Checker::new("coefficient-forms", pts);
        let mut delta = Checker::new("delta-law", pts);
        if let Some(&q_max) = config.qs.iter().max() {
            let recursive = coeff_tables_recursive(q_max)?;
            for &q in &config.qs {
                let long = explicit_coeffs_long(q)?;
                let short = explicit_coeffs_short(q)?;
                let rec = &recursive[(q - 4) as usize];
                for ((l, s), r) in long.as_array().into_iter().zip(short.as_array()).zip(rec.as_array()) {
                    forms.poly(Site::q(q), l, s);
                    forms.poly(Site::q(q), s, r);
                }
                delta.poly(Site::q(q), &delta_quartic(q)?, &delta_power(q)?);
                if q > 4 {
                    let prev = &recursive[(q - 5) as usize].delta;
                    delta.poly(Site::q(q), &rec.delta, &(BiPoly::monomial(1, 0, 2) * prev));
                }
            }
        }
        reports.push(forms.finish(params.clone(), false, None));
        reports.push(delta.finish(params.clone(), false, None));
    }

    // q = 4 reductions to the classical grid recurrences
    {
        let mut c = Checker::new("q4-reduction", pts);
        if config.qs.contains(&4) {
            let site = Site::q(4);
            let quartic = euclidean::quartic(4)?;
            let factored = euclidean::factored_quartic();
            for k in 0..=4 {
                c.poly(site, &quartic.coeff(k), &factored.coeff(k));
            }
            let top = size.max(10);
            let r = system_tables(4, top)?.r;
            let s = euclidean::shifted_sum(r.values());
            for n in 3..=top {
                let (lhs, rhs) = euclidean::cubic_violation(&s, n, n)
                    .map(|(_, l, r)| (l, r))
                    .unwrap_or_else(|| (s[n].clone(), s[n].clone()));
                c.poly(Site::qn(4, n), &lhs, &rhs);
            }
            let ints = euclidean::grid_integer_table(top);
            for (n, v) in r.eval_i64(1, 1).into_iter().enumerate() {
                c.int(Site::qn(4, n), (1, 1), v, ints[n].clone());
            }
        }
        reports.push(c.finish(params.clone(), false, None));
    }

    // a = b = 1 specializations
    {
        let mut c = Checker::new("fibonacci-specialization", pts);
        for &q in &config.qs {
            let co = closed_coeffs(q)?;
            for (k, (v, f)) in co.eval_i64(1, 1).into_iter().zip(fib_coeffs(q)?).enumerate() {
                c.int(Site { k: Some(k), ..Site::q(q) }, (1, 1), v, f);
            }
            let qi = i64::from(q);
            for n in [qi - 3, qi - 4].into_iter().filter(|&n| n >= 1) {
                let (f, g) = (fibonacci(n as u32), fibonacci(n as u32 - 1));
                c.int(Site::q(q), (1, 1), &f * &f - &f * &g - &g * &g, sign(n - 1));
            }
            if with_ns {
                let fib = fib_r_table(q, size)?.constants().unwrap_or_default();
                let closed = closed_r_table(q, size)?.eval_i64(1, 1);
                for n in config.ns() {
                    c.int(Site::qn(q, n), (1, 1), fib[n].clone(), closed[n].clone());
                }
            }
        }
        reports.push(c.finish(params.clone(), false, None));
    }

    // corrected binary recurrence for unbreakable tilings
    {
        let mut c = Checker::new("unbreakable-recurrence-corrected", pts);
        for &q in &config.qs {
            let qi = i64::from(q);
            let r2 = &shifted_fib(qi - 4) * &shifted_fib(qi - 2) * 2 + sign(qi - 1);
            c.int(Site::qn(q, 2), (1, 1), closed_unbreakable_r2(q)?.eval_i64(1, 1), r2);
            if !with_ns {
                continue;
            }
            let top = size.max(1);
            let sys = unbreakable_system_tables(q, top)?.r;
            let corrected = unbreakable_closed_table(q, top, Mode::Corrected)?;
            let fib = fib_unbreakable_table(q, top, Mode::Corrected)?.constants().unwrap_or_default();
            for n in config.ns().filter(|&n| n >= 1) {
                c.poly(Site::qn(q, n), &corrected.values()[n], &sys.values()[n]);
                c.int(Site::qn(q, n), (1, 1), fib[n].clone(), sys.values()[n].eval_i64(1, 1));
            }
        }
        reports.push(c.finish(params.clone(), false, None));
    }

    // identities
    {
        let n_hi = config.n_hi().unwrap_or(0).max(if with_ns { 1 } else { 0 });
        let bounds = ConcatBounds { sum_max: n_hi, k_max: 3, multiple_n_max: n_hi, split_n_max: n_hi };
        let inputs = if with_ns {
            config
                .qs
                .iter()
                .map(|&q| IdentityInput::from_system(q, bounds.table_size()))
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        reports.extend(check_decomposition(&inputs, n_hi, pts)?);
        reports.extend(check_concatenation(&inputs, bounds, pts)?);
        reports.push(check_product(&inputs, n_hi, n_hi, pts)?);
    }

    // the as-stated binary recurrence, expected to diverge; counts at
    // a = b = 1 go first so the headline mismatch is an integer one
    {
        let mut c = Checker::new("unbreakable-recurrence-as-stated", pts);
        let mut tables = Vec::new();
        for &q in &config.qs {
            if !with_ns {
                break;
            }
            let top = size.max(1);
            let sys = unbreakable_system_tables(q, top)?.r;
            let stated = unbreakable_closed_table(q, top, Mode::AsStated)?;
            let fib = fib_unbreakable_table(q, top, Mode::AsStated)?.constants().unwrap_or_default();
            for n in config.ns().filter(|&n| n >= 1) {
                let truth = sys.values()[n].eval_i64(1, 1);
                c.int(Site::qn(q, n), (1, 1), fib[n].clone(), truth.clone());
                c.int(Site::qn(q, n), (1, 1), stated.values()[n].eval_i64(1, 1), truth);
            }
            tables.push((q, sys, stated));
        }
        let mut symbolic = None;
        for (q, sys, stated) in &tables {
            for n in config.ns().filter(|&n| n >= 1) {
                let (l, r) = (&stated.values()[n], &sys.values()[n]);
                if !c.poly(Site::qn(*q, n), l, r) && symbolic.is_none() {
                    symbolic = Some((*q, n));
                }
            }
        }
        let mut note = String::from(
            "seeds R~1, R~2 with the recurrence from n = 3, against the unbreakable system",
        );
        if let Some((q, n)) = symbolic {
            note.push_str(&format!("; first symbolic divergence at q={q}, n={n}"));
        }
        reports.push(c.finish(params, true, Some(note)));
    }

    Ok(Bundle { reports })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn at_one(q: u32, size: usize) -> (Vec<BigInt>, Vec<BigInt>) {
        let input = IdentityInput::from_system(q, size).unwrap();
        let ev = |t: &[BiPoly]| t.iter().map(|p| p.eval_i64(1, 1)).collect();
        (ev(&input.r), ev(&input.rt))
    }

    #[test]
    fn worked_values() {
        let (r, rt) = at_one(4, 6);
        let site = |n, m| Site { q: 4, n: Some(n), m, k: None };
        // 22 = R~3 + 2*3 + 7*2
        assert_eq!(IdentityId::Decomposition.sides(&r, &rt, site(3, None)), Some((int(22), int(2 + 6 + 14))));
        // 22 = 2*7 + 1*2*3 + 1*1*2
        assert_eq!(IdentityId::Concatenation.sides(&r, &rt, site(1, Some(2))), Some((int(22), int(14 + 6 + 2))));
        // 14 = 1*3*2 + 2*2*2
        assert_eq!(IdentityId::Product.sides(&r, &rt, site(2, Some(1))), Some((int(14), int(6 + 8))));

        let (r, rt) = at_one(5, 6);
        let s = Site { q: 5, n: Some(4), m: None, k: None };
        assert_eq!(IdentityId::Decomposition.sides(&r, &rt, s), Some((int(409), int(24 + 33 + 112 + 240))));
        let s = Site { q: 5, n: Some(2), m: Some(2), k: None };
        assert_eq!(IdentityId::Product.sides(&r, &rt, s), Some((int(256), int(49 + 126 + 81))));
        let (lhs, rhs) = IdentityId::Concatenation.sides(&r, &rt, s).unwrap();
        assert_eq!(lhs, int(409));
        assert_eq!(rhs, lhs);
    }

    #[test]
    fn trivial_cases() {
        let input = IdentityInput::from_system(6, 4).unwrap();
        let (r, rt) = (&input.r, &input.rt);
        let s = Site { q: 6, n: Some(1), m: Some(1), k: None };
        let (lhs, rhs) = IdentityId::Decomposition.sides(r, rt, s).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rhs, &r[0] * &rt[1]);
        let (lhs, rhs) = IdentityId::Concatenation.sides(r, rt, s).unwrap();
        assert_eq!((lhs, rhs), (r[2].clone(), r[1].pow(2) + rt[2].clone()));
        assert_eq!(IdentityId::Product.sides(r, rt, s).unwrap().1, (&r[0] * &r[0]) * (&rt[1] * &rt[1]));
    }

    #[test]
    fn too_short_tables() {
        let input = IdentityInput::from_system(5, 3).unwrap();
        assert!(IdentityId::Concatenation
            .sides(&input.r, &input.rt, Site { q: 5, n: Some(2), m: Some(2), k: None })
            .is_none());
        assert!(check_product(&[input], 4, 4, &[]).is_err());
    }

    #[test]
    fn identities_hold_on_system_tables() {
        let inputs: Vec<_> = (4..=6).map(|q| IdentityInput::from_system(q, 12).unwrap()).collect();
        for r in check_decomposition(&inputs, 6, &DEFAULT_POINTS).unwrap() {
            assert_eq!(r.status, Status::Pass, "{r}");
        }
        let bounds = ConcatBounds { sum_max: 6, k_max: 3, multiple_n_max: 3, split_n_max: 3 };
        assert_eq!(bounds.table_size(), 9);
        for r in check_concatenation(&inputs, bounds, &DEFAULT_POINTS).unwrap() {
            assert_eq!(r.status, Status::Pass, "{r}");
        }
        assert_eq!(check_product(&inputs, 3, 3, &DEFAULT_POINTS).unwrap().status, Status::Pass);
    }

    #[test]
    fn identities_fail_with_the_as_stated_recurrence() {
        let mut input = IdentityInput::from_system(4, 6).unwrap();
        input.rt = unbreakable_closed_table(4, 6, Mode::AsStated).unwrap().values().to_vec();
        let reports = check_decomposition(&[input.clone()], 6, &[(1, 1)]).unwrap();
        assert!(reports.iter().all(|r| r.status == Status::Fail));
        assert_eq!(reports[0].status, reports[1].status);
        let cex = reports[0].counterexample.clone().unwrap();
        assert_eq!(cex.site.n, Some(3));
        assert_eq!(cex.point, None);

        // the counterexample fails again when checked on its own
        let again = check_decomposition(&[input], cex.site.n.unwrap(), &[]).unwrap();
        assert_eq!(again[0].counterexample.as_ref().map(|c| c.site), Some(cex.site));
    }

    #[test]
    fn bundle_small_range() {
        let config = CrossCheckConfig::new(alloc::vec![4, 5], Some((0, 4)), DEFAULT_POINTS.to_vec());
        let bundle = crosscheck_all(&config).unwrap();
        for r in &bundle.reports {
            if r.leg == "unbreakable-recurrence-as-stated" {
                assert_eq!(r.status, Status::ExpectedFail);
                let c = r.counterexample.as_ref().unwrap();
                assert_eq!((c.site.q, c.site.n), (4, Some(4)));
                assert_eq!(c.point, Some((1, 1)));
                assert_eq!((c.lhs.as_constant(), c.rhs.as_constant()), (Some(int(3)), Some(int(2))));
                assert!(r.note.as_deref().unwrap().ends_with("q=4, n=3"));
            } else {
                assert_eq!(r.status, Status::Pass, "{r}");
                assert!(r.checked > 0, "{r}");
            }
        }
        assert!(bundle.passed());
    }

    #[test]
    fn empty_ranges_pass_vacuously() {
        let config = CrossCheckConfig::new(alloc::vec![], None, alloc::vec![]);
        let bundle = crosscheck_all(&config).unwrap();
        assert!(bundle.passed());
        assert_eq!(bundle.checked(), 0);
        assert!(bundle.reports.iter().all(|r| r.status == Status::Pass));
    }

    #[test]
    fn oracle_limit_skips_are_reported() {
        let mut config = CrossCheckConfig::new(alloc::vec![7], Some((5, 6)), alloc::vec![(1, 1)]);
        config.oracle = Oracle::with_limit(26);
        let bundle = crosscheck_all(&config).unwrap();
        let r = bundle.report("oracle-R").unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!(r.note.as_deref().unwrap().contains("(q=7,n=6)"));
    }

    #[test]
    fn invalid_q_is_rejected() {
        let config = CrossCheckConfig::new(alloc::vec![3], Some((0, 2)), alloc::vec![]);
        assert_eq!(crosscheck_all(&config).unwrap_err(), Error::InvalidQ(3));
    }
}
