//! Tabular datasets behind each CLI command, with CSV and JSON rendering.
//!
//! Floats are printed as the shortest decimal that round-trips, so equal
//! inputs always produce byte-identical output.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::dynamics::{self, Propagator, RevivalKind};
use crate::error::{Error, Result};
use crate::hilbert::{self, PhasePoint, StateVector};
use crate::lattice::Dimension;
use crate::spectral;
use crate::theta;
use crate::wigner::{self, WignerGrid, WignerSource};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Hamiltonian {
    /// `(P^2 + Q^2) / 2`
    Osc,
    /// `P^2 / 2`
    Free,
}

impl Hamiltonian {
    pub fn name(self) -> &'static str {
        match self {
            Hamiltonian::Osc => "osc",
            Hamiltonian::Free => "free",
        }
    }

    pub fn build(self, dim: Dimension) -> hilbert::OperatorMatrix {
        match self {
            Hamiltonian::Osc => spectral::oscillator_hamiltonian(dim),
            Hamiltonian::Free => dynamics::free_hamiltonian(dim),
        }
    }
}

/// Initial state for revival runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateSpec {
    /// Normalized `g_kappa`.
    Gauss,
    Delta(i64),
    Coherent(i64, i64),
}

impl StateSpec {
    pub fn label(self) -> String {
        match self {
            StateSpec::Gauss => "gauss".into(),
            StateSpec::Delta(n) => format!("delta {n}"),
            StateSpec::Coherent(a, b) => format!("coherent {a} {b}"),
        }
    }

    pub fn build(self, cfg: &RunConfig) -> Result<StateVector> {
        let dim = cfg.d;
        match self {
            StateSpec::Gauss => {
                let g = theta::finite_gaussian(dim, cfg.kappa, cfg.term_tol)?;
                StateVector::from_gaussian(&g).normalized()
            }
            StateSpec::Delta(n) => {
                PhasePoint::new(dim, n, 0)?;
                Ok(StateVector::delta(dim, n))
            }
            StateSpec::Coherent(a, b) => hilbert::coherent_state(dim, PhasePoint::new(dim, a, b)?),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub d: Dimension,
    pub kappa: f64,
    pub term_tol: f64,
    pub eig_tol: f64,
    pub rel_tol: f64,
    pub max_den: u64,
    pub format: Format,
    /// `None` writes to stdout.
    pub output_path: Option<std::path::PathBuf>,
}

impl RunConfig {
    pub fn new(d: i64) -> Result<Self> {
        Ok(RunConfig {
            d: Dimension::new(d)?,
            ..RunConfig::default()
        })
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.kappa.is_finite() && self.kappa > 0.0) {
            return Err(Error::param("kappa", self.kappa, "must be positive and finite"));
        }
        for (name, v) in [("term_tol", self.term_tol), ("eig_tol", self.eig_tol), ("rel_tol", self.rel_tol)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::param(name, v, "must be positive"));
            }
        }
        if self.max_den < 1 {
            return Err(Error::param("max_den", self.max_den as f64, "must be at least 1"));
        }
        Ok(())
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            d: Dimension::new(9).expect("9 is a valid dimension"),
            kappa: 1.0,
            term_tol: theta::DEFAULT_TERM_TOL,
            eig_tol: spectral::DEFAULT_EIG_TOL,
            rel_tol: dynamics::DEFAULT_REL_TOL,
            max_den: dynamics::DEFAULT_MAX_DEN,
            format: Format::Csv,
            output_path: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

fn fmt_float(v: f64) -> String {
    ryu::Buffer::new().format(v).to_owned()
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_float(*v),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }
}

/// A header plus rows. A `record` table has one row and renders as a
/// single JSON object rather than an array.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub record: bool,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            record: false,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let objects: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: Map<String, Value> = self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                Value::Object(map)
            })
            .collect();
        let value = if self.record && objects.len() == 1 {
            objects.into_iter().next().expect("one row")
        } else {
            Value::Array(objects)
        };
        let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// `n, g, g_plus, naive` for the configured `(d, kappa)`.
pub fn gauss_table(cfg: &RunConfig) -> Result<Table> {
    let g = theta::finite_gaussian(cfg.d, cfg.kappa, cfg.term_tol)?;
    let gp = theta::shifted_finite_gaussian(cfg.d, cfg.kappa, cfg.term_tol)?;
    let naive = theta::naive_gaussian(cfg.d, cfg.kappa)?;
    let mut t = Table::new(["n", "g", "g_plus", "naive"]);
    for (i, n) in cfg.d.indices().enumerate() {
        t.push(vec![n.into(), g.values()[i].into(), gp.values()[i].into(), naive[i].into()]);
    }
    Ok(t)
}

/// `k, im_eta`, ascending.
pub fn commutator_table(cfg: &RunConfig) -> Result<Table> {
    let eta = spectral::commutator_spectrum(cfg.d)?;
    let mut t = Table::new(["k", "im_eta"]);
    for (k, e) in eta.into_iter().enumerate() {
        t.push(vec![k.into(), e.into()]);
    }
    Ok(t)
}

pub fn uncertainty_table(cfg: &RunConfig, d_list: &[Dimension]) -> Result<Table> {
    let mut t = Table::new(["d", "kappa", "dq", "dp", "product", "half_comm", "gap"]);
    for &dim in d_list {
        let u = spectral::uncertainty_product_with(dim, cfg.kappa, cfg.term_tol)?;
        t.push(vec![
            u.d.into(),
            u.kappa.into(),
            u.dq.into(),
            u.dp.into(),
            u.product.into(),
            u.half_comm.into(),
            u.gap.into(),
        ]);
    }
    Ok(t)
}

/// Eigenvalues in descending order, `gap` to the next row (empty on the last).
pub fn spectrum_table(cfg: &RunConfig, ham: Hamiltonian) -> Result<Table> {
    let sp = spectral::hermitian_eig_with(&ham.build(cfg.d), cfg.eig_tol)?;
    let desc: Vec<f64> = sp.eigenvalues().iter().rev().copied().collect();
    let mut t = Table::new(["k", "eigenvalue", "gap"]);
    for (k, &e) in desc.iter().enumerate() {
        let gap = desc.get(k + 1).map(|next| e - next);
        t.push(vec![k.into(), e.into(), gap.into()]);
    }
    Ok(t)
}

/// `n, lambda, residual` for `n = 1..=s`.
pub fn quasi_table(cfg: &RunConfig) -> Result<Table> {
    let q = spectral::quasi_eigen_residual(cfg.d)?;
    let mut t = Table::new(["n", "lambda", "residual"]);
    for n in 1..=cfg.d.s() {
        t.push(vec![n.into(), q.lambda.into(), q.residual[cfg.d.offset(n)].into()]);
    }
    Ok(t)
}

pub fn wigner_grid(cfg: &RunConfig, source: WignerSource) -> Result<WignerGrid> {
    match source {
        WignerSource::Definition => wigner::wigner_definition_with(cfg.d, cfg.kappa, cfg.term_tol),
        WignerSource::ClosedForm => wigner::wigner_closed_form_with(cfg.d, cfg.kappa, cfg.term_tol),
        WignerSource::ThetaForm => wigner::wigner_theta_form_with(cfg.d, cfg.term_tol),
    }
}

/// Wide grid: one row per `n`, one column `m=<m>` per momentum index.
pub fn wigner_table(grid: &WignerGrid) -> Table {
    let dim = grid.dim();
    let mut t = Table::new(std::iter::once("n".to_string()).chain(dim.indices().map(|m| format!("m={m}"))));
    for n in dim.indices() {
        let mut row = vec![Cell::Int(n)];
        row.extend(dim.indices().map(|m| Cell::Float(grid.at(n, m))));
        t.push(row);
    }
    t
}

/// Peak amplitudes of a grid, and with `check` the agreement between the
/// defining sum and the closed form.
pub fn wigner_summary(cfg: &RunConfig, grid: &WignerGrid, check: bool) -> Result<Table> {
    let p = wigner::peak_summary(grid);
    let mut cols = vec!["d", "kappa", "source", "max_abs", "origin", "edge_m", "edge_n", "corner"];
    let source = match grid.source() {
        WignerSource::Definition => "definition",
        WignerSource::ClosedForm => "closed_form",
        WignerSource::ThetaForm => "theta_form",
    };
    let mut row: Vec<Cell> = vec![
        cfg.d.d().into(),
        grid.kappa().into(),
        source.to_string().into(),
        grid.max_abs().into(),
        p.origin.into(),
        p.edge_m.into(),
        p.edge_n.into(),
        p.corner.into(),
    ];
    if let Some(c) = grid.scale() {
        cols.push("scale");
        row.push(c.into());
    }
    if check {
        let def = wigner::wigner_definition_with(cfg.d, cfg.kappa, cfg.term_tol)?;
        let closed = wigner::wigner_closed_form_with(cfg.d, cfg.kappa, cfg.term_tol)?;
        let diff = def.max_abs_diff(&closed)?;
        let rel = diff / def.max_abs();
        cols.extend(["check_max_abs_diff", "check_rel_diff", "check_passed"]);
        row.extend([diff.into(), rel.into(), (rel <= 1e-12).into()]);
    }
    let mut t = Table::new(cols);
    t.push(row);
    t.record = true;
    Ok(t)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RevivalOutcome {
    pub table: Table,
    pub certified: bool,
    pub diagnostic: Option<String>,
}

/// Revival analysis plus direct-evolution certification.
///
/// With `min_autocorr`, a period also counts as certified when
/// `|<psi| exp(-i T H) |psi>| >= min_autocorr`.
pub fn revival_report(
    cfg: &RunConfig,
    ham: Hamiltonian,
    state: StateSpec,
    weight_floor: f64,
    min_autocorr: Option<f64>,
) -> Result<RevivalOutcome> {
    let psi = state.build(cfg)?;
    let prop = Propagator::with_eig_tol(&ham.build(cfg.d), cfg.eig_tol)?;
    let weights = prop.spectrum().weights(&psi)?;
    let r = dynamics::detect_revival_with(
        prop.spectrum().eigenvalues(),
        &weights,
        cfg.rel_tol,
        cfg.max_den,
        weight_floor,
    )?;

    let (cert, autocorr) = match r.period {
        Some(period) => {
            let c = prop.certify_period(&psi, period, dynamics::CERTIFY_TOL)?;
            let a = prop.autocorrelation(&psi, &[period])?.values[0];
            (Some(c), Some(a))
        }
        None => (None, None),
    };
    let certified = match (cert, autocorr) {
        (Some(c), Some(a)) => c.certified || min_autocorr.is_some_and(|min| a >= min),
        _ => false,
    };
    let diagnostic = if certified {
        None
    } else if r.kind == RevivalKind::None {
        Some("no revival period could be certified from the populated levels".to_string())
    } else {
        let mut msg = String::new();
        let _ = write!(
            msg,
            "period {} failed certification: max deviation {} > {}",
            fmt_float(r.period.unwrap_or(f64::NAN)),
            fmt_float(cert.map_or(f64::NAN, |c| c.max_deviation)),
            fmt_float(dynamics::CERTIFY_TOL)
        );
        if let (Some(min), Some(a)) = (min_autocorr, autocorr) {
            let _ = write!(msg, ", autocorrelation {} < {}", fmt_float(a), fmt_float(min));
        }
        Some(msg)
    };

    let kind = match r.kind {
        RevivalKind::Commensurate => "commensurate",
        RevivalKind::Equidistant => "equidistant",
        RevivalKind::None => "none",
    };
    let subset = r.level_subset.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
    let mut t = Table::new([
        "d",
        "hamiltonian",
        "state",
        "kind",
        "period",
        "m",
        "level_subset",
        "tol_used",
        "zero_level_excluded",
        "max_deviation",
        "autocorrelation",
        "certified",
        "note",
    ]);
    t.push(vec![
        cfg.d.d().into(),
        ham.name().to_string().into(),
        state.label().into(),
        kind.to_string().into(),
        r.period.into(),
        r.m.map(|m| m as i64).into(),
        subset.into(),
        r.tol_used.into(),
        r.zero_level_excluded.into(),
        cert.map(|c| c.max_deviation).into(),
        autocorr.into(),
        certified.into(),
        r.note.into(),
    ]);
    t.record = true;
    Ok(RevivalOutcome {
        table: t,
        certified,
        diagnostic,
    })
}
