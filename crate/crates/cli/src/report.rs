//! Serializable analysis and verification reports.

use std::io;

use serde::{Deserialize, Serialize};

use commutant_core::structure::StructureView;
use commutant_core::{
    noiseless_components, structure_string, CMatrix, Channel, Diagnostic, NoiselessKind, Structure, Tolerance,
    VerifyReport,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub n: usize,
    pub m: usize,
    pub rank_of_central: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiselessReport {
    pub logical_dim: usize,
    pub cofactor_dim: usize,
    pub kind: NoiselessKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancesUsed {
    pub eps_rank: f64,
    pub eps_cluster: f64,
    pub eps_zero: f64,
}

/// Complex entries as `[re, im]`, rows outermost.
pub type MatrixJson = Vec<Vec<[f64; 2]>>;

pub fn matrix_json(m: &CMatrix) -> MatrixJson {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatricesReport {
    pub structuring_unitary: MatrixJson,
    /// One per component, canonical order.
    pub central_projections: Vec<MatrixJson>,
    pub minimal_projections: Vec<MatrixJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub channel_name: String,
    pub dim: usize,
    pub unital: bool,
    pub commutant_dim: usize,
    pub components: Vec<ComponentReport>,
    pub structure_algebra: String,
    pub structure_commutant: String,
    /// Components with `m ≥ 2`.
    pub noiseless: Vec<NoiselessReport>,
    pub diagnostics: Vec<Diagnostic>,
    pub tolerances: TolerancesUsed,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<MatricesReport>,
}

impl AnalysisReport {
    pub fn new(ch: &Channel, s: &Structure, diagnostics: Vec<Diagnostic>, tol: &Tolerance, full: bool) -> Self {
        let matrices = full.then(|| MatricesReport {
            structuring_unitary: matrix_json(&s.structuring_unitary),
            central_projections: s
                .components
                .iter()
                .map(|c| matrix_json(c.class.central_projection.matrix()))
                .collect(),
            minimal_projections: s.family.projections.iter().map(|p| matrix_json(p.matrix())).collect(),
        });
        Self {
            channel_name: ch.name().unwrap_or("unnamed").to_owned(),
            dim: ch.dim(),
            unital: ch.is_unital(),
            commutant_dim: s.commutant_dim(),
            components: s
                .components
                .iter()
                .map(|c| ComponentReport {
                    n: c.n(),
                    m: c.m(),
                    rank_of_central: c.class.central_projection.rank(),
                })
                .collect(),
            structure_algebra: structure_string(s, StructureView::Algebra),
            structure_commutant: structure_string(s, StructureView::Commutant),
            noiseless: noiseless_components(s)
                .into_iter()
                .filter(|c| c.is_usable())
                .map(|c| NoiselessReport {
                    logical_dim: c.logical_dim,
                    cofactor_dim: c.cofactor_dim,
                    kind: c.kind,
                })
                .collect(),
            diagnostics,
            tolerances: TolerancesUsed {
                eps_rank: tol.eps_rank,
                eps_cluster: tol.eps_cluster,
                eps_zero: tol.eps_zero,
            },
            seed: tol.seed,
            matrices,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.diagnostics.iter().all(|d| d.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("channel:            {}", self.channel_name));
        line(format!("dimension:          {}", self.dim));
        line(format!("unital:             {}", if self.unital { "yes" } else { "no" }));
        line(format!("commutant dim:      {}", self.commutant_dim));
        line(format!("algebra:            {}", self.structure_algebra));
        line(format!("commutant:          {}", self.structure_commutant));
        line("components (canonical order):".into());
        for (k, c) in self.components.iter().enumerate() {
            line(format!("  [{k}] n={} m={} central rank {}", c.n, c.m, c.rank_of_central));
        }
        if self.noiseless.is_empty() {
            line("noiseless: none (every component has m = 1)".into());
        } else {
            line("noiseless:".into());
            for nc in &self.noiseless {
                let kind = match nc.kind {
                    NoiselessKind::Subspace => "subspace",
                    NoiselessKind::Subsystem => "subsystem",
                };
                line(format!("  logical {} ⊗ cofactor {} ({kind})", nc.logical_dim, nc.cofactor_dim));
            }
        }
        line("diagnostics:".into());
        for d in &self.diagnostics {
            let status = if d.pass { "pass" } else { "FAIL" };
            line(format!("  {status} {:<32} {:.3e}", d.name, d.residual));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiselessCheck {
    pub component_index: usize,
    pub logical_dim: usize,
    pub cofactor_dim: usize,
    #[serde(flatten)]
    pub report: VerifyReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub analysis: AnalysisReport,
    pub noiseless_checks: Vec<NoiselessCheck>,
    pub note: Option<String>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn to_text(&self) -> String {
        let mut out = self.analysis.to_text();
        if let Some(note) = &self.note {
            out.push_str(&format!("note: {note}\n"));
        }
        for c in &self.noiseless_checks {
            let status = if c.report.passed { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "  {status} noiseless component [{}] logical {}: max trace distance {:.3e} over {} trials × {} applications\n",
                c.component_index, c.logical_dim, c.report.max_trace_distance, c.report.trials, c.report.repetitions
            ));
        }
        out.push_str(if self.passed { "verification passed\n" } else { "verification FAILED\n" });
        out
    }
}

/// Writes every float with 17 significant digits.
#[derive(Debug, Default, Clone, Copy)]
pub struct SeventeenDigits;

impl serde_json::ser::Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// JSON with two-space indentation and 17-significant-digit floats.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let formatter = PrettySeventeen::default();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, formatter);
    value.serialize(&mut ser).expect("report types serialize");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Pretty printing with the float format of [`SeventeenDigits`].
#[derive(Default)]
struct PrettySeventeen<'a> {
    pretty: serde_json::ser::PrettyFormatter<'a>,
}

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(fn $name<W: ?Sized + io::Write>(&mut self, writer: &mut W $(, $arg: $ty)*) -> io::Result<()> {
            self.pretty.$name(writer $(, $arg)*)
        })*
    };
}

impl serde_json::ser::Formatter for PrettySeventeen<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        SeventeenDigits.write_f64(writer, value)
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        SeventeenDigits.write_f32(writer, value)
    }

    delegate! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        end_object_key();
        begin_object_value();
        end_object_value();
    }
}
