use std::fmt::Write as _;

use sep3q::diagnostics::PptReport;
use sep3q::mixed::{SearchConfig, SearchResult, ZMode};
use sep3q::pure::{CVector, Lemma1Residuals, OperatorVariant};
use sep3q::Complex64;
use serde::Serialize;

/// Rounds to 10 significant digits for JSON output.
pub fn sig10(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.9e}").parse().unwrap_or(x)
}

/// Formats with 4 significant digits for text output.
pub fn sig4(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&mag) {
        return format!("{x:.3e}");
    }
    let decimals = (3 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

fn pair(z: Complex64) -> [f64; 2] {
    [sig10(z.re), sig10(z.im)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Pure,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Separable,
    Entangled,
    Inconclusive,
}

#[derive(Debug, Serialize)]
pub struct Telemetry {
    pub samples_evaluated: usize,
    pub sampled_score: f64,
    pub best_score: f64,
    pub refinement_gain: f64,
    pub rank: usize,
}

#[derive(Debug, Default, Serialize)]
pub struct ConfigEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_mode: Option<ZMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refine: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operators: Option<OperatorVariant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_sep: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict_tol: Option<f64>,
    pub threads: usize,
}

impl ConfigEcho {
    pub fn search(cfg: &SearchConfig, verdict_tol: f64) -> Self {
        ConfigEcho {
            seed: Some(cfg.seed),
            samples: Some(cfg.samples),
            z_mode: Some(cfg.z_mode),
            refine: Some(cfg.refine_iters),
            operators: Some(cfg.operator_variant),
            rank_tol: Some(cfg.rank_tol),
            tol_sep: None,
            verdict_tol: Some(verdict_tol),
            threads: rayon::current_num_threads(),
        }
    }

    pub fn pure(tol_sep: f64) -> Self {
        ConfigEcho {
            tol_sep: Some(tol_sep),
            threads: rayon::current_num_threads(),
            ..ConfigEcho::default()
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub input: String,
    pub mode: Mode,
    pub certificate: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_vector: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma1_residuals: Option<[f64; 6]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_z: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<Telemetry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ppt: Option<PptReport>,
    pub wall_time_seconds: f64,
    pub config: ConfigEcho,
}

impl Report {
    pub fn pure(
        input: String,
        verdict: Verdict,
        c: &CVector,
        residuals: &Lemma1Residuals,
        config: ConfigEcho,
    ) -> Self {
        Report {
            input,
            mode: Mode::Pure,
            certificate: sig10(c.norm),
            verdict,
            reference_value: None,
            c_vector: Some(c.components.iter().map(|&z| pair(z)).collect()),
            lemma1_residuals: Some(residuals.0.map(sig10)),
            best_z: None,
            search: None,
            ppt: None,
            wall_time_seconds: 0.0,
            config,
        }
    }

    pub fn mixed(
        input: String,
        verdict: Verdict,
        r: &SearchResult,
        ppt: Option<PptReport>,
        config: ConfigEcho,
    ) -> Self {
        Report {
            input,
            mode: Mode::Mixed,
            certificate: sig10(r.certificate),
            verdict,
            reference_value: None,
            c_vector: None,
            lemma1_residuals: None,
            best_z: Some(r.best_z.as_slice().iter().map(|&z| pair(z)).collect()),
            search: Some(Telemetry {
                samples_evaluated: r.samples_evaluated,
                sampled_score: sig10(r.sampled_score),
                best_score: sig10(r.best_score),
                refinement_gain: sig10(r.refinement_gain),
                rank: r.rank,
            }),
            ppt: ppt.map(|mut p| {
                for e in p.entries.iter_mut() {
                    e.min_eigenvalue = sig10(e.min_eigenvalue);
                }
                p
            }),
            wall_time_seconds: 0.0,
            config,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = match self.verdict {
            Verdict::Separable => "separable",
            Verdict::Entangled => "entangled",
            Verdict::Inconclusive => "inconclusive",
        };
        let _ = writeln!(out, "input:       {}", self.input);
        match self.mode {
            Mode::Pure => {
                let _ = writeln!(out, "verdict:     {verdict}");
                let _ = writeln!(out, "|C(psi)|:    {}", sig4(self.certificate));
                if let Some(cv) = &self.c_vector {
                    for (alpha, [re, im]) in cv.iter().enumerate() {
                        let sign = if *im < 0.0 { '-' } else { '+' };
                        let _ = writeln!(
                            out,
                            "  C^{}:       {} {sign} {}i",
                            alpha + 1,
                            sig4(*re),
                            sig4(im.abs())
                        );
                    }
                }
                if let Some(res) = &self.lemma1_residuals {
                    let shown: Vec<String> = res.iter().map(|&r| sig4(r)).collect();
                    let _ = writeln!(out, "minors:      {}", shown.join(" "));
                }
            }
            Mode::Mixed => {
                let _ = writeln!(out, "verdict:     {verdict}");
                let _ = writeln!(out, "C(rho):      {}", sig4(self.certificate));
                if let Some(reference) = self.reference_value {
                    let _ = writeln!(out, "reference:   {}", sig4(reference));
                }
                if let Some(t) = &self.search {
                    let _ = writeln!(
                        out,
                        "search:      rank {}, {} candidates, sampled {}, refined +{}",
                        t.rank,
                        t.samples_evaluated,
                        sig4(t.sampled_score),
                        sig4(t.refinement_gain)
                    );
                }
                if let Some(p) = &self.ppt {
                    for e in &p.entries {
                        let _ = writeln!(
                            out,
                            "ppt {}:    {} (min eigenvalue {})",
                            e.subsystem.bipartition(),
                            if e.ppt { "yes" } else { "no" },
                            sig4(e.min_eigenvalue)
                        );
                    }
                }
            }
        }
        let _ = writeln!(out, "time:        {:.3} s", self.wall_time_seconds);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig10(0.146_912_345_678_9), 0.146_912_345_7);
        assert_eq!(sig10(0.0), 0.0);
        assert_eq!(sig4(0.146_912_3), "0.1469");
        assert_eq!(sig4(0.374_71), "0.3747");
        assert_eq!(sig4(1.732_050_8), "1.732");
        assert_eq!(sig4(0.0), "0");
    }
}
