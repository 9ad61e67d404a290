//! Rendering of results as JSON, CSV or plain text.
//!
//! Every real number is rounded to nine significant digits before it is
//! written, so output is stable across platforms.

use std::fmt::Write as _;

use discord::bounds::{format_sig9, write_scan_csv, ScanRow};
use discord::verify::SuiteReport;
use discord::{BoundReport, DiscordReport};
use serde::Serialize;

pub fn sig9(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else if v.is_finite() {
        format!("{v:.8e}").parse().expect("formatted float parses")
    } else {
        v
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct DirectionOut {
    vector: [f64; 3],
    theta_rad: f64,
    phi_rad: f64,
    theta_deg: f64,
    phi_deg: f64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct DiagnosticsOut {
    a_vec: [f64; 3],
    a_scalar: f64,
    residual: f64,
    grad_theta: f64,
    grad_phi: f64,
}

#[derive(Serialize)]
struct BoundsOut {
    t0sq: f64,
    #[serde(rename = "perpDim")]
    perp_dim: usize,
    e0: [f64; 3],
    #[serde(rename = "condEntropyUB")]
    cond_entropy_ub: f64,
    #[serde(rename = "discordUB")]
    discord_ub: f64,
    #[serde(rename = "classicalLB")]
    classical_lb: f64,
    #[serde(rename = "xiBound")]
    xi_bound: f64,
    saturated: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ComputeOut {
    mutual_information: f64,
    classical_correlation: f64,
    discord: f64,
    min_conditional_entropy: f64,
    optimal_direction: DirectionOut,
    method: String,
    class: discord::closed_forms::ClassKind,
    /// Absent at degenerate optima.
    residual: Option<f64>,
    diagnostics: Option<DiagnosticsOut>,
    entropy_a: f64,
    entropy_b: f64,
    entropy_ab: f64,
    bounds: BoundsOut,
}

fn vec3(v: [f64; 3]) -> [f64; 3] {
    v.map(sig9)
}

fn direction_out(r: &DiscordReport) -> DirectionOut {
    let (theta, phi) = r.optimal_direction.angles();
    DirectionOut {
        vector: vec3(r.optimal_direction.into()),
        theta_rad: sig9(theta),
        phi_rad: sig9(phi),
        theta_deg: sig9(theta.to_degrees()),
        phi_deg: sig9(phi.to_degrees()),
    }
}

fn bounds_out(b: &BoundReport) -> BoundsOut {
    BoundsOut {
        t0sq: sig9(b.t0sq),
        perp_dim: b.perp_dim,
        e0: vec3(b.e0.into()),
        cond_entropy_ub: sig9(b.cond_entropy_ub),
        discord_ub: sig9(b.discord_ub),
        classical_lb: sig9(b.classical_lb),
        xi_bound: sig9(b.xi_bound),
        saturated: b.saturated,
    }
}

fn compute_out(r: &DiscordReport) -> ComputeOut {
    ComputeOut {
        mutual_information: sig9(r.mutual_information),
        classical_correlation: sig9(r.classical_correlation),
        discord: sig9(r.discord),
        min_conditional_entropy: sig9(r.min_conditional_entropy),
        optimal_direction: direction_out(r),
        method: r.method.to_string(),
        class: r.class,
        residual: r.diagnostics.map(|d| sig9(d.residual)),
        diagnostics: r.diagnostics.map(|d| DiagnosticsOut {
            a_vec: vec3(d.a_vec),
            a_scalar: sig9(d.a_scalar),
            residual: sig9(d.residual),
            grad_theta: sig9(d.grad_theta),
            grad_phi: sig9(d.grad_phi),
        }),
        entropy_a: sig9(r.entropy_a),
        entropy_b: sig9(r.entropy_b),
        entropy_ab: sig9(r.entropy_ab),
        bounds: bounds_out(&r.bounds),
    }
}

pub fn compute_json(r: &DiscordReport) -> String {
    serde_json::to_string_pretty(&compute_out(r)).expect("serializable") + "\n"
}

pub fn compute_csv(r: &DiscordReport) -> String {
    let (theta, phi) = r.optimal_direction.angles();
    let b = &r.bounds;
    let residual = r.diagnostics.map_or(String::new(), |d| format_sig9(d.residual));
    let header = "mutual_information,classical_correlation,discord,min_conditional_entropy,\
theta_rad,phi_rad,theta_deg,phi_deg,method,residual,t0sq,perp_dim,cond_entropy_ub,discord_ub,classical_lb,xi_bound,saturated";
    let values = [
        r.mutual_information,
        r.classical_correlation,
        r.discord,
        r.min_conditional_entropy,
        theta,
        phi,
        theta.to_degrees(),
        phi.to_degrees(),
    ]
    .map(format_sig9)
    .join(",");
    format!(
        "{header}\n{values},{},{residual},{},{},{},{},{},{},{}\n",
        r.method,
        format_sig9(b.t0sq),
        b.perp_dim,
        format_sig9(b.cond_entropy_ub),
        format_sig9(b.discord_ub),
        format_sig9(b.classical_lb),
        format_sig9(b.xi_bound),
        b.saturated
    )
}

pub fn compute_text(r: &DiscordReport) -> String {
    let (theta, phi) = r.optimal_direction.angles();
    let n: [f64; 3] = r.optimal_direction.into();
    let b = &r.bounds;
    let mut s = String::new();
    let mut line = |label: &str, value: String| {
        writeln!(s, "{label:<26}{value}").expect("write to string");
    };
    line("mutual information", format!("{:.9} bits", r.mutual_information));
    line("classical correlation", format!("{:.9} bits", r.classical_correlation));
    line("discord", format!("{:.9} bits", r.discord));
    line("min conditional entropy", format!("{:.9} bits", r.min_conditional_entropy));
    line("optimal theta", format!("{:.9} rad ({:.6} deg)", theta, theta.to_degrees()));
    line("optimal phi", format!("{:.9} rad ({:.6} deg)", phi, phi.to_degrees()));
    line("optimal direction", format!("({:.9}, {:.9}, {:.9})", n[0], n[1], n[2]));
    line("method", format!("{} ({})", r.method, serde_json::to_value(r.class).expect("enum").as_str().unwrap_or("")));
    line(
        "residual",
        r.diagnostics.map_or("n/a (degenerate point)".to_string(), |d| format!("{:.3e}", d.residual)),
    );
    line("S(A), S(B), S(AB)", format!("{:.9}, {:.9}, {:.9} bits", r.entropy_a, r.entropy_b, r.entropy_ab));
    line("t0^2", format!("{:.9} (perp dim {})", b.t0sq, b.perp_dim));
    line("cond. entropy upper bound", format!("{:.9} bits", b.cond_entropy_ub));
    line("discord upper bound", format!("{:.9} bits{}", b.discord_ub, if b.saturated { " (saturated)" } else { "" }));
    line("classical lower bound", format!("{:.9} bits", b.classical_lb));
    line("S(B) bound", format!("{:.9} bits", b.xi_bound));
    s
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut buf = Vec::new();
    write_scan_csv(rows, &mut buf).expect("write to memory");
    String::from_utf8(buf).expect("ASCII output")
}

pub fn scan_json(rows: &[ScanRow]) -> String {
    let rounded: Vec<ScanRow> = rows
        .iter()
        .map(|r| ScanRow {
            param1: sig9(r.param1),
            param2: sig9(r.param2),
            discord: sig9(r.discord),
            discord_ub: sig9(r.discord_ub),
            xi_bound: sig9(r.xi_bound),
            saturated: r.saturated,
        })
        .collect();
    serde_json::to_string_pretty(&rounded).expect("serializable") + "\n"
}

pub fn scan_text(rows: &[ScanRow]) -> String {
    let mut s = format!("{:>12} {:>12} {:>12} {:>12} {:>12}  saturated\n", "param1", "param2", "discord", "discord_ub", "xi_bound");
    for r in rows {
        writeln!(
            s,
            "{:>12.9} {:>12.9} {:>12.9} {:>12.9} {:>12.9}  {}",
            r.param1, r.param2, r.discord, r.discord_ub, r.xi_bound, r.saturated
        )
        .expect("write to string");
    }
    s
}

pub fn verify_text(reports: &[SuiteReport]) -> String {
    let mut s = String::new();
    for r in reports {
        writeln!(
            s,
            "{:<10} {}  cases={} failures={} max_deviation={:.3e} tolerance={:e}",
            r.suite.name(),
            if r.passed { "PASS" } else { "FAIL" },
            r.cases,
            r.failures,
            r.max_deviation,
            r.tolerance
        )
        .expect("write to string");
    }
    s
}

pub fn verify_csv(reports: &[SuiteReport]) -> String {
    let mut s = String::from("suite,passed,cases,failures,max_deviation,tolerance\n");
    for r in reports {
        writeln!(
            s,
            "{},{},{},{},{},{}",
            r.suite.name(),
            r.passed,
            r.cases,
            r.failures,
            format_sig9(r.max_deviation),
            format_sig9(r.tolerance)
        )
        .expect("write to string");
    }
    s
}

pub fn verify_json(reports: &[SuiteReport]) -> String {
    let rounded: Vec<SuiteReport> = reports.iter().map(|r| SuiteReport { max_deviation: sig9(r.max_deviation), ..r.clone() }).collect();
    serde_json::to_string_pretty(&rounded).expect("serializable") + "\n"
}
