//! Human-readable certificate reports.

use std::fmt::Write;

use num_complex::Complex64;
use tropfactor::pipeline::{Certificate, FailureReason};

pub fn complex(z: Complex64) -> String {
    let tiny = 1e-12 * z.re.abs().max(1.0);
    if z.im.abs() <= tiny {
        format!("{:.10}", z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{:.10}{sign}{:.10}i", z.re, z.im.abs())
    }
}

fn slope(s: f64) -> String {
    if s.is_finite() {
        format!("{s:.3}")
    } else {
        "inf".to_string()
    }
}

pub fn text(cert: &Certificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "status: {:?}", cert.status);
    let tropisms: Vec<String> = cert.tropisms.iter().map(|t| t.to_string()).collect();
    let _ = writeln!(out, "tropisms: {}", if tropisms.is_empty() { "none".into() } else { tropisms.join(" ") });
    if !cert.roots.is_empty() {
        let _ = writeln!(out, "initial roots:");
        for entry in &cert.roots {
            if entry.roots.is_empty() {
                let _ = writeln!(out, "  {}: none", entry.tropism);
            }
            for r in &entry.roots {
                let _ = writeln!(
                    out,
                    "  {}: Y = {}  multiplicity {}  residuals {:.1e} {:.1e}",
                    entry.tropism,
                    complex(r.z),
                    r.multiplicity,
                    r.residual_f,
                    r.residual_g
                );
            }
        }
    }
    if !cert.germs.is_empty() {
        let _ = writeln!(out, "germs:");
        for g in &cert.germs {
            let germ = &g.germ;
            let _ = writeln!(
                out,
                "  {}: X = t^{}, Y = {} + ({}) t^{}  residual slopes {} {} (expected {} {})",
                germ.tropism,
                germ.d,
                complex(germ.c0),
                complex(germ.c1),
                germ.w,
                slope(g.slope_f),
                slope(g.slope_g),
                g.expected_f,
                g.expected_g
            );
        }
    }
    if !cert.diagnostics.failures.is_empty() {
        let _ = writeln!(out, "rejected roots:");
        for f in &cert.diagnostics.failures {
            let reason = match &f.reason {
                FailureReason::NoPositiveLayer => "no higher layer to balance against".to_string(),
                FailureReason::ExponentMismatch(d) => {
                    format!("exponent mismatch (k, l, a1, b1) = ({}, {}, {}, {})", d.k, d.l, d.a1, d.b1)
                }
                FailureReason::NoCoefficient(d) => {
                    format!("no consistent c1 for (k, l, a1, b1) = ({}, {}, {}, {})", d.k, d.l, d.a1, d.b1)
                }
                FailureReason::ResidualOrder {
                    slope_f,
                    slope_g,
                    expected_f,
                    expected_g,
                } => format!(
                    "residual slopes {} {} below expected {} {}",
                    slope(*slope_f),
                    slope(*slope_g),
                    expected_f,
                    expected_g
                ),
            };
            let _ = writeln!(out, "  {}: Y = {}  {reason}", f.tropism, complex(f.c0));
        }
    }
    for note in &cert.diagnostics.notes {
        let _ = writeln!(out, "note: {note}");
    }
    if let Some(t) = cert.diagnostics.timings {
        let _ = writeln!(
            out,
            "timings: tropisms {} us, initial roots {} us, second terms {} us",
            t.tropisms_us, t.initial_roots_us, t.second_terms_us
        );
    }
    out
}
