//! Diagnostics CSV: a header line followed by one row per record.
//!
//! Columns, in order:
//!
//! | column | quantity |
//! |---|---|
//! | `t` | time |
//! | `l2_u`, `l2_omega`, `l2_theta` | `‖u‖_{L²}`, `‖ω‖_{L²}`, `‖θ‖_{L²}` |
//! | `l4_theta`, `l8_theta`, `linf_theta` | `‖θ‖_{L⁴}`, `‖θ‖_{L⁸}`, `‖θ‖_{L^∞}` |
//! | `hk_theta` | `‖Λ^kθ‖_{L²}` |
//! | `lr_gamma`, `lr_omega` | `‖Γ‖_{L^r}`, `‖ω‖_{L^r}` |
//! | `linf_vorticity`, `linf_u` | `‖Ω‖_{L^∞}`, `‖u‖_{L^∞}` |
//! | `grad_omega_inf` | `‖∇ω‖_{L^∞}` |
//! | `h1dot_theta` | `‖Λθ‖_{L²}` |
//! | `hs_u`, `hs_omega`, `hs_theta` | `H^s` norms |
//! | `besov_half_theta`, `besov_zero_theta` | `‖θ‖_{B^{1/2}_{∞,1}}`, `‖θ‖_{B⁰_{∞,∞}}` |
//! | `grad_omega_sq`, `half_theta_sq`, `k_half_theta_sq`, `three_half_theta_sq` | `‖∇ω‖²`, `‖Λ^{1/2}θ‖²`, `‖Λ^{k+1/2}θ‖²`, `‖Λ^{3/2}θ‖²` |
//! | `int_*` | time integrals of the four squares above, of `‖u‖_{L^∞}` and of `‖Ω‖_{L^∞}` |
//! | `energy_functional` | `‖(u,ω,θ)‖² + ∫‖∇ω‖² + ∫‖Λ^{1/2}θ‖²` |
//! | `tail_theta`, `tail_vorticity` | top-octave spectral slopes (empty when the octave is empty) |
//!
//! Floats use Rust's shortest round-trip formatting, so identical records
//! produce identical bytes.

use std::io::Write;

use super::record::DiagnosticsRecord;
use crate::error::Result;

pub const COLUMNS: [&str; 32] = [
    "t",
    "l2_u",
    "l2_omega",
    "l2_theta",
    "l4_theta",
    "l8_theta",
    "linf_theta",
    "hk_theta",
    "lr_gamma",
    "lr_omega",
    "linf_vorticity",
    "linf_u",
    "grad_omega_inf",
    "h1dot_theta",
    "hs_u",
    "hs_omega",
    "hs_theta",
    "besov_half_theta",
    "besov_zero_theta",
    "grad_omega_sq",
    "half_theta_sq",
    "k_half_theta_sq",
    "three_half_theta_sq",
    "int_grad_omega_sq",
    "int_half_theta_sq",
    "int_k_half_theta_sq",
    "int_three_half_theta_sq",
    "int_linf_u",
    "int_linf_vorticity",
    "energy_functional",
    "tail_theta",
    "tail_vorticity",
];

pub fn csv_header() -> String {
    COLUMNS.join(",")
}

pub fn csv_row(r: &DiagnosticsRecord) -> String {
    let mut cells: Vec<String> = r.values().iter().map(|v| v.to_string()).collect();
    for tail in [r.tail_theta, r.tail_vorticity] {
        cells.push(tail.map(|v| v.to_string()).unwrap_or_default());
    }
    cells.join(",")
}

pub fn write_csv(w: &mut impl Write, records: &[DiagnosticsRecord]) -> Result<()> {
    writeln!(w, "{}", csv_header())?;
    for r in records {
        writeln!(w, "{}", csv_row(r))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_matches_header_width() {
        let r = DiagnosticsRecord::default();
        assert_eq!(csv_row(&r).split(',').count(), COLUMNS.len());
        assert!(csv_row(&r).ends_with(",,"));
    }
}
