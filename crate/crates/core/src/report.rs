//! Markdown verification reports for family members.

use std::fmt::Write as _;

use crate::bignum::rational::format_rational;
use crate::bignum::{BigFloat, Rational};
use crate::cf::{agreement_digits, determinant_identity, estimate_limit, pq_convergents};
use crate::families::{
    family1_asymptotic_constants, family1_derangement_form, family2_f, family2_halfint_series, family3_pq_closed,
    Family, FamilyError,
};

/// Indices `m` of the residual table.
pub const RESIDUAL_ROWS: [usize; 3] = [50, 100, 200];
/// Exact convergents listed.
pub const CONVERGENTS_LISTED: usize = 8;
/// Highest index used by the determinant check.
pub const DETERMINANT_N: usize = 30;

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn sci(x: &BigFloat) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_decimal_string(3)
}

fn family_checks(f: &Family, precision: u32, limit: &BigFloat) -> Result<Vec<Check>, FamilyError> {
    let mut out = Vec::new();
    match f {
        Family::Linear(p) => {
            let ok = family1_asymptotic_constants(p, precision).is_ok();
            out.push(Check {
                name: "leading constants B_p / B_q equal the limit".into(),
                pass: ok,
                detail: String::new(),
            });
            if p.a == -1 && p.k >= 1 {
                let d = family1_derangement_form(p.k as u32 - 1, precision)?;
                let digits = agreement_digits(&d.value, limit);
                out.push(Check {
                    name: format!("derangement form with k = {} matches", p.k - 1),
                    pass: digits >= (precision - 2) as f64,
                    detail: format!("{} digits", digits.min(precision as f64).floor()),
                });
            }
        }
        Family::Quadratic(p) => {
            let f1 = family2_f(p, precision);
            let f2 = family2_f(p, 2 * precision);
            let digits = agreement_digits(&f1, &f2);
            out.push(Check {
                name: "F(a, b) stable under doubled precision".into(),
                pass: digits >= (precision - 2) as f64,
                detail: format!("{} digits", digits.min(precision as f64).floor()),
            });
            // b/a = m - 1/2 for an integer m >= 1
            let m = &p.b / &p.a + Rational::new(1.into(), 2.into());
            if m.is_integer() {
                let m: u32 = m.to_integer().try_into().unwrap_or(0);
                if m >= 1 {
                    let h = family2_halfint_series(&p.a, m, precision)?;
                    let digits = agreement_digits(&h, &f1);
                    out.push(Check {
                        name: format!("half-integer series with m = {m} equals F"),
                        pass: digits >= (precision - 2) as f64,
                        detail: format!("{} digits", digits.min(precision as f64).floor()),
                    });
                }
            }
        }
        Family::Zeta(p) => {
            let pq = pq_convergents(&f.spec(), 50)?;
            let mut ok = true;
            for (n, c) in pq.iter().enumerate() {
                let (pc, qc) = family3_pq_closed(p.k, n as u64)?;
                ok &= c.p == Rational::from_integer(pc) && c.q == qc;
            }
            out.push(Check {
                name: "p(n), q(n) equal the factorial / harmonic forms for n <= 50".into(),
                pass: ok,
                detail: String::new(),
            });
        }
    }
    Ok(out)
}

/// Deterministic markdown report: the fraction, its first convergents, the
/// closed form, a residual table and the outcome of each check.
pub fn family_report(f: &Family, precision: u32) -> Result<String, FamilyError> {
    let spec = f.spec();
    let closed = f.limit(precision)?;
    let wp = precision + 10;
    let limit = f.limit(wp)?.value;
    let mut s = String::new();
    let w = &mut s;
    writeln!(w, "# Verification report: {}\n", f.label()).unwrap();
    writeln!(w, "Continued fraction: `{spec}`\n").unwrap();
    writeln!(w, "Working precision: {precision} digits\n").unwrap();

    writeln!(w, "## Exact convergents\n").unwrap();
    writeln!(w, "| depth | p/q | decimal |").unwrap();
    writeln!(w, "|---|---|---|").unwrap();
    let pq = pq_convergents(&spec, RESIDUAL_ROWS[RESIDUAL_ROWS.len() - 1])?;
    for c in pq.iter().take(CONVERGENTS_LISTED) {
        match c.value() {
            Some(v) => {
                let d = BigFloat::from_rational(&v, 20).to_decimal_string(16);
                writeln!(w, "| {} | {} | {d} |", c.depth(), format_rational(&v)).unwrap();
            }
            None => writeln!(w, "| {} | undefined | |", c.depth()).unwrap(),
        }
    }

    writeln!(w, "\n## Closed form\n").unwrap();
    writeln!(w, "`{}`\n", closed.expr).unwrap();
    writeln!(w, "= {}\n", closed.value.to_decimal_string(precision)).unwrap();

    writeln!(w, "## Residuals\n").unwrap();
    writeln!(w, "| m | abs(p(m)/q(m) - L) | m * abs(p(m)/q(m) - L) |").unwrap();
    writeln!(w, "|---|---|---|").unwrap();
    let floor = format!("< 1e-{precision}");
    for &m in &RESIDUAL_ROWS {
        match pq[m].value() {
            Some(v) => {
                let r = (&BigFloat::from_rational(&v, wp) - &limit).abs();
                if r.is_zero() || r.log10_abs() < -(precision as f64) {
                    writeln!(w, "| {m} | {floor} | {floor} |").unwrap();
                } else {
                    writeln!(w, "| {m} | {} | {} |", sci(&r), sci(&r.mul_i64(m as i64))).unwrap();
                }
            }
            None => writeln!(w, "| {m} | undefined | undefined |").unwrap(),
        }
    }

    let mut checks = Vec::new();
    let twice = f.limit(2 * precision)?;
    let d = agreement_digits(&closed.value, &twice.value);
    checks.push(Check {
        name: "closed form stable under doubled precision".into(),
        pass: d >= (precision - 2) as f64,
        detail: format!("{} digits", d.min(precision as f64).floor()),
    });
    let xp = precision.min(30);
    match estimate_limit(&spec, xp, 100_000) {
        Ok(est) => {
            let d = agreement_digits(&est.value, &limit);
            let need = 6f64.max(est.achieved_digits as f64 - 2.0);
            checks.push(Check {
                name: "extrapolated convergents match the closed form".into(),
                pass: est.achieved_digits >= 6 && d >= need,
                detail: format!(
                    "{} digits agree, {} trusted, {} convergence, {} terms",
                    d.min(xp as f64).floor(),
                    est.achieved_digits,
                    est.convergence_class,
                    est.terms_used
                ),
            });
        }
        Err(e) => checks.push(Check {
            name: "extrapolated convergents match the closed form".into(),
            pass: false,
            detail: e.to_string(),
        }),
    }
    checks.push(Check {
        name: format!("determinant identity for n < {DETERMINANT_N}"),
        pass: determinant_identity(&spec, DETERMINANT_N)?,
        detail: String::new(),
    });
    checks.extend(family_checks(f, precision, &limit)?);

    writeln!(w, "\n## Checks\n").unwrap();
    for c in &checks {
        let mark = if c.pass { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            writeln!(w, "- {mark}: {}", c.name).unwrap();
        } else {
            writeln!(w, "- {mark}: {} ({})", c.name, c.detail).unwrap();
        }
    }
    Ok(s)
}

/// Whether every check in a report passed.
pub fn report_passed(report: &str) -> bool {
    !report.lines().any(|l| l.starts_with("- FAIL"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{Family1Params, Family3Params};

    #[test]
    fn zeta3_report() {
        let r = family_report(&Family::Zeta(Family3Params::new(3).unwrap()), 30).unwrap();
        assert!(r.contains("| 4 | 1728/2035 |"), "{r}");
        assert!(report_passed(&r), "{r}");
        assert_eq!(
            r,
            family_report(&Family::Zeta(Family3Params::new(3).unwrap()), 30).unwrap()
        );
    }

    #[test]
    fn e_report() {
        let r = family_report(&Family::Linear(Family1Params::new(-1, 2).unwrap()), 30).unwrap();
        assert!(report_passed(&r), "{r}");
        assert!(r.contains("| 50 | < 1e-30 |"), "{r}");
    }
}
