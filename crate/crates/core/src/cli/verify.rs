use std::collections::HashMap;
use std::io::Write;
use std::sync::Arc;

use anyhow::{bail, Result};
use clap::ValueEnum;

use super::{cached_census, cached_type_censuses, RunArgs, VerifyArgs};
use crate::census::{self, CensusMode, CensusTable};
use crate::field::{prime_divisors, FieldSpec};
use crate::theory;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Check {
    /// χ(disc f) = (-1)^m μ(f) over all monic f.
    Stickelberger,
    /// Σ μ(f) = 0 and Σ |μ(f)| = q^m - q^{m-1}.
    Musums,
    /// Exactly q^{m-1} monic polynomials have discriminant 0.
    Disczero,
    /// Square and non-square discriminants are equally common.
    Balance,
    /// Irreducible census totals match Gauss's formula.
    Gauss,
    /// v_ℓ(N_q(2^t ℓ)) = v_ℓ(q-1) - 1 for odd ℓ | q-1, 2^t ℓ <= max-deg.
    Vlemma,
    /// Odd q: equal distribution where gcd(q-1, m(m-1)) = 2.
    Thm11,
    /// Even q: equal distribution where gcd(q-1, m(m-1)) = 1.
    Thm12,
    /// Every type's discriminants lie in the predicted character class.
    Lemma44,
    /// Every nonempty type attains at least (q-1)/g discriminants.
    Lemma42,
}

impl Check {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    /// `Some(true)` for odd-q-only checks, `Some(false)` for even-q-only.
    fn parity(self) -> Option<bool> {
        match self {
            Check::Stickelberger | Check::Balance | Check::Thm11 | Check::Lemma44 | Check::Lemma42 => {
                Some(true)
            }
            Check::Thm12 => Some(false),
            _ => None,
        }
    }
}

/// Censuses shared between checks within one run.
struct Data<'a> {
    spec: Arc<FieldSpec>,
    run: &'a RunArgs,
    tables: HashMap<(usize, bool), CensusTable>,
    types: HashMap<usize, Vec<CensusTable>>,
}

impl Data<'_> {
    fn table(&mut self, m: usize, irr: bool, diag: &mut dyn Write) -> Result<&CensusTable> {
        if !self.tables.contains_key(&(m, irr)) {
            let mode = if irr { CensusMode::IrreducibleOnly } else { CensusMode::AllMonic };
            let t = cached_census(&self.spec, m, &mode, self.run, diag)?;
            self.tables.insert((m, irr), t);
        }
        Ok(&self.tables[&(m, irr)])
    }

    fn types(&mut self, m: usize, diag: &mut dyn Write) -> Result<&[CensusTable]> {
        if !self.types.contains_key(&m) {
            let t = cached_type_censuses(&self.spec, m, self.run, diag)?;
            self.types.insert(m, t);
        }
        Ok(&self.types[&m])
    }
}

pub(super) fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, diag: &mut dyn Write) -> Result<bool> {
    let spec = a.field.field()?;
    let odd = spec.is_odd();
    let checks: Vec<Check> = if a.checks.is_empty() {
        Check::value_variants()
            .iter()
            .copied()
            .filter(|c| c.parity().is_none_or(|o| o == odd))
            .collect()
    } else {
        a.checks.clone()
    };
    for c in &checks {
        if let Some(o) = c.parity() {
            if o != odd {
                let need = if o { "odd" } else { "even" };
                bail!("check {} requires {need} q (got q = {})", c.name(), spec.q());
            }
        }
    }
    writeln!(out, "field: {spec}")?;
    let mut data = Data { spec: spec.clone(), run: &a.run, tables: HashMap::new(), types: HashMap::new() };
    let mut failures = 0;
    let mut ran = 0;
    for &check in &checks {
        for (label, ok, detail) in run_check(check, a.max_deg as usize, &mut data, diag)? {
            ran += 1;
            if !ok {
                failures += 1;
            }
            let status = if ok { "pass" } else { "FAIL" };
            writeln!(out, "{} {label}: {status} ({detail})", check.name())?;
        }
    }
    if failures == 0 {
        writeln!(out, "all {ran} checks passed")?;
    } else {
        writeln!(out, "{failures} of {ran} checks FAILED")?;
    }
    Ok(failures == 0)
}

type Outcome = (String, bool, String);

fn run_check(check: Check, max_deg: usize, data: &mut Data, diag: &mut dyn Write) -> Result<Vec<Outcome>> {
    let spec = data.spec.clone();
    let q = spec.q() as u64;
    let mut out = Vec::new();
    if check == Check::Vlemma {
        for l in prime_divisors(q - 1).into_iter().filter(|&l| l != 2) {
            let mut t = 0;
            while (1u64 << t) * l <= max_deg as u64 {
                let r = theory::check_vlemma(&spec, l, t)?;
                let detail = format!("v_{l}(N_{q}({})) = {}, v_{l}(q-1) - 1 = {}", (1u64 << t) * l, r.lhs, r.rhs);
                out.push((format!("l={l} t={t}"), r.passed(), detail));
                t += 1;
            }
        }
        if out.is_empty() {
            out.push(("-".into(), true, format!("no odd prime l <= {max_deg} divides q - 1")));
        }
        return Ok(out);
    }
    for m in 2..=max_deg {
        let label = format!("m={m}");
        match check {
            Check::Stickelberger => {
                let r = census::verify_stickelberger(&spec, m)?;
                let detail = match &r.counterexample {
                    None => format!("{} polynomials", r.checked),
                    Some(f) => format!("counterexample {}", f.to_coeff_string()),
                };
                out.push((label, r.passed(), detail));
            }
            Check::Musums => {
                let r = census::verify_mu_sums(&spec, m)?;
                let detail = format!("sum mu = {}, sum |mu| = {} (expected {})", r.sum_mu, r.sum_abs_mu, r.expected_abs);
                out.push((label, r.passed(), detail));
            }
            Check::Disczero => {
                let t = data.table(m, false, diag)?;
                let want = q.pow(m as u32 - 1);
                out.push((label, t.count(0) == want, format!("count at 0 = {}, q^(m-1) = {want}", t.count(0))));
            }
            Check::Balance => {
                let r = census::verify_square_balance(data.table(m, false, diag)?)?;
                out.push((label, r.passed(), format!("squares {}, non-squares {}", r.squares, r.nonsquares)));
            }
            Check::Gauss => {
                let t = data.table(m, true, diag)?;
                let want = theory::gauss_count(&spec, m)?;
                out.push((label, t.total() == want, format!("census {}, formula {want}", t.total())));
            }
            Check::Thm11 | Check::Thm12 => {
                let h = theory::hypothesis(&spec, m)?;
                if !h.applies {
                    out.push((label, true, format!("g = {}, hypothesis does not apply", h.g)));
                    continue;
                }
                let all = census::is_equally_distributed(data.table(m, false, diag)?)?;
                let mut bad = Vec::new();
                for t in data.types(m, diag)? {
                    if t.total() > 0 && !census::is_equally_distributed(t)?.uniform {
                        bad.push(t.mode().partition().expect("type census").to_string());
                    }
                }
                let ok = all.uniform && bad.is_empty();
                let detail = if ok {
                    format!("all monic uniform at {}, every type uniform", all.witness[0])
                } else if !all.uniform {
                    format!("all monic counts {:?}", all.witness)
                } else {
                    format!("non-uniform types {}", bad.join(" "))
                };
                out.push((label, ok, detail));
            }
            Check::Lemma44 | Check::Lemma42 => {
                let mut bad = Vec::new();
                let mut nonempty = 0;
                for t in data.types(m, diag)? {
                    if t.total() == 0 {
                        continue;
                    }
                    nonempty += 1;
                    let c = census::check_type_constraints(t)?;
                    let ok = if check == Check::Lemma44 {
                        c.character_ok
                    } else {
                        c.support as u64 >= c.support_bound
                    };
                    if !ok {
                        bad.push(t.mode().partition().expect("type census").to_string());
                    }
                }
                let detail = if bad.is_empty() {
                    format!("{nonempty} nonempty types")
                } else {
                    format!("violated by {}", bad.join(" "))
                };
                out.push((label, bad.is_empty(), detail));
            }
            Check::Vlemma => unreachable!(),
        }
    }
    Ok(out)
}
