use crate::census::{CensusMode, CensusTable};
use crate::theory::hypothesis;

/// Aligned text table: discriminants down the side, degrees across the top.
/// Degrees where the gcd hypothesis holds get an asterisk.
pub(crate) fn text_table(tables: &[CensusTable]) -> String {
    let Some(first) = tables.first() else {
        return String::new();
    };
    let spec = first.spec();
    let mut out = format!("field: {spec}\n");
    if first.spec().k() > 1 {
        let coeffs: Vec<String> = spec.modulus().iter().map(u32::to_string).collect();
        out.push_str(&format!("modulus: {}\n", coeffs.join(",")));
    }
    let g = if spec.is_odd() { 2 } else { 1 };
    out.push_str(&format!(
        "census: {} polynomials (* marks degrees with gcd(q-1, m(m-1)) = {g})\n",
        first.mode()
    ));

    let start = if first.mode() == &CensusMode::AllMonic { 0 } else { 1 };
    let mut header = vec!["disc".to_string()];
    for t in tables {
        let mark = hypothesis(spec, t.degree()).is_ok_and(|h| h.applies);
        header.push(format!("deg{}{}", t.degree(), if mark { "*" } else { "" }));
    }
    let mut rows = vec![header];
    for d in start..spec.q() {
        let mut row = vec![d.to_string()];
        row.extend(tables.iter().map(|t| t.count(d).to_string()));
        rows.push(row);
    }
    let mut total = vec!["total".to_string()];
    total.extend(tables.iter().map(|t| t.total().to_string()));
    rows.push(total);

    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    for row in rows {
        let cells: Vec<String> =
            row.iter().zip(&widths).map(|(cell, w)| format!("{cell:>w$}")).collect();
        out.push_str(&cells.join("  "));
        out.push('\n');
    }
    out
}
