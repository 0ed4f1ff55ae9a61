use std::fmt::Write;

use crate::{ChartId, DampingConvention, Hierarchy, ModeIndex};

/// Damping coefficient `v̄ - cρ` of `A_{1j}` written in chart variables.
fn damping_text(convention: DampingConvention, chart: ChartId, j: u32) -> String {
    let c = convention.weight(chart, ModeIndex::new(1, j).level(), true, j);
    let half = |sym: &str, sign: f64| {
        let coef = 0.5 * c * sign;
        let mag = coef.abs();
        let op = if coef >= 0.0 { "+" } else { "-" };
        if mag == 1.0 {
            format!("{op} {sym}")
        } else {
            format!("{op} {mag}{sym}")
        }
    };
    match chart {
        // ρ = -ε₁/2, so -cρ = +cε₁/2
        ChartId::K1 => format!("-1 {}", half("eps1", 1.0)),
        ChartId::K2 => "v2".to_string(),
        // ρ = +ε₃/2
        ChartId::K3 => format!("1 {}", half("eps3", -1.0)),
    }
}

/// Human-readable listing of the hierarchy: for each envelope its level,
/// matching order, operator stencil and cubic monomials, plus the damping
/// coefficients of the critical rows in each chart.
pub fn derive_document(hier: &Hierarchy) -> String {
    let big_n = hier.big_n();
    let mut out = String::new();
    let _ = writeln!(out, "# modulation hierarchy");
    let _ = writeln!(out, "order n = {}, truncation N = {}", hier.order(), big_n);
    let _ = writeln!(out, "damping convention = {:?}", hier.convention());
    let _ = writeln!(out, "operators: L0 = -(1-m^2)^2, L1 = -4im(1-m^2) d, L2~ = -dt - c rho - 2(1-3m^2) d^2 + vbar, L3 = -4im d^3, L4 = -d^4");
    let _ = writeln!(out);

    let _ = writeln!(out, "## critical damping vbar - c rho");
    for chart in [ChartId::K1, ChartId::K2, ChartId::K3] {
        for j in 1..=hier.critical_count() {
            let _ = writeln!(out, "{chart} A[1,{j}]: {}", damping_text(hier.convention(), chart, j));
        }
    }
    let printed_k3: Vec<String> =
        (1..=hier.critical_count()).map(|j| damping_text(DampingConvention::AsPrinted, ChartId::K3, j)).collect();
    let _ = writeln!(
        out,
        "FLAG: printed K3 rows use {} (sign of eps3/2 differs between the j = 1 row and the j >= 2 rows)",
        printed_k3.join(" | ")
    );
    if hier.convention() == DampingConvention::Exact {
        let _ = writeln!(
            out,
            "FLAG: exact convention charges l*rho to an envelope of level l; printed rows charge a single rho"
        );
    }
    let _ = writeln!(out);

    let _ = writeln!(out, "## envelopes");
    for idx in ModeIndex::all(big_n).into_iter().filter(|i| i.m >= 0) {
        let kind = if idx.is_critical() { "critical" } else { "graph" };
        let _ = writeln!(out, "{idx} level {} order {} {kind}", idx.level(), idx.matching_order());
        let mut stencil = Vec::new();
        if idx.is_critical() {
            stencil.push(format!("dt A[1,{}] = 4 d^2 A[1,{}] + (vbar - c rho) A[1,{}]", idx.j, idx.j, idx.j));
            if idx.j >= 2 {
                stencil.push(format!("L3 A[1,{}]", idx.j - 1));
            }
            if idx.j >= 3 {
                stencil.push(format!("L4 A[1,{}]", idx.j - 2));
            }
        } else {
            stencil.push(format!("L0 {idx}"));
            for (i, name) in [(1, "L1"), (2, "L2~"), (3, "L3"), (4, "L4")] {
                let lower = ModeIndex::new(idx.m, idx.j.wrapping_sub(i));
                if idx.j > i && lower.is_valid(big_n) {
                    stencil.push(format!("{name} {lower}"));
                }
            }
        }
        stencil.push(format!("- a[{},{}]", idx.m, idx.j));
        if idx.matching_order() == 4 {
            stencil.push(format!("+ epsbar nu_{}", idx.m));
        }
        let tail = if idx.is_critical() { "" } else { " = 0" };
        let _ = writeln!(out, "  stencil: {}{tail}", stencil.join(" + "));
        for term in hier.cubic_terms(idx) {
            let _ = writeln!(out, "  cubic: {term}");
        }
    }

    // j = 1 graph envelopes have no lower-level stencil terms, so the
    // graph is an explicit polynomial in the critical envelopes.
    let _ = writeln!(out);
    let _ = writeln!(out, "## explicit graphs");
    for idx in ModeIndex::all(big_n).into_iter().filter(|i| i.m >= 0 && i.j == 1 && !i.is_critical()) {
        let l0 = ((1 - idx.m * idx.m) as i64).pow(2);
        let mut rhs: Vec<String> = hier
            .cubic_terms(idx)
            .iter()
            .map(|t| format!("{} {}", fraction(-(t.multiplicity as i64), l0), monomial(&t.factors)))
            .collect();
        if idx.matching_order() == 4 {
            rhs.push(format!("{} epsbar nu_{}", fraction(1, l0), idx.m));
        }
        let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join(" + ") };
        let _ = writeln!(out, "{idx} = {rhs}");
    }
    out
}

/// `num/den` in lowest terms, with the sign on the numerator.
fn fraction(num: i64, den: i64) -> String {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let g = gcd(num, den).max(1);
    let (n, d) = (num / g, den / g);
    if d == 1 {
        format!("{n}")
    } else {
        format!("{n}/{d}")
    }
}

/// `A[1,1]^3`, `A[-1,1] A[1,1]^2`, ...
fn monomial(factors: &[ModeIndex; 3]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < 3 {
        let run = factors[i..].iter().take_while(|f| **f == factors[i]).count();
        parts.push(if run == 1 { format!("{}", factors[i]) } else { format!("{}^{run}", factors[i]) });
        i += run;
    }
    parts.join(" ")
}
