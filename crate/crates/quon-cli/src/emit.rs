//! Plain-text and LaTeX renderings of normal forms. Positions in term keys
//! are mapped back to the labels of the parsed word; emission follows the
//! canonical term order, so identical inputs yield identical bytes.

use std::collections::BTreeMap;

use quon::symbolic::NormalForm;

fn label<'a>(labels: &[&'a str], position: usize) -> &'a str {
    labels[position - 1]
}

/// `<f,g> <h,k>` for a pairing list (empty string when there are none).
pub fn pairing_product(pairings: &[(usize, usize)], labels: &[&str]) -> String {
    pairings
        .iter()
        .map(|&(a, c)| format!("<{},{}>", label(labels, a), label(labels, c)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// An integer polynomial in q, exponent → coefficient, e.g. `1 + 2 q^2`.
pub fn polynomial(poly: &BTreeMap<usize, i64>) -> String {
    if poly.is_empty() {
        return "0".to_string();
    }
    poly.iter()
        .map(|(&exp, &coeff)| match (coeff, exp) {
            (c, 0) => c.to_string(),
            (1, 1) => "q".to_string(),
            (1, e) => format!("q^{e}"),
            (c, 1) => format!("{c} q"),
            (c, e) => format!("{c} q^{e}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// One term per line: coefficient, q power, projector, pairings, residual
/// creators, residual annihilators — identity pieces omitted.
pub fn plain(nf: &NormalForm, labels: &[&str]) -> String {
    let mut lines = Vec::new();
    for (key, mult) in nf.terms() {
        let mut pieces: Vec<String> = Vec::new();
        if mult != 1 {
            pieces.push(mult.to_string());
        }
        match key.q_exponent {
            0 => {}
            1 => pieces.push("q".to_string()),
            e => pieces.push(format!("q^{e}")),
        }
        if let Some(k) = key.projector_level {
            pieces.push(format!("p[{k}]"));
        }
        for &(a, c) in &key.pairings {
            pieces.push(format!("<{},{}>", label(labels, a), label(labels, c)));
        }
        for &c in &key.creators {
            pieces.push(format!("a+({})", label(labels, c)));
        }
        for &a in &key.annihilators {
            pieces.push(format!("a({})", label(labels, a)));
        }
        if pieces.is_empty() {
            pieces.push("1".to_string());
        }
        lines.push(pieces.join(" "));
    }
    if lines.is_empty() {
        "0".to_string()
    } else {
        lines.join("\n")
    }
}

/// All terms on one line, joined by ` + `.
pub fn latex(nf: &NormalForm, labels: &[&str]) -> String {
    let mut terms = Vec::new();
    for (key, mult) in nf.terms() {
        let mut pieces: Vec<String> = Vec::new();
        if mult != 1 {
            pieces.push(mult.to_string());
        }
        match key.q_exponent {
            0 => {}
            1 => pieces.push("q".to_string()),
            e => pieces.push(format!("q^{{{e}}}")),
        }
        if let Some(k) = key.projector_level {
            pieces.push(format!("p_{{{k}}}"));
        }
        for &(a, c) in &key.pairings {
            pieces.push(format!(
                "\\langle {},{}\\rangle",
                label(labels, a),
                label(labels, c)
            ));
        }
        for &c in &key.creators {
            pieces.push(format!("A^{{+}}({})", label(labels, c)));
        }
        for &a in &key.annihilators {
            pieces.push(format!("A({})", label(labels, a)));
        }
        if pieces.is_empty() {
            pieces.push("1".to_string());
        }
        terms.push(pieces.join("\\, "));
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}
