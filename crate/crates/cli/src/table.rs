//! Tab-separated output. One header line, then one line per document,
//! LF line endings.

use std::fmt::Write;

use crate::document::CertificateDocument;

pub const COLUMNS: [&str; 16] = [
    "a",
    "b",
    "c",
    "recipe",
    "measure",
    "sigma",
    "chi",
    "b1",
    "b_plus",
    "b_minus",
    "k_squared",
    "k_dot_omega",
    "kappa",
    "degeneracy",
    "nullity",
    "minimal",
];

pub fn header() -> String {
    let mut s = COLUMNS.join("\t");
    s.push('\n');
    s
}

pub fn row(doc: &CertificateDocument) -> String {
    let i = &doc.invariants;
    let (a, b, c) = doc.triple;
    let measure = match doc.measure {
        geographer_core::geography::Measure::Degeneracy => "degeneracy",
        geographer_core::geography::Measure::Nullity => "nullity",
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{a}\t{b}\t{c}\t{}\t{measure}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        doc.recipe,
        i.sigma,
        i.chi,
        i.b1,
        i.b_plus,
        i.b_minus,
        i.k_squared,
        i.k_dot_omega,
        i.kappa,
        i.degeneracy,
        i.nullity,
        i.minimal,
    );
    s
}

pub fn render<'a>(docs: impl IntoIterator<Item = &'a CertificateDocument>) -> String {
    let mut s = header();
    for d in docs {
        s.push_str(&row(d));
    }
    s
}
