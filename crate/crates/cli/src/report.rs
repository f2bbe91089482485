//! `key = value` report lines. Reals use 17 significant digits in
//! scientific notation, independent of locale.

use std::fmt::Write;

pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn reals(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|&x| real(x)).collect();
    format!("[{}]", items.join(", "))
}

pub fn dims((m, n, p): (usize, usize, usize)) -> String {
    format!("[{m}, {n}, {p}]")
}

#[derive(Default)]
pub struct Report {
    text: String,
}

impl Report {
    pub fn line(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        writeln!(self.text, "{key} = {value}").expect("writing to a String");
        self
    }

    pub fn into_string(self) -> String {
        self.text
    }
}
