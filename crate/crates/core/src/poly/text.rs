//! Text rendering shared by every polynomial carrier.
//!
//! Terms are written as `coeff*name^e*..`, joined by ` + ` / ` - `, e.g.
//! `3*t^2*x*y - 1/2`. A coefficient of one is omitted unless the term is
//! constant. The zero polynomial renders as `0`.

use num_traits::{One, Signed, Zero};

use crate::scalar::format_rational;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub name: String,
    pub exp: u32,
}

impl Factor {
    pub fn new(name: impl Into<String>, exp: u32) -> Self {
        Factor {
            name: name.into(),
            exp,
        }
    }

    fn render(&self) -> String {
        if self.exp == 1 {
            self.name.clone()
        } else {
            format!("{}^{}", self.name, self.exp)
        }
    }
}

/// Renders a product of factors; the empty product is `1`.
pub fn render_monomial(factors: &[Factor]) -> String {
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors
            .iter()
            .map(Factor::render)
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Renders terms in the order given.
pub fn render_terms(terms: impl IntoIterator<Item = (Rational, Vec<Factor>)>) -> String {
    let mut out = String::new();
    for (i, (c, factors)) in terms.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 || out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let body = render_monomial(&factors);
        if factors.is_empty() {
            out.push_str(&format_rational(&a));
        } else if a.is_one() {
            out.push_str(&body);
        } else {
            out.push_str(&format_rational(&a));
            out.push('*');
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Factors `name_i^e_i` for the nonzero entries of `exps`.
pub fn factors_of(exps: &[u32], names: &[String]) -> Vec<Factor> {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let name = names
                .get(i)
                .cloned()
                .unwrap_or_else(|| format!("x{}", i + 1));
            Factor::new(name, e)
        })
        .collect()
}
