//! `(<re>,<im>) : e[<label>] e'[<label>] ...` per line; `1` is the empty blade.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{format_complex, split_term_line};
use crate::sq::IndexLabel;

use super::{CliffordElement, GeneratorLabel, GeneratorSet};

fn parse_generator(token: &str, line: usize) -> Result<GeneratorLabel> {
    let (primed, rest) = if let Some(r) = token.strip_prefix("e'[") {
        (true, r)
    } else if let Some(r) = token.strip_prefix("e[") {
        (false, r)
    } else {
        return Err(Error::parse(
            line,
            format!("expected `e[<label>]` or `e'[<label>]`, found `{token}`"),
        ));
    };
    let label = rest
        .strip_suffix(']')
        .ok_or_else(|| Error::parse(line, format!("unterminated generator `{token}`")))?;
    let index = IndexLabel::new(label).map_err(|e| Error::parse(line, e.to_string()))?;
    Ok(GeneratorLabel { index, primed })
}

impl CliffordElement {
    /// Parses the multivector text format over `gens`. Factors may come in
    /// any order and may repeat; each line is multiplied out.
    pub fn parse(text: &str, gens: &GeneratorSet) -> Result<Self> {
        let mut acc = CliffordElement::zero(gens);
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let Some((amp, body)) = split_term_line(raw, line)? else {
                continue;
            };
            let mut factors = Vec::new();
            for token in body.split_whitespace() {
                if token == "1" {
                    continue;
                }
                let g = parse_generator(token, line)?;
                if !gens.contains(&g) {
                    return Err(Error::parse(
                        line,
                        format!("unknown generator {g} (label `{}`)", g.index),
                    ));
                }
                factors.push(g);
            }
            if body.is_empty() {
                return Err(Error::parse(line, "empty blade, write `1` for the scalar"));
            }
            let term = CliffordElement::product_of(gens, &factors)?.scale(amp);
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rows: Vec<_> = self.terms().collect();
        rows.sort_by_key(|(b, _)| (b.grade(), b.0.reverse_bits()));
        for (blade, c) in rows {
            let labels = self.generators().blade_labels(blade);
            let body = if labels.is_empty() {
                "1".to_string()
            } else {
                labels
                    .iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            writeln!(f, "{} : {}", format_complex(c), body)?;
        }
        Ok(())
    }
}
