//! Display alphabets. Words are computed over residues `0..m` and only
//! mapped to user symbols when printed.

use tmlab_core::Letter;

use crate::error::CliError;

#[derive(Debug, Clone)]
pub struct Rename {
    symbols: Vec<char>,
}

impl Rename {
    /// `spec` must hold exactly `m` distinct characters.
    pub fn parse(spec: &str, m: u32) -> Result<Self, CliError> {
        let symbols: Vec<char> = spec.chars().collect();
        if symbols.len() != m as usize {
            return Err(CliError::usage(format!(
                "--rename needs {m} symbols, got {}",
                symbols.len()
            )));
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(CliError::usage(format!("--rename repeats the symbol {c:?}")));
            }
        }
        Ok(Rename { symbols })
    }

    pub fn render(&self, letters: &[Letter]) -> String {
        letters
            .iter()
            .map(|l| self.symbols[l.value() as usize])
            .collect()
    }
}

/// Renders with the rename if there is one, else with the default
/// residue notation.
pub fn render(letters: &[Letter], rename: Option<&Rename>) -> String {
    match rename {
        Some(r) => r.render(letters),
        None => tmlab_core::FiniteWord::new(letters.to_vec()).to_string(),
    }
}
