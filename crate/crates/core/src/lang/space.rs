//! Finite state spaces: every variable ranges over `Z_m`.

use std::fmt;

use crate::error::{Error, Result};

/// Hard upper bound on `|Σ|`. Relations are quadratic in this number.
pub const MAX_STATES: usize = 1 << 20;

/// Ordered variables sharing a modulus. States are enumerated lexicographically:
/// the first variable is the most significant digit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateSpace {
    vars: Vec<String>,
    modulus: u32,
    size: usize,
}

impl StateSpace {
    pub fn new<S: AsRef<str>>(vars: &[S], modulus: u32) -> Result<Self> {
        Self::with_cap(vars, modulus, MAX_STATES)
    }

    /// Like [`StateSpace::new`] but with a lower state cap. A cap above
    /// [`MAX_STATES`] is clamped.
    pub fn with_cap<S: AsRef<str>>(vars: &[S], modulus: u32, cap: usize) -> Result<Self> {
        let cap = cap.min(MAX_STATES);
        if vars.is_empty() {
            return Err(Error::Space("at least one variable is required".into()));
        }
        if modulus == 0 {
            return Err(Error::Space("modulus must be positive".into()));
        }
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref();
            if !is_identifier(v) {
                return Err(Error::Space(format!("`{v}` is not a valid variable name")));
            }
            if names.iter().any(|n| n == v) {
                return Err(Error::Space(format!("variable `{v}` declared twice")));
            }
            names.push(v.to_string());
        }
        let mut size: usize = 1;
        for _ in &names {
            size = size
                .checked_mul(modulus as usize)
                .filter(|s| *s <= cap)
                .ok_or(Error::StateCap {
                    vars: names.len(),
                    modulus,
                    cap,
                })?;
        }
        Ok(StateSpace {
            vars: names,
            modulus,
            size,
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// `|Σ|`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn decode(&self, index: usize) -> State {
        assert!(index < self.size, "state index {index} out of range");
        let m = self.modulus as usize;
        let mut values = vec![0u32; self.vars.len()];
        let mut rest = index;
        for slot in values.iter_mut().rev() {
            *slot = (rest % m) as u32;
            rest /= m;
        }
        State { values }
    }

    /// Value of variable `var` in the state with the given index.
    pub fn decode_var(&self, index: usize, var: usize) -> u32 {
        let m = self.modulus as usize;
        let stride = m.pow((self.vars.len() - 1 - var) as u32);
        ((index / stride) % m) as u32
    }

    pub fn encode(&self, state: &State) -> usize {
        debug_assert_eq!(state.values.len(), self.vars.len());
        let m = self.modulus as usize;
        state
            .values
            .iter()
            .fold(0usize, |acc, &v| acc * m + v as usize)
    }

    /// Index of `σ[x ↦ v]` given the index of `σ`, without decoding.
    pub fn update_index(&self, index: usize, var: usize, value: u32) -> usize {
        let m = self.modulus as usize;
        let stride = m.pow((self.vars.len() - 1 - var) as u32);
        let old = (index / stride) % m;
        index - old * stride + value as usize * stride
    }

    pub fn states(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.size).map(|i| self.decode(i))
    }

    /// Renders a state as `x=0, y=1`.
    pub fn render_state(&self, index: usize) -> String {
        let st = self.decode(index);
        self.vars
            .iter()
            .zip(&st.values)
            .map(|(n, v)| format!("{n}={v}"))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// The header line accepted by the program file parser.
    pub fn header(&self) -> String {
        format!("vars {} mod {}", self.vars.join(", "), self.modulus)
    }
}

impl fmt::Display for StateSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.header())
    }
}

/// A total assignment of values to the variables of some [`StateSpace`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct State {
    values: Vec<u32>,
}

impl State {
    pub fn new(values: Vec<u32>) -> Self {
        State { values }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, var: usize) -> u32 {
        self.values[var]
    }

    /// `σ[x ↦ v]`.
    pub fn with(&self, var: usize, value: u32) -> State {
        let mut values = self.values.clone();
        values[var] = value;
        State { values }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !crate::lang::parser::is_keyword(s)
}
