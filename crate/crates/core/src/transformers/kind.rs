use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformerKind {
    Awp,
    Dwp,
    Awlp,
    Dwlp,
    Asp,
    Dsp,
    Aslp,
    Dslp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Backward,
    Forward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Resolution {
    Angelic,
    Demonic,
}

impl TransformerKind {
    pub const ALL: [TransformerKind; 8] = [
        TransformerKind::Awp,
        TransformerKind::Dwp,
        TransformerKind::Awlp,
        TransformerKind::Dwlp,
        TransformerKind::Asp,
        TransformerKind::Dsp,
        TransformerKind::Aslp,
        TransformerKind::Dslp,
    ];

    /// Position in [`TransformerKind::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_attributes(direction: Direction, resolution: Resolution, liberal: bool) -> Self {
        use Direction::*;
        use Resolution::*;
        match (direction, resolution, liberal) {
            (Backward, Angelic, false) => TransformerKind::Awp,
            (Backward, Demonic, false) => TransformerKind::Dwp,
            (Backward, Angelic, true) => TransformerKind::Awlp,
            (Backward, Demonic, true) => TransformerKind::Dwlp,
            (Forward, Angelic, false) => TransformerKind::Asp,
            (Forward, Demonic, false) => TransformerKind::Dsp,
            (Forward, Angelic, true) => TransformerKind::Aslp,
            (Forward, Demonic, true) => TransformerKind::Dslp,
        }
    }

    pub fn direction(self) -> Direction {
        match self {
            TransformerKind::Awp
            | TransformerKind::Dwp
            | TransformerKind::Awlp
            | TransformerKind::Dwlp => Direction::Backward,
            _ => Direction::Forward,
        }
    }

    pub fn resolution(self) -> Resolution {
        match self {
            TransformerKind::Awp
            | TransformerKind::Awlp
            | TransformerKind::Asp
            | TransformerKind::Aslp => Resolution::Angelic,
            _ => Resolution::Demonic,
        }
    }

    pub fn liberal(self) -> bool {
        matches!(
            self,
            TransformerKind::Awlp
                | TransformerKind::Dwlp
                | TransformerKind::Aslp
                | TransformerKind::Dslp
        )
    }

    /// The transformer `T'` with `T(p, q) = ¬T'(p, ¬q)`.
    pub fn contrapositive(self) -> Self {
        let res = match self.resolution() {
            Resolution::Angelic => Resolution::Demonic,
            Resolution::Demonic => Resolution::Angelic,
        };
        Self::from_attributes(self.direction(), res, !self.liberal())
    }

    pub fn name(self) -> &'static str {
        match self {
            TransformerKind::Awp => "awp",
            TransformerKind::Dwp => "dwp",
            TransformerKind::Awlp => "awlp",
            TransformerKind::Dwlp => "dwlp",
            TransformerKind::Asp => "asp",
            TransformerKind::Dsp => "dsp",
            TransformerKind::Aslp => "aslp",
            TransformerKind::Dslp => "dslp",
        }
    }
}

impl fmt::Display for TransformerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let lower = s.to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|k| k.name() == lower)
            .ok_or(Error::UnknownId {
                kind: "transformer",
                id: s.to_string(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn attributes_are_a_bijection() {
        let mut seen = std::collections::HashSet::new();
        for k in TransformerKind::ALL {
            assert!(seen.insert((k.direction(), k.resolution(), k.liberal())));
            assert_eq!(
                TransformerKind::from_attributes(k.direction(), k.resolution(), k.liberal()),
                k
            );
            assert_eq!(k.contrapositive().contrapositive(), k);
            assert_eq!(k.name().parse::<TransformerKind>().unwrap(), k);
        }
        assert_eq!(TransformerKind::Awp.contrapositive(), TransformerKind::Dwlp);
        assert_eq!(TransformerKind::Dsp.contrapositive(), TransformerKind::Aslp);
        assert!("wp".parse::<TransformerKind>().is_err());
    }
}
