//! Naming of the concrete schemes for the CLI, transcripts and the attack
//! registry.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::sigma::FsMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeKind {
    /// Weak selects plain ElGamal, strong the proof-carrying variant.
    Enc2vote,
    /// Weak has weak Fiat–Shamir and no weeding; strong has both defences.
    Helios,
    HeliosMixnet,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 3] = [SchemeKind::Enc2vote, SchemeKind::Helios, SchemeKind::HeliosMixnet];

    pub fn as_str(&self) -> &'static str {
        match self {
            SchemeKind::Enc2vote => "enc2vote",
            SchemeKind::Helios => "helios",
            SchemeKind::HeliosMixnet => "helios-mixnet",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown scheme `{s}` (expected enc2vote, helios or helios-mixnet)"))
    }
}

/// A scheme together with its weak/strong variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Target {
    pub scheme: SchemeKind,
    pub variant: FsMode,
}

impl Target {
    pub const fn new(scheme: SchemeKind, variant: FsMode) -> Self {
        Target { scheme, variant }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.scheme, self.variant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in SchemeKind::ALL {
            assert_eq!(k.as_str().parse::<SchemeKind>().unwrap(), k);
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{k}\""));
        }
        assert!("belenios".parse::<SchemeKind>().is_err());
    }
}
