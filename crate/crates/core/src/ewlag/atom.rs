//! Symbolic field variables.
//!
//! An atom is a field component, optionally hit by one derivative: ∂_ν X_μ
//! is an independent commuting symbol (no Leibniz rule, no integration by
//! parts — substitutions act on derivative atoms directly). Atoms order by
//! (name, μ, deriv), which fixes the canonical monomial form.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Field component names, gauge basis and physical basis side by side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FieldName {
    A1,
    A2,
    A3,
    B,
    Wp,
    Wm,
    Z,
    A,
    #[serde(rename = "chi")]
    Chi,
    #[serde(rename = "phi1re")]
    Phi1Re,
    #[serde(rename = "phi1im")]
    Phi1Im,
    #[serde(rename = "phi2re")]
    Phi2Re,
    #[serde(rename = "phi2im")]
    Phi2Im,
}

impl FieldName {
    /// Vector fields carry a Lorentz index; scalars do not.
    pub fn is_vector(&self) -> bool {
        matches!(
            self,
            FieldName::A1
                | FieldName::A2
                | FieldName::A3
                | FieldName::B
                | FieldName::Wp
                | FieldName::Wm
                | FieldName::Z
                | FieldName::A
        )
    }

    /// Image under complex conjugation of the field content: W⁺ ↔ W⁻,
    /// everything else is real.
    pub fn conjugate(&self) -> FieldName {
        match self {
            FieldName::Wp => FieldName::Wm,
            FieldName::Wm => FieldName::Wp,
            other => *other,
        }
    }

    /// Fields that pick up a factor j under the contraction substitution
    /// (the fiber directions); the remaining fields are untouched.
    pub fn contracts(&self) -> bool {
        matches!(
            self,
            FieldName::A1
                | FieldName::A2
                | FieldName::Wp
                | FieldName::Wm
                | FieldName::Phi1Re
                | FieldName::Phi1Im
        )
    }

    pub fn label(&self) -> &'static str {
        match self {
            FieldName::A1 => "A1",
            FieldName::A2 => "A2",
            FieldName::A3 => "A3",
            FieldName::B => "B",
            FieldName::Wp => "Wp",
            FieldName::Wm => "Wm",
            FieldName::Z => "Z",
            FieldName::A => "A",
            FieldName::Chi => "chi",
            FieldName::Phi1Re => "phi1re",
            FieldName::Phi1Im => "phi1im",
            FieldName::Phi2Re => "phi2re",
            FieldName::Phi2Im => "phi2im",
        }
    }
}

/// One field symbol: component `name`, Lorentz index `mu` (vectors only),
/// and an optional derivative index (`deriv = Some(ν)` means ∂_ν applied).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FieldAtom {
    pub name: FieldName,
    pub mu: Option<u8>,
    pub deriv: Option<u8>,
}

impl FieldAtom {
    pub fn vector(name: FieldName, mu: u8) -> FieldAtom {
        debug_assert!(name.is_vector() && mu < 4);
        FieldAtom {
            name,
            mu: Some(mu),
            deriv: None,
        }
    }

    pub fn scalar(name: FieldName) -> FieldAtom {
        debug_assert!(!name.is_vector());
        FieldAtom {
            name,
            mu: None,
            deriv: None,
        }
    }

    /// ∂_ν applied to this (underived) atom.
    pub fn derived(self, nu: u8) -> FieldAtom {
        debug_assert!(self.deriv.is_none() && nu < 4);
        FieldAtom {
            deriv: Some(nu),
            ..self
        }
    }

    pub fn conjugate(self) -> FieldAtom {
        FieldAtom {
            name: self.name.conjugate(),
            ..self
        }
    }
}

impl fmt::Display for FieldAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(nu) = self.deriv {
            write!(f, "d{nu}.")?;
        }
        write!(f, "{}", self.name.label())?;
        if let Some(mu) = self.mu {
            write!(f, "_{mu}")?;
        }
        Ok(())
    }
}

/// Sorted multiset of atoms; the key of a polynomial term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    atoms: Vec<FieldAtom>,
}

impl Monomial {
    pub fn unit() -> Monomial {
        Monomial { atoms: Vec::new() }
    }

    pub fn new(mut atoms: Vec<FieldAtom>) -> Monomial {
        atoms.sort();
        Monomial { atoms }
    }

    pub fn from_atom(a: FieldAtom) -> Monomial {
        Monomial { atoms: vec![a] }
    }

    pub fn atoms(&self) -> &[FieldAtom] {
        &self.atoms
    }

    /// Field degree; a derivative atom counts as degree one.
    pub fn degree(&self) -> usize {
        self.atoms.len()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut atoms = Vec::with_capacity(self.atoms.len() + rhs.atoms.len());
        atoms.extend_from_slice(&self.atoms);
        atoms.extend_from_slice(&rhs.atoms);
        Monomial::new(atoms)
    }

    pub fn conjugate(&self) -> Monomial {
        Monomial::new(self.atoms.iter().map(|a| a.conjugate()).collect())
    }

    /// Number of atoms that gain a factor j under contraction.
    pub fn contraction_weight(&self) -> usize {
        self.atoms.iter().filter(|a| a.name.contracts()).count()
    }

    pub fn contains_name(&self, pred: impl Fn(FieldName) -> bool) -> bool {
        self.atoms.iter().any(|a| pred(a.name))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.atoms.cmp(&other.atoms))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "1");
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}
