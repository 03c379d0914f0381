use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One districting criterion group. Structural constraints are always on and
/// have no flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    /// Balance: district loads within [Φ_l, Φ_u].
    Balance,
    /// Contiguity: each non-empty district is connected and touches its center.
    Contiguity,
    /// Integrity: allocations are 0/1.
    Integrity,
    /// Node center selection: centers are decisions, not inputs.
    NodeSelection,
    /// Compactness objective.
    Objective,
    /// Arbitrary positive edge weights.
    Weighted,
}

impl Criterion {
    pub const ALL: [Criterion; 6] = [
        Criterion::Balance,
        Criterion::Contiguity,
        Criterion::Integrity,
        Criterion::NodeSelection,
        Criterion::Objective,
        Criterion::Weighted,
    ];

    pub fn letter(self) -> char {
        match self {
            Criterion::Balance => 'B',
            Criterion::Contiguity => 'C',
            Criterion::Integrity => 'I',
            Criterion::NodeSelection => 'N',
            Criterion::Objective => 'O',
            Criterion::Weighted => 'W',
        }
    }

    pub fn from_letter(letter: char) -> Option<Self> {
        Criterion::ALL.into_iter().find(|c| c.letter() == letter)
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

/// A subset of {B, C, I, N, O, W}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VariantSpec(u8);

impl VariantSpec {
    pub fn empty() -> Self {
        VariantSpec(0)
    }

    pub fn of(criteria: &[Criterion]) -> Self {
        criteria.iter().fold(Self::empty(), |v, &c| v.with(c))
    }

    pub fn with(self, criterion: Criterion) -> Self {
        VariantSpec(self.0 | criterion.bit())
    }

    pub fn without(self, criterion: Criterion) -> Self {
        VariantSpec(self.0 & !criterion.bit())
    }

    pub fn has(self, criterion: Criterion) -> bool {
        self.0 & criterion.bit() != 0
    }

    pub fn criteria(self) -> impl Iterator<Item = Criterion> {
        Criterion::ALL.into_iter().filter(move |&c| self.has(c))
    }

    pub fn is_subset_of(self, other: VariantSpec) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn balance(self) -> bool {
        self.has(Criterion::Balance)
    }
    pub fn contiguity(self) -> bool {
        self.has(Criterion::Contiguity)
    }
    pub fn integrity(self) -> bool {
        self.has(Criterion::Integrity)
    }
    pub fn node_selection(self) -> bool {
        self.has(Criterion::NodeSelection)
    }
    pub fn objective(self) -> bool {
        self.has(Criterion::Objective)
    }
    pub fn weighted(self) -> bool {
        self.has(Criterion::Weighted)
    }

    /// Rejects the combinations that do not define a sensible problem.
    pub fn check_meaningful(self) -> Result<()> {
        let reason = if self.contiguity() && !self.integrity() {
            Some("contiguity is only meaningful when allocations are integral (C requires I)")
        } else if !self.objective() && !self.contiguity() {
            Some("dropping the compactness objective is only meaningful together with contiguity (no O requires C)")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::MeaninglessVariant {
                variant: self.to_string(),
                reason: reason.to_string(),
            }),
            None => Ok(()),
        }
    }

    pub fn is_meaningful(self) -> bool {
        self.check_meaningful().is_ok()
    }

    /// All 64 subsets in increasing bit order.
    pub fn all() -> impl Iterator<Item = VariantSpec> {
        (0u8..64).map(VariantSpec)
    }

    /// The 32 meaningful combinations.
    pub fn meaningful() -> impl Iterator<Item = VariantSpec> {
        Self::all().filter(|v| v.is_meaningful())
    }
}

impl fmt::Display for VariantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.criteria() {
            write!(f, "{}", c.letter())?;
        }
        Ok(())
    }
}

impl FromStr for VariantSpec {
    type Err = Error;

    /// Accepts letters from `BCINOW` in any order, each at most once.
    fn from_str(text: &str) -> Result<Self> {
        let mut variant = VariantSpec::empty();
        for ch in text.chars() {
            let criterion = Criterion::from_letter(ch).ok_or_else(|| {
                Error::Parse(format!("unexpected character {ch:?} in variant {text:?}"))
            })?;
            if variant.has(criterion) {
                return Err(Error::Parse(format!("duplicate criterion {ch} in variant {text:?}")));
            }
            variant = variant.with(criterion);
        }
        Ok(variant)
    }
}
